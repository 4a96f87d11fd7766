use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::coeff::Coeff;
use super::PauliError;

/// Pauli string on `n` qubits in symplectic form; qubit `i` is
/// `X^{x_i} Z^{z_i}` up to the phase making the string Hermitian, so
/// `(1, 1)` is `Y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliTerm {
    x: Box<[u64]>,
    z: Box<[u64]>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl PauliTerm {
    pub fn identity(n: usize) -> Self {
        PauliTerm {
            x: vec![0; words(n)].into_boxed_slice(),
            z: vec![0; words(n)].into_boxed_slice(),
        }
    }

    pub fn from_support(n: usize, xs: &[usize], zs: &[usize]) -> Self {
        let mut t = Self::identity(n);
        for &q in xs {
            t.x[q / 64] ^= 1 << (q % 64);
        }
        for &q in zs {
            t.z[q / 64] ^= 1 << (q % 64);
        }
        t
    }

    /// Parses a string of `I`, `X`, `Y`, `Z`; character `i` is qubit `i`.
    pub fn parse(s: &str) -> Result<Self, PauliError> {
        let n = s.chars().count();
        let mut t = Self::identity(n);
        for (q, ch) in s.chars().enumerate() {
            let (x, z) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => return Err(PauliError::BadPauliChar(other)),
            };
            if x {
                t.x[q / 64] |= 1 << (q % 64);
            }
            if z {
                t.z[q / 64] |= 1 << (q % 64);
            }
        }
        Ok(t)
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn letters(&self, n: usize) -> String {
        (0..n)
            .map(|q| match (self.x_bit(q), self.z_bit(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            })
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(self.z.iter())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// True when the two strings commute (symplectic form vanishes).
    pub fn commutes(&self, o: &PauliTerm) -> bool {
        let mut s = 0u32;
        for i in 0..self.x.len() {
            s += (self.x[i] & o.z[i]).count_ones() + (self.z[i] & o.x[i]).count_ones();
        }
        s.is_multiple_of(2)
    }

    /// `self * o = i^k * result`, returning `(k mod 4, result)`.
    pub fn product(&self, o: &PauliTerm) -> (u32, PauliTerm) {
        let mut x = vec![0u64; self.x.len()];
        let mut z = vec![0u64; self.x.len()];
        let mut e: i64 = 0;
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], o.x[i], o.z[i]);
            x[i] = x1 ^ x2;
            z[i] = z1 ^ z2;
            e += (x1 & z1).count_ones() as i64 + (x2 & z2).count_ones() as i64
                - (x[i] & z[i]).count_ones() as i64
                + 2 * (z1 & x2).count_ones() as i64;
        }
        (
            e.rem_euclid(4) as u32,
            PauliTerm {
                x: x.into_boxed_slice(),
                z: z.into_boxed_slice(),
            },
        )
    }
}

impl Ord for PauliTerm {
    /// `(xmask, zmask)` compared as integers, qubit 0 least significant.
    fn cmp(&self, o: &Self) -> Ordering {
        for i in (0..self.x.len()).rev() {
            match self.x[i].cmp(&o.x[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for i in (0..self.z.len()).rev() {
            match self.z[i].cmp(&o.z[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for PauliTerm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Real linear combination of Pauli strings on `n` qubits, standing for the
/// anti-Hermitian element `i * sum`.
#[derive(Clone, PartialEq, Debug)]
pub struct PauliSum<C: Coeff> {
    n: usize,
    terms: BTreeMap<PauliTerm, C>,
}

impl<C: Coeff> PauliSum<C> {
    pub fn zero(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (PauliTerm, C)>>(n: usize, terms: I) -> Self {
        let mut s = Self::zero(n);
        for (t, c) in terms {
            s.add_term(t, c);
        }
        s
    }

    pub fn single(n: usize, term: PauliTerm, c: C) -> Self {
        Self::from_terms(n, [(term, c)])
    }

    /// Sum of `X_u` over `set`.
    pub fn x_set(n: usize, set: &[usize]) -> Self {
        Self::from_terms(
            n,
            set.iter()
                .map(|&u| (PauliTerm::from_support(n, &[u], &[]), C::one())),
        )
    }

    /// Sum of `Z_u Z_v` over `edges`.
    pub fn zz_set(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_terms(
            n,
            edges
                .iter()
                .map(|&(u, v)| (PauliTerm::from_support(n, &[], &[u, v]), C::one())),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliTerm, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &PauliTerm) -> C {
        self.terms.get(t).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, t: PauliTerm, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        PauliSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.clone(), v.mul(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PauliSum<D> {
        PauliSum::from_terms(self.n, self.terms.iter().map(|(t, c)| (t.clone(), f(c))))
    }

    /// Hermitian `c` with `i c = [i self, i o]`: each anticommuting pair with
    /// `P Q = i s R` contributes `-2 s R`.
    pub fn bracket(&self, o: &Self) -> Self {
        let mut acc: HashMap<PauliTerm, C> = HashMap::new();
        let two = C::from_i64(2);
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                if p.commutes(q) {
                    continue;
                }
                let (k, r) = p.product(q);
                let c = a.mul(b).mul(&two);
                let c = if k == 1 { c.neg() } else { c };
                let slot = acc.entry(r).or_insert_with(C::zero);
                *slot = slot.add(&c);
            }
        }
        Self::from_terms(self.n, acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    /// True when every term is `X_u` for some `u`.
    pub fn is_x_only(&self) -> bool {
        self.terms
            .keys()
            .all(|t| t.z.iter().all(|&w| w == 0) && t.weight() == 1)
    }
}

impl<C: Coeff> fmt::Display for PauliSum<C> {
    /// `coeff*STRING` terms joined by `+`, in term order; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| format!("{c}*{}", t.letters(self.n)))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}
