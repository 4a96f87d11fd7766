//! Lie closure of Pauli-sum generators over a coefficient field.
//!
//! Rows are kept in semi-echelon form: every row has a pivot column with
//! coefficient one, and no row has support on the pivot of an earlier row.
//! The closure is the smallest subspace containing the generators that is
//! invariant under bracketing with each generator; by the Jacobi identity
//! this equals the span of all nested brackets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use super::coeff::Coeff;
use super::sum::{PauliSum, PauliTerm};
use super::PauliError;

/// Hard limit of the dense column index used by the closure engine.
pub const ENGINE_QUBIT_LIMIT: usize = 12;

const NO_ROW: u32 = u32::MAX;

/// Default qubit cap for [`lie_closure`].
pub const DEFAULT_CLOSURE_QUBITS: usize = 8;

#[derive(Debug, Clone)]
pub struct ClosureOptions {
    /// Abort with [`PauliError::ClosureOverflow`] once the dimension exceeds this.
    pub max_dim: Option<usize>,
    /// Refuse inputs on more qubits than this (never above [`ENGINE_QUBIT_LIMIT`]).
    pub max_qubits: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_dim: None,
            max_qubits: DEFAULT_CLOSURE_QUBITS,
        }
    }
}

type Sparse<C> = Vec<(u32, C)>;

/// Incremental closure state; also serves as the finished basis.
#[derive(Clone)]
pub struct LieBasis<C: Coeff> {
    n: usize,
    mask: u32,
    gens: Vec<Sparse<C>>,
    rows: Vec<Sparse<C>>,
    pivot_col: Vec<u32>,
    pivot_row: Vec<u32>,
    processed: usize,
    /// `(generator, next row, end row)` for generators added mid-run.
    backlog: Vec<(usize, usize, usize)>,
    spa: Vec<C>,
    mark: Vec<bool>,
    touched: Vec<u32>,
    queued: Vec<bool>,
}

fn anticommute_phase(n: usize, mask: u32, a: u32, b: u32) -> Option<(bool, u32)> {
    let (x1, z1) = (a >> n, a & mask);
    let (x2, z2) = (b >> n, b & mask);
    if ((x1 & z2).count_ones() + (z1 & x2).count_ones()) % 2 == 0 {
        return None;
    }
    let (x3, z3) = (x1 ^ x2, z1 ^ z2);
    let e = (x1 & z1).count_ones() as i32 + (x2 & z2).count_ones() as i32
        - (x3 & z3).count_ones() as i32
        + 2 * (z1 & x2).count_ones() as i32;
    // P Q = i^e R, e odd; the bracket coefficient is -2 for e = 1 and +2 for e = 3.
    Some((e.rem_euclid(4) == 1, (x3 << n) | z3))
}

impl<C: Coeff> LieBasis<C> {
    /// Starts a closure; the generators are inserted as the first rows.
    pub fn new(n: usize, generators: &[PauliSum<C>]) -> Result<Self, PauliError> {
        if n > ENGINE_QUBIT_LIMIT {
            return Err(PauliError::TooManyQubits {
                n,
                limit: ENGINE_QUBIT_LIMIT,
            });
        }
        let width = 1usize << (2 * n);
        let mut basis = LieBasis {
            n,
            mask: ((1u64 << n) - 1) as u32,
            gens: Vec::new(),
            rows: Vec::new(),
            pivot_col: Vec::new(),
            pivot_row: vec![NO_ROW; width],
            processed: 0,
            backlog: Vec::new(),
            spa: vec![C::zero(); width],
            mark: vec![false; width],
            touched: Vec::new(),
            queued: Vec::new(),
        };
        for g in generators {
            if g.n() != n {
                return Err(PauliError::QubitMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
            let sparse = basis.encode(g);
            if !sparse.is_empty() {
                basis.gens.push(sparse.clone());
                basis.insert_sparse(&sparse);
            }
        }
        Ok(basis)
    }

    fn encode(&self, s: &PauliSum<C>) -> Sparse<C> {
        let mut out: Sparse<C> = s
            .terms()
            .map(|(t, c)| {
                let x = t.x_words()[0] as u32;
                let z = t.z_words()[0] as u32;
                ((x << self.n) | z, c.clone())
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    fn decode_term(&self, idx: u32) -> PauliTerm {
        let x = idx >> self.n;
        let z = idx & self.mask;
        let xs: Vec<usize> = (0..self.n).filter(|&q| x >> q & 1 == 1).collect();
        let zs: Vec<usize> = (0..self.n).filter(|&q| z >> q & 1 == 1).collect();
        PauliTerm::from_support(self.n, &xs, &zs)
    }

    fn decode(&self, row: &Sparse<C>) -> PauliSum<C> {
        PauliSum::from_terms(
            self.n,
            row.iter().map(|(i, c)| (self.decode_term(*i), c.clone())),
        )
    }

    fn spa_add(&mut self, idx: u32, c: &C) {
        let i = idx as usize;
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(idx);
        }
        self.spa[i] = self.spa[i].add(c);
    }

    /// Eliminates every pivot from the accumulator and drains it into a
    /// sorted sparse vector.
    fn reduce_and_drain(&mut self) -> Sparse<C> {
        let mut heap = BinaryHeap::new();
        if self.queued.len() < self.rows.len() {
            self.queued.resize(self.rows.len(), false);
        }
        for &idx in &self.touched {
            let r = self.pivot_row[idx as usize];
            if r != NO_ROW && !self.queued[r as usize] {
                self.queued[r as usize] = true;
                heap.push(Reverse(r));
            }
        }
        while let Some(Reverse(r)) = heap.pop() {
            let r = r as usize;
            self.queued[r] = false;
            let col = self.pivot_col[r] as usize;
            let c = self.spa[col].clone();
            if c.is_zero() {
                continue;
            }
            let row = std::mem::take(&mut self.rows[r]);
            for (j, a) in &row {
                let j = *j as usize;
                if !self.mark[j] {
                    self.mark[j] = true;
                    self.touched.push(j as u32);
                }
                self.spa[j] = self.spa[j].sub(&c.mul(a));
                let r2 = self.pivot_row[j];
                if r2 != NO_ROW && r2 as usize != r && !self.queued[r2 as usize] {
                    self.queued[r2 as usize] = true;
                    heap.push(Reverse(r2));
                }
            }
            self.rows[r] = row;
        }
        let mut out = Vec::new();
        for &idx in &self.touched {
            let i = idx as usize;
            self.mark[i] = false;
            let v = std::mem::replace(&mut self.spa[i], C::zero());
            if !v.is_zero() {
                out.push((idx, v));
            }
        }
        self.touched.clear();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Adds the reduced vector as a new row; returns false if it was in the span.
    fn push_reduced(&mut self, mut v: Sparse<C>) -> bool {
        if v.is_empty() {
            return false;
        }
        let inv = v[0].1.inv();
        for e in &mut v {
            e.1 = e.1.mul(&inv);
        }
        let r = self.rows.len() as u32;
        self.pivot_col.push(v[0].0);
        self.pivot_row[v[0].0 as usize] = r;
        self.rows.push(v);
        true
    }

    fn insert_sparse(&mut self, s: &Sparse<C>) -> bool {
        for (i, c) in s {
            self.spa_add(*i, c);
        }
        let v = self.reduce_and_drain();
        self.push_reduced(v)
    }

    /// Inserts an arbitrary element; returns true if the span grew.
    pub fn insert(&mut self, s: &PauliSum<C>) -> bool {
        let v = self.encode(s);
        self.insert_sparse(&v)
    }

    /// Adds a generator mid-run; rows already processed are bracketed with
    /// it before the run continues.
    pub fn add_generator(&mut self, s: &PauliSum<C>) {
        let v = self.encode(s);
        if v.is_empty() {
            return;
        }
        self.insert_sparse(&v);
        self.gens.push(v);
        if self.processed > 0 {
            self.backlog.push((self.gens.len() - 1, 0, self.processed));
        }
    }

    fn bracket_row(&mut self, gi: usize, r: usize) {
        let two = C::from_i64(2);
        let row = std::mem::take(&mut self.rows[r]);
        let gen = std::mem::take(&mut self.gens[gi]);
        for (a, ca) in &gen {
            for (b, cb) in &row {
                if let Some((negate, idx)) = anticommute_phase(self.n, self.mask, *a, *b) {
                    let c = ca.mul(cb).mul(&two);
                    let c = if negate { c.neg() } else { c };
                    self.spa_add(idx, &c);
                }
            }
        }
        self.gens[gi] = gen;
        self.rows[r] = row;
        let v = self.reduce_and_drain();
        self.push_reduced(v);
    }

    /// Performs one unit of work (a backlog bracket, or one row against every
    /// generator); returns false once the span is closed.
    pub fn step(&mut self) -> bool {
        while let Some(job) = self.backlog.last_mut() {
            if job.1 < job.2 {
                let (gi, r) = (job.0, job.1);
                job.1 += 1;
                self.bracket_row(gi, r);
                return true;
            }
            self.backlog.pop();
        }
        if self.processed >= self.rows.len() {
            return false;
        }
        let r = self.processed;
        self.processed += 1;
        for gi in 0..self.gens.len() {
            self.bracket_row(gi, r);
        }
        true
    }

    /// Runs to completion, honouring `opts.max_dim`.
    pub fn complete(&mut self, opts: &ClosureOptions) -> Result<(), PauliError> {
        loop {
            if let Some(max) = opts.max_dim {
                if self.dimension() > max {
                    return Err(PauliError::ClosureOverflow {
                        partial_dim: self.dimension(),
                        max_dim: max,
                    });
                }
            }
            if !self.step() {
                return Ok(());
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.backlog.is_empty() && self.processed >= self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Span membership of an element against the rows found so far.
    pub fn contains(&mut self, s: &PauliSum<C>) -> bool {
        if s.n() != self.n {
            return false;
        }
        for (i, c) in self.encode(s) {
            self.spa_add(i, &c);
        }
        self.reduce_and_drain().is_empty()
    }

    pub fn rows(&self) -> Vec<PauliSum<C>> {
        self.rows.iter().map(|r| self.decode(r)).collect()
    }

    pub fn row(&self, i: usize) -> PauliSum<C> {
        self.decode(&self.rows[i])
    }

    /// Pivot term of each row, in row order.
    pub fn pivots(&self) -> Vec<PauliTerm> {
        self.pivot_col
            .iter()
            .map(|&i| self.decode_term(i))
            .collect()
    }

    /// One row per line in the `coeff*STRING+...` format.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(out, "{}", self.decode(r));
        }
        out
    }
}

/// Closure of `generators` on `n` qubits.
pub fn lie_closure<C: Coeff>(
    n: usize,
    generators: &[PauliSum<C>],
    opts: &ClosureOptions,
) -> Result<LieBasis<C>, PauliError> {
    if n > opts.max_qubits {
        return Err(PauliError::TooManyQubits {
            n,
            limit: opts.max_qubits.min(ENGINE_QUBIT_LIMIT),
        });
    }
    let mut basis = LieBasis::new(n, generators)?;
    basis.complete(opts)?;
    Ok(basis)
}

/// True when `element` lies in the span of `basis`.
pub fn span_membership<C: Coeff>(basis: &mut LieBasis<C>, element: &PauliSum<C>) -> bool {
    basis.contains(element)
}
