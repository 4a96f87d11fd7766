//! Coefficient fields for Pauli sums.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field used for Pauli-sum coefficients and echelon reduction.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact image of a finite binary float.
    fn from_f64(v: f64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a non-zero element.
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// True when every rank decision made with this field is exact.
    const EXACT: bool;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).mul(&Self::from_i64(den).inv())
    }
}

/// Splits a finite float into `mantissa * 2^exponent`.
fn decompose(v: f64) -> (i64, i32) {
    assert!(v.is_finite(), "coefficient {v} is not finite");
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp - 1075)
    };
    let tz = mant.trailing_zeros() as i32;
    (sign * (mant >> tz), e + tz)
}

impl Coeff for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        let (m, e) = decompose(v);
        let m = BigInt::from(m);
        if e >= 0 {
            BigRational::from_integer(m << e as usize)
        } else {
            BigRational::new(m, BigInt::one() << (-e) as usize)
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Threshold below which a float coefficient counts as zero.
pub const FLOAT_PIVOT_EPS: f64 = 1e-10;

impl Coeff for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        1.0 / self
    }
    fn is_zero(&self) -> bool {
        self.abs() < FLOAT_PIVOT_EPS
    }
}

/// Integers modulo the Mersenne prime `2^61 - 1`.
///
/// Ranks computed here never exceed the rational rank of the same integer
/// generators, so a modular dimension that reaches a known upper bound is
/// exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mod61(u64);

impl Mod61 {
    pub const P: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        Mod61(v % Self::P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let p = Self::P as u128;
        let r = (x & p) + (x >> 61);
        let r = (r & p) + (r >> 61);
        let r = r as u64;
        if r >= Self::P {
            r - Self::P
        } else {
            r
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Mod61(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Mod61(Self::reduce(acc.0 as u128 * base.0 as u128));
            }
            base = Mod61(Self::reduce(base.0 as u128 * base.0 as u128));
            e >>= 1;
        }
        acc
    }

    /// Signed representative in `(-P/2, P/2]`.
    pub fn signed(self) -> i64 {
        if self.0 > Self::P / 2 {
            -((Self::P - self.0) as i64)
        } else {
            self.0 as i64
        }
    }
}

impl fmt::Debug for Mod61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl fmt::Display for Mod61 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl Coeff for Mod61 {
    const EXACT: bool = true;

    fn zero() -> Self {
        Mod61(0)
    }
    fn one() -> Self {
        Mod61(1)
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(Self::P as i64);
        Mod61(r as u64)
    }
    fn from_f64(v: f64) -> Self {
        let (m, e) = decompose(v);
        let base = if e >= 0 {
            Mod61(2).pow(e as u64)
        } else {
            Mod61(2).pow((-e) as u64).inv()
        };
        Self::from_i64(m).mul(&base)
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Mod61(if s >= Self::P { s - Self::P } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Mod61(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + Self::P - o.0
        })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Mod61(Self::reduce(self.0 as u128 * o.0 as u128))
    }
    fn neg(&self) -> Self {
        Mod61(if self.0 == 0 { 0 } else { Self::P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(Self::P - 2)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Converts an exact rational coefficient to `f64` for display or numerics.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
