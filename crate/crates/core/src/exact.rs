//! Exact integer and rational helpers shared by every module.
//!
//! Nothing here touches floating point. Irrational quantities (roots, Euler's
//! number) are handled either by raising both sides of a comparison to an
//! integer power or by certified rational brackets.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Arbitrary precision non-negative count.
pub type Count = BigUint;

/// Falling factorial `x (x-1) ... (x-j+1)`; zero once `j > x`.
pub fn falling_factorial(x: u64, j: u64) -> BigUint {
    if j > x {
        return BigUint::zero();
    }
    (0..j).fold(BigUint::one(), |acc, i| acc * (x - i))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient of a big `n` and small `k`.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    if *n < BigUint::from(k) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / (i + 1);
    }
    acc
}

/// Row `S(m, 0..=m)` of the Stirling numbers of the second kind.
pub fn stirling2_row(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=m {
        let mut next = vec![BigUint::zero(); i + 1];
        for j in 1..=i {
            let stay = if j < row.len() { &row[j] * j } else { BigUint::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row
}

/// Decides `a^ea <= b^eb` exactly. Bit lengths settle most cases without
/// forming either power.
pub fn pow_le(a: &BigUint, ea: u64, b: &BigUint, eb: u64) -> bool {
    if ea == 0 {
        return !(b.is_zero() && eb > 0);
    }
    if a.is_zero() {
        return true;
    }
    if eb == 0 || b.is_zero() {
        // rhs is 1 (eb == 0) or 0
        return if b.is_zero() && eb > 0 { false } else { a.is_one() };
    }
    // log2 a in [bits(a) - 1, bits(a))
    let a_lo = (a.bits() - 1) as u128 * ea as u128;
    let a_hi = a.bits() as u128 * ea as u128;
    let b_lo = (b.bits() - 1) as u128 * eb as u128;
    let b_hi = b.bits() as u128 * eb as u128;
    if a_hi <= b_lo {
        return true;
    }
    if b_hi <= a_lo {
        return false;
    }
    let lhs = a.pow(u32::try_from(ea).expect("exponent too large"));
    let rhs = b.pow(u32::try_from(eb).expect("exponent too large"));
    lhs <= rhs
}

/// `a^ea` compared against `b^eb`.
pub fn pow_cmp(a: &BigUint, ea: u64, b: &BigUint, eb: u64) -> Ordering {
    match (pow_le(a, ea, b, eb), pow_le(b, eb, a, ea)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

pub fn ratio(num: impl Into<BigUint>, den: impl Into<BigUint>) -> BigRational {
    BigRational::new(num.into().into(), den.into().into())
}

pub fn rational_from(n: impl Into<BigUint>) -> BigRational {
    BigRational::from_integer(n.into().into())
}

pub(crate) fn rational_pow(q: &BigRational, e: u32) -> BigRational {
    BigRational::new(q.numer().pow(e), q.denom().pow(e))
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// `Some(ordering)` when the whole interval lies strictly on one side of
    /// `q` (or is the point `q`).
    pub fn compare(&self, q: &BigRational) -> Option<Ordering> {
        if &self.hi < q {
            Some(Ordering::Less)
        } else if &self.lo > q {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Certified bounds `lo <= q^(1/n) <= hi` for positive `q`, with
/// `hi - lo <= 2^-bits`.
pub fn nth_root_bounds(q: &BigRational, n: u32, bits: u64) -> Interval {
    assert!(!q.is_negative(), "root of a negative rational");
    if q.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let num = q.numer().magnitude().clone();
    let den = q.denom().magnitude().clone();
    let scaled = (num << (bits * n as u64)) / den;
    let root = scaled.nth_root(n);
    let scale = BigUint::one() << bits;
    Interval {
        lo: ratio(root.clone(), scale.clone()),
        hi: ratio(root + 1u32, scale),
    }
}

/// Certified rational bracket of Euler's number.
pub fn euler_bounds() -> Interval {
    let den = BigUint::from(10u64).pow(12);
    Interval {
        lo: ratio(2_718_281_828_458u64, den.clone()),
        hi: ratio(2_718_281_828_460u64, den),
    }
}

/// Certified bracket of `e^p`.
pub fn euler_pow_bounds(p: u32) -> Interval {
    let e = euler_bounds();
    Interval {
        lo: rational_pow(&e.lo, p),
        hi: rational_pow(&e.hi, p),
    }
}

/// A positive real `Σ_i t_i^(1/6)` known through the rational sixth powers
/// `t_i` of its terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalSum {
    pub sixth_powers: Vec<BigRational>,
}

const MAX_ROOT_BITS: u64 = 1 << 14;

impl RadicalSum {
    pub fn bounds(&self, bits: u64) -> Interval {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for t in &self.sixth_powers {
            let b = nth_root_bounds(t, 6, bits);
            lo += b.lo;
            hi += b.hi;
        }
        Interval { lo, hi }
    }

    /// Exact comparison against a rational, refining precision until the
    /// bracket separates. `None` only if `MAX_ROOT_BITS` is exhausted.
    pub fn compare(&self, q: &BigRational) -> Option<Ordering> {
        if self.sixth_powers.len() == 1 {
            if q.is_negative() {
                return Some(Ordering::Greater);
            }
            return Some(self.sixth_powers[0].cmp(&rational_pow(q, 6)));
        }
        if self.sixth_powers.iter().all(|t| t.is_zero()) {
            return Some(BigRational::zero().cmp(q));
        }
        let mut bits = 64;
        while bits <= MAX_ROOT_BITS {
            if let Some(ord) = self.bounds(bits).compare(q) {
                return Some(ord);
            }
            bits *= 2;
        }
        None
    }
}

/// Serde adapters writing big integers and rationals as decimal strings.
pub mod serde_dec {
    use num_bigint::BigUint;
    use num_rational::BigRational;
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    pub fn count<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn counts<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &q.numer().to_str_radix(10))?;
        st.serialize_field("den", &q.denom().to_str_radix(10))?;
        st.end()
    }

    pub fn opt_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => rational(q, s),
            None => s.serialize_none(),
        }
    }

    pub fn opt_counts<S: Serializer>(xs: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
        match xs {
            Some(xs) => counts(xs, s),
            None => s.serialize_none(),
        }
    }

    pub fn opt_interval<S: Serializer>(i: &Option<super::Interval>, s: S) -> Result<S::Ok, S::Error> {
        match i {
            Some(i) => interval(i, s),
            None => s.serialize_none(),
        }
    }

    pub fn interval<S: Serializer>(i: &super::Interval, s: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Wire<'a> {
            #[serde(serialize_with = "rational")]
            lo: &'a BigRational,
            #[serde(serialize_with = "rational")]
            hi: &'a BigRational,
        }
        serde::Serialize::serialize(&Wire { lo: &i.lo, hi: &i.hi }, s)
    }
}
