//! Exact comparison of products of small integers raised to rational powers.
//!
//! Every base here is at most 64, so both sides factor over the primes up
//! to 61. Comparing them is deciding the sign of `Σ c_p log2 p` with integer
//! `c_p`; that sum is zero only when every `c_p` is, and otherwise its sign
//! follows from certified brackets of `log2 p` at increasing precision.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

const PRIMES: [u64; 18] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
const MAX_BITS: u64 = 1 << 13;

/// Prime exponents of a product of integers in `1..=64`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SmoothProduct {
    exps: [u64; 18],
    zero: bool,
}

impl SmoothProduct {
    pub(crate) fn push(&mut self, mut x: u64) {
        assert!(x <= 64, "factor {x} out of range");
        if x == 0 {
            self.zero = true;
            return;
        }
        for (i, &p) in PRIMES.iter().enumerate() {
            while x % p == 0 {
                self.exps[i] += 1;
                x /= p;
            }
        }
    }

    pub(crate) fn of(x: u64) -> Self {
        let mut s = SmoothProduct::default();
        s.push(x);
        s
    }

    pub(crate) fn value(&self) -> BigUint {
        if self.zero {
            return BigUint::zero();
        }
        PRIMES
            .iter()
            .zip(self.exps)
            .fold(BigUint::one(), |acc, (&p, e)| acc * BigUint::from(p).pow(e as u32))
    }
}

/// Compares `a^x` with `b^y` for positive rationals `x`, `y`.
pub(crate) fn compare_powers(a: &SmoothProduct, x: &BigRational, b: &SmoothProduct, y: &BigRational) -> Result<Ordering> {
    assert!(x.is_positive() && y.is_positive());
    match (a.zero, b.zero) {
        (true, true) => return Ok(Ordering::Equal),
        (true, false) => return Ok(Ordering::Less),
        (false, true) => return Ok(Ordering::Greater),
        _ => {}
    }
    // a^x vs b^y  <=>  (x.num * y.den) log a vs (y.num * x.den) log b
    let wa = x.numer() * y.denom();
    let wb = y.numer() * x.denom();
    let coeffs: Vec<(u64, BigInt)> = PRIMES
        .iter()
        .zip(a.exps.iter().zip(b.exps))
        .map(|(&p, (&ea, eb))| (p, &wa * BigInt::from(ea) - &wb * BigInt::from(eb)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if coeffs.is_empty() {
        return Ok(Ordering::Equal);
    }
    let mut bits = 64;
    while bits <= MAX_BITS {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (p, c) in &coeffs {
            let (l, h) = log2_bracket(*p, bits);
            let c = BigRational::from_integer(c.clone());
            if c.is_positive() {
                lo += &c * l;
                hi += &c * h;
            } else {
                lo += &c * h;
                hi += &c * l;
            }
        }
        if lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if hi.is_negative() {
            return Ok(Ordering::Less);
        }
        bits *= 2;
    }
    Err(Error::Undecided)
}

/// `lo <= log2 p <= hi` with `hi - lo <= 2^-bits` unless rounding stalls
/// earlier, by repeated squaring with outward rounded fixed point.
pub(crate) fn log2_bracket(p: u64, bits: u64) -> (BigRational, BigRational) {
    assert!(p >= 1);
    let k = 63 - p.leading_zeros() as u64;
    let int = BigRational::from_integer(BigInt::from(k));
    if p == 1 << k {
        return (int.clone(), int);
    }
    let w = bits + 32;
    let one = BigUint::one() << w;
    let two = &one << 1u32;
    // y = p / 2^k in (1, 2), as [ylo, yhi] / 2^w
    let mut ylo = (BigUint::from(p) << w) >> k;
    let mut yhi = ylo.clone() + 1u32;
    let mut acc = BigUint::zero();
    let mut done: u64 = 0;
    for _ in 0..bits {
        ylo = (&ylo * &ylo) >> w;
        yhi = ceil_shift(&yhi * &yhi, w);
        acc <<= 1u32;
        if ylo >= two {
            acc += 1u32;
            ylo >>= 1u32;
            yhi = ceil_shift(yhi, 1);
        } else if yhi >= two {
            acc >>= 1u32;
            break;
        }
        done += 1;
    }
    let scale: BigInt = BigInt::one() << done;
    let acc = BigInt::from_biguint(Sign::Plus, acc);
    let lo = int.clone() + BigRational::new(acc.clone(), scale.clone());
    let hi = int + BigRational::new(acc + 1, scale);
    (lo, hi)
}

fn ceil_shift(x: BigUint, s: u64) -> BigUint {
    let mask = (BigUint::one() << s) - 1u32;
    let up = !(&x & &mask).is_zero();
    (x >> s) + u32::from(up)
}
