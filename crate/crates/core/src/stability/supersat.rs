use crate::error::{Error, Result};
use crate::exact::{euler_pow_bounds, falling_factorial, ratio, rational_from, Interval};
use num_bigint::BigUint;
use num_traits::Signed;

/// Certified bracket of
/// `n^(k-1) / (e^(2k) k!) · (edges + t - (1 - 1/k) n^2 / 2)`,
/// the number of `K_(k+1)` forced in a graph that is not `t`-close to
/// `k`-partite.
pub fn supersaturation_bound(n: u64, t: u64, k: u64, edges: u64) -> Result<Interval> {
    if n == 0 || t == 0 || k == 0 {
        return Err(Error::InvalidArgument("n, t and k must be positive".into()));
    }
    let k32 = u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("k = {k} too large")))?;
    let n2 = BigUint::from(n) * n;
    let excess = rational_from(edges) + rational_from(t) - ratio(k - 1, 2 * k) * rational_from(n2);
    let front = rational_from(BigUint::from(n).pow(k32 - 1)) / rational_from(falling_factorial(k, k));
    let value = front * excess;
    let e = euler_pow_bounds(2 * k32);
    // dividing by the larger power gives the smaller magnitude
    let (a, b) = (&value / &e.hi, &value / &e.lo);
    Ok(if value.is_negative() {
        Interval { lo: b, hi: a }
    } else {
        Interval { lo: a, hi: b }
    })
}
