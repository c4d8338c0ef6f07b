//! Scalar abstraction for bound and threshold arithmetic.
//!
//! Combinatorial structures are integer-valued; the quantities compared
//! against them (densities, lemma thresholds, binomial lower bounds) are
//! real. Every such computation is written once over [`Scalar`] and can be
//! run in floating point or exactly over big rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar:
    Num + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar")
    }

    /// Conversion for user-supplied real parameters. Exact scalars take the
    /// binary value of the float.
    fn from_real(v: f64) -> Self {
        Self::from_f64(v).expect("finite real parameter")
    }

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {
    fn from_count(v: usize) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// `num / den` in the scalar type.
pub fn ratio<T: Scalar>(num: usize, den: usize) -> T {
    T::from_count(num) / T::from_count(den)
}

pub fn powi<T: Scalar>(x: T, e: u32) -> T {
    num_traits::pow(x, e as usize)
}

/// Binomial coefficient extended to a convex function of a real top
/// argument: `t(t-1)...(t-r+1)/r!` when `t >= r - 1`, zero otherwise.
pub fn extended_binomial<T: Scalar>(t: &T, r: u32) -> T {
    if r == 0 {
        return T::one();
    }
    let r_minus_one = T::from_count(r as usize - 1);
    if *t < r_minus_one {
        return T::zero();
    }
    let mut acc = T::one();
    for i in 0..r {
        acc = acc * (t.clone() - T::from_count(i as usize)) / T::from_count(i as usize + 1);
    }
    acc
}

/// Integer binomial as a scalar. Exact for rationals, rounded for floats.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_count(n - i) / T::from_count(i + 1);
    }
    acc
}

/// Smallest integer `>= x`, computed without leaving the scalar type when it
/// is exact.
pub fn ceil_count<T: Scalar>(x: &T) -> usize {
    if *x <= T::zero() {
        return 0;
    }
    let approx = x.to_real().ceil().max(0.0) as usize;
    // correct possible off-by-one from float rounding
    let mut c = approx.saturating_sub(1);
    while T::from_count(c) < *x {
        c += 1;
    }
    c
}

pub fn is_one<T: Scalar>(x: &T) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn extended_binomial_matches_integer_binomial() {
        for t in 0..10usize {
            for r in 0..5u32 {
                let e: f64 = extended_binomial(&(t as f64), r);
                let b = crate::combin::binomial(t as u64, r as u64) as f64;
                assert!((e - b).abs() < 1e-9, "t={t} r={r}");
            }
        }
    }

    #[test]
    fn extended_binomial_convention_below_threshold() {
        let x: BigRational = extended_binomial(&BigRational::from_real(0.5), 3);
        assert!(x.is_zero());
        // t in [r-1, r) is allowed and positive for non-integer t
        let y: f64 = extended_binomial(&1.5, 2);
        assert!((y - 0.375).abs() < 1e-12);
    }

    #[test]
    fn ceil_is_exact_for_rationals() {
        let x: BigRational = ratio(9, 4);
        assert_eq!(ceil_count(&x), 3);
        let y: BigRational = ratio(8, 4);
        assert_eq!(ceil_count(&y), 2);
        assert_eq!(ceil_count(&0.0f64), 0);
    }
}
