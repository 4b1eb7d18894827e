//! Scalar traits shared by the exact and floating-point engines.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, Num, Signed};

/// Ordered field-like scalar used by exact geometry (torus diagrams).
///
/// Implemented for `f32`, `f64`, `Ratio<i64>` and `BigRational`, so the same
/// segment and line-integral code runs exactly on rationals and approximately
/// on floats.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Display + Send + Sync {
    fn from_i64(v: i64) -> Self;

    /// Parses `p/q`, an integer, or (for floats) a decimal literal.
    fn parse_scalar(s: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn parse_scalar(s: &str) -> Option<Self> {
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: $t = p.trim().parse().ok()?;
                        let q: $t = q.trim().parse().ok()?;
                        if q == 0.0 {
                            None
                        } else {
                            Some(p / q)
                        }
                    }
                    None => s.trim().parse().ok(),
                }
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().ok()?;
                let q: i64 = q.trim().parse().ok()?;
                (q != 0).then(|| Ratio::new(p, q))
            }
            None => s.trim().parse().ok().map(Ratio::from_integer),
        }
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                (q != BigInt::from(0)).then(|| BigRational::new(p, q))
            }
            None => s.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
    fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Floating-point scalar used by the grid engines.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("representable constant")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(f64::parse_scalar("3/4"), Some(0.75));
        assert_eq!(f64::parse_scalar("0.5"), Some(0.5));
        assert_eq!(Ratio::<i64>::parse_scalar("-6/8"), Some(Ratio::new(-3, 4)));
        assert_eq!(
            BigRational::parse_scalar("7/10"),
            Some(BigRational::new(7.into(), 10.into()))
        );
        assert_eq!(BigRational::parse_scalar("1/0"), None);
        assert_eq!(BigRational::parse_scalar("0.5"), None);
    }
}
