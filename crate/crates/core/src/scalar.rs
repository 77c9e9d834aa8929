//! Scalar abstractions.
//!
//! [`Scalar`] is the minimal ring interface the exact and floating code paths
//! share; it is implemented for `f32`, `f64` and [`BigRational`]. [`Real`]
//! adds the transcendental operations of [`num_traits::Float`] and is only
//! implemented for the binary floating-point types.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Num, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialOrd + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static {
    fn from_bigint(v: &BigInt) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Exact conversion for rationals (every finite double is dyadic);
    /// `None` for non-finite input.
    fn try_from_f64(v: f64) -> Option<Self>;

    /// Nearest `f64`; may be infinite for huge rationals.
    fn to_f64_lossy(&self) -> f64;
}

pub trait Real: Scalar + Float + FloatConst + Display + Sum + Copy {
    /// Converts a literal; rounds for `f32`.
    fn lit(v: f64) -> Self;

    /// `√(2π)`, the total mass of the weight `e^{-x²/2}`.
    fn sqrt_two_pi() -> Self {
        (Self::PI() + Self::PI()).sqrt()
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_bigint(v: &BigInt) -> Self {
                match v.to_f64() {
                    Some(f) => f as $t,
                    None => <$t>::NAN,
                }
            }

            fn try_from_f64(v: f64) -> Option<Self> {
                v.is_finite().then_some(v as $t)
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }

        impl Real for $t {
            fn lit(v: f64) -> Self {
                v as $t
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn try_from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64()
            .unwrap_or_else(|| self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN))
    }
}

/// Integer power by repeated squaring; `0^0 = 1`.
pub fn powu<T: Scalar>(base: &T, exp: usize) -> T {
    let mut result = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    result
}
