//! Scalar types the trace backend can run on.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::Num;

/// Exact nonnegative rational used by the counting backend.
pub type Exact = Ratio<u64>;

/// A field-like number type: `f32`, `f64` or an exact rational.
pub trait Scalar: Num + Clone + PartialOrd + Debug {
    /// The number `n` (a count of tokens).
    fn from_count(n: usize) -> Self;

    fn to_f64(&self) -> f64;
}

macro_rules! impl_float_scalar {
    ($($t:ty)*) => ($(
        impl Scalar for $t {
            fn from_count(n: usize) -> Self {
                n as $t
            }

            fn to_f64(&self) -> f64 {
                f64::from(*self)
            }
        }
    )*)
}

impl_float_scalar!(f32 f64);

impl Scalar for Exact {
    fn from_count(n: usize) -> Self {
        Ratio::from_integer(n as u64)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}
