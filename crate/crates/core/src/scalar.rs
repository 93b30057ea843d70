//! Integer coefficient types usable for exact character values.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Exact integer scalar: `i64`, `i128`, or an arbitrary-precision integer.
pub trait Coeff:
    Clone + Debug + Display + Integer + Signed + NumAssign + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_u64_exact(n: u64) -> Self {
        Self::from_u64(n).expect("value fits the coefficient type")
    }

    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("value fits the coefficient type")
    }
}

impl<T> Coeff for T where
    T: Clone + Debug + Display + Integer + Signed + NumAssign + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
