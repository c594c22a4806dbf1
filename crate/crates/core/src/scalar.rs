use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar used by the tensor forms, the solver and the bound formulas: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts a count or small constant. Panics only if the value is not representable,
    /// which cannot happen for the magnitudes used in this crate.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in scalar type")
    }

    #[inline]
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar type")
    }

    /// `self^k` for a small non-negative integer exponent, by repeated squaring.
    #[inline]
    fn ipow(self, k: usize) -> Self {
        let mut base = self;
        let mut exp = k;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Principal real `k`-th root of a non-negative value.
    #[inline]
    fn root(self, k: usize) -> Self {
        match k {
            1 => self,
            2 => self.sqrt(),
            3 => self.cbrt(),
            _ => self.powf(Self::one() / Self::of_usize(k)),
        }
    }

    /// Default tolerance for "sums to one" checks at this precision.
    #[inline]
    fn unit_sum_tol() -> Self {
        Self::of(1e-12).max(Self::epsilon() * Self::of(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
