//! Integer scalars and the two tropical semirings the kernels run over.

use std::fmt::{Debug, Display};

use num_traits::{PrimInt, Signed};

/// Signed integer type usable as a tropical cost.
///
/// `INF` and `NEG_INF` are reserved sentinels. Finite values are expected to
/// stay within `±FINITE_BOUND`, so the sum of two finite values never reaches
/// a sentinel and never overflows.
pub trait Scalar: PrimInt + Signed + Debug + Display + Send + Sync + 'static {
    const INF: Self;
    const NEG_INF: Self;
    const FINITE_BOUND: Self;

    fn is_finite(self) -> bool {
        self != Self::INF && self != Self::NEG_INF
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const INF: Self = <$t>::MAX / 4;
            const NEG_INF: Self = -(<$t>::MAX / 4);
            const FINITE_BOUND: Self = <$t>::MAX / 8;
        }
    };
}

impl_scalar!(i32);
impl_scalar!(i64);

/// A tropical semiring over [`Scalar`] values.
///
/// `plus` selects the better of two candidates, `times` is saturating
/// addition, `zero` is the absorbing "infeasible" sentinel and `one` is 0.
pub trait Semiring: Copy + Clone + Debug + Default + Send + Sync + 'static {
    const NAME: &'static str;

    fn zero<T: Scalar>() -> T;

    fn one<T: Scalar>() -> T {
        T::zero()
    }

    fn plus<T: Scalar>(a: T, b: T) -> T;

    fn times<T: Scalar>(a: T, b: T) -> T {
        let z = Self::zero::<T>();
        if a == z || b == z {
            z
        } else {
            a + b
        }
    }

    fn is_zero<T: Scalar>(a: T) -> bool {
        a == Self::zero::<T>()
    }

    /// True when `a` is at least as good as `b` under this semiring's order.
    fn better_or_equal<T: Scalar>(a: T, b: T) -> bool {
        Self::plus(a, b) == a
    }
}

/// `(min, +)` with `INF` as the infeasible sentinel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinPlus;

/// `(max, +)` with `NEG_INF` as the infeasible sentinel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaxPlus;

impl Semiring for MinPlus {
    const NAME: &'static str = "min-plus";

    fn zero<T: Scalar>() -> T {
        T::INF
    }

    fn plus<T: Scalar>(a: T, b: T) -> T {
        a.min(b)
    }
}

impl Semiring for MaxPlus {
    const NAME: &'static str = "max-plus";

    fn zero<T: Scalar>() -> T {
        T::NEG_INF
    }

    fn plus<T: Scalar>(a: T, b: T) -> T {
        a.max(b)
    }
}
