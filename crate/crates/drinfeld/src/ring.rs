//! Coefficient rings for twisted polynomials.

use std::fmt::Debug;

use crate::ffield::{FieldElem, Level};

/// A commutative `F_q`-algebra with the `q`-power Frobenius.
///
/// Method names avoid the operator traits so that implementors can carry
/// both without ambiguity.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self {
        self.zero_like().minus(self)
    }
    /// `x ↦ x^q`.
    fn frob_q(&self) -> Self;
    /// Image of a constant of `F_q` (any tower with the same `p`, `e`).
    fn from_fq(&self, c: FieldElem<'_>) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut n: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// `x^{q^i}`.
    fn frob_pow(&self, i: usize) -> Self {
        (0..i).fold(self.clone(), |acc, _| acc.frob_q())
    }
}

/// A ring receiving `A = F_q[T]`: knows the image of `T`.
pub trait AAlgebra: Ring {
    fn t_image(&self) -> Self;
}

pub(crate) fn fq_value(c: FieldElem<'_>) -> u32 {
    assert!(c.in_level(Level::Fq), "constant must lie in F_q");
    c.value()
}

impl<'a> Ring for FieldElem<'a> {
    fn zero_like(&self) -> Self {
        self.tower().zero()
    }
    fn one_like(&self) -> Self {
        self.tower().one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn frob_q(&self) -> Self {
        self.frobenius(1)
    }
    fn from_fq(&self, c: FieldElem<'_>) -> Self {
        self.tower().elem(Level::Fq, fq_value(c)).expect("F_q constant")
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn pow(&self, n: u64) -> Self {
        FieldElem::pow(self, n)
    }
}
