use crate::algebra::field::Field;

/// A commutative ring containing the coefficient field: the target of
/// straight-line program evaluation.
pub trait Algebra {
    type Base: Field;
    type Elem: Clone;

    fn base(&self) -> &Self::Base;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn embed(&self, c: &<Self::Base as Field>::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn scale(&self, c: &<Self::Base as Field>::Elem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.embed(c), a)
    }

    /// `sum_k a_k b_k`.
    fn dot(&self, a: &[&Self::Elem], b: &[&Self::Elem]) -> Self::Elem {
        a.iter().zip(b).fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// The coefficient field itself as an evaluation target.
#[derive(Clone, Debug)]
pub struct Scalars<F>(pub F);

impl<F: Field> Algebra for Scalars<F> {
    type Base = F;
    type Elem = F::Elem;

    fn base(&self) -> &F {
        &self.0
    }

    fn zero(&self) -> F::Elem {
        Field::zero(&self.0)
    }

    fn one(&self) -> F::Elem {
        Field::one(&self.0)
    }

    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::add(&self.0, a, b)
    }

    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::sub(&self.0, a, b)
    }

    fn neg(&self, a: &F::Elem) -> F::Elem {
        Field::neg(&self.0, a)
    }

    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::mul(&self.0, a, b)
    }

    fn embed(&self, c: &F::Elem) -> F::Elem {
        c.clone()
    }

    fn is_zero(&self, a: &F::Elem) -> bool {
        Field::is_zero(&self.0, a)
    }

    fn scale(&self, c: &F::Elem, a: &F::Elem) -> F::Elem {
        Field::mul(&self.0, c, a)
    }
}
