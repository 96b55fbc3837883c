//! Bivariate polynomials in `(U, T)`, stored as a dense polynomial in `U`
//! whose coefficients are univariate polynomials in `T`.

use crate::algebra::field::Field;
use crate::algebra::upoly::{interpolate, resultant, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly<E> {
    /// `rows[i]` is the coefficient of `U^i`, a polynomial in `T`.
    rows: Vec<UPoly<E>>,
}

impl<E> Default for BiPoly<E> {
    fn default() -> Self {
        BiPoly { rows: Vec::new() }
    }
}

impl<E: Clone> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn from_rows(mut rows: Vec<UPoly<E>>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// From a table `grid[i][j]` = coefficient of `U^i T^j`.
    pub fn from_i64_grid<F: Field<Elem = E>>(f: &F, grid: &[&[i64]]) -> Self {
        Self::from_rows(grid.iter().map(|r| UPoly::from_i64s(f, r)).collect())
    }

    /// A polynomial in `U` only.
    pub fn from_u_poly<F: Field<Elem = E>>(p: &UPoly<E>, f: &F) -> Self {
        Self::from_rows(
            p.coeffs()
                .iter()
                .map(|c| UPoly::constant(f, c.clone()))
                .collect(),
        )
    }

    /// A polynomial in `T` only.
    pub fn from_t_poly(p: UPoly<E>) -> Self {
        Self::from_rows(vec![p])
    }

    pub fn rows(&self) -> &[UPoly<E>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_u(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    pub fn row(&self, i: usize) -> UPoly<E> {
        self.rows.get(i).cloned().unwrap_or_default()
    }

    /// Coefficient of `U^i T^j`.
    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize, j: usize) -> E {
        self.rows.get(i).map_or_else(|| f.zero(), |r| r.coeff(f, j))
    }

    /// Monic in `U`: the leading row is the constant 1.
    pub fn is_monic_in_u<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.rows
            .last()
            .is_some_and(|r| r.degree() == Some(0) && f.is_one(&r.coeffs()[0]))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.rows.len().max(other.rows.len());
        Self::from_rows((0..n).map(|i| self.row(i).add(&other.row(i), f)).collect())
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.rows.len().max(other.rows.len());
        Self::from_rows((0..n).map(|i| self.row(i).sub(&other.row(i), f)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![UPoly::zero(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j] = rows[i + j].add(&a.mul(b, f), f);
            }
        }
        Self::from_rows(rows)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c, f)).collect())
    }

    /// Truncation modulo `T^m`.
    pub fn truncate_t<F: Field<Elem = E>>(&self, m: usize, f: &F) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.truncate(m, f)).collect())
    }

    pub fn derivative_u<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.scale(&f.from_u64(i as u64), f))
                .collect(),
        )
    }

    /// Specialization `T = t`, a polynomial in `U`.
    pub fn eval_t<F: Field<Elem = E>>(&self, t: &E, f: &F) -> UPoly<E> {
        UPoly::from_coeffs(f, self.rows.iter().map(|r| r.eval(t, f)).collect())
    }

    /// Specialization `U = u`, a polynomial in `T`.
    pub fn eval_u<F: Field<Elem = E>>(&self, u: &E, f: &F) -> UPoly<E> {
        self.rows
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, r| acc.scale(u, f).add(r, f))
    }

    /// Substitution `T -> T + c`.
    pub fn shift_t<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.shift(c, f)).collect())
    }

    /// Reduces every `T`-coefficient polynomial modulo `m(T)`.
    pub fn rem_t<F: Field<Elem = E>>(&self, m: &UPoly<E>, f: &F) -> Result<Self> {
        Ok(Self::from_rows(
            self.rows
                .iter()
                .map(|r| r.rem(m, f))
                .collect::<Result<_>>()?,
        ))
    }

    /// Same polynomial with the roles of `U` and `T` exchanged.
    pub fn transpose<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let dt = self.deg_t().map_or(0, |d| d + 1);
        Self::from_rows(
            (0..dt)
                .map(|j| {
                    UPoly::from_coeffs(f, self.rows.iter().map(|r| r.coeff(f, j)).collect())
                })
                .collect(),
        )
    }
}

/// `Res_T(a(T), b(U, T))` as a polynomial in `U`, for `a` monic in `T` of
/// positive degree.
///
/// Since `a` is monic the resultant equals the product of `b(U, alpha)` over
/// the roots `alpha` of `a`, so it has `U`-degree at most
/// `deg(a) * deg_U(b)`; it is recovered by evaluating `U` at that many plus one
/// points, taking univariate resultants, and interpolating.
pub fn resultant_in_second_var<F: Field>(
    a: &UPoly<F::Elem>,
    b: &BiPoly<F::Elem>,
    f: &F,
) -> Result<UPoly<F::Elem>> {
    let da = match a.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegenerateInput("resultant with a constant".into())),
    };
    if !a.is_monic(f) {
        return Err(Error::DegenerateInput("resultant needs a monic first argument".into()));
    }
    let Some(du) = b.deg_u() else {
        return Ok(UPoly::zero());
    };
    let npoints = da * du + 1;
    let ch = f.characteristic();
    if ch != 0 && (npoints as u64) >= ch {
        return Err(Error::TooLarge(format!(
            "resultant of U-degree {} needs more evaluation points than the field has",
            npoints - 1
        )));
    }
    let points: Vec<_> = (0..npoints)
        .map(|i| {
            let u = f.from_u64(i as u64);
            let bu = b.eval_u(&u, f);
            let r = resultant(a, &bu, f);
            (u, r)
        })
        .collect();
    interpolate(&points, f)
}
