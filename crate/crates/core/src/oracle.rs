//! Independent checks: residuals of a resolution, brute-force enumeration of
//! the zeros of a system over a small prime field.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::field::{Field, Fp, PrimeField};
use crate::error::{Error, Result};
use crate::param::GeometricResolution;
use crate::slp::{MPoly, Slp};

/// Largest prime accepted for enumeration.
pub const MAX_SCAN_PRIME: u64 = 4096;
/// Largest number of points scanned.
pub const MAX_SCAN_POINTS: u64 = 100_000_000;

/// Points of `F_p^n`, as canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub points: BTreeSet<Vec<u64>>,
    pub prime: u64,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `None` when `sys(w) = 0 mod q`, otherwise the largest degree of a
/// nonzero residual.
pub fn residual_check<F: Field>(sys: &Slp<F::Elem>, gr: &GeometricResolution<F::Elem>, f: &F) -> Option<usize> {
    if sys.n_inputs() != gr.n() {
        return Some(usize::MAX);
    }
    let ring = gr.ring(f)?;
    sys.eval(&ring, &gr.w)
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.degree().unwrap_or(0))
        .max()
}

/// Dense univariate Horner evaluation at every residue.
fn roots_by_scan(coeffs: &[u64], f: &PrimeField) -> Vec<u64> {
    let p = f.modulus();
    (0..p)
        .filter(|&x| {
            let x = f.elem(x);
            let v = coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(&f.mul(&acc, &x), &f.elem(c)));
            f.is_zero(&v)
        })
        .collect()
}

/// `sys` with every variable but the last fixed by `prefix`, as dense
/// coefficients in the last variable.
fn specialize_last(sys: &MPoly<Fp>, prefix: &[Fp], f: &PrimeField) -> Vec<u64> {
    let n = sys.nvars();
    let mut out: Vec<Fp> = Vec::new();
    for (e, c) in sys.terms() {
        let mut t = *c;
        for (x, &k) in prefix.iter().zip(&e[..n - 1]) {
            for _ in 0..k {
                t = f.mul(&t, x);
            }
        }
        let k = e[n - 1] as usize;
        if out.len() <= k {
            out.resize(k + 1, f.zero());
        }
        out[k] = f.add(&out[k], &t);
    }
    out.into_iter().map(Fp::value).collect()
}

fn jacobian_det(jac: &[MPoly<Fp>], n: usize, point: &[Fp], f: &PrimeField) -> Fp {
    let mut m: Vec<Vec<Fp>> = (0..n)
        .map(|j| (0..n).map(|i| jac[j * n + i].eval(point, f)).collect())
        .collect();
    let mut det = f.one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
            return f.zero();
        };
        if r != c {
            m.swap(r, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[c][c]);
        let inv = f.inv(&m[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            let k = f.mul(&m[r][c], &inv);
            for j in c..n {
                let s = f.mul(&k, &m[c][j]);
                m[r][j] = f.sub(&m[r][j], &s);
            }
        }
    }
    det
}

/// All zeros of the square dense system `sys` in `F_p^n`, or only those with
/// invertible Jacobian. Works on expanded polynomials, independently of any
/// straight-line program.
pub fn exhaustive_solutions(sys: &[MPoly<Fp>], p: u64, regular_only: bool) -> Result<SolutionSet> {
    let f = PrimeField::new_verification(p)?;
    let n = sys.first().map_or(0, MPoly::nvars);
    if n == 0 {
        return Err(Error::DegenerateInput("system without variables".into()));
    }
    if p > MAX_SCAN_PRIME || (p as f64).powi(n as i32) > MAX_SCAN_POINTS as f64 {
        return Err(Error::TooLarge(format!("{p}^{n} points")));
    }
    let prefixes = p.pow(n as u32 - 1);
    let jac: Vec<MPoly<Fp>> = sys
        .iter()
        .flat_map(|q| (0..n).map(move |i| (q, i)))
        .map(|(q, i)| q.derivative(i, &f))
        .collect();
    let points: BTreeSet<Vec<u64>> = (0..prefixes)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let mut prefix = Vec::with_capacity(n);
            let mut k = idx;
            for _ in 0..n - 1 {
                prefix.push(f.elem(k % p));
                k /= p;
            }
            let mut candidates: Option<Vec<u64>> = None;
            for q in sys {
                let coeffs = specialize_last(q, &prefix, &f);
                candidates = Some(match candidates {
                    None => roots_by_scan(&coeffs, &f),
                    Some(c) => c
                        .into_iter()
                        .filter(|&x| {
                            let x = f.elem(x);
                            let v = coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(&f.mul(&acc, &x), &f.elem(c)));
                            f.is_zero(&v)
                        })
                        .collect(),
                });
            }
            let f = f.clone();
            let jac = &jac;
            candidates.unwrap_or_default().into_iter().filter_map(move |x| {
                let mut pt = prefix.clone();
                pt.push(f.elem(x));
                if regular_only && f.is_zero(&jacobian_det(jac, n, &pt, &f)) {
                    return None;
                }
                Some(pt.into_iter().map(Fp::value).collect())
            })
        })
        .collect();
    Ok(SolutionSet { points, prime: p })
}

/// The `F_p`-rational points of a resolution over `F_p`.
pub fn rational_points_of(gr: &GeometricResolution<Fp>, f: &PrimeField) -> Result<SolutionSet> {
    let p = f.modulus();
    if p > MAX_SCAN_POINTS {
        return Err(Error::TooLarge(format!("scanning {p} residues")));
    }
    let points = if gr.q.is_constant() {
        BTreeSet::new()
    } else {
        let coeffs: Vec<u64> = gr.q.coeffs().iter().map(|c| c.value()).collect();
        roots_by_scan(&coeffs, f)
            .into_iter()
            .map(|t| gr.w.iter().map(|w| w.eval(&f.elem(t), f).value()).collect())
            .collect()
    };
    Ok(SolutionSet { points, prime: p })
}
