//! The serialized solver output and its checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use compose_solve::algebra::{is_squarefree, Algebra, UPoly};
use compose_solve::oracle::residual_check;
use compose_solve::param::{remove_singular, GeometricResolution};
use compose_solve::slp::Slp;
use compose_solve::solver::SolveReport;
use compose_solve::{Error, Fp, PrimeField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub prime: String,
    pub lambda: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
    pub count: usize,
    pub warnings: Vec<String>,
    /// Seconds per stage; empty unless timings were requested.
    pub stage_timings: BTreeMap<String, f64>,
    pub verified: Option<bool>,
}

fn digits(cs: &[Fp]) -> Vec<String> {
    cs.iter().map(|c| c.value().to_string()).collect()
}

impl OutputRecord {
    pub fn from_report(report: &SolveReport<Fp>, f: &PrimeField, timings: bool) -> Self {
        let gr = &report.resolution;
        OutputRecord {
            prime: f.modulus().to_string(),
            lambda: digits(&gr.lambda),
            p: digits(gr.q.coeffs()),
            w: gr.w.iter().map(|w| digits(w.coeffs())).collect(),
            count: gr.degree(),
            warnings: report.warnings.clone(),
            stage_timings: if timings {
                report.timings.iter().map(|(k, d)| (k.clone(), d.as_secs_f64())).collect()
            } else {
                BTreeMap::new()
            },
            verified: None,
        }
    }

    pub fn field(&self) -> Result<PrimeField, Error> {
        let p = self
            .prime
            .parse()
            .map_err(|_| Error::MalformedRecord(format!("prime `{}` is not an integer", self.prime)))?;
        PrimeField::new_verification(p)
    }

    /// The resolution stored in the record, checked for shape.
    pub fn resolution(&self, f: &PrimeField) -> Result<GeometricResolution<Fp>, Error> {
        let elems = |cs: &[String]| -> Result<Vec<Fp>, Error> {
            cs.iter()
                .map(|c| match c.parse::<u64>() {
                    Ok(v) if v < f.modulus() => Ok(f.elem(v)),
                    _ => Err(Error::MalformedRecord(format!("`{c}` is not a residue mod {}", f.modulus()))),
                })
                .collect()
        };
        let parse = |cs: &[String]| elems(cs).map(|v| UPoly::from_coeffs(f, v));
        let q = parse(&self.p)?;
        if q.coeffs().len() != self.p.len() || self.p.is_empty() {
            return Err(Error::MalformedRecord("P has a zero leading coefficient".into()));
        }
        if self.count + 1 != self.p.len() {
            return Err(Error::MalformedRecord(format!(
                "count {} does not match deg P = {}",
                self.count,
                self.p.len() - 1
            )));
        }
        if self.w.len() != self.lambda.len() {
            return Err(Error::MalformedRecord("lambda and W have different lengths".into()));
        }
        if self.w.iter().any(|w| w.len() > self.count) {
            return Err(Error::MalformedRecord("a W list is not shorter than P".into()));
        }
        let w = self.w.iter().map(|w| parse(w)).collect::<Result<Vec<_>, _>>()?;
        let lambda = elems(&self.lambda)?;
        Ok(GeometricResolution { q, w, lambda })
    }
}

/// Outcome of each check on a resolution of `fsys`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checks {
    pub residual: bool,
    pub lambda: bool,
    pub squarefree: bool,
    pub regular: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.residual && self.lambda && self.squarefree && self.regular
    }

    pub fn lines(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("residual", self.residual),
            ("lambda relation", self.lambda),
            ("squarefree", self.squarefree),
            ("regularity", self.regular),
        ]
    }
}

pub fn check(fsys: &Slp<Fp>, gr: &GeometricResolution<Fp>, f: &PrimeField) -> Checks {
    let squarefree = gr.q.is_monic(f) && is_squarefree(&gr.q, f);
    let Some(ring) = gr.ring(f) else {
        // P = 1, nothing to check beyond shape
        return Checks {
            residual: fsys.n_inputs() == gr.n(),
            lambda: true,
            squarefree,
            regular: true,
        };
    };
    let residual = residual_check(fsys, gr, f).is_none();
    let lw = gr
        .w
        .iter()
        .zip(&gr.lambda)
        .fold(ring.zero(), |acc, (w, l)| ring.add(&acc, &ring.scale(l, &ring.reduce(w))));
    let lambda = lw == ring.var();
    // the Jacobian test needs a squarefree modulus
    let regular = squarefree && fsys.n_inputs() == gr.n() && remove_singular(fsys, gr, f).q == gr.q;
    Checks {
        residual,
        lambda,
        squarefree,
        regular,
    }
}
