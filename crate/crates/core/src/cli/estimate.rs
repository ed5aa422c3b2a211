use std::collections::BTreeMap;

use crate::consts::E_REF;
use crate::error::{Error, Result};
use crate::limits::compound;
use crate::loginv::quadrature_log;
use crate::odesolve::euler_final;
use crate::powcore::PosReal;
use crate::report::{EstimateReport, Method};
use crate::series::{factorial_partial_sum, series_error_certificate, tail_bound, CERTIFICATE_MAX_N};
use crate::slopes::{difference_quotient, stretch_estimate_from_slope, QuotientKind};

/// Method parameters; anything left `None` takes the method's default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EstimateParams {
    pub base: Option<f64>,
    pub h: Option<f64>,
    pub quotient: QuotientKind,
    pub n: Option<u64>,
    pub terms: Option<u64>,
    pub panels: Option<u64>,
}

/// Truncation index used when certifying `(1 + 1/n)^n`.
const CERTIFICATE_M: u64 = 18;

fn compound_certificate(n: u64) -> Option<f64> {
    (n <= CERTIFICATE_MAX_N).then(|| series_error_certificate(n, n.min(CERTIFICATE_M)).ok()).flatten()
}

fn positive(name: &str, v: u64) -> Result<u64> {
    if v == 0 {
        Err(Error::Invalid(format!("--{name} must be at least 1")))
    } else {
        Ok(v)
    }
}

/// Solves `∫_1^y dt/t = 1` for `y` by bisection on `[2, 3]`.
fn log_inverse(panels: u64) -> Result<f64> {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if quadrature_log(PosReal::new(mid)?, panels)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn cmd_estimate(method: Method, p: &EstimateParams) -> Result<EstimateReport> {
    let mut parameters = BTreeMap::new();
    let (estimate, certificate) = match method {
        Method::Stretch => {
            let base = p.base.unwrap_or(3.0);
            let h = p.h.unwrap_or(1e-4);
            if base <= 1.0 {
                return Err(Error::Invalid(format!("--base must exceed 1, got {base}")));
            }
            let a = PosReal::new(base)?;
            let slope = difference_quotient(a, h, p.quotient)?.value;
            parameters.insert("base".into(), base);
            parameters.insert("h".into(), h);
            parameters.insert("slope".into(), slope);
            (stretch_estimate_from_slope(a, slope)?, None)
        }
        Method::Compound => {
            let n = positive("n", p.n.unwrap_or(1_000_000))?;
            parameters.insert("n".into(), n as f64);
            (compound(n)?, compound_certificate(n))
        }
        Method::Series => {
            let m = p.terms.unwrap_or(17);
            parameters.insert("terms".into(), m as f64);
            (factorial_partial_sum(m)?, Some(tail_bound(m)))
        }
        Method::Euler => {
            let n = positive("n", p.n.unwrap_or(1_000_000))?;
            parameters.insert("n".into(), n as f64);
            parameters.insert("x".into(), 1.0);
            (euler_final(1.0, n)?, compound_certificate(n))
        }
        Method::LogInverse => {
            let panels = positive("panels", p.panels.unwrap_or(10_000))?;
            parameters.insert("panels".into(), panels as f64);
            (log_inverse(panels)?, None)
        }
    };
    Ok(EstimateReport { method, parameters, estimate, error_vs_reference: estimate - E_REF, certificate })
}
