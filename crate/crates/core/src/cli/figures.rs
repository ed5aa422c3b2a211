use crate::error::{Error, Result};
use crate::loginv::{ln, napier_log, reflection_slope_check};
use crate::powcore::{power, PosReal};
use crate::report::{Curve, FigureData, FigureId};
use crate::series::taylor_exp;
use crate::consts::NAPIER_WHOLE_SINE;

pub const MIN_SAMPLES: usize = 16;
pub const MAX_SAMPLES: usize = 4096;
pub const DEFAULT_SAMPLES: usize = 256;

/// `samples` evenly spaced points on `[lo, hi]`, with `0` added when it lies
/// inside.
fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let step = (hi - lo) / (samples - 1) as f64;
    let mut xs: Vec<f64> = (0..samples).map(|i| if i + 1 == samples { hi } else { lo + i as f64 * step }).collect();
    if lo < 0.0 && hi > 0.0 && !xs.contains(&0.0) {
        xs.push(0.0);
        xs.sort_by(f64::total_cmp);
    }
    xs
}

fn exp(x: f64) -> Result<f64> {
    Ok(taylor_exp(x, 1e-17)?.partial_sum)
}

fn sample(xs: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<Vec<(f64, f64)>> {
    xs.iter().map(|&x| Ok((x, f(x)?))).collect()
}

/// Line through `(x0, y0)` with slope `m`, sampled at its two ends.
fn segment(label: &str, x0: f64, y0: f64, m: f64, half_width: f64) -> Curve {
    let (a, b) = (x0 - half_width, x0 + half_width);
    Curve::new(label, vec![(a, y0 + m * (a - x0)), (b, y0 + m * (b - x0))])
}

fn exp_stretch(samples: usize) -> Result<Vec<Curve>> {
    let eight = PosReal::new(8.0)?;
    let xs = linspace(-2.0, 2.0, samples);
    let ln8 = ln(8.0)?;
    Ok(vec![
        Curve::new("8^x", sample(&xs, |x| power(eight, x))?),
        Curve::new("8^(x/6)", sample(&xs, |x| power(eight, x / 6.0))?),
        segment("tangent 8^x at 0", 0.0, 1.0, ln8, 0.5),
        segment("tangent 8^(x/6) at 0", 0.0, 1.0, ln8 / 6.0, 0.5),
    ])
}

/// `e^x` on `[lo, hi]` and `ln x` as its mirror image.
fn exp_and_log(lo: f64, hi: f64, samples: usize) -> Result<(Curve, Curve)> {
    let pts = sample(&linspace(lo, hi, samples), exp)?;
    let mirrored = pts.iter().map(|&(x, y)| (y, x)).collect();
    Ok((Curve::new("e^x", pts), Curve::new("ln x", mirrored)))
}

fn reflect(samples: usize) -> Result<Vec<Curve>> {
    let (e, l) = exp_and_log(-2.0, 2.0, samples)?;
    let top = exp(2.0)?;
    Ok(vec![
        e,
        l,
        Curve::new("y = x", sample(&linspace(-2.0, top, samples), Ok)?),
        segment("tangent e^x at (0, 1)", 0.0, 1.0, 1.0, 1.0),
        segment("tangent ln x at (1, 0)", 1.0, 0.0, 1.0, 1.0),
    ])
}

fn inverse_derivative(samples: usize) -> Result<Vec<Curve>> {
    let (e, l) = exp_and_log(-2.0, 1.5, samples)?;
    let a = 2.0;
    let b = ln(a)?;
    let s = reflection_slope_check(PosReal::new(a)?, 1e-6)?;
    Ok(vec![
        e,
        l,
        segment("tangent e^x at (ln 2, 2)", b, a, s.exp_slope, 0.5),
        segment("tangent ln x at (2, ln 2)", a, b, s.log_slope, 1.0),
    ])
}

fn napier(samples: usize) -> Result<Vec<Curve>> {
    let pts = (1..=samples as u64)
        .map(|i| {
            let sine = i * NAPIER_WHOLE_SINE / samples as u64;
            let e = napier_log(sine)?;
            Ok((sine as f64, e.napier_log))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![Curve::new("napier log", pts)])
}

pub fn cmd_figures(figure_id: FigureId, samples: usize) -> Result<FigureData> {
    if !(MIN_SAMPLES..=MAX_SAMPLES).contains(&samples) {
        return Err(Error::Invalid(format!(
            "--samples must lie in {MIN_SAMPLES}..={MAX_SAMPLES}, got {samples}"
        )));
    }
    let curves = match figure_id {
        FigureId::ExpStretch => exp_stretch(samples)?,
        FigureId::Reflect => reflect(samples)?,
        FigureId::InverseDerivative => inverse_derivative(samples)?,
        FigureId::Napier => napier(samples)?,
    };
    Ok(FigureData { figure_id, curves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(c: &Curve) -> f64 {
        let (p, q) = (c.points[0], c.points[c.points.len() - 1]);
        (q.1 - p.1) / (q.0 - p.0)
    }

    #[test]
    fn exp_stretch_shares_intercept() {
        let f = cmd_figures(FigureId::ExpStretch, 64).unwrap();
        for label in ["8^x", "8^(x/6)"] {
            assert!(f.curve(label).unwrap().points.contains(&(0.0, 1.0)), "{label}");
        }
        assert!(f.curves.iter().all(Curve::is_valid));
    }

    #[test]
    fn reflect_tangents_have_slope_one() {
        let f = cmd_figures(FigureId::Reflect, 16).unwrap();
        assert_eq!(slope(f.curve("tangent e^x at (0, 1)").unwrap()), 1.0);
        assert_eq!(slope(f.curve("tangent ln x at (1, 0)").unwrap()), 1.0);
        assert!(f.curves.iter().all(Curve::is_valid));
    }

    #[test]
    fn inverse_derivative_slopes_are_reciprocal() {
        let f = cmd_figures(FigureId::InverseDerivative, 100).unwrap();
        let m1 = slope(f.curve("tangent e^x at (ln 2, 2)").unwrap());
        let m2 = slope(f.curve("tangent ln x at (2, ln 2)").unwrap());
        assert!((m1 - 2.0).abs() < 1e-6 && (m2 - 0.5).abs() < 1e-6);
    }

    #[test]
    fn napier_and_sampling_limits() {
        let f = cmd_figures(FigureId::Napier, 16).unwrap();
        assert_eq!(f.curves[0].points.last().unwrap(), &(1e7, 0.0));
        assert!(cmd_figures(FigureId::Napier, 15).is_err());
        assert!(cmd_figures(FigureId::Napier, 4097).is_err());
    }
}
