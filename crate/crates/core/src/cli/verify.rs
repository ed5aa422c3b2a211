//! Property suites run by `elab verify`.
//!
//! Each check draws from its own ChaCha8 stream derived from the seed, the
//! suite and the check's position, so filtering by suite never changes what
//! another check sees.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::consts::{E_REF, PI_CONF};
use crate::exact::{self, BigRational};
use crate::limits::{
    compound, compound_exact, compound_x, exponent_bridge, interchange_counterexample, supplementary_exact,
};
use crate::loginv::{briggs_log10, ln, napier_log, nat_log, quadrature_log, reflection_slope_check};
use crate::odesolve::{euler_final, euler_path, euler_path_exact, solution_divergence};
use crate::powcore::{chord_gap, exp_base, int_pow, nth_root, ulp, PosReal, DEFAULT_DEPTH, MAX_DEPTH};
use crate::series::{
    binomial_term, complex_exp, factorial_partial_sum, series_error_certificate, sinc_limit_table, taylor_cos,
    taylor_exp, taylor_sin,
};
use crate::slopes::{
    diff_quotient, estimate_e_by_stretch, secant_slope_at, slope_enclosure, stretch_estimate_from_slope,
    tangent_slope_at, MAX_LEVEL, MIN_LEVEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Powcore,
    Slopes,
    Limits,
    Series,
    Binomial,
    Odesolve,
    Loginv,
    History,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Powcore,
        Suite::Slopes,
        Suite::Limits,
        Suite::Series,
        Suite::Binomial,
        Suite::Odesolve,
        Suite::Loginv,
        Suite::History,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Powcore => "powcore",
            Suite::Slopes => "slopes",
            Suite::Limits => "limits",
            Suite::Series => "series",
            Suite::Binomial => "binomial",
            Suite::Odesolve => "odesolve",
            Suite::Loginv => "loginv",
            Suite::History => "history",
        }
    }

    fn checks(self) -> &'static [Check] {
        match self {
            Suite::Powcore => POWCORE,
            Suite::Slopes => SLOPES,
            Suite::Limits => LIMITS,
            Suite::Series => SERIES,
            Suite::Binomial => BINOMIAL,
            Suite::Odesolve => ODESOLVE,
            Suite::Loginv => LOGINV,
            Suite::History => HISTORY,
        }
    }
}

type Outcome = std::result::Result<(), String>;

struct Check {
    id: &'static str,
    run: fn(&mut ChaCha8Rng) -> Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub id: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    /// `suite/id`.
    pub fn qualified_id(&self) -> String {
        format!("{}/{}", self.suite.name(), self.id)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifySummary {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    /// One `PASS`/`FAIL` line per check and a closing count.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            match (&r.detail, r.passed) {
                (_, true) => s += &format!("PASS {}\n", r.qualified_id()),
                (Some(d), false) => s += &format!("FAIL {}: {d}\n", r.qualified_id()),
                (None, false) => s += &format!("FAIL {}\n", r.qualified_id()),
            }
        }
        s += &format!("verify: {} passed, {} failed\n", self.passed, self.failed);
        s
    }
}

fn check_rng(seed: u64, suite: Suite, index: usize) -> ChaCha8Rng {
    let tag = ((suite as u64) << 32) | index as u64;
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ tag)
}

pub fn cmd_verify(suites: &[Suite], seed: u64) -> VerifySummary {
    let mut results = Vec::new();
    for &suite in suites {
        for (i, check) in suite.checks().iter().enumerate() {
            let mut rng = check_rng(seed, suite, i);
            let outcome = (check.run)(&mut rng);
            results.push(CheckResult { suite, id: check.id, passed: outcome.is_ok(), detail: outcome.err() });
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    VerifySummary { passed: results.len() - failed, failed, results }
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pr(v: f64) -> std::result::Result<PosReal, String> {
    lib(PosReal::new(v))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

fn exp17(x: f64) -> std::result::Result<f64, String> {
    lib(taylor_exp(x, 1e-17)).map(|s| s.partial_sum)
}

// ---------------------------------------------------------------- powcore

const POWCORE: &[Check] = &[
    Check { id: "exp-base-monotone", run: exp_base_monotone },
    Check { id: "nth-root-round-trip", run: nth_root_round_trip },
    Check { id: "exp-base-homomorphism", run: exp_base_homomorphism },
    Check { id: "chord-gap-positive", run: chord_gap_positive },
    Check { id: "enclosure-width-monotone", run: enclosure_width_monotone },
    Check { id: "dyadic-contraction", run: dyadic_contraction },
];

fn exp_base_monotone(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let a = pr(rng.gen_range(1.0..=10.0f64).max(1.0 + 1e-9))?;
        let (p, q) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let (x, y) = if p < q { (p, q) } else { (q, p) };
        let d = rng.gen_range(20..=40);
        let (ex, ey) = (lib(exp_base(a, x, d))?, lib(exp_base(a, y, d))?);
        ensure(ex.lo() <= ey.lo() && ex.hi() <= ey.hi(), || {
            format!("a = {}, x = {x}, y = {y}, d = {d}: {ex:?} vs {ey:?}", a.get())
        })?;
    }
    Ok(())
}

fn nth_root_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..1000 {
        let x = rng.gen_range(0.1..=100.0);
        let n = rng.gen_range(1..=20u32);
        let y = lib(int_pow(pr(x)?, n as u64))?;
        let back = lib(nth_root(y, n, 1e-12))?.get();
        ensure((back - x).abs() <= 1e-10 * x, || format!("x = {x}, n = {n}: got {back}"))?;
    }
    Ok(())
}

fn exp_base_homomorphism(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let a = pr(rng.gen_range(0.2..=10.0))?;
        let (p, q) = (rng.gen_range(-5.0..=5.0), rng.gen_range(-5.0..=5.0));
        let mid = |x: f64| lib(exp_base(a, x, DEFAULT_DEPTH)).map(|e| e.midpoint());
        let (whole, product) = (mid(p + q)?, mid(p)? * mid(q)?);
        ensure((whole - product).abs() <= 1e-9 * whole, || {
            format!("a = {}, p = {p}, q = {q}: {whole} vs {product}", a.get())
        })?;
    }
    Ok(())
}

fn chord_gap_positive(rng: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    while done < 1000 {
        let a = rng.gen_range(1.0..=10.0f64);
        let mut t = [rng.gen_range(-5.0..=5.0f64), rng.gen_range(-5.0..=5.0), rng.gen_range(-5.0..=5.0)];
        t.sort_by(f64::total_cmp);
        // Gaps below the sampling resolution sit under rounding noise.
        if a <= 1.0 + 1e-3 || t[1] - t[0] < 1e-3 || t[2] - t[1] < 1e-3 {
            continue;
        }
        let g = lib(chord_gap(pr(a)?, t[0], t[2], t[1]))?;
        ensure(g > 0.0, || format!("a = {a}, (b, x, c) = {t:?}: gap {g}"))?;
        done += 1;
    }
    Ok(())
}

fn enclosure_width_monotone(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let a = pr(rng.gen_range(0.1..=20.0))?;
        let x = rng.gen_range(-4.0..=4.0);
        let mut prev = f64::INFINITY;
        for d in 0..=MAX_DEPTH {
            let w = lib(exp_base(a, x, d))?.width();
            ensure(w <= prev, || format!("a = {}, x = {x}: width grows at depth {d}", a.get()))?;
            prev = w;
        }
    }
    Ok(())
}

fn dyadic_contraction(_: &mut ChaCha8Rng) -> Outcome {
    for k in 1..=250 {
        let x = k as f64 / 1000.0;
        ensure((1.0 + x).sqrt() < 1.0 + 0.6 * x, || format!("x = {x}"))?;
    }
    for a in [0.01, 0.5, 2.0, 10.0, 1e6] {
        let mut r = a;
        let mut dist = (a - 1.0f64).abs();
        for i in 0..40 {
            r = r.sqrt();
            let d = (r - 1.0).abs();
            ensure(d <= dist, || format!("a = {a}: root {i} moved away from 1"))?;
            dist = d;
        }
        ensure(dist < 1e-9, || format!("a = {a}: 2^40-th root still {dist} from 1"))?;
    }
    Ok(())
}

// ----------------------------------------------------------------- slopes

const SLOPES: &[Check] = &[
    Check { id: "stretch-recipe", run: stretch_recipe },
    Check { id: "quotient-ordering", run: quotient_ordering },
    Check { id: "enclosure-contains-log", run: enclosure_contains_log },
    Check { id: "enclosures-nested", run: enclosures_nested },
    Check { id: "stretch-invariance", run: stretch_invariance },
    Check { id: "factorization-identity", run: factorization_identity },
];

fn stretch_recipe(_: &mut ChaCha8Rng) -> Outcome {
    let three = pr(3.0)?;
    let dq = lib(diff_quotient(three, 1e-4))?;
    ensure((1.0986..=1.0987).contains(&dq), || format!("slope {dq}"))?;
    let est = lib(estimate_e_by_stretch(three, 1e-4))?;
    ensure((est - E_REF).abs() <= 2e-4, || format!("estimate {est}"))?;
    let rounded = lib(stretch_estimate_from_slope(three, 1.1))?;
    let root = lib(nth_root(lib(int_pow(three, 10))?, 11, 1e-15))?.get();
    ensure((rounded - root).abs() <= 1e-12 && (rounded - 2.715).abs() <= 5e-4, || {
        format!("rounded-slope estimate {rounded}, eleventh root of 3^10 {root}")
    })
}

fn quotient_ordering(rng: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    while done < 1000 {
        let a = pr(rng.gen_range(1.05..=10.0))?;
        let mut m = [0.0f64; 4];
        for v in &mut m {
            *v = log_uniform(rng, 2f64.powi(-10), 1.0);
        }
        let (n1, n2) = if m[0] > m[1] { (m[0], m[1]) } else { (m[1], m[0]) };
        let (p1, p2) = if m[2] < m[3] { (m[2], m[3]) } else { (m[3], m[2]) };
        if n1 / n2 < 1.05 || p2 / p1 < 1.05 {
            continue;
        }
        let h = [-n1, -n2, p1, p2];
        let q: Vec<f64> = h.iter().map(|&h| lib(diff_quotient(a, h))).collect::<Result<_, _>>()?;
        ensure(q.windows(2).all(|w| w[0] < w[1]), || format!("a = {}, h = {h:?}: {q:?}", a.get()))?;
        done += 1;
    }
    Ok(())
}

fn enclosure_contains_log(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..500 {
        let a = rng.gen_range(1.0..=100.0f64);
        if a <= 1.0 {
            continue;
        }
        let l = lib(ln(a))?;
        for k in [10, 20, 30] {
            let e = lib(slope_enclosure(pr(a)?, k))?.interval;
            ensure(e.contains(l), || format!("a = {a}, level {k}: {e:?} misses ln a = {l}"))?;
        }
    }
    Ok(())
}

fn enclosures_nested(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..10 {
        let a = pr(rng.gen_range(1.01..=100.0))?;
        let mut prev = lib(slope_enclosure(a, MIN_LEVEL))?.interval;
        for k in MIN_LEVEL + 1..=MAX_LEVEL {
            let e = lib(slope_enclosure(a, k))?.interval;
            ensure(e.lo() >= prev.lo() && e.hi() <= prev.hi(), || {
                format!("a = {}: level {k} {e:?} escapes {prev:?}", a.get())
            })?;
            prev = e;
        }
    }
    Ok(())
}

fn stretch_invariance(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..5 {
        let a = rng.gen_range(1.5..=4.0f64);
        let base = lib(estimate_e_by_stretch(pr(a)?, 1e-6))?;
        for s in [2, 3, 10] {
            let other = lib(estimate_e_by_stretch(pr(a.powi(s))?, 1e-6))?;
            ensure((base - other).abs() <= 5e-5, || format!("a = {a}, s = {s}: {base} vs {other}"))?;
        }
    }
    Ok(())
}

fn factorization_identity(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..1000 {
        let a = pr(rng.gen_range(1.5..=10.0))?;
        let x = rng.gen_range(-3.0..=3.0);
        let h = log_uniform(rng, 0.05, 1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (direct, factored) = (lib(secant_slope_at(a, x, h))?, lib(tangent_slope_at(a, x, h))?);
        ensure((direct - factored).abs() <= 1e-12 * factored.abs(), || {
            format!("a = {}, x = {x}, h = {h}: {direct} vs {factored}", a.get())
        })?;
    }
    Ok(())
}

// ----------------------------------------------------------------- limits

const LIMITS: &[Check] = &[
    Check { id: "compound-monotone", run: compound_monotone },
    Check { id: "oracle-agreement", run: oracle_agreement },
    Check { id: "first-order-convergence", run: first_order_convergence },
    Check { id: "exponent-bridge", run: bridge_identity },
    Check { id: "compound-x-limit", run: compound_x_limit },
    Check { id: "pitfall-e-squared", run: pitfall_e_squared },
    Check { id: "supplementary-near-e", run: supplementary_near_e },
    Check { id: "interchange-counterexample", run: interchange },
];

fn compound_monotone(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..300 {
        let n = log_uniform(rng, 1.0, 1e6).round() as u64;
        let (c0, c1) = (lib(compound(n))?, lib(compound(n + 1))?);
        ensure(c0 < c1 && c1 < std::f64::consts::E, || format!("n = {n}: {c0}, {c1}"))?;
    }
    Ok(())
}

fn oracle_agreement(_: &mut ChaCha8Rng) -> Outcome {
    let one = exact::ratio(1, 1);
    for n in (1..=64).chain([100, 1000, 10_000]) {
        let oracle = exact::to_f64(&lib(compound_exact(&one, n))?);
        let got = lib(compound(n))?;
        ensure((got - oracle).abs() <= 4.0 * ulp(oracle), || format!("n = {n}: {got} vs {oracle}"))?;
    }
    Ok(())
}

fn halving_ratios(f: impl Fn(u64) -> crate::Result<f64>) -> Outcome {
    for n in [1_000u64, 10_000, 100_000] {
        let (e1, e2) = (E_REF - lib(f(n))?, E_REF - lib(f(2 * n))?);
        let r = e1 / e2;
        ensure((1.8..=2.2).contains(&r), || format!("n = {n}: ratio {r}"))?;
    }
    Ok(())
}

fn first_order_convergence(_: &mut ChaCha8Rng) -> Outcome {
    halving_ratios(compound)
}

fn bridge_identity(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..500 {
        let x = rng.gen_range(-5.0..=5.0f64);
        let n = log_uniform(rng, 10.0, 1e9).round() as u64;
        let b = lib(exponent_bridge(x, n))?;
        ensure((b.lhs - b.rhs).abs() <= 16.0 * f64::EPSILON * b.lhs.abs(), || {
            format!("x = {x}, n = {n}: {} vs {}", b.lhs, b.rhs)
        })?;
    }
    Ok(())
}

fn compound_x_limit(_: &mut ChaCha8Rng) -> Outcome {
    for x in [-2.0, -1.0, 0.5, 1.0, 2.0] {
        let (v, r) = (lib(compound_x(x, 10_000_000))?, exp17(x)?);
        ensure((v - r).abs() <= 1e-5, || format!("x = {x}: {v} vs {r}"))?;
    }
    Ok(())
}

fn pitfall_e_squared(_: &mut ChaCha8Rng) -> Outcome {
    let v = lib(compound_x(2.0, 1_000_000))?;
    ensure((v - 7.3890561).abs() <= 1e-3, || format!("{v}"))
}

fn supplementary_near_e(_: &mut ChaCha8Rng) -> Outcome {
    let v = exact::to_f64(&lib(supplementary_exact(10_000))?);
    ensure((v - E_REF).abs() <= 1e-5, || format!("(1 + 1/n + 1/n^2)^n at n = 10^4 is {v}, {} from e", v - E_REF))
}

fn interchange(_: &mut ChaCha8Rng) -> Outcome {
    let i = lib(interchange_counterexample(100))?;
    ensure((i.row_limit, i.column_limit) == (1.0, 0.0), || format!("{i:?}"))
}

// ----------------------------------------------------------------- series

const SERIES: &[Check] = &[
    Check { id: "partial-sum-17", run: partial_sum_17 },
    Check { id: "exp-minus-one", run: exp_minus_one },
    Check { id: "pythagorean", run: pythagorean },
    Check { id: "unit-modulus", run: unit_modulus },
    Check { id: "euler-identity", run: euler_identity },
    Check { id: "compound-x-bridge", run: compound_x_bridge },
    Check { id: "sinc-monotone", run: sinc_monotone },
];

fn partial_sum_17(_: &mut ChaCha8Rng) -> Outcome {
    let s = lib(factorial_partial_sum(17))?;
    ensure((s - E_REF).abs() <= 1e-15, || format!("{s}"))
}

fn exp_minus_one(_: &mut ChaCha8Rng) -> Outcome {
    let oracle = (0..=40u64).fold(BigRational::from_integer(0.into()), |acc, k| {
        let t = exact::inverse_factorial(k);
        if k % 2 == 0 { acc + t } else { acc - t }
    });
    let oracle = exact::to_f64(&oracle);
    let v = exp17(-1.0)?;
    ensure((v - oracle).abs() <= 1e-15, || format!("{v} vs {oracle}"))
}

fn pythagorean(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let x = rng.gen_range(-10.0..=10.0);
        let (s, c) = (lib(taylor_sin(x, 1e-17))?, lib(taylor_cos(x, 1e-17))?);
        ensure((s * s + c * c - 1.0).abs() <= 1e-12, || format!("x = {x}: {}", s * s + c * c))?;
    }
    Ok(())
}

fn unit_modulus(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let t = rng.gen_range(-10.0..=10.0);
        let m = lib(complex_exp(t, 1e-17))?.modulus();
        ensure((m - 1.0).abs() <= 1e-12, || format!("theta = {t}: {m}"))?;
    }
    Ok(())
}

fn euler_identity(_: &mut ChaCha8Rng) -> Outcome {
    let z = lib(complex_exp(PI_CONF, 1e-17))?;
    let d = (z.re + 1.0).hypot(z.im);
    ensure(d <= 1e-12, || format!("|e^(i pi) + 1| = {d}"))
}

fn compound_x_bridge(_: &mut ChaCha8Rng) -> Outcome {
    for x in [-2.0, -1.0, 1.0, 2.0] {
        let (v, r) = (lib(compound_x(x, 1_000_000))?, exp17(x)?);
        ensure((v - r).abs() <= 1e-4, || format!("x = {x}: {v} vs {r}"))?;
    }
    Ok(())
}

fn sinc_monotone(_: &mut ChaCha8Rng) -> Outcome {
    let rows = lib(sinc_limit_table(0..=30))?;
    ensure(rows.windows(2).all(|w| w[0].value <= w[1].value), || "values not increasing".into())?;
    ensure(rows.iter().all(|r| r.bound_holds() && r.value <= 1.0), || "bound violated".into())
}

// --------------------------------------------------------------- binomial

const BINOMIAL: &[Check] = &[
    Check { id: "binomial-exactness", run: binomial_exactness },
    Check { id: "domination", run: domination },
    Check { id: "certificate-soundness", run: certificate_soundness },
    Check { id: "pointwise-convergence", run: pointwise_convergence },
];

fn binomial_exactness(_: &mut ChaCha8Rng) -> Outcome {
    let one = exact::ratio(1, 1);
    for n in 1..=60u64 {
        let sum = (0..=n).fold(BigRational::from_integer(0.into()), |acc, k| acc + exact::binomial_term(n, k));
        ensure(sum == lib(compound_exact(&one, n))?, || format!("n = {n}"))?;
    }
    Ok(())
}

fn domination(rng: &mut ChaCha8Rng) -> Outcome {
    let inv: Vec<f64> = (0..=170).map(|k| exact::to_f64(&exact::inverse_factorial(k))).collect();
    let ns: Vec<u64> = (1..=50).chain((0..100).map(|_| rng.gen_range(51..=1000))).collect();
    for n in ns {
        for k in 1..=n.min(170) {
            let a = lib(binomial_term(n, k))?;
            // Positivity is only representable above the normal range.
            let positive = a > 0.0 || exact::to_f64(&exact::binomial_term(n, k)) < f64::MIN_POSITIVE;
            ensure(positive && a <= inv[k as usize], || format!("n = {n}, k = {k}: {a}"))?;
        }
    }
    Ok(())
}

fn certificate_soundness(_: &mut ChaCha8Rng) -> Outcome {
    let limit = exact::factorial_partial_sum(40);
    let one = exact::ratio(1, 1);
    for (n, m) in [(10, 5), (100, 10), (1000, 12), (10_000, 15)] {
        let gap = exact::to_f64(&(&limit - lib(compound_exact(&one, n))?).abs());
        let cert = lib(series_error_certificate(n, m))?;
        ensure(gap <= cert, || format!("(n, m) = ({n}, {m}): gap {gap} exceeds {cert}"))?;
    }
    Ok(())
}

fn pointwise_convergence(_: &mut ChaCha8Rng) -> Outcome {
    for k in [2u64, 3, 5, 10] {
        let limit = exact::inverse_factorial(k);
        let mut prev = BigRational::from_integer(0.into());
        for n in (k..=1000).step_by(7) {
            let a = exact::binomial_term(n, k);
            ensure(a > prev && a <= limit, || format!("k = {k}, n = {n}"))?;
            prev = a;
        }
        let gap = exact::to_f64(&(&limit - &prev)) / exact::to_f64(&limit);
        ensure(gap < 0.05, || format!("k = {k}: relative gap {gap} at n ~ 1000"))?;
    }
    Ok(())
}

// --------------------------------------------------------------- odesolve

const ODESOLVE: &[Check] = &[
    Check { id: "exact-equivalence", run: exact_equivalence },
    Check { id: "endpoint-convergence", run: endpoint_convergence },
    Check { id: "divergence-ratio", run: divergence_ratio },
    Check { id: "four-step-path", run: four_step_path },
];

fn exact_equivalence(_: &mut ChaCha8Rng) -> Outcome {
    use rayon::prelude::*;
    for (p, q) in [(1, 1), (1, 2), (-1, 3), (2, 1)] {
        let x = exact::ratio(p, q);
        (1..=1000u64).into_par_iter().try_for_each(|n| {
            let path = lib(euler_path_exact(&x, n))?;
            let end = path.last().expect("non-empty path");
            ensure(*end == lib(compound_exact(&x, n))?, || format!("x = {p}/{q}, n = {n}"))
        })?;
    }
    Ok(())
}

fn endpoint_convergence(_: &mut ChaCha8Rng) -> Outcome {
    halving_ratios(|n| euler_final(1.0, n))
}

fn divergence_ratio(_: &mut ChaCha8Rng) -> Outcome {
    for (x, n) in [(1.0, 10), (1.0, 1000), (-1.0, 1000), (2.0, 100_000)] {
        let (r6, r8) = (lib(solution_divergence(1e-6, x, n))?, lib(solution_divergence(1e-8, x, n))?);
        ensure((r6 - r8).abs() <= 1e-6 * r8.abs(), || format!("x = {x}, n = {n}: {r6} vs {r8}"))?;
    }
    Ok(())
}

fn four_step_path(_: &mut ChaCha8Rng) -> Outcome {
    let p = lib(euler_path(1.0, 4))?;
    ensure(p.final_value() == 2.44140625, || format!("{}", p.final_value()))
}

// ----------------------------------------------------------------- loginv

const LOGINV: &[Check] = &[
    Check { id: "inverse-round-trip", run: inverse_round_trip },
    Check { id: "reciprocal-slopes", run: reciprocal_slopes },
    Check { id: "quadrature-ln2", run: quadrature_ln2 },
    Check { id: "quadrature-order", run: quadrature_order },
    Check { id: "secant-limit", run: secant_limit },
    Check { id: "cross-method-log", run: cross_method_log },
];

fn inverse_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..500 {
        let v = rng.gen_range(-20.0..=20.0);
        let back = lib(ln(exp17(v)?))?;
        ensure((back - v).abs() <= 1e-11, || format!("v = {v}: {back}"))?;
    }
    Ok(())
}

fn reciprocal_slopes(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let a = rng.gen_range(0.1..=100.0);
        let s = lib(reflection_slope_check(pr(a)?, 1e-6))?;
        ensure((s.product - 1.0).abs() <= 1e-6, || format!("a = {a}: product {}", s.product))?;
    }
    Ok(())
}

fn quadrature_ln2(_: &mut ChaCha8Rng) -> Outcome {
    let (q, l) = (lib(quadrature_log(pr(2.0)?, 10_000))?, lib(ln(2.0))?);
    ensure((q - l).abs() <= 1e-8, || format!("{q} vs {l}"))
}

fn quadrature_order(_: &mut ChaCha8Rng) -> Outcome {
    for x in [0.5, 2.0, 5.0, 10.0] {
        let l = lib(nat_log(pr(x)?, 1e-16))?.value;
        let err = |p| lib(quadrature_log(pr(x)?, p)).map(|q| (q - l).abs());
        for p in [100, 200, 400] {
            let r = err(p)? / err(2 * p)?;
            ensure((3.5..=4.5).contains(&r), || format!("x = {x}, panels {p}: ratio {r}"))?;
        }
    }
    Ok(())
}

fn secant_limit(_: &mut ChaCha8Rng) -> Outcome {
    let mut prev = 0.0;
    for k in 1..=20 {
        let d = 2f64.powi(-k);
        let s = lib(ln(1.0 + d))? / d;
        ensure(s > prev && s < 1.0, || format!("delta = 2^-{k}: slope {s} after {prev}"))?;
        prev = s;
    }
    ensure(1.0 - prev < 1e-6, || format!("slope {prev} at delta = 2^-20"))
}

fn cross_method_log(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let a = log_uniform(rng, 1.001, 1e6);
        let l = lib(ln(a))?;
        let e = lib(slope_enclosure(pr(a)?, 30))?.interval;
        ensure(e.contains(l), || format!("a = {a}: {e:?} misses {l}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- history

const HISTORY: &[Check] = &[
    Check { id: "napier-sine-18", run: napier_sine_18 },
    Check { id: "napier-whole-sine", run: napier_whole_sine },
    Check { id: "briggs-2488", run: briggs_2488 },
];

fn napier_sine_18(_: &mut ChaCha8Rng) -> Outcome {
    let e = lib(napier_log(3_090_170))?;
    ensure(e.rounded == 11_743_590 && (e.rounded - 11_743_586).abs() <= 10, || format!("{e:?}"))
}

fn napier_whole_sine(_: &mut ChaCha8Rng) -> Outcome {
    let e = lib(napier_log(10_000_000))?;
    ensure(e.napier_log == 0.0, || format!("{e:?}"))
}

fn briggs_2488(_: &mut ChaCha8Rng) -> Outcome {
    let v = lib(briggs_log10(pr(2488.0)?))?;
    ensure((v - 3.39585037601878).abs() <= 1e-11, || format!("{v}"))
}
