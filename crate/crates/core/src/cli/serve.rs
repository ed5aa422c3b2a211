//! JSON service for the explorer. Handlers are pure functions of the request
//! URL; [`route`] is the whole of the request handling.

use std::collections::HashMap;
use std::io;
use std::sync::Arc;
use std::thread;

use serde::Serialize;
use url::Url;

use crate::error::{Error, Result};
use crate::limits::{compound, compound_x};
use crate::odesolve::euler_path;
use crate::powcore::{power, PosReal};
use crate::report::{ser17, ser17_points};
use crate::series::taylor_exp;
use crate::slopes::{diff_quotient, stretch_estimate_from_slope};

use super::figures::{MAX_SAMPLES, MIN_SAMPLES};

/// Step used by `/api/curve` for the intercept slope.
pub const CURVE_STEP: f64 = 1e-6;

#[derive(Serialize)]
struct Slope {
    #[serde(serialize_with = "ser17")]
    slope: f64,
}

#[derive(Serialize)]
struct StretchEstimate {
    #[serde(serialize_with = "ser17")]
    slope: f64,
    #[serde(serialize_with = "ser17")]
    e_estimate: f64,
}

#[derive(Serialize)]
struct Tangent {
    #[serde(serialize_with = "ser17")]
    slope: f64,
    #[serde(serialize_with = "ser17")]
    intercept: f64,
}

#[derive(Serialize)]
struct CurveResponse {
    #[serde(serialize_with = "ser17_points")]
    points: Vec<(f64, f64)>,
    tangent_at_intercept: Tangent,
}

#[derive(Serialize)]
struct Value {
    #[serde(serialize_with = "ser17")]
    value: f64,
}

#[derive(Serialize)]
struct Points {
    #[serde(serialize_with = "ser17_points")]
    points: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct SeriesResponse {
    #[serde(serialize_with = "ser17")]
    value: f64,
    terms: u64,
    #[serde(serialize_with = "ser17")]
    tail_bound: f64,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
}

struct Query(HashMap<String, String>);

impl Query {
    fn raw(&self, name: &str) -> Result<&str> {
        self.0.get(name).map(String::as_str).ok_or_else(|| Error::Invalid(format!("missing parameter {name}")))
    }

    fn f64(&self, name: &str) -> Result<f64> {
        let s = self.raw(name)?;
        s.trim().parse().map_err(|_| Error::Invalid(format!("parameter {name} is not a number: {s:?}")))
    }

    fn f64_or(&self, name: &str, default: f64) -> Result<f64> {
        if self.0.contains_key(name) {
            self.f64(name)
        } else {
            Ok(default)
        }
    }

    fn u64(&self, name: &str) -> Result<u64> {
        let s = self.raw(name)?;
        s.trim().parse().map_err(|_| Error::Invalid(format!("parameter {name} is not a count: {s:?}")))
    }

    fn pos(&self, name: &str) -> Result<PosReal> {
        PosReal::new(self.f64(name)?)
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("response types serialize")
}

fn curve(q: &Query) -> Result<String> {
    let a = q.pos("a")?;
    let s = q.f64_or("stretch", 1.0)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::NotPositive { what: "stretch", value: s });
    }
    let (xmin, xmax) = (q.f64("xmin")?, q.f64("xmax")?);
    if xmin.partial_cmp(&xmax) != Some(std::cmp::Ordering::Less) || !xmin.is_finite() || !xmax.is_finite() {
        return Err(Error::Invalid(format!("need finite xmin < xmax, got {xmin}, {xmax}")));
    }
    let samples = q.u64("samples")? as usize;
    if !(MIN_SAMPLES..=MAX_SAMPLES).contains(&samples) {
        return Err(Error::Invalid(format!("samples must lie in {MIN_SAMPLES}..={MAX_SAMPLES}")));
    }
    let step = (xmax - xmin) / (samples - 1) as f64;
    let points = (0..samples)
        .map(|i| {
            let x = if i + 1 == samples { xmax } else { xmin + i as f64 * step };
            Ok((x, power(a, x / s)?))
        })
        .collect::<Result<Vec<_>>>()?;
    // Slope of a^(x/s) at 0 with step h is DQ(a, h/s)/s.
    let slope = diff_quotient(a, CURVE_STEP / s)? / s;
    Ok(json(&CurveResponse { points, tangent_at_intercept: Tangent { slope, intercept: 1.0 } }))
}

fn dispatch(path: &str, q: &Query) -> Option<Result<String>> {
    let body = match path {
        "/api/tangent-slope" => (|| Ok(json(&Slope { slope: diff_quotient(q.pos("a")?, q.f64("h")?)? })))(),
        "/api/stretch-estimate" => (|| {
            let a = q.pos("a")?;
            if a.get() <= 1.0 {
                return Err(Error::Invalid(format!("stretch estimate requires a > 1, got {}", a.get())));
            }
            let slope = diff_quotient(a, q.f64("h")?)?;
            Ok(json(&StretchEstimate { slope, e_estimate: stretch_estimate_from_slope(a, slope)? }))
        })(),
        "/api/curve" => curve(q),
        "/api/compound" => (|| Ok(json(&Value { value: compound(q.u64("n")?)? })))(),
        "/api/compound-x" => (|| Ok(json(&Value { value: compound_x(q.f64("x")?, q.u64("n")?)? })))(),
        "/api/euler-path" => (|| Ok(json(&Points { points: euler_path(q.f64("x")?, q.u64("n")?)?.points })))(),
        "/api/series" => (|| {
            let s = taylor_exp(q.f64("x")?, q.f64("tol")?)?;
            Ok(json(&SeriesResponse { value: s.partial_sum, terms: s.terms_used, tail_bound: s.tail_bound }))
        })(),
        _ => return None,
    };
    Some(body)
}

/// Handles one GET request target such as `/api/compound?n=10`, returning
/// the status code and JSON body.
pub fn route(target: &str) -> (u16, String) {
    let url = match Url::parse("http://localhost").and_then(|b| b.join(target)) {
        Ok(u) => u,
        Err(e) => return (400, json(&ErrorBody { error: &format!("bad request target: {e}") })),
    };
    let q = Query(url.query_pairs().into_owned().collect());
    match dispatch(url.path(), &q) {
        Some(Ok(body)) => (200, body),
        Some(Err(e)) => (400, json(&ErrorBody { error: &e.to_string() })),
        None => (404, json(&ErrorBody { error: &format!("no such endpoint {}", url.path()) })),
    }
}

pub struct Server {
    inner: Arc<tiny_http::Server>,
}

impl Server {
    pub fn bind(addr: &str) -> io::Result<Server> {
        tiny_http::Server::http(addr).map(|s| Server { inner: Arc::new(s) }).map_err(io::Error::other)
    }

    pub fn port(&self) -> u16 {
        self.inner.server_addr().to_ip().map(|a| a.port()).unwrap_or(0)
    }

    /// Serves requests on `workers` threads until [`ServerHandle::stop`].
    pub fn spawn(self, workers: usize) -> ServerHandle {
        let threads = (0..workers.max(1))
            .map(|_| {
                let server = Arc::clone(&self.inner);
                thread::spawn(move || {
                    while let Ok(req) = server.recv() {
                        respond(req);
                    }
                })
            })
            .collect();
        ServerHandle { inner: self.inner, threads }
    }
}

pub struct ServerHandle {
    inner: Arc<tiny_http::Server>,
    threads: Vec<thread::JoinHandle<()>>,
}

impl ServerHandle {
    pub fn join(self) {
        for t in self.threads {
            let _ = t.join();
        }
    }

    pub fn stop(self) {
        for _ in &self.threads {
            self.inner.unblock();
        }
        self.join();
    }
}

fn header(name: &str, value: &str) -> tiny_http::Header {
    tiny_http::Header::from_bytes(name.as_bytes(), value.as_bytes()).expect("static header")
}

fn respond(req: tiny_http::Request) {
    let (status, body) = if *req.method() == tiny_http::Method::Get {
        route(req.url())
    } else {
        (405, json(&ErrorBody { error: "only GET is supported" }))
    };
    let resp = tiny_http::Response::from_string(body)
        .with_status_code(status)
        .with_header(header("Content-Type", "application/json; charset=utf-8"))
        .with_header(header("Access-Control-Allow-Origin", "*"));
    let _ = req.respond(resp);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(target: &str) -> serde_json::Value {
        let (status, body) = route(target);
        assert_eq!(status, 200, "{body}");
        serde_json::from_str(&body).unwrap()
    }

    #[test]
    fn examples() {
        let s = ok("/api/tangent-slope?a=3&h=1e-4")["slope"].as_f64().unwrap();
        assert!((s - 1.09867).abs() < 1e-5);
        assert_eq!(ok("/api/compound?n=1")["value"].as_f64(), Some(2.0));
        let pts = ok("/api/euler-path?x=1&n=4");
        assert_eq!(pts["points"][4][1].as_f64(), Some(2.44140625));
    }

    #[test]
    fn curve_intercept() {
        let v = ok("/api/curve?a=8&stretch=6&xmin=-1&xmax=1&samples=21");
        assert_eq!(v["points"].as_array().unwrap().len(), 21);
        assert_eq!(v["tangent_at_intercept"]["intercept"].as_f64(), Some(1.0));
        let slope = v["tangent_at_intercept"]["slope"].as_f64().unwrap();
        assert!((slope - 8f64.ln() / 6.0).abs() < 1e-6);
    }

    #[test]
    fn errors() {
        assert_eq!(route("/api/compound?n=0").0, 400);
        assert_eq!(route("/api/compound").0, 400);
        assert_eq!(route("/api/tangent-slope?a=-1&h=0.1").0, 400);
        assert_eq!(route("/api/nothing").0, 404);
        let (_, body) = route("/api/compound?n=abc");
        assert!(serde_json::from_str::<serde_json::Value>(&body).unwrap()["error"].is_string());
    }
}
