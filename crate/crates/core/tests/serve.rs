#![allow(clippy::approx_constant)]

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::process::Command;
use std::thread;

use elab_core::cli::serve::{route, Server, ServerHandle};
use elab_core::limits::{compound, compound_x};
use elab_core::odesolve::euler_path;
use elab_core::powcore::{power, PosReal};
use elab_core::series::taylor_exp;
use elab_core::slopes::{diff_quotient, stretch_estimate_from_slope};
use serde_json::Value;

fn start() -> (u16, ServerHandle) {
    let server = Server::bind("127.0.0.1:0").unwrap();
    let port = server.port();
    (port, server.spawn(4))
}

fn get(port: u16, target: &str) -> (u16, String, String) {
    let mut s = TcpStream::connect(("127.0.0.1", port)).unwrap();
    write!(s, "GET {target} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").unwrap();
    let mut raw = String::new();
    s.read_to_string(&mut raw).unwrap();
    let (head, body) = raw.split_once("\r\n\r\n").unwrap();
    let status = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    (status, head.to_owned(), body.to_owned())
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn pr(v: f64) -> PosReal {
    PosReal::new(v).unwrap()
}

#[test]
fn endpoints_match_library_bit_for_bit() {
    let (port, handle) = start();
    let json = |t: &str| -> Value {
        let (status, _, body) = get(port, t);
        assert_eq!(status, 200, "{t}: {body}");
        serde_json::from_str(&body).unwrap()
    };

    let v = json("/api/tangent-slope?a=3&h=1e-4");
    assert_eq!(num(&v["slope"]), diff_quotient(pr(3.0), 1e-4).unwrap());

    let v = json("/api/stretch-estimate?a=5&h=1e-5");
    let slope = diff_quotient(pr(5.0), 1e-5).unwrap();
    assert_eq!(num(&v["slope"]), slope);
    assert_eq!(num(&v["e_estimate"]), stretch_estimate_from_slope(pr(5.0), slope).unwrap());

    let v = json("/api/curve?a=8&stretch=6&xmin=-2&xmax=2&samples=17");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 17);
    for p in pts {
        assert_eq!(num(&p[1]), power(pr(8.0), num(&p[0]) / 6.0).unwrap());
    }
    assert_eq!(num(&v["tangent_at_intercept"]["slope"]), diff_quotient(pr(8.0), 1e-6 / 6.0).unwrap() / 6.0);

    assert_eq!(num(&json("/api/compound?n=1")["value"]), 2.0);
    assert_eq!(num(&json("/api/compound?n=100")["value"]), compound(100).unwrap());
    assert_eq!(num(&json("/api/compound-x?x=-0.5&n=77")["value"]), compound_x(-0.5, 77).unwrap());

    let v = json("/api/euler-path?x=1&n=4");
    let lib = euler_path(1.0, 4).unwrap();
    let pts = v["points"].as_array().unwrap();
    assert_eq!(num(&pts[4][1]), 2.44140625);
    for (p, q) in pts.iter().zip(&lib.points) {
        assert_eq!((num(&p[0]), num(&p[1])), *q);
    }

    let v = json("/api/series?x=1.5&tol=1e-12");
    let s = taylor_exp(1.5, 1e-12).unwrap();
    assert_eq!(num(&v["value"]), s.partial_sum);
    assert_eq!(v["terms"].as_u64(), Some(s.terms_used));
    assert_eq!(num(&v["tail_bound"]), s.tail_bound);

    handle.stop();
}

#[test]
fn errors_and_headers() {
    let (port, handle) = start();
    let (status, head, body) = get(port, "/api/compound?n=0");
    assert_eq!(status, 400);
    assert!(head.to_ascii_lowercase().contains("access-control-allow-origin: *"));
    assert!(serde_json::from_str::<Value>(&body).unwrap()["error"].is_string());
    assert_eq!(get(port, "/api/tangent-slope?a=3&h=1e-20").0, 400);
    assert_eq!(get(port, "/missing").0, 404);
    handle.stop();
}

#[test]
fn concurrent_requests_match_sequential() {
    let (port, handle) = start();
    let targets: Vec<String> = (1..=24).map(|n| format!("/api/compound-x?x=2&n={}", n * 1000)).collect();
    let sequential: Vec<String> = targets.iter().map(|t| route(t).1).collect();
    let threads: Vec<_> = targets
        .iter()
        .cloned()
        .map(|t| thread::spawn(move || get(port, &t).2))
        .collect();
    let concurrent: Vec<String> = threads.into_iter().map(|t| t.join().unwrap()).collect();
    assert_eq!(sequential, concurrent);
    handle.stop();
}

#[test]
fn slope_threshold_gives_estimate_within_one_percent() {
    // Steering the stretch until the intercept slope is within 0.005 of 1.
    for a in [2.0f64, 3.0, 5.0, 10.0] {
        let (lo, hi) = (0.2f64, 8.0f64);
        let slope_at = |s: f64| {
            let v: Value = serde_json::from_str(&route(&format!("/api/curve?a={a}&stretch={s}&xmin=-1&xmax=1&samples=16")).1).unwrap();
            num(&v["tangent_at_intercept"]["slope"])
        };
        let (mut lo, mut hi) = (lo, hi);
        let mut s = 1.0;
        for _ in 0..60 {
            s = 0.5 * (lo + hi);
            let m = slope_at(s);
            if (m - 1.0).abs() < 0.005 {
                break;
            }
            if m > 1.0 { lo = s } else { hi = s }
        }
        assert!((slope_at(s) - 1.0).abs() < 0.005);
        let v: Value = serde_json::from_str(&route(&format!("/api/stretch-estimate?a={a}&h=1e-6")).1).unwrap();
        let est = num(&v["e_estimate"]);
        let implied = a.powf(1.0 / s);
        assert!((est - 2.718281828459045).abs() < 0.01 * 2.718281828459045);
        assert!((implied - 2.718281828459045).abs() < 0.01 * 2.718281828459045, "a = {a}");
    }
}

#[test]
fn busy_port_exits_1() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port().to_string();
    let out = Command::new(env!("CARGO_BIN_EXE_elab")).args(["serve", "--port", &port]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
