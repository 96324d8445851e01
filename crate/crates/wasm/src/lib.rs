//! Browser bindings for the exact distribution engine.  Three interactive
//! operations, all exchanging JSON strings with the page:
//!
//! * [`eval_curve`] - parse a piecewise function, normalise its point
//!   values, and sample both versions for plotting (jumps stay jumps: one
//!   polyline per piece plus explicit breakpoint markers);
//! * [`lattice_curves`] - validate two primitives, form their join / meet /
//!   absolute value, and return the curves, the exactness flag and the norm
//!   enclosure of the result;
//! * [`delta_lambda_integral`] - the normalisation-dependent pairing of the
//!   (n-1)-st Dirac derivative with the iterated step kernel, exact.
//!
//! All numeric work happens in exact rational arithmetic; floats appear
//! only in the sampled plot data.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use rpint_core::distribution::{alexiewicz_norm, dirac_derivative, integrate, Distribution};
use rpint_core::lattice;
use rpint_core::numeric::{rat_from_str, rat_to_f64, rat_to_string};
use rpint_core::serial::{piecewise_from_json, piecewise_to_doc, PiecewiseDoc};
use rpint_core::spaces::{iterate_integral, BVFunction, Multiplier, RegulatedPrimitive};
use rpint_core::{rat, rat_i, Error, PiecewiseFn};

#[derive(Serialize)]
struct Segment {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Serialize)]
struct Marker {
    x: f64,
    left: f64,
    right: f64,
    value: f64,
}

#[derive(Serialize)]
struct Curve {
    segments: Vec<Segment>,
    markers: Vec<Marker>,
}

fn sample_curve(f: &PiecewiseFn, x_min: f64, x_max: f64, samples: u32) -> Curve {
    let samples = samples.clamp(8, 4096) as usize;
    let mut cuts: Vec<f64> = vec![x_min];
    for b in f.breakpoints() {
        let bf = rat_to_f64(b);
        if bf > x_min && bf < x_max {
            cuts.push(bf);
        }
    }
    cuts.push(x_max);
    let total = (x_max - x_min).max(1e-9);
    let mut segments = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let n = ((samples as f64) * (hi - lo) / total).ceil().max(2.0) as usize;
        let mut xs = Vec::with_capacity(n + 1);
        let mut ys = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = lo + (hi - lo) * (i as f64) / (n as f64);
            // nudge the segment ends inward so jumps render one-sided
            let probe = match i {
                0 => lo + (hi - lo) * 1e-9,
                k if k == n => hi - (hi - lo) * 1e-9,
                _ => x,
            };
            xs.push(x);
            ys.push(f.eval_f64(probe));
        }
        segments.push(Segment { xs, ys });
    }
    let markers = f
        .breakpoints()
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            let bf = rat_to_f64(b);
            bf >= x_min && bf <= x_max
        })
        .map(|(i, b)| Marker {
            x: rat_to_f64(b),
            left: rat_to_f64(&f.limit_left(b)),
            right: rat_to_f64(&f.limit_right(b)),
            value: rat_to_f64(&f.point_values()[i]),
        })
        .collect();
    Curve { segments, markers }
}

#[derive(Serialize)]
struct EvalResponse {
    original: Curve,
    normalized: Curve,
    normalized_doc: PiecewiseDoc,
}

fn eval_curve_impl(
    doc: &str,
    lambda: &str,
    x_min: f64,
    x_max: f64,
    samples: u32,
) -> Result<String, Error> {
    let f = piecewise_from_json(doc)?;
    let lam = rat_from_str(lambda)?;
    if lam < rat_i(0) || lam > rat_i(1) {
        return Err(Error::Parse("lambda must lie in [0, 1]".into()));
    }
    let normalized = f.normalize(&lam);
    let response = EvalResponse {
        original: sample_curve(&f, x_min, x_max, samples),
        normalized: sample_curve(&normalized, x_min, x_max, samples),
        normalized_doc: piecewise_to_doc(&normalized),
    };
    Ok(serde_json::to_string(&response).expect("serializable"))
}

#[derive(Serialize)]
struct LatticeResponse {
    a: Curve,
    b: Curve,
    result: Curve,
    exact: bool,
    norm_lo: String,
    norm_hi: String,
    norm_decimal: f64,
    result_doc: PiecewiseDoc,
}

fn lattice_curves_impl(
    doc_a: &str,
    doc_b: &str,
    op: &str,
    x_min: f64,
    x_max: f64,
    samples: u32,
) -> Result<String, Error> {
    let fa = Distribution::new(1, RegulatedPrimitive::validate(piecewise_from_json(doc_a)?)?);
    let fb = Distribution::new(1, RegulatedPrimitive::validate(piecewise_from_json(doc_b)?)?);
    let tol = rat(1, 1_000_000_000);
    let result = match op {
        "join" => lattice::join(&fa, &fb, &tol)?,
        "meet" => lattice::meet(&fa, &fb, &tol)?,
        "abs" => lattice::abs_value(&fa.sub(&fb)?, &tol),
        other => return Err(Error::Parse(format!("unknown lattice op {other:?}"))),
    };
    let norm = alexiewicz_norm(&result.value, &tol);
    let rf = result.value.primitive().as_fn();
    let response = LatticeResponse {
        a: sample_curve(fa.primitive().as_fn(), x_min, x_max, samples),
        b: sample_curve(fb.primitive().as_fn(), x_min, x_max, samples),
        result: sample_curve(rf, x_min, x_max, samples),
        exact: result.exact,
        norm_lo: rat_to_string(&norm.lo),
        norm_hi: rat_to_string(&norm.hi),
        norm_decimal: rat_to_f64(&norm.hi),
        result_doc: piecewise_to_doc(rf),
    };
    Ok(serde_json::to_string(&response).expect("serializable"))
}

#[derive(Serialize)]
struct DeltaResponse {
    order: u32,
    lambda: String,
    value: String,
    decimal: f64,
    kernel: Curve,
    iterated: Curve,
}

fn delta_lambda_integral_impl(n: u32, lambda: &str) -> Result<String, Error> {
    if n == 0 || n > 8 {
        return Err(Error::Parse("order must lie in 1..=8".into()));
    }
    let lam = rat_from_str(lambda)?;
    if lam < rat_i(0) || lam > rat_i(1) {
        return Err(Error::Parse("lambda must lie in [0, 1]".into()));
    }
    let step = PiecewiseFn::heaviside(lam.clone());
    let m = Multiplier::from_bv(n - 1, step.clone(), lam.clone())?;
    let value = integrate(&dirac_derivative(n - 1), &m, &lam)?;
    let iterated = iterate_integral(&BVFunction::normalized(step.clone(), lam.clone())?, n - 1);
    let response = DeltaResponse {
        order: n,
        lambda: rat_to_string(&lam),
        value: rat_to_string(&value),
        decimal: rat_to_f64(&value),
        kernel: sample_curve(&step, -2.0, 2.0, 200),
        iterated: sample_curve(&iterated, -2.0, 2.0, 200),
    };
    Ok(serde_json::to_string(&response).expect("serializable"))
}

/// Built-in example functions for the page's text areas.
fn preset_impl(name: &str) -> Result<String, Error> {
    let f = match name {
        "step" => PiecewiseFn::heaviside(rat(0, 1)),
        "half_step" => PiecewiseFn::heaviside(rat(1, 2)),
        "ramp" => PiecewiseFn::clamped_ramp(rat_i(-1), rat_i(1)),
        "triangle" => lattice::triangle_bumps().0,
        "twin_triangle" => lattice::triangle_bumps().1,
        "spike" => PiecewiseFn::point_mass_indicator(rat_i(0)),
        "wave" => {
            let up = PiecewiseFn::clamped_ramp(rat_i(-2), rat_i(0));
            let down = PiecewiseFn::clamped_ramp(rat_i(0), rat_i(2));
            up.sub(&down.scale(&rat(3, 2)))
                .add(&PiecewiseFn::clamped_ramp(rat_i(2), rat_i(3)).scale(&rat(1, 2)))
        }
        other => return Err(Error::Parse(format!("unknown preset {other:?}"))),
    };
    Ok(rpint_core::serial::piecewise_to_json(&f))
}

fn to_js(r: Result<String, Error>) -> Result<String, wasm_bindgen::JsValue> {
    r.map_err(|e| wasm_bindgen::JsValue::from_str(&e.to_string()))
}

/// Sample a piecewise function and its lambda-normalisation for plotting.
#[wasm_bindgen]
pub fn eval_curve(
    doc: &str,
    lambda: &str,
    x_min: f64,
    x_max: f64,
    samples: u32,
) -> Result<String, wasm_bindgen::JsValue> {
    to_js(eval_curve_impl(doc, lambda, x_min, x_max, samples))
}

/// Join / meet / absolute value of two primitives, with curves and norm.
#[wasm_bindgen]
pub fn lattice_curves(
    doc_a: &str,
    doc_b: &str,
    op: &str,
    x_min: f64,
    x_max: f64,
    samples: u32,
) -> Result<String, wasm_bindgen::JsValue> {
    to_js(lattice_curves_impl(doc_a, doc_b, op, x_min, x_max, samples))
}

/// Exact value of the pairing of delta^(n-1) with the iterated step kernel.
#[wasm_bindgen]
pub fn delta_lambda_integral(n: u32, lambda: &str) -> Result<String, wasm_bindgen::JsValue> {
    to_js(delta_lambda_integral_impl(n, lambda))
}

/// Named example functions, serialized in the piecewise JSON format.
#[wasm_bindgen]
pub fn preset(name: &str) -> Result<String, wasm_bindgen::JsValue> {
    to_js(preset_impl(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_curve_reports_jump_markers() {
        let doc = preset_impl("step").unwrap();
        let out = eval_curve_impl(&doc, "1/2", -2.0, 2.0, 64).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["original"]["markers"][0]["value"], 0.0);
        assert_eq!(v["normalized"]["markers"][0]["value"], 0.5);
        assert_eq!(v["original"]["segments"].as_array().unwrap().len(), 2);
        assert_eq!(v["normalized_doc"]["point_values"][0], "1/2");
    }

    #[test]
    fn lattice_join_of_presets() {
        let a = preset_impl("triangle").unwrap();
        let b = preset_impl("twin_triangle").unwrap();
        let out = lattice_curves_impl(&a, &b, "join", -3.0, 4.0, 64).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exact"], true);
        assert_eq!(v["norm_lo"], "1");
        assert_eq!(v["norm_hi"], "1");
    }

    #[test]
    fn delta_integral_tracks_lambda_and_sign() {
        for (n, lambda, expect) in [
            (1u32, "1/4", "1/4"),
            (2, "1/4", "-1/4"),
            (3, "1/2", "1/2"),
            (4, "1", "-1"),
            (5, "0", "0"),
        ] {
            let out = delta_lambda_integral_impl(n, lambda).unwrap();
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["value"], expect, "n={n} lambda={lambda}");
        }
    }

    #[test]
    fn invalid_inputs_are_reported() {
        assert!(eval_curve_impl("{", "0", -1.0, 1.0, 32).is_err());
        assert!(eval_curve_impl(&preset_impl("step").unwrap(), "3/2", -1.0, 1.0, 32).is_err());
        assert!(preset_impl("nope").is_err());
        // right-continuous step is not a valid primitive for the lattice ops
        let bad = preset_impl("half_step").unwrap();
        let good = preset_impl("ramp").unwrap();
        assert!(lattice_curves_impl(&bad, &good, "join", -1.0, 1.0, 32).is_err());
    }
}
