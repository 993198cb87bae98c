//! Browser bindings for the interactive demo page.
//!
//! Three operations are exported to JavaScript, each taking plain scalars
//! and returning a JSON string (errors become thrown exceptions with the
//! library's validation or feasibility message):
//!
//! - [`temperature_profile`] — the piecewise-affine profile plus the
//!   predicted boundary flux;
//! - [`elasticity_curve`] — E(q) samples with the feasibility interval,
//!   asymptote and sign;
//! - [`interface_estimate`] — estimate, error bound and elasticity for
//!   one measured flux.
//!
//! Build with `wasm-pack build crates/demo --target web` and serve
//! `crates/demo/www/`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use thermiface::domain::{BarSetup, FluxMeasurement, InverseSetup, Material};
use thermiface::elasticity::{asymptote_location, classify_sign};
use thermiface::experiments::{emit_elasticity_data, emit_profile_data};
use thermiface::forward::{boundary_flux, solve_coefficients};
use thermiface::inverse::{estimate_report, feasibility_interval};

#[derive(Serialize)]
struct XySample {
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct IntervalJson {
    q_min: f64,
    q_max: f64,
}

#[derive(Serialize)]
struct ProfileJson {
    points: Vec<XySample>,
    interface: f64,
    flux: f64,
    u_interface: f64,
    u_right: f64,
    slope_a: f64,
    slope_b: f64,
}

#[derive(Serialize)]
struct ElasticityCurveJson {
    points: Vec<XySample>,
    interval: IntervalJson,
    asymptote: f64,
    sign: String,
    skipped: usize,
}

#[derive(Serialize)]
struct EstimateJson {
    l_hat: f64,
    interval: IntervalJson,
    error_bound: f64,
    elasticity: f64,
    q_hat: f64,
    noise: f64,
}

fn material(tag: &str, kappa: f64) -> Result<Material, String> {
    Material::new(tag, tag, kappa).map_err(|e| e.to_string())
}

fn bar(
    length: f64,
    interface: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
) -> Result<BarSetup, String> {
    BarSetup::new(
        length,
        interface,
        source_temp,
        ambient_temp,
        convection,
        material("A", kappa_a)?,
        material("B", kappa_b)?,
    )
    .map_err(|e| e.to_string())
}

fn inverse(
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
) -> Result<InverseSetup, String> {
    InverseSetup::new(
        length,
        source_temp,
        ambient_temp,
        convection,
        material("A", kappa_a)?,
        material("B", kappa_b)?,
    )
    .map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("demo payloads serialize")
}

#[allow(clippy::too_many_arguments)]
pub fn profile_impl(
    length: f64,
    interface: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    points: u32,
) -> Result<String, String> {
    let setup = bar(
        length,
        interface,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
    )?;
    let n = points.max(2) as usize;
    let series = emit_profile_data(&setup, n);
    let coeffs = solve_coefficients(&setup);
    let u_interface = coeffs.a + coeffs.b * interface;
    let u_right = coeffs.c + coeffs.d * length;
    Ok(to_json(&ProfileJson {
        points: series.into_iter().map(|(x, y)| XySample { x, y }).collect(),
        interface,
        flux: boundary_flux(&setup),
        u_interface,
        u_right,
        slope_a: coeffs.b,
        slope_b: coeffs.d,
    }))
}

#[allow(clippy::too_many_arguments)]
pub fn elasticity_curve_impl(
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    points: u32,
    margin: f64,
) -> Result<String, String> {
    let setup = inverse(
        length,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
    )?;
    let n = points.max(2) as usize;
    let margin = margin.clamp(0.005, 0.49);
    let series = emit_elasticity_data(&setup, n, margin);
    let interval = feasibility_interval(&setup);
    Ok(to_json(&ElasticityCurveJson {
        points: series
            .points
            .into_iter()
            .map(|(x, y)| XySample { x, y })
            .collect(),
        interval: IntervalJson {
            q_min: interval.q_min(),
            q_max: interval.q_max(),
        },
        asymptote: asymptote_location(&setup),
        sign: classify_sign(&setup).to_string(),
        skipped: series.skipped,
    }))
}

#[allow(clippy::too_many_arguments)]
pub fn estimate_impl(
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    flux: f64,
    noise: f64,
) -> Result<String, String> {
    let setup = inverse(
        length,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
    )?;
    let measurement = FluxMeasurement::new(flux, noise).map_err(|e| e.to_string())?;
    let report = estimate_report(&setup, &measurement).map_err(|e| e.to_string())?;
    Ok(to_json(&EstimateJson {
        l_hat: report.l_hat,
        interval: IntervalJson {
            q_min: report.interval.q_min(),
            q_max: report.interval.q_max(),
        },
        error_bound: report.error_bound_practical,
        elasticity: report.elasticity_at_measurement,
        q_hat: measurement.q_hat(),
        noise: measurement.epsilon(),
    }))
}

/// Temperature profile and boundary flux as JSON.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn temperature_profile(
    length: f64,
    interface: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    points: u32,
) -> Result<String, JsError> {
    profile_impl(
        length,
        interface,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
        points,
    )
    .map_err(|m| JsError::new(&m))
}

/// Elasticity curve samples plus interval, asymptote and sign, as JSON.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn elasticity_curve(
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    points: u32,
    margin: f64,
) -> Result<String, JsError> {
    elasticity_curve_impl(
        length,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
        points,
        margin,
    )
    .map_err(|m| JsError::new(&m))
}

/// Full estimation report for one measured flux, as JSON.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn interface_estimate(
    length: f64,
    source_temp: f64,
    ambient_temp: f64,
    convection: f64,
    kappa_a: f64,
    kappa_b: f64,
    flux: f64,
    noise: f64,
) -> Result<String, JsError> {
    estimate_impl(
        length,
        source_temp,
        ambient_temp,
        convection,
        kappa_a,
        kappa_b,
        flux,
        noise,
    )
    .map_err(|m| JsError::new(&m))
}
