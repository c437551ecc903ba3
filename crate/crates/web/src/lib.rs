//! Browser bindings for the `www/index.html` demo. Each export takes plain
//! numbers and an expression string and returns a JSON string; failures come
//! back as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use ramcalc::base_change::{descend, transport, Conductors};
use ramcalc::conductor::ConductorReport;
use ramcalc::curve_oracle::{oracle_conductor, OracleBounds};
use ramcalc::{ASCharacter, ExtensionDesc, FieldDesc};

fn respond(r: Result<Value, ramcalc::Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Conductors, forms and CC coefficients of `t^p - t = expr` over `K_{a,b}`.
#[wasm_bindgen]
pub fn conductor_report(p: u32, qdeg: u32, a: u32, b: u32, expr: &str) -> String {
    respond((|| {
        let k = FieldDesc::with_prime(p as u64, qdeg, a, b)?;
        let c = ASCharacter::parse(&k, expr)?;
        Ok(ConductorReport::compute(&c)?.to_json())
    })())
}

/// Transport along `K_{a,b} ⊆ K_{a+da,b+db}` (or descent when `down`), with
/// the conductors on both sides.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn base_change(p: u32, qdeg: u32, a: u32, b: u32, da: u32, db: u32, down: bool, expr: &str) -> String {
    respond((|| {
        let k = FieldDesc::with_prime(p as u64, qdeg, a, b)?;
        let ext = ExtensionDesc::try_over(&k, da, db)?;
        let source = if down { ext.to() } else { ext.from() };
        let c = ASCharacter::parse(source, expr)?;
        let image = if down { descend(&c, &ext)? } else { transport(&c, &ext)? };
        let (before, after) = (Conductors::of(&c)?, Conductors::of(&image)?);
        Ok(json!({
            "source": c.f().to_surface_string(),
            "image": image.f().to_surface_string(),
            "before": before,
            "after": after,
            "invariants": ext.invariants(),
        }))
    })())
}

/// Best curve ratios `sw_1d / mu` and `dimtot_1d / mu` for each `mu`, next
/// to the symbolic conductors.
#[wasm_bindgen]
pub fn oracle_profile(p: u32, qdeg: u32, a: u32, b: u32, expr: &str, mu_max: u32, deg_max: u32) -> String {
    respond((|| {
        let k = FieldDesc::with_prime(p as u64, qdeg, a, b)?;
        let c = ASCharacter::parse(&k, expr)?;
        let bounds = OracleBounds { mu_max: mu_max.clamp(1, 12), deg_max: deg_max.min(4), trials: 32, seed: 0, ext_degree: None };
        let est = oracle_conductor(c.f(), &bounds)?;
        let sym = Conductors::of(&c)?;
        let mut v = est.to_json();
        v["symbolic"] = json!({ "swan": sym.sw, "dimtot": sym.dt });
        Ok(v)
    })())
}
