//! Browser bindings: each function takes plain strings and returns a JSON
//! document, or throws a string describing the problem.

use ikalg::export::{classes_table, p_table};
use ikalg::{phi, Context, Family, IkVector};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Tighter than the native default so a careless level cannot freeze the tab.
pub const BROWSER_BUDGET: u64 = 400_000;

fn context(family: &str) -> Result<Context, String> {
    let fam: Family = family.parse().map_err(|e: ikalg::Error| e.to_string())?;
    Context::new(fam, BROWSER_BUDGET).map_err(|e| e.to_string())
}

pub fn classes_json(family: &str, level: usize) -> Result<String, String> {
    let ctx = context(family)?;
    let t = classes_table(&ctx, level).map_err(|e| e.to_string())?;
    Ok(t.to_json().to_string())
}

/// `e_{w1} e_{w2}` in `A_{<=level}`.
pub fn product_json(family: &str, level: usize, omega1: &str, omega2: &str) -> Result<String, String> {
    let ctx = context(family)?;
    let fam = ctx.family();
    let w1 = fam.parse_omega(omega1).map_err(|e| e.to_string())?;
    let w2 = fam.parse_omega(omega2).map_err(|e| e.to_string())?;
    let t = p_table(&ctx, level, Some(&w1), Some(&w2), None).map_err(|e| e.to_string())?;
    Ok(t.to_json().to_string())
}

/// `phi(e_w)` level by level, with the preimage that isolates its lowest
/// component.
pub fn phi_json(family: &str, level: usize, omega: &str) -> Result<String, String> {
    let ctx = context(family)?;
    let fam = ctx.family().clone();
    let w = fam.parse_omega(omega).map_err(|e| e.to_string())?;
    if w.l > level {
        return Err(format!("{omega} lies above level {level}"));
    }
    ctx.check_level(level).map_err(|e| e.to_string())?;
    let image = phi(&IkVector::basis(level, w.clone()));
    let mut components = serde_json::Map::new();
    for (l, v) in &image.components {
        components.insert(l.to_string(), v.to_json(|c| fam.render_class(c)));
    }
    let target = ikalg::CenterBasisLabel { l: w.l, c: w.c.clone() };
    let pre = ikalg::phi_preimage(&target, level).map_err(|e| e.to_string())?;
    Ok(json!({
        "schema": ikalg::SCHEMA_VERSION,
        "omega": fam.render_omega(&w),
        "level": level,
        "image": components,
        "preimage_of": target.render(fam.label_style()),
        "preimage": pre.to_json(|x| fam.render_omega(x)),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn classes(family: &str, level: usize) -> Result<String, JsValue> {
    classes_json(family, level).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn product(family: &str, level: usize, omega1: &str, omega2: &str) -> Result<String, JsValue> {
    product_json(family, level, omega1, omega2).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn phi_image(family: &str, level: usize, omega: &str) -> Result<String, JsValue> {
    phi_json(family, level, omega).map_err(|e| JsValue::from_str(&e))
}
