//! Browser demo: the verdict table, the Z-eigen defect curve and a TCP
//! solvability map, each taking a tensor in the JSON file format.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use tcpkit::classes::{heredity_violations, implication_audit, ClassId};
use tcpkit::spectra::{z_defect_curve, z_eigenpairs};
use tcpkit::tcp::{enumerate_solutions, solve, TcpInstance};
use tcpkit::{classify, io, Budget, Result};
use wasm_bindgen::prelude::*;

fn budget(seed: u64) -> Budget {
    Budget::with_seed(seed)
}

/// Verdicts for every class, plus implication and heredity violations.
pub fn audit(tensor_json: &str, seed: u64) -> Result<Value> {
    let a = io::parse_tensor(tensor_json)?;
    let b = budget(seed);
    let mut verdicts = BTreeMap::new();
    for class in ClassId::ALL {
        verdicts.insert(class, classify(&a, class, &b)?);
    }
    let implications = implication_audit(&a, &verdicts);
    let heredity = heredity_violations(&a, verdicts[&ClassId::ER].status, &b)?;
    let rows: Vec<Value> = verdicts
        .values()
        .map(|v| json!({ "class": v.class.name(), "status": v.status, "method": v.method, "witness": v.witness, "note": v.note }))
        .collect();
    Ok(json!({ "order": a.order(), "dim": a.dim(), "rows": rows, "implications": implications, "heredity": heredity }))
}

/// Samples of the signed defect `x1 (A x^{m-1})_2 - x2 (A x^{m-1})_1` on the unit
/// circle, whose zeros are the Z-eigenvectors, and the Z-eigenpairs (n = 2).
pub fn z_spectrum(tensor_json: &str, samples: usize) -> Result<Value> {
    let a = io::parse_tensor(tensor_json)?;
    if a.dim() != 2 {
        return Err(tcpkit::Error::Input("the defect curve needs a tensor of dimension 2".into()));
    }
    let curve: Vec<[f64; 2]> = z_defect_curve(&a, samples).into_iter().map(|(t, d)| [t, d]).collect();
    let pairs = z_eigenpairs(&a, &budget(0))?;
    Ok(json!({ "curve": curve, "pairs": pairs }))
}

/// Solution norms over a `grid x grid` lattice of `q` in `[-w, w]^2`, row by row
/// from `q2 = w` down; `NaN` marks a `q` without solution.
pub fn solvability_map(tensor_json: &str, grid: usize, w: f64, seed: u64) -> Result<Vec<f64>> {
    let a = io::parse_tensor(tensor_json)?;
    if a.dim() != 2 {
        return Err(tcpkit::Error::Input("the solvability map needs a tensor of dimension 2".into()));
    }
    let b = budget(seed);
    let step = if grid > 1 { 2.0 * w / (grid - 1) as f64 } else { 0.0 };
    let mut out = Vec::with_capacity(grid * grid);
    for r in 0..grid {
        for c in 0..grid {
            let q = vec![-w + c as f64 * step, w - r as f64 * step];
            let inst = TcpInstance::new(a.clone(), q)?;
            let en = enumerate_solutions(&inst, &b)?;
            let norm = en
                .solutions
                .iter()
                .map(|s| s.x.iter().map(|v| v * v).sum::<f64>().sqrt())
                .reduce(f64::max)
                .or_else(|| {
                    let s = solve(&inst, &b).ok()?.solution?;
                    Some(s.x.iter().map(|v| v * v).sum::<f64>().sqrt())
                });
            out.push(norm.unwrap_or(f64::NAN));
        }
    }
    Ok(out)
}

fn js_err(e: tcpkit::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen(js_name = auditTable)]
pub fn audit_js(tensor_json: &str, seed: u64) -> std::result::Result<String, JsValue> {
    audit(tensor_json, seed).map(|v| v.to_string()).map_err(js_err)
}

#[wasm_bindgen(js_name = zSpectrum)]
pub fn z_spectrum_js(tensor_json: &str, samples: usize) -> std::result::Result<String, JsValue> {
    z_spectrum(tensor_json, samples).map(|v| v.to_string()).map_err(js_err)
}

#[wasm_bindgen(js_name = solvabilityMap)]
pub fn solvability_map_js(tensor_json: &str, grid: usize, w: f64, seed: u64) -> std::result::Result<Vec<f64>, JsValue> {
    solvability_map(tensor_json, grid, w, seed).map_err(js_err)
}
