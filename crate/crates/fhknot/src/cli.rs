//! Report builders behind the command-line front end.
//!
//! Each run function assembles a [`RunReport`]: a machine-readable document
//! (JSON or TSV) written to standard output, with optional human-readable
//! tables on standard error. The process exit status is 0 iff every
//! assertion of the invoked command passed.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::CatalogEntry;
use crate::codes::SignedGaussCode;
use crate::fh::{classify, orbit_decomposition, CycleType};
use crate::gauss::{canonical_form, subdiagram};
use crate::geom;
use crate::invariants::{conway_a2, cycle_value, d3v_predicted, dnv, v_invariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Tsv,
}

/// Outcome of one CLI command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub items: Vec<Value>,
    /// Each entry names the violated property and the offending input.
    pub failures: Vec<String>,
    pub passed: bool,
    pub wall_time_ms: u128,
}

impl RunReport {
    fn finish(command: &str, items: Vec<Value>, failures: Vec<String>, started: Instant) -> Self {
        RunReport {
            command: command.to_string(),
            passed: failures.is_empty(),
            items,
            failures,
            wall_time_ms: started.elapsed().as_millis(),
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            OutputFormat::Tsv => {
                let mut out = String::new();
                for item in &self.items {
                    let mut fields: Vec<String> = Vec::new();
                    if let Value::Object(map) = item {
                        for (k, v) in map {
                            let rendered = match v {
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            };
                            fields.push(format!("{k}={rendered}"));
                        }
                    } else {
                        fields.push(item.to_string());
                    }
                    out.push_str(&fields.join("\t"));
                    out.push('\n');
                }
                for f in &self.failures {
                    out.push_str(&format!("FAIL\t{f}\n"));
                }
                out.push_str(&format!("passed\t{}\n", self.passed));
                out
            }
        }
    }

    /// Human-readable summary, intended for standard error.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} items, {} failures, {} ms",
            self.command,
            self.items.len(),
            self.failures.len(),
            self.wall_time_ms
        )
    }
}

/// `invariants`: the invariant table {v2, v3, w, v} per knot.
pub fn run_invariants(knots: &[(String, SignedGaussCode)]) -> RunReport {
    let started = Instant::now();
    let mut items = Vec::new();
    for (name, code) in knots {
        let r = v_invariant(code);
        items.push(json!({
            "name": name,
            "v2": r.v2,
            "v3": r.v3,
            "w": r.w,
            "v": r.v,
        }));
    }
    RunReport::finish("invariants", items, Vec::new(), started)
}

/// `fh-orbits`: the cycle decomposition of all n-chord diagrams.
pub fn run_fh_orbits(n: usize) -> RunReport {
    let started = Instant::now();
    let orbits = orbit_decomposition(n);
    let mut items = Vec::new();
    let mut typed = 0usize;
    let mut total = 0usize;
    for orbit in &orbits {
        total += orbit.sequence.len();
        let members: Vec<String> = orbit.sequence.iter().map(|w| w.to_string()).collect();
        let cycle_type = if n == 3 {
            let t = classify(&orbit.representative().to_diagram()).expect("3 chords");
            if t != CycleType::Other {
                typed += orbit.sequence.len();
            }
            Some(t.to_string())
        } else {
            None
        };
        items.push(json!({
            "period": orbit.period,
            "members": members.join(";"),
            "type": cycle_type,
        }));
    }
    let mut failures = Vec::new();
    if n == 3 {
        items.push(json!({
            "summary": "three named cycles",
            "diagrams": total,
            "orbits": orbits.len(),
            "typed_diagrams": typed,
        }));
        if (total, orbits.len(), typed) != (15, 5, 10) {
            failures.push(format!(
                "orbit census: expected 15 diagrams in 5 orbits with 10 typed, got {total} in {} with {typed}",
                orbits.len()
            ));
        }
    }
    RunReport::finish("fh-orbits", items, failures, started)
}

/// `d3v`: for every 3-subset of crossings, the measured finite difference
/// next to the cycle classifier's prediction.
pub fn run_d3v(knots: &[(String, SignedGaussCode)]) -> RunReport {
    let started = Instant::now();
    let mut items = Vec::new();
    let mut failures = Vec::new();
    for (name, code) in knots {
        for labels in combinations(&code.labels(), 3) {
            let word = canonical_form(&subdiagram(code, &labels).expect("labels valid"));
            let sub = subdiagram(code, &labels).expect("labels valid");
            let cycle = classify(&sub).expect("3 chords");
            let predicted = cycle_value(cycle);
            let measured = dnv(code, &labels).expect("labels valid");
            if measured != predicted {
                failures.push(format!(
                    "d3v mismatch on {name} crossings {labels:?}: measured {measured}, predicted {predicted}"
                ));
            }
            items.push(json!({
                "name": name,
                "crossings": format!("{labels:?}"),
                "word": word.to_string(),
                "type": cycle.to_string(),
                "predicted": predicted,
                "measured": measured,
                "pass": measured == predicted,
            }));
        }
    }
    RunReport::finish("d3v", items, failures, started)
}

/// `verify`: expected invariants, the Conway oracle over all resolutions,
/// the full 3-subset sweep against the classifier, and 4-subset vanishing.
pub fn run_verify(catalog: &[CatalogEntry]) -> RunReport {
    let started = Instant::now();
    let mut items = Vec::new();
    let mut failures = Vec::new();
    for entry in catalog {
        let name = &entry.name;
        let code = &entry.code;
        let r = v_invariant(code);
        let mut checks: Vec<(String, bool)> = Vec::new();

        checks.push((format!("v2 = {}", entry.expected_v2), r.v2 == entry.expected_v2));
        checks.push((format!("v3 = {}", entry.expected_v3), r.v3 == entry.expected_v3));

        // oracle equivalence on every sign resolution
        let labels = code.labels();
        let mut oracle_ok = true;
        for mask in 0..(1u64 << labels.len()) {
            let assignment: Vec<(u32, crate::codes::Sign)> = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    (l, if mask & (1 << i) == 0 { crate::codes::Sign::Plus } else { crate::codes::Sign::Minus })
                })
                .collect();
            let resolved = code.resolve(&assignment).expect("labels valid");
            match conway_a2(&resolved) {
                Ok(a2) if a2 == crate::invariants::v2(&resolved) => {}
                Ok(a2) => {
                    oracle_ok = false;
                    failures.push(format!(
                        "v2/conway mismatch on {name} resolution {mask:#b}: v2 {}, a2 {a2}",
                        crate::invariants::v2(&resolved)
                    ));
                }
                Err(e) => {
                    oracle_ok = false;
                    failures.push(format!("conway oracle failed on {name}: {e}"));
                }
            }
        }
        checks.push(("v2 = conway a2 on all resolutions".into(), oracle_ok));

        // theorem sweep
        let mut sweep_ok = true;
        for sub in combinations(&labels, 3) {
            let predicted = d3v_predicted(code, &sub).expect("3 labels");
            let measured = dnv(code, &sub).expect("labels valid");
            if measured != predicted {
                sweep_ok = false;
                failures.push(format!(
                    "d3v mismatch on {name} crossings {sub:?}: measured {measured}, predicted {predicted}"
                ));
            }
        }
        checks.push(("d3v matches cycle classification".into(), sweep_ok));

        let mut order_ok = true;
        for sub in combinations(&labels, 4) {
            let measured = dnv(code, &sub).expect("labels valid");
            if measured != 0 {
                order_ok = false;
                failures.push(format!(
                    "4th difference nonzero on {name} crossings {sub:?}: {measured}"
                ));
            }
        }
        checks.push(("4th finite differences vanish".into(), order_ok));

        for (what, ok) in &checks {
            if !ok && (what.starts_with("v2 =") || what.starts_with("v3 =")) {
                failures.push(format!("{name}: expected {what}, computed v2={} v3={}", r.v2, r.v3));
            }
        }
        items.push(json!({
            "name": name,
            "v2": r.v2,
            "v3": r.v3,
            "w": r.w,
            "v": r.v,
            "pass": checks.iter().all(|(_, ok)| *ok),
        }));
    }
    RunReport::finish("verify", items, failures, started)
}

/// `numeric`: the half-integrals, the four local-model constants over all
/// sign assignments, the assembled finite-difference values, and the
/// polyline Gauss integrals.
pub fn run_numeric(tolerance: f64) -> RunReport {
    let started = Instant::now();
    let mut items = Vec::new();
    let mut failures = Vec::new();
    let mut check = |name: String, value: f64, expect: f64, tol: f64, failures: &mut Vec<String>| {
        let pass = (value - expect).abs() <= tol;
        if !pass {
            failures.push(format!("{name}: got {value:.6}, expected {expect} within {tol}"));
        }
        json!({ "check": name, "value": value, "expected": expect, "tolerance": tol, "pass": pass })
    };

    let vol = match geom::PoleVolumeForm::new(0.2) {
        Ok(v) => v,
        Err(e) => {
            return RunReport::finish("numeric", items, vec![format!("volume form: {e}")], started)
        }
    };
    let bump = geom::StandardBump;

    for (kind, name) in [(geom::PsiKind::One, "half integral psi1"), (geom::PsiKind::Two, "half integral psi2")] {
        match geom::half_integral(kind, &bump, &vol) {
            Ok(h) => items.push(check(name.into(), h, 0.5, tolerance.min(0.01), &mut failures)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }

    for kind in geom::LocalModelKind::ALL {
        let expect = match kind {
            geom::LocalModelKind::OneA => 0.125,
            geom::LocalModelKind::OneB => -0.25,
            geom::LocalModelKind::TwoA => -0.25,
            geom::LocalModelKind::TwoB => 0.75,
        };
        for mask in 0..8u32 {
            let signs = [
                if mask & 1 == 0 { crate::codes::Sign::Plus } else { crate::codes::Sign::Minus },
                if mask & 2 == 0 { crate::codes::Sign::Plus } else { crate::codes::Sign::Minus },
                if mask & 4 == 0 { crate::codes::Sign::Plus } else { crate::codes::Sign::Minus },
            ];
            let eps: i64 = signs.iter().map(|s| s.value()).product();
            match geom::local_model_integral(&geom::LocalModelSpec { kind, signs }, &bump, &vol) {
                Ok(v) => {
                    let name = format!("local model {kind:?} signs {mask:03b}");
                    items.push(check(name, eps as f64 * v, expect, tolerance, &mut failures));
                }
                Err(e) => failures.push(format!("local model {kind:?}: {e}")),
            }
        }
    }

    match geom::theorem34_from_local_models(&bump, &vol) {
        Ok(t) => {
            items.push(check("assembled type I".into(), t.type_i, -2.0, 0.1_f64.max(tolerance), &mut failures));
            items.push(check("assembled type II".into(), t.type_ii, 2.0, 0.1_f64.max(tolerance), &mut failures));
            items.push(check("assembled type III".into(), t.type_iii, 6.0, 0.2_f64.max(tolerance), &mut failures));
        }
        Err(e) => failures.push(format!("assembled constants: {e}")),
    }

    let (a, b) = geom::hopf_clasp();
    match geom::gauss_linking(&a, &b) {
        Ok(lk) => items.push(check("hopf clasp linking".into(), lk, 1.0, 1e-9, &mut failures)),
        Err(e) => failures.push(format!("hopf clasp linking: {e}")),
    }

    for (path, expect, name) in [
        (geom::almost_planar_trefoil(), 1.5, "trefoil half writhe"),
        (geom::almost_planar_figure_eight(), 0.0, "figure-eight half writhe"),
    ] {
        match path.lift(0.08, 0.5).and_then(|p| geom::self_linking_half(&p)) {
            Ok(v) => items.push(check(name.into(), v, expect, 0.05, &mut failures)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }

    RunReport::finish("numeric", items, failures, started)
}

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin_catalog, parse_gauss_code};

    #[test]
    fn invariants_report_trefoil() {
        let code = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let report = run_invariants(&[("3_1+".into(), code)]);
        assert!(report.passed);
        assert_eq!(report.items[0]["v"], 3);
    }

    #[test]
    fn verify_passes_on_builtin_catalog() {
        let report = run_verify(&builtin_catalog());
        assert!(report.passed, "failures: {:?}", report.failures);
    }

    #[test]
    fn verify_names_corrupted_entry() {
        let mut catalog = builtin_catalog();
        catalog[1].expected_v2 = 7;
        let report = run_verify(&catalog);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.contains("3_1+")), "{:?}", report.failures);
    }

    #[test]
    fn orbit_report_census() {
        let report = run_fh_orbits(3);
        assert!(report.passed);
        assert_eq!(report.items.len(), 6); // 5 orbits + summary
    }

    #[test]
    fn d3v_report_on_trefoil() {
        let code = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let report = run_d3v(&[("3_1+".into(), code)]);
        assert!(report.passed);
        assert_eq!(report.items[0]["measured"], 6);
    }

    #[test]
    fn tsv_rendering_is_line_per_item() {
        let code = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let report = run_invariants(&[("3_1+".into(), code)]);
        let tsv = report.render(OutputFormat::Tsv);
        assert!(tsv.lines().count() >= 2);
        assert!(tsv.contains("passed\ttrue"));
    }
}
