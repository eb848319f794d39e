//! Expected output for the shipped arrangements.

use arrhodge::arrangement::builtin_names;
use arrhodge::spectrum::SpectrumPoly;
use num_rational::Rational64;

use crate::commands::{cmd_analyze, cmd_formulas, Input};
use crate::report::{CheckResult, RunReport};

/// `(numerator, denominator, coefficient)` of the Ceva(3) spectrum.
pub const CEVA3_SPECTRUM: [(i64, i64, i64); 19] = [
    (1, 3, 1),
    (4, 9, 3),
    (5, 9, 6),
    (2, 3, 10),
    (7, 9, 3),
    (8, 9, 9),
    (1, 1, 16),
    (11, 9, 6),
    (4, 3, 10),
    (5, 3, -2),
    (16, 9, 6),
    (2, 1, -8),
    (19, 9, 9),
    (20, 9, 3),
    (7, 3, -2),
    (22, 9, 6),
    (23, 9, 3),
    (8, 3, 1),
    (3, 1, -1),
];

pub fn ceva3_spectrum() -> SpectrumPoly {
    SpectrumPoly::from_terms(
        CEVA3_SPECTRUM
            .iter()
            .map(|&(n, d, c)| (Rational64::new(n, d), c)),
    )
}

/// Report JSON for a builtin, as shipped in `golden/`.
pub fn golden_json(name: &str) -> Option<&'static str> {
    match name {
        "ceva2" => Some(include_str!("../golden/ceva2.json")),
        "ceva3" => Some(include_str!("../golden/ceva3.json")),
        "triangle" => Some(include_str!("../golden/triangle.json")),
        _ => None,
    }
}

fn analyze_builtin(name: &str) -> Result<RunReport, String> {
    cmd_analyze(&Input::Builtin(name), None).map_err(|e| e.to_string())
}

/// Spectrum and PD serialized the way reports print them.
pub fn spectrum_and_pd_json(r: &RunReport) -> (String, String) {
    (
        serde_json::to_string(&r.spectrum).expect("spectrum serializes"),
        serde_json::to_string(&r.pd).expect("table serializes"),
    )
}

pub fn golden_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let ceva = analyze_builtin("ceva3");

    out.push(CheckResult::from_result(
        "ceva3_spectrum_literal",
        ceva.as_ref().map_err(Clone::clone).and_then(|r| {
            if r.n3 != 12 || r.beta3 != 2 {
                return Err(format!("n3 = {}, beta3 = {}", r.n3, r.beta3));
            }
            if r.spectrum != ceva3_spectrum() {
                return Err(format!("Sp = {}", r.spectrum));
            }
            Ok(format!("n3 = 12, beta3 = 2, {} terms", r.spectrum.len()))
        }),
    ));

    out.push(CheckResult::from_result(
        "ceva3_cubic_hodge",
        ceva.as_ref().map_err(Clone::clone).and_then(|r| {
            let (h21, h12) = (r.pd.get(3, 2, 1, 2), r.pd.get(3, 1, 2, 2));
            if (h21, h12) == (0, 10) {
                Ok("k = 3: h^(2,1) = 0, h^(1,2) = 10".into())
            } else {
                Err(format!("k = 3: h^(2,1) = {h21}, h^(1,2) = {h12}"))
            }
        }),
    ));

    out.push(CheckResult::from_result(
        "formulas_match_geometry",
        ceva.as_ref().map_err(Clone::clone).and_then(|r| {
            let f = cmd_formulas(9, 12, 2).map_err(|e| e.to_string())?;
            if spectrum_and_pd_json(&f) == spectrum_and_pd_json(r) {
                Ok("formulas 9 12 2 reproduce spectrum and PD".into())
            } else {
                Err("formula and geometric outputs differ".into())
            }
        }),
    ));

    for &name in builtin_names() {
        let r = analyze_builtin(name).and_then(|r| {
            let expected = golden_json(name).ok_or("no golden file")?;
            if r.to_json() == expected {
                Ok("matches golden report".to_string())
            } else {
                Err("report differs from the golden file".to_string())
            }
        });
        out.push(CheckResult::from_result(&format!("golden_{name}"), r));
    }
    out
}
