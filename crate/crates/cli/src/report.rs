use std::fmt::Write as _;

use arrhodge::arrangement::ArrangementSummary;
use arrhodge::defect::DefectResult;
use arrhodge::hodge::{BettiReport, EquivariantHodgeTable, HdPoly};
use arrhodge::spectrum::SpectrumPoly;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn from_result(name: &str, r: Result<String, String>) -> Self {
        match r {
            Ok(detail) => CheckResult {
                name: name.into(),
                pass: true,
                detail,
            },
            Err(detail) => CheckResult {
                name: name.into(),
                pass: false,
                detail,
            },
        }
    }
}

/// Where the value of `β₃` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Beta3Source {
    /// Corank of the evaluation map at the triple points.
    Rank,
    /// `--assume-beta3`
    Assumed,
    /// Given directly to `formulas`.
    Input,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub d: usize,
    pub n3: usize,
    pub beta3: usize,
    pub beta3_source: Beta3Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<ArrangementSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<DefectResult>,
    pub spectrum: SpectrumPoly,
    pub pd: EquivariantHodgeTable,
    pub hd: HdPoly,
    pub betti: BettiReport,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(src) = &self.source {
            writeln!(out, "input: {src}").unwrap();
        }
        match &self.summary {
            Some(s) => {
                let hist: Vec<String> = s
                    .mult_histogram
                    .iter()
                    .map(|(m, c)| format!("{c}x{m}"))
                    .collect();
                writeln!(
                    out,
                    "lines: d = {}, points: {} (triple_only = {}, essential = {})",
                    s.d,
                    hist.join(", "),
                    s.triple_only,
                    s.essential
                )
                .unwrap();
                writeln!(
                    out,
                    "chi(M) = {}, chi(F) = {}, b2(M) = {}",
                    s.chi_m, s.chi_f, s.b2_m
                )
                .unwrap();
            }
            None => writeln!(out, "d = {}, n3 = {}", self.d, self.n3).unwrap(),
        }
        let how = match (self.beta3_source, &self.defect) {
            (Beta3Source::Rank, Some(r)) => match r.m {
                Some(m) => format!(
                    "rank {} of the {}x{} evaluation matrix in degree {}",
                    r.rank,
                    r.n_triple,
                    r.monomial_count,
                    2 * m as i64 - 3
                ),
                None => "3 does not divide d".to_string(),
            },
            (Beta3Source::Assumed, _) => "assumed".to_string(),
            _ => "given".to_string(),
        };
        writeln!(out, "beta3 = {} ({how})", self.beta3).unwrap();
        writeln!(out, "Sp = {}", self.spectrum).unwrap();
        writeln!(
            out,
            "b0 = {}, b1 = {}, b2 = {}, chi(F) = {}",
            self.betti.b0, self.betti.b1, self.betti.b2, self.betti.chi_f
        )
        .unwrap();

        writeln!(out, "\nPD (h^(p,q)(H^j) at character k):").unwrap();
        writeln!(
            out,
            "{:>4} {:>2} {:>2} {:>2} {:>6}",
            "k", "p", "q", "j", "mult"
        )
        .unwrap();
        for (k, s, v) in self.pd.iter() {
            writeln!(out, "{k:>4} {:>2} {:>2} {:>2} {v:>6}", s.p, s.q, s.j).unwrap();
        }
        writeln!(out, "\nHD (coefficient of u^p v^q at character k):").unwrap();
        writeln!(out, "{:>4} {:>2} {:>2} {:>6}", "k", "p", "q", "coeff").unwrap();
        for (k, p, q, c) in self.hd.iter() {
            writeln!(out, "{k:>4} {p:>2} {q:>2} {c:>6}").unwrap();
        }

        writeln!(out, "\nchecks:").unwrap();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(out, "  [{mark}] {:<width$}  {}", c.name, c.detail).unwrap();
        }
        out
    }
}
