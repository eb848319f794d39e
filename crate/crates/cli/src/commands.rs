use std::path::Path;
use std::thread;

use arrhodge::arrangement::{
    build_lattice, builtin, check_hypotheses, generate_random_arrangement, load_arrangement,
    random_projective_image, summarize, Arrangement, ArrangementError, ArrangementSpec,
};
use arrhodge::defect::beta3;
use arrhodge::hodge::{assemble_pd, specialize_hd, BettiReport, EquivariantHodgeTable, HodgeError};
use arrhodge::spectrum::spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::checks::{formula_checks, geometry_checks};
use crate::golden;
use crate::report::{Beta3Source, CheckResult, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Hypothesis(_) | CliError::Usage(_) => 2,
            CliError::Consistency(_) => 1,
        }
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        match e {
            ArrangementError::UnknownBuiltin(_) => CliError::Usage(e.to_string()),
            ArrangementError::SamplingExhausted { .. } => CliError::Consistency(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<HodgeError> for CliError {
    fn from(e: HodgeError) -> Self {
        CliError::Consistency(e.to_string())
    }
}

pub enum Input<'a> {
    File(&'a Path),
    Builtin(&'a str),
}

pub fn load_input(input: &Input<'_>) -> Result<(String, Arrangement), CliError> {
    match *input {
        Input::Builtin(name) => Ok((format!("builtin:{name}"), builtin(name)?)),
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let spec: ArrangementSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), load_arrangement(&spec)?))
        }
    }
}

pub fn cmd_analyze(input: &Input<'_>, assume_beta3: Option<usize>) -> Result<RunReport, CliError> {
    let (source, a) = load_input(input)?;
    let mut report = analyze_arrangement(&a, assume_beta3)?;
    report.source = Some(source);
    Ok(report)
}

pub fn analyze_arrangement(
    a: &Arrangement,
    assume_beta3: Option<usize>,
) -> Result<RunReport, CliError> {
    let lattice = build_lattice(a);
    check_hypotheses(a, &lattice).map_err(|e| CliError::Hypothesis(e.to_string()))?;
    let summary = summarize(a, &lattice);
    let (d, n3) = (summary.d, summary.n3());

    let (b3, source, defect) = match assume_beta3 {
        Some(b) => {
            validate_beta3(d, b)?;
            (b, Beta3Source::Assumed, None)
        }
        None => {
            let r = beta3(&summary, &lattice.triple_points())
                .map_err(|e| CliError::Hypothesis(e.to_string()))?;
            if let Some(msg) = &r.diagnostic {
                return Err(CliError::Consistency(msg.clone()));
            }
            (r.beta3, Beta3Source::Rank, Some(r))
        }
    };

    let sp = spectrum(d, n3);
    let pd = assemble_pd(d, n3, b3)?;
    let hd = specialize_hd(&pd);
    let mut checks = formula_checks(d, n3, b3, &pd, &hd, &sp);
    checks.extend(geometry_checks(
        a,
        &lattice,
        &summary,
        defect.as_ref(),
        &pd,
        b3,
    ));
    let betti = betti(&pd);

    Ok(RunReport {
        source: None,
        d,
        n3,
        beta3: b3,
        beta3_source: source,
        summary: Some(summary),
        defect,
        spectrum: sp,
        pd,
        hd,
        betti,
        checks,
    })
}

fn betti(pd: &EquivariantHodgeTable) -> BettiReport {
    let (b0, b1, b2) = (pd.betti(0), pd.betti(1), pd.betti(2));
    BettiReport {
        b0,
        b1,
        b2,
        chi_f: b0 - b1 + b2,
    }
}

fn validate_beta3(d: usize, b: usize) -> Result<(), CliError> {
    if b > 2 {
        return Err(CliError::Usage(format!("beta3 must be 0, 1 or 2, got {b}")));
    }
    if b > 0 && d % 3 != 0 {
        return Err(CliError::Usage(format!(
            "beta3 = {b} requires 3 | d, got d = {d}"
        )));
    }
    Ok(())
}

pub fn cmd_formulas(d: usize, n3: usize, b3: usize) -> Result<RunReport, CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!("need d >= 2, got {d}")));
    }
    validate_beta3(d, b3)?;
    let pairs = d * (d - 1) / 2;
    if 3 * n3 > pairs {
        return Err(CliError::Usage(format!(
            "n3 = {n3} triple points need 3*n3 <= C(d,2) = {pairs}"
        )));
    }
    let sp = spectrum(d, n3);
    let pd = assemble_pd(d, n3, b3)?;
    let hd = specialize_hd(&pd);
    let checks = formula_checks(d, n3, b3, &pd, &hd, &sp);
    let betti = betti(&pd);
    Ok(RunReport {
        source: None,
        d,
        n3,
        beta3: b3,
        beta3_source: Beta3Source::Input,
        summary: None,
        defect: None,
        spectrum: sp,
        pd,
        hd,
        betti,
        checks,
    })
}

/// One random arrangement whose checks did not all pass.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub item: CorpusItem,
    pub arrangement: Option<ArrangementSpec>,
    pub failed: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub seed: u64,
    pub count: usize,
    pub max_d: usize,
    pub golden: Vec<CheckResult>,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl CheckSummary {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.golden.iter().all(|c| c.pass)
    }
}

/// How corpus item `index` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusItem {
    pub seed: u64,
    pub d: usize,
    pub cyclotomic_order: u32,
    /// Builtin whose random projective image is used instead of the
    /// incremental sampler.
    pub base: Option<&'static str>,
}

/// About one item in five is a projective image of a Ceva arrangement, so
/// that `β₃ > 0` shows up in the corpus.
pub fn corpus_item(seed: u64, index: usize, max_d: usize) -> CorpusItem {
    let item_seed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(item_seed);
    let mut d = rng.gen_range(2..=max_d);
    let order = if rng.gen_bool(0.5) { 3 } else { 1 };
    let base = match (rng.gen_ratio(1, 5), order) {
        (true, 3) if max_d >= 9 => Some("ceva3"),
        (true, 1) if max_d >= 6 => Some("ceva2"),
        _ => None,
    };
    if let Some(name) = base {
        d = if name == "ceva3" { 9 } else { 6 };
    }
    CorpusItem {
        seed: item_seed,
        d,
        cyclotomic_order: order,
        base,
    }
}

pub fn generate_item(item: &CorpusItem) -> Result<Arrangement, ArrangementError> {
    match item.base {
        Some(name) => random_projective_image(&builtin(name)?, item.seed),
        None => generate_random_arrangement(item.d, item.cyclotomic_order, item.seed),
    }
}

fn run_item(seed: u64, index: usize, max_d: usize) -> Result<(), Failure> {
    let item = corpus_item(seed, index, max_d);
    let fail = |arrangement, failed| Failure {
        index,
        item,
        arrangement,
        failed,
    };
    let a = match generate_item(&item) {
        Ok(a) => a,
        Err(e) => {
            return Err(fail(
                None,
                vec![CheckResult::from_result("generate", Err(e.to_string()))],
            ))
        }
    };
    match analyze_arrangement(&a, None) {
        Ok(r) if r.all_pass() => Ok(()),
        Ok(r) => Err(fail(Some(a.to_spec()), r.failed().cloned().collect())),
        Err(e) => Err(fail(
            Some(a.to_spec()),
            vec![CheckResult::from_result("analyze", Err(e.to_string()))],
        )),
    }
}

/// Golden checks first, then `count` random arrangements spread over the
/// available cores. Results are ordered by item index.
pub fn cmd_check(count: usize, max_d: usize, seed: u64) -> Result<CheckSummary, CliError> {
    if max_d < 2 {
        return Err(CliError::Usage(format!(
            "--max-d must be at least 2, got {max_d}"
        )));
    }
    let golden = golden::golden_checks();

    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(count.max(1));
    let mut results: Vec<(usize, Result<(), Failure>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..count)
                        .step_by(workers)
                        .map(|i| (i, run_item(seed, i, max_d)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _)| *i);

    let mut failures = Vec::new();
    for (_, r) in results {
        if let Err(f) = r {
            failures.push(f);
        }
    }
    Ok(CheckSummary {
        seed,
        count,
        max_d,
        golden,
        passed: count - failures.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse(String::new()).exit_code(), 3);
        assert_eq!(CliError::Hypothesis(String::new()).exit_code(), 2);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Consistency(String::new()).exit_code(), 1);
    }

    #[test]
    fn corpus_items_are_reproducible() {
        for i in 0..40 {
            let item = corpus_item(5, i, 12);
            assert_eq!(item, corpus_item(5, i, 12));
            assert!((2..=12).contains(&item.d));
            assert!([1, 3].contains(&item.cyclotomic_order));
        }
        assert!((0..40).all(|i| corpus_item(5, i, 4).base.is_none()));
    }
}
