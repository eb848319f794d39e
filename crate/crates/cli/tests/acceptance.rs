//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use arrhodge::arrangement::{build_lattice, builtin, check_hypotheses, summarize};
use arrhodge::defect::{beta3, build_evaluation_matrix};
use arrhodge::hodge::{assemble_pd, HodgeSlot};
use arrhodge::spectrum::{spectrum, SpectrumPoly};
use arrhodge_cli::commands::{analyze_arrangement, corpus_item, generate_item};
use num_rational::Rational64;

type Outcome = Result<String, String>;

const CEVA3_TEXT: &str = "t^{1/3} + 3t^{4/9} + 6t^{5/9} + 10t^{2/3} + 3t^{7/9} + 9t^{8/9} + 16t \
    + 6t^{11/9} + 10t^{4/3} − 2t^{5/3} + 6t^{16/9} − 8t² + 9t^{19/9} + 3t^{20/9} − 2t^{7/3} \
    + 6t^{22/9} + 3t^{23/9} + t^{8/3} − t³";

/// Reads a spectrum written as `c t^{p/q}` terms, with `t`, `t²`, `t³`
/// shorthands and Unicode minus signs.
fn parse_spectrum(text: &str) -> SpectrumPoly {
    let text = text
        .replace('−', "-")
        .replace(' ', "")
        .replace('²', "^{2}")
        .replace('³', "^{3}");
    let mut terms = Vec::new();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => -1,
            _ => 1,
        };
        rest = rest.trim_start_matches(['+', '-']);
        let t = rest.find('t').expect("term without t");
        let coeff: i64 = if t == 0 {
            1
        } else {
            rest[..t].parse().unwrap()
        };
        rest = &rest[t + 1..];
        let alpha = if let Some(body) = rest.strip_prefix("^{") {
            let close = body.find('}').unwrap();
            let exp = &body[..close];
            rest = &body[close + 1..];
            match exp.split_once('/') {
                Some((n, d)) => Rational64::new(n.parse().unwrap(), d.parse().unwrap()),
                None => Rational64::from_integer(exp.parse().unwrap()),
            }
        } else {
            Rational64::from_integer(1)
        };
        terms.push((alpha, sign * coeff));
    }
    SpectrumPoly::from_terms(terms)
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| [&row[..c], &row[c + 1..]].concat())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a = builtin("ceva3").map_err(|e| e.to_string())?;
    let lattice = build_lattice(&a);
    let s = summarize(&a, &lattice);
    let b = beta3(&s, &lattice.triple_points())
        .map_err(|e| e.to_string())?
        .beta3;
    let sp = spectrum(s.d, s.n3());
    let elapsed = start.elapsed();

    let expected = parse_spectrum(CEVA3_TEXT);
    if expected.len() != 19 {
        return Err(format!("literal parsed to {} terms", expected.len()));
    }
    if s.n3() != 12 || b != 2 {
        return Err(format!("n3 = {}, beta3 = {b}", s.n3()));
    }
    if sp != expected {
        return Err(format!("got {sp}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("n3 = 12, beta3 = 2, 19 terms exact, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let t = assemble_pd(9, 12, 2).map_err(|e| e.to_string())?;
    let (h212, h122) = (t.get(3, 2, 1, 2), t.get(3, 1, 2, 2));
    if (h212, h122) == (0, 10) {
        Ok("k = 3: (2,1,2) -> 0, (1,2,2) -> 10".into())
    } else {
        Err(format!("k = 3: (2,1,2) -> {h212}, (1,2,2) -> {h122}"))
    }
}

fn criterion_3() -> Outcome {
    let a = builtin("ceva2").map_err(|e| e.to_string())?;
    let lattice = build_lattice(&a);
    let s = summarize(&a, &lattice);
    let pts = lattice.triple_points();
    let m = build_evaluation_matrix(&pts, 1);
    if (m.n_rows(), m.n_cols()) != (4, 3) {
        return Err(format!("matrix is {}x{}", m.n_rows(), m.n_cols()));
    }
    let ints: Vec<Vec<i64>> = m
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    let c = &e.coeffs()[0];
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();
    let nonzero_minors = (0..4)
        .filter(|&skip| {
            let sub: Vec<Vec<i64>> = ints
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, r)| r.clone())
                .collect();
            det(&sub) != 0
        })
        .count();
    let oracle_rank = if nonzero_minors > 0 { 3 } else { 0 };
    let r = beta3(&s, &pts).map_err(|e| e.to_string())?;
    if r.rank != 3 || oracle_rank != 3 || r.beta3 != 1 {
        return Err(format!(
            "rank {} (minors: {nonzero_minors} nonzero), beta3 = {}",
            r.rank, r.beta3
        ));
    }
    let b1 = assemble_pd(s.d, s.n3(), r.beta3)
        .map_err(|e| e.to_string())?
        .betti(1);
    if b1 != 7 {
        return Err(format!("b1 = {b1}"));
    }
    Ok(format!(
        "rank 3 ({nonzero_minors}/4 nonzero 3x3 minors), beta3 = 1, b1 = 7"
    ))
}

fn criterion_4() -> Outcome {
    let a = builtin("triangle").map_err(|e| e.to_string())?;
    let r = analyze_arrangement(&a, None).map_err(|e| e.to_string())?;
    let expected_sp = parse_spectrum("t − 2t² − t³");
    if r.spectrum != expected_sp {
        return Err(format!("Sp = {}", r.spectrum));
    }
    let entries: Vec<(usize, HodgeSlot, i64)> = r.pd.iter().collect();
    let expected = vec![
        (0, HodgeSlot::new(0, 0, 0), 1),
        (0, HodgeSlot::new(1, 1, 1), 2),
        (0, HodgeSlot::new(2, 2, 2), 1),
    ];
    if entries != expected {
        return Err(format!("PD = {entries:?}"));
    }
    Ok(format!("Sp = {}, PD supported at k = 0 only", r.spectrum))
}

const REQUIRED_CHECKS: [&str; 8] = [
    "pd_nonnegative",
    "conjugation_symmetry",
    "pair_count",
    "euler_identity",
    "spectrum_from_hodge",
    "pd_hd_round_trip",
    "rank_invariance",
    "beta3_range",
];

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let count = 60;
    let mut beta3_seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    let mut max_d = 0;
    for i in 0..count {
        let item = corpus_item(2024, i, 12);
        let (seed, d, order) = (item.seed, item.d, item.cyclotomic_order);
        let a = generate_item(&item).map_err(|e| format!("item {i} (seed {seed}): {e}"))?;
        let lattice = build_lattice(&a);
        check_hypotheses(&a, &lattice).map_err(|e| format!("item {i}: {e}"))?;
        let r = analyze_arrangement(&a, None).map_err(|e| format!("item {i}: {e}"))?;
        for name in REQUIRED_CHECKS {
            if !r.checks.iter().any(|c| c.name == name) {
                return Err(format!("item {i}: check {name} was not run"));
            }
        }
        if let Some(c) = r.failed().next() {
            return Err(format!(
                "item {i} (seed {seed}, d = {d}, m = {order}): {} {}",
                c.name, c.detail
            ));
        }
        *beta3_seen.entry(r.beta3).or_default() += 1;
        *orders.entry(order).or_default() += 1;
        max_d = max_d.max(d);
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{count} arrangements, max d = {max_d}, orders {orders:?}, beta3 histogram {beta3_seen:?}, {elapsed:.1?}"
    ))
}

/// The text between `"spectrum":` and `"hd":` in a pretty-printed report.
fn spectrum_and_pd(json: &str) -> Option<&str> {
    let start = json.find("\"spectrum\":")?;
    let end = json.find("\"hd\":")?;
    Some(&json[start..end])
}

fn criterion_6() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_arrhodge");
    let run = |args: &[&str]| -> Result<String, String> {
        let out = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("{args:?} exited with {}", out.status));
        }
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    let formulas = run(&[
        "formulas", "--d", "9", "--n3", "12", "--beta3", "2", "--output", "json",
    ])?;
    let analyze = run(&["analyze", "--builtin", "ceva3", "--output", "json"])?;
    let (f, a) = (
        spectrum_and_pd(&formulas).ok_or("formulas output lacks spectrum/pd")?,
        spectrum_and_pd(&analyze).ok_or("analyze output lacks spectrum/pd")?,
    );
    if f == a {
        Ok(format!("{} identical bytes", f.len()))
    } else {
        Err("spectrum/pd sections differ".into())
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 ceva golden spectrum", criterion_1),
        ("2 ceva cubic hodge numbers", criterion_2),
        ("3 ceva2 defect", criterion_3),
        ("4 triangle", criterion_4),
        ("5 random property suite", criterion_5),
        ("6 formula/geometry equivalence", criterion_6),
    ];
    let mut ok = true;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                ok = false;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
