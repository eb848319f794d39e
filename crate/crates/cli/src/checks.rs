//! The invariant suite attached to every report.

use std::collections::BTreeSet;

use arrhodge::arrangement::{
    build_lattice, summarize, Arrangement, ArrangementSummary, IntersectionLattice,
};
use arrhodge::defect::{build_evaluation_matrix, matrix_rank, DefectResult};
use arrhodge::field::CyclotomicElement;
use arrhodge::hodge::{
    assemble_pd_unchecked, betti_and_euler, reconstruct_pd, spectrum_from_hodge,
    EquivariantHodgeTable, HdPoly,
};
use arrhodge::spectrum::{binom2, spectrum, support_is_valid, SpectrumPoly};
use num_rational::Rational64;

use crate::report::CheckResult;

/// Checks that only need `(d, n₃, β₃)` and the assembled objects.
pub fn formula_checks(
    d: usize,
    n3: usize,
    beta3: usize,
    table: &EquivariantHodgeTable,
    hd: &HdPoly,
    sp: &SpectrumPoly,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push =
        |name: &str, r: Result<String, String>| out.push(CheckResult::from_result(name, r));

    push(
        "pd_nonnegative",
        match table.first_negative() {
            None => Ok(format!("{} nonzero entries", table.iter().count())),
            Some((k, s, v)) => Err(format!(
                "k = {k}, (p,q,j) = ({},{},{}) has {v}",
                s.p, s.q, s.j
            )),
        },
    );
    push(
        "pd_shape",
        table
            .check_shape()
            .map(|()| "weights and degrees admissible".into()),
    );
    push(
        "conjugation_symmetry",
        table
            .check_conjugation_symmetry()
            .map(|()| "T[k](p,q,j) = T[d-k](q,p,j)".into()),
    );

    let expected: BTreeSet<usize> = if beta3 > 0 {
        [0, d / 3, 2 * d / 3].into()
    } else {
        [0].into()
    };
    let support = table.h1_support();
    push(
        "h1_support",
        if support == expected {
            Ok(format!("{support:?}"))
        } else {
            Err(format!("got {support:?}, expected {expected:?}"))
        },
    );

    let (b0, b1) = (table.betti(0), table.betti(1));
    let want_b1 = d as i64 - 1 + 2 * beta3 as i64;
    push(
        "betti_low_degrees",
        if b0 == 1 && b1 == want_b1 {
            Ok(format!("b0 = 1, b1 = {b1}"))
        } else {
            Err(format!("b0 = {b0}, b1 = {b1}, expected b1 = {want_b1}"))
        },
    );

    push(
        "pd_hd_round_trip",
        match reconstruct_pd(hd) {
            Ok(t) if &t == table => Ok(format!("{} HD coefficients", hd.iter().count())),
            Ok(_) => Err("reconstruction differs from the table".into()),
            Err(e) => Err(e.to_string()),
        },
    );

    push("spectrum_support", {
        if support_is_valid(sp, d) {
            Ok(format!("{} terms in (0, 3]", sp.len()))
        } else {
            Err(format!(
                "exponent outside (0, 3] or with denominator not dividing {d}"
            ))
        }
    });

    let one = Rational64::from_integer(1);
    let two = Rational64::from_integer(2);
    let three = Rational64::from_integer(3);
    let (di, n3i) = (d as i64, n3 as i64);
    push("spectrum_integer_exponents", {
        let (c1, c2) = (sp.coeff(one), sp.coeff(two));
        if c1 == binom2(di - 1) - n3i && c2 == -(di - 1) {
            Ok(format!("n_1 = {c1}, n_2 = {c2}"))
        } else {
            Err(format!("n_1 = {c1}, n_2 = {c2}"))
        }
    });
    push("spectrum_conjugate_blocks", {
        let bad: Vec<i64> = (1..di)
            .filter(|j| (3 * j) % di != 0)
            .filter(|&j| {
                sp.coeff(Rational64::new(j, di)) != sp.coeff(Rational64::new(di - j, di) + 2)
            })
            .collect();
        if bad.is_empty() {
            Ok("n_{j/d} = n_{2+(d-j)/d}".into())
        } else {
            Err(format!("fails for j in {bad:?}"))
        }
    });

    let def = spectrum_from_hodge(table);
    push("spectrum_from_hodge", {
        let alphas: BTreeSet<Rational64> = sp.terms().chain(def.terms()).map(|(a, _)| a).collect();
        let bad: Vec<String> = alphas
            .into_iter()
            .filter(|&a| def.coeff(a) - sp.coeff(a) != i64::from(a == three))
            .map(|a| format!("{a}: {} vs {}", def.coeff(a), sp.coeff(a)))
            .collect();
        if bad.is_empty() {
            Ok("agrees on (0,3), differs by 1 at alpha = 3".into())
        } else {
            Err(bad.join("; "))
        }
    });

    if d % 3 == 0 {
        push("beta3_spectrum_invariance", beta3_invariance(d, n3, sp));
    }
    out
}

/// Every β₃ gives the same spectrum; β₃ only shifts weight inside `H²`.
fn beta3_invariance(d: usize, n3: usize, sp: &SpectrumPoly) -> Result<String, String> {
    let t0 = assemble_pd_unchecked(d, n3, 0).map_err(|e| e.to_string())?;
    for b in 0..=2 {
        let t = assemble_pd_unchecked(d, n3, b).map_err(|e| e.to_string())?;
        if spectrum_from_hodge(&t) != spectrum_from_hodge(&t0) {
            return Err(format!("beta3 = {b} changes the spectrum"));
        }
        let dw2 = t.weight_graded_dim(2, 2) - t0.weight_graded_dim(2, 2);
        let dw3 = t.weight_graded_dim(2, 3) - t0.weight_graded_dim(2, 3);
        let b = b as i64;
        if dw2 != 4 * b || dw3 != -2 * b {
            return Err(format!("beta3 = {b}: Gr_2 moved by {dw2}, Gr_3 by {dw3}"));
        }
    }
    if spectrum(d, n3) != *sp {
        return Err("spectrum differs from the closed form".into());
    }
    Ok("spectrum fixed for beta3 in 0..=2".into())
}

/// Checks tied to an actual arrangement.
pub fn geometry_checks(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    summary: &ArrangementSummary,
    defect: Option<&DefectResult>,
    table: &EquivariantHodgeTable,
    beta3: usize,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push =
        |name: &str, r: Result<String, String>| out.push(CheckResult::from_result(name, r));

    push(
        "lattice_incidence",
        lattice
            .verify(a)
            .map(|()| format!("{} points", lattice.len())),
    );
    let d = summary.d;
    let lhs: usize = summary
        .mult_histogram
        .iter()
        .map(|(&m, &c)| c * m * (m - 1) / 2)
        .sum();
    push(
        "pair_count",
        if lhs == d * (d - 1) / 2 {
            Ok(format!("sum C(m_p,2) = {lhs} = C({d},2)"))
        } else {
            Err(format!(
                "sum C(m_p,2) = {lhs}, C({d},2) = {}",
                d * (d - 1) / 2
            ))
        },
    );
    push(
        "euler_identity",
        betti_and_euler(table, summary, beta3)
            .map(|b| format!("b0 - b1 + b2 = {} = d*chi(M)", b.chi_f))
            .map_err(|e| e.to_string()),
    );
    push("line_rescaling", line_rescaling(a, summary));

    match defect {
        Some(r) => {
            push(
                "beta3_range",
                if r.beta3 <= 2 {
                    Ok(format!("beta3 = {}", r.beta3))
                } else {
                    Err(format!("beta3 = {}", r.beta3))
                },
            );
            match r.m {
                Some(m) => {
                    let pts = lattice.triple_points();
                    push(
                        "rank_invariance",
                        rank_invariance(a, &pts, 2 * m as i64 - 3, r.rank),
                    );
                }
                None => push(
                    "rank_invariance",
                    Ok("no matrix, 3 does not divide d".into()),
                ),
            }
        }
        None => {
            push(
                "beta3_range",
                Ok(format!("beta3 = {beta3} assumed, rank not computed")),
            );
            push("rank_invariance", Ok("not run, beta3 assumed".into()));
        }
    }
    out
}

fn scalar(a: &Arrangement, i: usize) -> CyclotomicElement {
    let k = a.field();
    let s = &k.from_int(i as i64 + 2) + &k.zeta();
    if s.is_zero() {
        k.from_int(i as i64 + 2)
    } else {
        s
    }
}

fn line_rescaling(a: &Arrangement, summary: &ArrangementSummary) -> Result<String, String> {
    let lines = a
        .lines()
        .iter()
        .enumerate()
        .map(|(i, l)| l.rescaled(&scalar(a, i)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let b = Arrangement::new(a.field().clone(), lines).map_err(|e| e.to_string())?;
    let s = summarize(&b, &build_lattice(&b));
    if &s == summary {
        Ok("summary unchanged".into())
    } else {
        Err("rescaling the lines changed the summary".into())
    }
}

/// Rank under other point representatives, row/column permutation and row
/// deletion.
fn rank_invariance(
    a: &Arrangement,
    pts: &[arrhodge::arrangement::ProjectivePoint],
    degree: i64,
    rank: usize,
) -> Result<String, String> {
    let m = build_evaluation_matrix(pts, degree);
    let rescaled: Vec<Vec<CyclotomicElement>> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let s = scalar(a, i);
            let [x, y, z] = p.coords().clone().map(|c| &c * &s);
            m.monomials
                .iter()
                .map(|&[e0, e1, e2]| &(&x.pow(e0) * &y.pow(e1)) * &z.pow(e2))
                .collect()
        })
        .collect();
    let r = matrix_rank(&rescaled);
    if r != rank {
        return Err(format!(
            "rescaled representatives give rank {r}, expected {rank}"
        ));
    }
    let mut permuted: Vec<_> = m.rows.iter().rev().cloned().collect();
    for row in &mut permuted {
        if !row.is_empty() {
            row.rotate_left(1);
        }
    }
    let r = matrix_rank(&permuted);
    if r != rank {
        return Err(format!("permuted matrix has rank {r}, expected {rank}"));
    }
    if !m.rows.is_empty() {
        let r = matrix_rank(&m.rows[1..]);
        if r > rank || r + 1 < rank {
            return Err(format!("dropping a row gives rank {r} from {rank}"));
        }
    }
    Ok(format!("rank {rank} stable"))
}
