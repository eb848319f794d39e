//! The Papadima–Suciu invariant `β₃` as a defect of an evaluation map.
//!
//! For `d = 3m`, let `T` be the set of triple points. Evaluating homogeneous
//! polynomials of degree `2m − 3` at fixed representatives of the points of
//! `T` gives a linear map `S_{2m−3} → C^T`; `β₃` is the dimension of its
//! cokernel, `|T| − rank`. When `3 ∤ d` we set `β₃ = 0`: the invariant only
//! enters through cubic-root eigenvalues, which cannot occur then.
//!
//! Ranks are exact: Gaussian elimination over `Q(ζ_m)`, the pivot being the
//! first nonzero entry of the current column.

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{ArrangementSummary, ProjectivePoint};
use crate::field::CyclotomicElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefectError {
    #[error("beta3 needs an arrangement with only double and triple points (found multiplicity {max_multiplicity})")]
    NotTripleOnly { max_multiplicity: usize },
}

/// Exponent triples `(i, j, k)` with `i + j + k = degree`, in graded
/// lexicographic order: `x^degree` first, `z^degree` last.
pub fn monomial_basis(degree: i64) -> Vec<[u32; 3]> {
    if degree < 0 {
        return Vec::new();
    }
    let n = degree as u32;
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for i in (0..=n).rev() {
        for j in (0..=n - i).rev() {
            out.push([i, j, n - i - j]);
        }
    }
    out
}

/// The evaluation map in the monomial basis, one row per point.
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    pub monomials: Vec<[u32; 3]>,
    pub rows: Vec<Vec<CyclotomicElement>>,
}

impl EvaluationMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.rows)
    }
}

pub fn build_evaluation_matrix(points: &[ProjectivePoint], degree: i64) -> EvaluationMatrix {
    let monomials = monomial_basis(degree);
    let rows = points
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            monomials
                .iter()
                .map(|&[i, j, k]| &(&x.pow(i) * &y.pow(j)) * &z.pow(k))
                .collect()
        })
        .collect();
    EvaluationMatrix { monomials, rows }
}

/// Exact rank of a row-major matrix over one cyclotomic field.
pub fn matrix_rank(rows: &[Vec<CyclotomicElement>]) -> usize {
    let mut m: Vec<Vec<CyclotomicElement>> = rows.to_vec();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inverse().expect("pivot is nonzero");
        let pivot_row: Vec<CyclotomicElement> = m[rank].iter().map(|e| e * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *c = &*c - &(&factor * p);
            }
        }
        m[rank] = pivot_row;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank data behind `β₃`.
///
/// When `3 ∤ d` no matrix is built: `m` is `None` and `monomial_count`,
/// `rank` and `beta3` are all `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectResult {
    pub m: Option<usize>,
    pub n_triple: usize,
    pub monomial_count: usize,
    pub rank: usize,
    pub beta3: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

pub fn beta3(
    summary: &ArrangementSummary,
    triple_points: &[ProjectivePoint],
) -> Result<DefectResult, DefectError> {
    if !summary.triple_only {
        return Err(DefectError::NotTripleOnly {
            max_multiplicity: summary.max_multiplicity(),
        });
    }
    let n_triple = triple_points.len();
    if summary.d % 3 != 0 {
        return Ok(DefectResult {
            m: None,
            n_triple,
            monomial_count: 0,
            rank: 0,
            beta3: 0,
            diagnostic: None,
        });
    }
    let m = summary.d / 3;
    let matrix = build_evaluation_matrix(triple_points, 2 * m as i64 - 3);
    let rank = matrix.rank();
    let beta3 = n_triple - rank;
    let diagnostic = (beta3 > 2).then(|| {
        let msg = format!(
            "beta3 = {beta3} exceeds 2 (d = {}, {n_triple} triple points, rank {rank})",
            summary.d
        );
        log::warn!("{msg}");
        msg
    });
    Ok(DefectResult {
        m: Some(m),
        n_triple,
        monomial_count: matrix.n_cols(),
        rank,
        beta3,
        diagnostic,
    })
}
