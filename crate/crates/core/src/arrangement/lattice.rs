use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{intersect_lines, Arrangement, ProjectivePoint};

/// An intersection point together with the sorted indices of the lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: ProjectivePoint,
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Rank-2 part of the intersection lattice `L(A)`.
///
/// Points are ordered by their incident-line lists, so the order depends on
/// the line order only and not on how the pairs were visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points_of_multiplicity(&self, k: usize) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter().filter(move |p| p.multiplicity() == k)
    }

    /// Normalized representatives of the triple points, in lattice order.
    pub fn triple_points(&self) -> Vec<ProjectivePoint> {
        self.points_of_multiplicity(3)
            .map(|p| p.point.clone())
            .collect()
    }

    /// Checks the pair-count identity and that every incidence list is
    /// exactly the set of lines vanishing at the point.
    pub fn verify(&self, a: &Arrangement) -> Result<(), String> {
        let d = a.d();
        let pairs: usize = self.points.iter().map(|p| binom2(p.multiplicity())).sum();
        if pairs != binom2(d) {
            return Err(format!(
                "sum of C(mult, 2) is {pairs}, expected C({d}, 2) = {}",
                binom2(d)
            ));
        }
        for lp in &self.points {
            if lp.multiplicity() < 2 {
                return Err(format!(
                    "point {} has multiplicity {}",
                    lp.point,
                    lp.multiplicity()
                ));
            }
            for (i, line) in a.lines().iter().enumerate() {
                let listed = lp.incident.binary_search(&i).is_ok();
                if listed != line.contains(&lp.point) {
                    return Err(format!(
                        "line {i} incidence with {} is {} but listed as {}",
                        lp.point, !listed, listed
                    ));
                }
            }
        }
        Ok(())
    }
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Computes all pairwise intersections and groups them by point.
pub fn build_lattice(a: &Arrangement) -> IntersectionLattice {
    let lines = a.lines();
    let mut index: HashMap<ProjectivePoint, usize> = HashMap::new();
    let mut points: Vec<LatticePoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = intersect_lines(&lines[i], &lines[j])
                .expect("distinct lines in the projective plane always meet");
            let slot = *index.entry(p.clone()).or_insert_with(|| {
                points.push(LatticePoint {
                    point: p,
                    incident: Vec::new(),
                });
                points.len() - 1
            });
            let inc = &mut points[slot].incident;
            for k in [i, j] {
                if let Err(pos) = inc.binary_search(&k) {
                    inc.insert(pos, k);
                }
            }
        }
    }
    points.sort_by(|a, b| a.incident.cmp(&b.incident));
    IntersectionLattice { points }
}

/// Combinatorial data read off the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementSummary {
    pub d: usize,
    /// multiplicity → number of points
    pub mult_histogram: BTreeMap<usize, usize>,
    pub triple_only: bool,
    pub essential: bool,
    #[serde(rename = "chi_M")]
    pub chi_m: i64,
    #[serde(rename = "chi_F")]
    pub chi_f: i64,
    #[serde(rename = "b2_M")]
    pub b2_m: i64,
}

impl ArrangementSummary {
    /// Number of points of multiplicity `k`.
    pub fn n(&self, k: usize) -> usize {
        self.mult_histogram.get(&k).copied().unwrap_or(0)
    }

    pub fn n2(&self) -> usize {
        self.n(2)
    }

    pub fn n3(&self) -> usize {
        self.n(3)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mult_histogram.keys().next_back().copied().unwrap_or(0)
    }
}

pub fn summarize(a: &Arrangement, lattice: &IntersectionLattice) -> ArrangementSummary {
    let d = a.d();
    let mut mult_histogram = BTreeMap::new();
    for p in lattice.points() {
        *mult_histogram.entry(p.multiplicity()).or_insert(0) += 1;
    }
    let triple_only = mult_histogram.keys().all(|&k| k <= 3);
    let essential = !lattice.points().iter().any(|p| p.multiplicity() == d);

    // χ(M) = χ(P²) − χ(∪ lines) = 3 − 2d + Σ_p (m_p − 1); b₀ = 1, b₁ = d − 1.
    let excess: i64 = lattice
        .points()
        .iter()
        .map(|p| p.multiplicity() as i64 - 1)
        .sum();
    let d_i = d as i64;
    let chi_m = 3 - 2 * d_i + excess;
    ArrangementSummary {
        d,
        mult_histogram,
        triple_only,
        essential,
        chi_m,
        chi_f: d_i * chi_m,
        b2_m: chi_m - 1 + (d_i - 1),
    }
}

/// Why an arrangement falls outside the double-and-triple-point setting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisViolation {
    HighMultiplicity {
        point: ProjectivePoint,
        multiplicity: usize,
    },
    Pencil {
        point: ProjectivePoint,
    },
}

impl fmt::Display for HypothesisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisViolation::HighMultiplicity {
                point,
                multiplicity,
            } => {
                write!(f, "point {point} has multiplicity {multiplicity} > 3")
            }
            HypothesisViolation::Pencil { point } => {
                write!(
                    f,
                    "all lines pass through {point}; the arrangement is a pencil"
                )
            }
        }
    }
}

impl std::error::Error for HypothesisViolation {}

/// Requires only double and triple points, and no pencil once `d ≥ 3`.
///
/// Two lines always form a pencil; that case is admitted since the
/// formulas remain valid for it.
pub fn check_hypotheses(
    a: &Arrangement,
    lattice: &IntersectionLattice,
) -> Result<(), HypothesisViolation> {
    if let Some(lp) = lattice.points().iter().find(|p| p.multiplicity() > 3) {
        return Err(HypothesisViolation::HighMultiplicity {
            point: lp.point.clone(),
            multiplicity: lp.multiplicity(),
        });
    }
    if a.d() >= 3 {
        if let Some(lp) = lattice.points().iter().find(|p| p.multiplicity() == a.d()) {
            return Err(HypothesisViolation::Pencil {
                point: lp.point.clone(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{builtin, load_arrangement, ArrangementSpec};

    fn from(order: u32, lines: &[[&str; 3]]) -> Arrangement {
        load_arrangement(&ArrangementSpec {
            cyclotomic_order: order,
            lines: lines
                .iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn ceva3_has_twelve_triple_points() {
        let a = builtin("ceva3").unwrap();
        let l = build_lattice(&a);
        l.verify(&a).unwrap();
        assert_eq!(l.len(), 12);
        assert!(l.points().iter().all(|p| p.multiplicity() == 3));
        let s = summarize(&a, &l);
        assert_eq!((s.d, s.n2(), s.n3()), (9, 0, 12));
        assert!(s.triple_only && s.essential);
        assert_eq!((s.chi_m, s.chi_f, s.b2_m), (9, 81, 16));
    }

    #[test]
    fn triangle_summary() {
        let a = builtin("triangle").unwrap();
        let l = build_lattice(&a);
        let s = summarize(&a, &l);
        assert_eq!(l.len(), 3);
        assert_eq!((s.d, s.n2(), s.n3(), s.chi_m, s.b2_m), (3, 3, 0, 0, 1));
    }

    #[test]
    fn ceva2_points() {
        let a = builtin("ceva2").unwrap();
        let l = build_lattice(&a);
        let s = summarize(&a, &l);
        assert_eq!((s.n2(), s.n3()), (3, 4));
        // the four triple points are the sign points [1:±1:±1]
        let q = a.field();
        let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        for (y, z) in signs {
            let p = ProjectivePoint::new(q.one(), q.from_int(y), q.from_int(z)).unwrap();
            assert!(l.triple_points().contains(&p), "missing {p}");
        }
    }

    #[test]
    fn pencil_is_flagged_not_rejected() {
        let a = from(
            1,
            &[
                ["1", "0", "0"],
                ["0", "1", "0"],
                ["1", "1", "0"],
                ["1", "2", "0"],
            ],
        );
        let l = build_lattice(&a);
        let s = summarize(&a, &l);
        assert!(!s.essential && !s.triple_only);
        assert_eq!(s.mult_histogram, BTreeMap::from([(4, 1)]));
        match check_hypotheses(&a, &l) {
            Err(HypothesisViolation::HighMultiplicity {
                multiplicity: 4,
                point,
            }) => {
                assert_eq!(point.to_string(), "[0 : 0 : 1]")
            }
            other => panic!("unexpected {other:?}"),
        }
        let three = from(1, &[["1", "0", "0"], ["0", "1", "0"], ["1", "1", "0"]]);
        let l3 = build_lattice(&three);
        assert!(matches!(
            check_hypotheses(&three, &l3),
            Err(HypothesisViolation::Pencil { .. })
        ));
    }

    #[test]
    fn two_lines_are_admissible() {
        let a = from(1, &[["1", "0", "0"], ["0", "1", "0"]]);
        let l = build_lattice(&a);
        let s = summarize(&a, &l);
        assert!(!s.essential);
        assert_eq!((s.n2(), s.chi_m, s.b2_m), (1, 0, 0));
        check_hypotheses(&a, &l).unwrap();
    }

    #[test]
    fn lattice_ignores_line_scaling() {
        let a = builtin("ceva3").unwrap();
        let k = a.field();
        let scalars = [
            "2", "z", "1 - z", "-3/2*z^2", "5", "z + 2", "7/3", "-1", "z^2",
        ];
        let lines = a
            .lines()
            .iter()
            .zip(scalars)
            .map(|(l, s)| l.rescaled(&k.parse(s).unwrap()).unwrap())
            .collect();
        let b = Arrangement::new(k.clone(), lines).unwrap();
        assert_eq!(build_lattice(&a), build_lattice(&b));
    }
}
