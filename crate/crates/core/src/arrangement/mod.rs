//! Projective line arrangements and their intersection lattices.
//!
//! Lines and points are stored in normalized homogeneous coordinates: the
//! first nonzero coordinate is `1`. Two triples describe the same projective
//! object exactly when their normalized forms are equal, so points can be
//! grouped with a hash map and compared in constant time.

mod builtins;
mod lattice;
mod random;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{CyclotomicElement, CyclotomicField, FieldError};

pub use builtins::{builtin, builtin_names, builtin_spec};
pub use lattice::{
    build_lattice, check_hypotheses, summarize, ArrangementSummary, HypothesisViolation,
    IntersectionLattice, LatticePoint,
};
pub use random::{
    generate_random_arrangement, generate_with, random_projective_image, SamplerConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("an arrangement needs at least 2 lines, got {count}")]
    TooFewLines { count: usize },
    #[error("line {index} has all three coefficients zero")]
    ZeroLine { index: usize },
    #[error("homogeneous coordinates are all zero")]
    ZeroTriple,
    #[error("lines {first} and {second} are proportional")]
    DuplicateLine { first: usize, second: usize },
    #[error("the two lines are proportional and have no unique intersection")]
    ProportionalLines,
    #[error("line {index} has {actual} coefficients instead of 3")]
    WrongArity { index: usize, actual: usize },
    #[error("line coefficients live in Q(z_{found}) but the arrangement uses Q(z_{expected})")]
    MixedOrders { expected: u32, found: u32 },
    #[error("no admissible arrangement of {d} lines over Q(z_{order}) after {attempts} attempts")]
    SamplingExhausted {
        d: usize,
        order: u32,
        attempts: usize,
    },
    #[error("unknown builtin arrangement {0:?}")]
    UnknownBuiltin(String),
}

/// Scales `coords` so that the first nonzero entry is `1`.
fn normalize(coords: [CyclotomicElement; 3]) -> Result<[CyclotomicElement; 3], ArrangementError> {
    let order = coords[0].order();
    for c in &coords[1..] {
        if c.order() != order {
            return Err(FieldError::OrderMismatch {
                left: order,
                right: c.order(),
            }
            .into());
        }
    }
    let lead = coords
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(ArrangementError::ZeroTriple)?;
    if lead.is_one() {
        return Ok(coords);
    }
    let inv = lead.inverse()?;
    Ok(coords.map(|c| &c * &inv))
}

fn cross(u: &[CyclotomicElement; 3], v: &[CyclotomicElement; 3]) -> [CyclotomicElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn fmt_triple(f: &mut fmt::Formatter<'_>, t: &[CyclotomicElement; 3]) -> fmt::Result {
    write!(f, "[{} : {} : {}]", t[0], t[1], t[2])
}

/// The line `a·x + b·y + c·z = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveLine {
    coeffs: [CyclotomicElement; 3],
}

impl ProjectiveLine {
    pub fn new(
        a: CyclotomicElement,
        b: CyclotomicElement,
        c: CyclotomicElement,
    ) -> Result<Self, ArrangementError> {
        Ok(ProjectiveLine {
            coeffs: normalize([a, b, c])?,
        })
    }

    pub fn coeffs(&self) -> &[CyclotomicElement; 3] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.coeffs[0].order()
    }

    /// `a·x + b·y + c·z` at the stored representative of `p`.
    pub fn eval(&self, p: &ProjectivePoint) -> CyclotomicElement {
        let [a, b, c] = &self.coeffs;
        let [x, y, z] = &p.coords;
        &(&(a * x) + &(b * y)) + &(c * z)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Multiplies every coefficient by a nonzero scalar; the normalized form
    /// is unchanged, which is the point of the exercise.
    pub fn rescaled(&self, s: &CyclotomicElement) -> Result<Self, ArrangementError> {
        let [a, b, c] = &self.coeffs;
        ProjectiveLine::new(a * s, b * s, c * s)
    }
}

impl fmt::Debug for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(f, &self.coeffs)
    }
}

/// A point `[x : y : z]` of the projective plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: [CyclotomicElement; 3],
}

impl ProjectivePoint {
    pub fn new(
        x: CyclotomicElement,
        y: CyclotomicElement,
        z: CyclotomicElement,
    ) -> Result<Self, ArrangementError> {
        Ok(ProjectivePoint {
            coords: normalize([x, y, z])?,
        })
    }

    pub fn coords(&self) -> &[CyclotomicElement; 3] {
        &self.coords
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(f, &self.coords)
    }
}

/// The common point of two distinct lines (cross product of coefficients).
pub fn intersect_lines(
    l1: &ProjectiveLine,
    l2: &ProjectiveLine,
) -> Result<ProjectivePoint, ArrangementError> {
    let [x, y, z] = cross(&l1.coeffs, &l2.coeffs);
    ProjectivePoint::new(x, y, z).map_err(|e| match e {
        ArrangementError::ZeroTriple => ArrangementError::ProportionalLines,
        other => other,
    })
}

/// The line through two distinct points.
pub fn join_points(
    p: &ProjectivePoint,
    q: &ProjectivePoint,
) -> Result<ProjectiveLine, ArrangementError> {
    let [a, b, c] = cross(&p.coords, &q.coords);
    ProjectiveLine::new(a, b, c)
}

/// On-disk form of an arrangement.
///
/// ```json
/// { "cyclotomic_order": 3, "lines": [["1", "-z", "0"], ["0", "1", "-1"]] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub cyclotomic_order: u32,
    pub lines: Vec<Vec<String>>,
}

/// A finite set of distinct lines over one cyclotomic field.
#[derive(Clone, Debug)]
pub struct Arrangement {
    field: Arc<CyclotomicField>,
    lines: Vec<ProjectiveLine>,
}

impl Arrangement {
    pub fn new(
        field: Arc<CyclotomicField>,
        lines: Vec<ProjectiveLine>,
    ) -> Result<Self, ArrangementError> {
        if lines.len() < 2 {
            return Err(ArrangementError::TooFewLines { count: lines.len() });
        }
        for line in &lines {
            if line.order() != field.order() {
                return Err(ArrangementError::MixedOrders {
                    expected: field.order(),
                    found: line.order(),
                });
            }
        }
        for (j, lj) in lines.iter().enumerate() {
            if let Some(i) = lines[..j].iter().position(|li| li == lj) {
                return Err(ArrangementError::DuplicateLine {
                    first: i,
                    second: j,
                });
            }
        }
        Ok(Arrangement { field, lines })
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn lines(&self) -> &[ProjectiveLine] {
        &self.lines
    }

    /// Number of lines.
    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn to_spec(&self) -> ArrangementSpec {
        ArrangementSpec {
            cyclotomic_order: self.order(),
            lines: self
                .lines
                .iter()
                .map(|l| l.coeffs.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

/// Parses, normalizes and validates an arrangement document.
pub fn load_arrangement(spec: &ArrangementSpec) -> Result<Arrangement, ArrangementError> {
    let field = CyclotomicField::new(spec.cyclotomic_order)?;
    let mut lines = Vec::with_capacity(spec.lines.len());
    for (index, triple) in spec.lines.iter().enumerate() {
        if triple.len() != 3 {
            return Err(ArrangementError::WrongArity {
                index,
                actual: triple.len(),
            });
        }
        let a = field.parse(&triple[0])?;
        let b = field.parse(&triple[1])?;
        let c = field.parse(&triple[2])?;
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(ArrangementError::ZeroLine { index });
        }
        lines.push(ProjectiveLine::new(a, b, c)?);
    }
    Arrangement::new(field, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(order: u32, lines: &[[&str; 3]]) -> ArrangementSpec {
        ArrangementSpec {
            cyclotomic_order: order,
            lines: lines
                .iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    fn line(k: &Arc<CyclotomicField>, s: [&str; 3]) -> ProjectiveLine {
        ProjectiveLine::new(
            k.parse(s[0]).unwrap(),
            k.parse(s[1]).unwrap(),
            k.parse(s[2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn loads_triangle_and_ceva() {
        let t = load_arrangement(&spec(
            1,
            &[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        ));
        assert_eq!(t.unwrap().d(), 3);
        assert_eq!(builtin("ceva3").unwrap().d(), 9);
    }

    #[test]
    fn proportional_lines_are_duplicates() {
        let err = load_arrangement(&spec(1, &[["1", "-1", "0"], ["2", "-2", "0"]])).unwrap_err();
        assert_eq!(
            err,
            ArrangementError::DuplicateLine {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn load_errors() {
        let zero = load_arrangement(&spec(1, &[["1", "0", "0"], ["0", "0", "0"]]));
        assert_eq!(zero.unwrap_err(), ArrangementError::ZeroLine { index: 1 });
        let one = load_arrangement(&spec(1, &[["1", "0", "0"]]));
        assert_eq!(one.unwrap_err(), ArrangementError::TooFewLines { count: 1 });
        let bad = load_arrangement(&spec(3, &[["1", "w", "0"], ["0", "1", "0"]]));
        assert!(matches!(
            bad,
            Err(ArrangementError::Field(FieldError::Parse { .. }))
        ));
        let arity = ArrangementSpec {
            cyclotomic_order: 1,
            lines: vec![vec!["1".into()]; 2],
        };
        assert!(matches!(
            load_arrangement(&arity),
            Err(ArrangementError::WrongArity { .. })
        ));
    }

    #[test]
    fn intersections() {
        let q = CyclotomicField::new(1).unwrap();
        let p = intersect_lines(&line(&q, ["1", "-1", "0"]), &line(&q, ["1", "0", "-1"])).unwrap();
        assert_eq!(p, ProjectivePoint::new(q.one(), q.one(), q.one()).unwrap());
        let p = intersect_lines(&line(&q, ["1", "0", "0"]), &line(&q, ["0", "1", "0"])).unwrap();
        assert_eq!(
            p,
            ProjectivePoint::new(q.zero(), q.zero(), q.one()).unwrap()
        );
        let l = line(&q, ["1", "2", "3"]);
        assert_eq!(
            intersect_lines(&l, &l),
            Err(ArrangementError::ProportionalLines)
        );
    }

    #[test]
    fn intersection_over_q_zeta3() {
        let k = CyclotomicField::new(3).unwrap();
        let l1 = line(&k, ["1", "-z", "0"]);
        let l2 = line(&k, ["0", "1", "-1"]);
        let p = intersect_lines(&l1, &l2).unwrap();
        assert!(l1.contains(&p) && l2.contains(&p));
        assert_eq!(p, ProjectivePoint::new(k.zeta(), k.one(), k.one()).unwrap());
    }

    #[test]
    fn normalization_makes_lead_one() {
        let k = CyclotomicField::new(3).unwrap();
        let l = line(&k, ["0", "2*z", "z^2"]);
        assert!(l.coeffs()[0].is_zero());
        assert!(l.coeffs()[1].is_one());
        let scaled = l.rescaled(&k.parse("3 - z").unwrap()).unwrap();
        assert_eq!(scaled, l);
    }

    #[test]
    fn join_is_dual_to_intersect() {
        let q = CyclotomicField::new(1).unwrap();
        let p1 = ProjectivePoint::new(q.one(), q.from_int(2), q.zero()).unwrap();
        let p2 = ProjectivePoint::new(q.zero(), q.one(), q.from_int(5)).unwrap();
        let l = join_points(&p1, &p2).unwrap();
        assert!(l.contains(&p1) && l.contains(&p2));
    }

    #[test]
    fn spec_round_trips() {
        let a = builtin("ceva3").unwrap();
        let again = load_arrangement(&a.to_spec()).unwrap();
        assert_eq!(again.lines(), a.lines());
    }
}
