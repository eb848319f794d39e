//! Seeded sampler for arrangements with only double and triple points.
//!
//! Lines are added one at a time. A candidate is either a random line with
//! small coefficients or, to make triple points common, the line joining two
//! existing double points. Candidates that duplicate a line, create a point
//! of multiplicity 4, or complete a pencil are rejected. At most
//! [`SamplerConfig::max_attempts`] candidates are drawn in total.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    intersect_lines, join_points, Arrangement, ArrangementError, ProjectiveLine, ProjectivePoint,
};
use crate::field::{CyclotomicElement, CyclotomicField};

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    /// Total candidate lines drawn before giving up.
    pub max_attempts: usize,
    /// Basis coefficients of random lines are drawn from `-bound..=bound`.
    pub coeff_bound: i64,
    /// Probability of proposing a line through two double points.
    pub join_probability: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            max_attempts: 20_000,
            coeff_bound: 3,
            join_probability: 0.6,
        }
    }
}

/// Deterministic in `(d, order, seed)`; uses [`SamplerConfig::default`].
pub fn generate_random_arrangement(
    d: usize,
    order: u32,
    seed: u64,
) -> Result<Arrangement, ArrangementError> {
    generate_with(&SamplerConfig::default(), d, order, seed)
}

struct Partial {
    lines: Vec<ProjectiveLine>,
    points: Vec<(ProjectivePoint, Vec<usize>)>,
}

impl Partial {
    /// Adds `cand` if it keeps every multiplicity at most 3.
    fn try_add(&mut self, cand: ProjectiveLine, target: usize) -> bool {
        if self.lines.contains(&cand) {
            return false;
        }
        let through: Vec<usize> = self
            .points
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| cand.contains(p))
            .map(|(i, _)| i)
            .collect();
        if through.iter().any(|&i| self.points[i].1.len() >= 3) {
            return false;
        }
        let n = self.lines.len();
        // the last line must not close a pencil
        if n + 1 == target
            && target >= 3
            && through
                .iter()
                .any(|&i| self.points[i].1.len() + 1 == target)
        {
            return false;
        }
        let mut covered = vec![false; n];
        for &i in &through {
            for &l in &self.points[i].1 {
                covered[l] = true;
            }
            self.points[i].1.push(n);
        }
        for (i, line) in self.lines.iter().enumerate() {
            if !covered[i] {
                let p = intersect_lines(line, &cand).expect("distinct lines meet");
                self.points.push((p, vec![i, n]));
            }
        }
        self.lines.push(cand);
        true
    }
}

fn random_element(
    field: &Arc<CyclotomicField>,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> CyclotomicElement {
    let coeffs = (0..field.degree())
        .map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into()))
        .collect();
    field.from_poly(coeffs)
}

fn random_line(
    field: &Arc<CyclotomicField>,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Option<ProjectiveLine> {
    let [a, b, c] = [(); 3].map(|_| random_element(field, rng, bound));
    ProjectiveLine::new(a, b, c).ok()
}

pub fn generate_with(
    config: &SamplerConfig,
    d: usize,
    order: u32,
    seed: u64,
) -> Result<Arrangement, ArrangementError> {
    if d < 2 {
        return Err(ArrangementError::TooFewLines { count: d });
    }
    let field = CyclotomicField::new(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = Partial {
        lines: Vec::new(),
        points: Vec::new(),
    };
    let mut attempts = 0;
    while state.lines.len() < d {
        if attempts >= config.max_attempts {
            return Err(ArrangementError::SamplingExhausted { d, order, attempts });
        }
        attempts += 1;
        let doubles: Vec<usize> = state
            .points
            .iter()
            .enumerate()
            .filter(|(_, (_, inc))| inc.len() == 2)
            .map(|(i, _)| i)
            .collect();
        let cand = if doubles.len() >= 2 && rng.gen_bool(config.join_probability) {
            let i = doubles[rng.gen_range(0..doubles.len())];
            let j = doubles[rng.gen_range(0..doubles.len())];
            if i == j {
                continue;
            }
            join_points(&state.points[i].0, &state.points[j].0).ok()
        } else {
            random_line(&field, &mut rng, config.coeff_bound)
        };
        if let Some(line) = cand {
            state.try_add(line, d);
        }
    }
    Arrangement::new(field, state.lines)
}

/// Image of `a` under a random invertible linear change of coordinates with
/// small entries. Lattice, `β₃` and every other projective invariant are
/// unchanged; the coordinates are not.
pub fn random_projective_image(
    a: &Arrangement,
    seed: u64,
) -> Result<Arrangement, ArrangementError> {
    let field = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = loop {
        let m: [[CyclotomicElement; 3]; 3] =
            [(); 3].map(|_| [(); 3].map(|_| random_element(field, &mut rng, 2)));
        let det = &(&(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
            - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]))))
            + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
        if !det.is_zero() {
            break m;
        }
    };
    let lines = a
        .lines()
        .iter()
        .map(|l| {
            let c = l.coeffs();
            let [x, y, z] = [0, 1, 2]
                .map(|j| &(&(&c[0] * &m[0][j]) + &(&c[1] * &m[1][j])) + &(&c[2] * &m[2][j]));
            ProjectiveLine::new(x, y, z)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Arrangement::new(field.clone(), lines)
}
