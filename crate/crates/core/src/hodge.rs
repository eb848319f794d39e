//! Equivariant mixed Hodge numbers of the Milnor fiber.
//!
//! The cyclic group `μ_d` acts on `F` and hence on every graded piece
//! `H^{p,q}(H^j(F))`. Characters are indexed by `k ∈ {0, …, d−1}`, with
//! character `k` standing for the eigenvalue `λ_k = exp(−2πi k/d)`. This
//! makes `k` coincide with the numerator of the spectral exponent `α = k/d`,
//! absorbing the inverse-monodromy convention once and for all. The primitive
//! cubic roots `γ = exp(−2πi/3)` and `γ' = γ̄` are `k = d/3` and `k = 2d/3`.
//!
//! For an arrangement with only double and triple points the table is
//! determined by `(d, n₃, β₃)`:
//!
//! * `H⁰`: one class of type `(0,0)` at `k = 0`.
//! * `H¹`: `d−1` classes of type `(1,1)` at `k = 0`; `β₃` classes of type
//!   `(0,1)` at `γ` and of type `(1,0)` at `γ'`.
//! * `H²` at `k = 0`: `C(d−1, 2) − n₃` classes of type `(2,2)`.
//! * `H²` at a non-cubic `k`: pure of weight 2, types `(2,0), (1,1), (0,2)`
//!   with multiplicities `n_{k/d}, n_{k/d+1}, n_{k/d+2}`.
//! * `H²` at `γ`, `γ'`: weights 2 and 3, see [`h2_cubic`].

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::arrangement::ArrangementSummary;
use crate::spectrum::{binom2, n_alpha_block, SpectrumPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("need d >= 2, got {d}")]
    TooFewLines { d: usize },
    #[error("beta3 = {beta3} is outside {{0, 1, 2}}")]
    Beta3OutOfRange { beta3: usize },
    #[error("beta3 = {beta3} must vanish when 3 does not divide d = {d}")]
    Beta3WithoutCubicRoots { d: usize, beta3: usize },
    #[error("character {j} is not a non-cubic character for d = {d}")]
    NotNonCubic { j: usize, d: usize },
    #[error("3 does not divide d = {d}, there are no cubic-root characters")]
    NoCubicCharacters { d: usize },
    #[error("negative multiplicity {value} for h^{{{p},{q}}}(H^{j}) at character {k}")]
    NegativeMultiplicity {
        k: usize,
        p: u8,
        q: u8,
        j: u8,
        value: i64,
    },
    #[error("not a curve-Milnor-fiber HD: {0}")]
    NotCurveMilnorFiber(String),
    #[error("{identity} fails: {detail}")]
    Consistency {
        identity: &'static str,
        detail: String,
    },
}

/// Bidegree `(p, q)` in cohomological degree `j`.
///
/// Ordered by `j`, then `p`, then `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgeSlot {
    pub j: u8,
    pub p: u8,
    pub q: u8,
}

impl HodgeSlot {
    pub const fn new(p: u8, q: u8, j: u8) -> Self {
        HodgeSlot { j, p, q }
    }

    pub fn weight(&self) -> u8 {
        self.p + self.q
    }
}

/// `PD^{μ_d}(F; u, v, t)` stored as character → slot → multiplicity.
///
/// Zero entries are never stored. Multiplicities are signed only so that
/// [`assemble_pd_unchecked`] can represent formula values outside the valid
/// range; every table returned by [`assemble_pd`] or [`reconstruct_pd`] is
/// non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantHodgeTable {
    d: usize,
    entries: BTreeMap<usize, BTreeMap<HodgeSlot, i64>>,
}

impl EquivariantHodgeTable {
    pub fn new(d: usize) -> Self {
        EquivariantHodgeTable {
            d,
            entries: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, k: usize, p: u8, q: u8, j: u8) -> i64 {
        self.entries
            .get(&k)
            .and_then(|m| m.get(&HodgeSlot::new(p, q, j)))
            .copied()
            .unwrap_or(0)
    }

    /// Adds `value` to an entry; entries that become zero are removed.
    pub fn add(&mut self, k: usize, p: u8, q: u8, j: u8, value: i64) {
        assert!(k < self.d, "character {k} out of range for d = {}", self.d);
        if value == 0 {
            return;
        }
        let row = self.entries.entry(k).or_default();
        let slot = HodgeSlot::new(p, q, j);
        let v = row.entry(slot).or_insert(0);
        *v += value;
        if *v == 0 {
            row.remove(&slot);
            if row.is_empty() {
                self.entries.remove(&k);
            }
        }
    }

    /// Nonzero entries at one character.
    pub fn character(&self, k: usize) -> impl Iterator<Item = (HodgeSlot, i64)> + '_ {
        self.entries
            .get(&k)
            .into_iter()
            .flat_map(|m| m.iter().map(|(s, v)| (*s, *v)))
    }

    /// Characters with at least one nonzero entry.
    pub fn characters(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// All nonzero entries, sorted by character then slot.
    pub fn iter(&self) -> impl Iterator<Item = (usize, HodgeSlot, i64)> + '_ {
        self.entries
            .iter()
            .flat_map(|(k, m)| m.iter().map(move |(s, v)| (*k, *s, *v)))
    }

    /// `b_j(F)`.
    pub fn betti(&self, j: u8) -> i64 {
        self.iter()
            .filter(|(_, s, _)| s.j == j)
            .map(|(_, _, v)| v)
            .sum()
    }

    /// `dim Gr^W_w H^j(F)`.
    pub fn weight_graded_dim(&self, j: u8, w: u8) -> i64 {
        self.iter()
            .filter(|(_, s, _)| s.j == j && s.weight() == w)
            .map(|(_, _, v)| v)
            .sum()
    }

    /// Characters carrying `H¹` classes.
    pub fn h1_support(&self) -> BTreeSet<usize> {
        self.iter()
            .filter(|(_, s, _)| s.j == 1)
            .map(|(k, _, _)| k)
            .collect()
    }

    /// First negative entry, if any.
    pub fn first_negative(&self) -> Option<(usize, HodgeSlot, i64)> {
        self.iter().find(|(_, _, v)| *v < 0)
    }

    fn ensure_non_negative(self) -> Result<Self, HodgeError> {
        match self.first_negative() {
            Some((k, s, value)) => Err(HodgeError::NegativeMultiplicity {
                k,
                p: s.p,
                q: s.q,
                j: s.j,
                value,
            }),
            None => Ok(self),
        }
    }

    /// `h^{p,q}(H^j)_λ = h^{q,p}(H^j)_{λ̄}` for every entry.
    pub fn check_conjugation_symmetry(&self) -> Result<(), String> {
        for (k, s, v) in self.iter() {
            let kbar = (self.d - k) % self.d;
            let mirrored = self.get(kbar, s.q, s.p, s.j);
            if mirrored != v {
                return Err(format!(
                    "h^({},{})(H^{}) at k={k} is {v} but h^({},{})(H^{}) at k={kbar} is {mirrored}",
                    s.p, s.q, s.j, s.q, s.p, s.j
                ));
            }
        }
        Ok(())
    }

    /// Placement rules for arrangements with only double and triple points:
    /// `H⁰` is `(0,0)` at `k = 0`; `H¹` is `(1,1)` at `k = 0` and of weight 1
    /// at the cubic characters only; `H²` has weight 4 at `k = 0`, weight 2
    /// at non-cubic characters, weights 2 or 3 at cubic ones.
    pub fn check_shape(&self) -> Result<(), String> {
        let d = self.d;
        let cubic = |k: usize| k != 0 && (3 * k) % d == 0;
        for (k, s, v) in self.iter() {
            let ok = s.p <= 2
                && s.q <= 2
                && match s.j {
                    0 => k == 0 && s.p == 0 && s.q == 0,
                    1 if k == 0 => s.p == 1 && s.q == 1,
                    1 => cubic(k) && s.weight() == 1,
                    2 if k == 0 => s.weight() == 4,
                    2 if cubic(k) => matches!(s.weight(), 2 | 3),
                    2 => s.weight() == 2,
                    _ => false,
                };
            if !ok {
                return Err(format!(
                    "entry h^({},{})(H^{}) = {v} at character {k} violates the weight placement",
                    s.p, s.q, s.j
                ));
            }
        }
        Ok(())
    }
}

/// One `{ "k", "p", "q", "j", "mult" }` object per nonzero entry.
impl Serialize for EquivariantHodgeTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry {
            k: usize,
            p: u8,
            q: u8,
            j: u8,
            mult: i64,
        }
        let mut seq = serializer.serialize_seq(None)?;
        for (k, s, mult) in self.iter() {
            seq.serialize_element(&Entry {
                k,
                p: s.p,
                q: s.q,
                j: s.j,
                mult,
            })?;
        }
        seq.end()
    }
}

/// `HD^{μ_d}(F; u, v) = PD^{μ_d}(F; u, v, −1)`, character → `(p, q)` → coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HdPoly {
    d: usize,
    coeffs: BTreeMap<usize, BTreeMap<(u8, u8), i64>>,
}

impl HdPoly {
    pub fn new(d: usize) -> Self {
        HdPoly {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, k: usize, p: u8, q: u8) -> i64 {
        self.coeffs
            .get(&k)
            .and_then(|m| m.get(&(p, q)))
            .copied()
            .unwrap_or(0)
    }

    pub fn add(&mut self, k: usize, p: u8, q: u8, value: i64) {
        if value == 0 {
            return;
        }
        let row = self.coeffs.entry(k).or_default();
        let v = row.entry((p, q)).or_insert(0);
        *v += value;
        if *v == 0 {
            row.remove(&(p, q));
            if row.is_empty() {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn character(&self, k: usize) -> impl Iterator<Item = ((u8, u8), i64)> + '_ {
        self.coeffs
            .get(&k)
            .into_iter()
            .flat_map(|m| m.iter().map(|(pq, c)| (*pq, *c)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8, u8, i64)> + '_ {
        self.coeffs
            .iter()
            .flat_map(|(k, m)| m.iter().map(move |((p, q), c)| (*k, *p, *q, *c)))
    }
}

impl Serialize for HdPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry {
            k: usize,
            p: u8,
            q: u8,
            coeff: i64,
        }
        let mut seq = serializer.serialize_seq(None)?;
        for (k, p, q, coeff) in self.iter() {
            seq.serialize_element(&Entry { k, p, q, coeff })?;
        }
        seq.end()
    }
}

fn check_params(d: usize, beta3: usize) -> Result<(), HodgeError> {
    if d < 2 {
        return Err(HodgeError::TooFewLines { d });
    }
    if beta3 != 0 && d % 3 != 0 {
        return Err(HodgeError::Beta3WithoutCubicRoots { d, beta3 });
    }
    Ok(())
}

/// The `H⁰` and `H¹` layers.
pub fn h1_table(d: usize, beta3: usize) -> Result<EquivariantHodgeTable, HodgeError> {
    check_params(d, beta3)?;
    let mut t = EquivariantHodgeTable::new(d);
    t.add(0, 0, 0, 0, 1);
    t.add(0, 1, 1, 1, d as i64 - 1);
    if d % 3 == 0 {
        t.add(d / 3, 0, 1, 1, beta3 as i64);
        t.add(2 * d / 3, 1, 0, 1, beta3 as i64);
    }
    Ok(t)
}

/// `(h^{2,0}, h^{1,1}, h^{0,2})` of `H²` at a character `j` whose eigenvalue
/// is not a cubic root of unity.
pub fn h2_noncubic(j: usize, d: usize, n3: usize) -> Result<[i64; 3], HodgeError> {
    if d < 2 {
        return Err(HodgeError::TooFewLines { d });
    }
    if j == 0 || j >= d || (3 * j) % d == 0 {
        return Err(HodgeError::NotNonCubic { j, d });
    }
    Ok(n_alpha_block(j, d, n3))
}

/// `H²` Hodge numbers at `γ` (character `d/3`).
///
/// Values at `γ'` are the mirror images: `h^{p,q}_{γ'} = h^{q,p}_γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubicHodgeNumbers {
    pub h20: i64,
    pub h11: i64,
    pub h02: i64,
    pub h21: i64,
    pub h12: i64,
}

impl CubicHodgeNumbers {
    /// `((p, q), h^{p,q}_γ)` for the five possibly nonzero types.
    pub fn at_gamma(&self) -> [((u8, u8), i64); 5] {
        [
            ((2, 0), self.h20),
            ((1, 1), self.h11),
            ((0, 2), self.h02),
            ((2, 1), self.h21),
            ((1, 2), self.h12),
        ]
    }

    /// Same list at `γ'`, types transposed.
    pub fn at_gamma_prime(&self) -> [((u8, u8), i64); 5] {
        self.at_gamma().map(|((p, q), v)| ((q, p), v))
    }
}

fn cubic_values(d: usize, n3: usize, beta3: i64) -> CubicHodgeNumbers {
    // β = 1/3 ↔ j = d/3, β' = 2/3 ↔ j = 2d/3
    let [nb, nb1, _] = n_alpha_block(d / 3, d, n3);
    let [nb_, nb_1, nb_2] = n_alpha_block(2 * d / 3, d, n3);
    CubicHodgeNumbers {
        h20: nb_2,
        h11: nb_2 + nb_1 - nb + beta3,
        h02: nb_2 + nb_1 + nb_ - nb - nb1 + beta3,
        h21: nb - nb_2,
        h12: nb1 + nb - nb_1 - nb_2 - beta3,
    }
}

pub fn h2_cubic(d: usize, n3: usize, beta3: usize) -> Result<CubicHodgeNumbers, HodgeError> {
    if d < 2 {
        return Err(HodgeError::TooFewLines { d });
    }
    if d % 3 != 0 {
        return Err(HodgeError::NoCubicCharacters { d });
    }
    let h = cubic_values(d, n3, beta3 as i64);
    if let Some(((p, q), value)) = h.at_gamma().into_iter().find(|(_, v)| *v < 0) {
        return Err(HodgeError::NegativeMultiplicity {
            k: d / 3,
            p,
            q,
            j: 2,
            value,
        });
    }
    Ok(h)
}

/// The full table from `(d, n₃, β₃)`.
pub fn assemble_pd(d: usize, n3: usize, beta3: usize) -> Result<EquivariantHodgeTable, HodgeError> {
    if beta3 > 2 {
        return Err(HodgeError::Beta3OutOfRange { beta3 });
    }
    assemble_pd_unchecked(d, n3, beta3)?.ensure_non_negative()
}

/// [`assemble_pd`] without the range check on `β₃` and without rejecting
/// negative entries.
///
/// Plugging a `β₃` that does not belong to `(d, n₃)` into the formulas
/// produces a "virtual" table; it is useful for seeing which quantities
/// depend on `β₃` and which do not.
pub fn assemble_pd_unchecked(
    d: usize,
    n3: usize,
    beta3: usize,
) -> Result<EquivariantHodgeTable, HodgeError> {
    let mut t = h1_table(d, beta3)?;
    t.add(0, 2, 2, 2, binom2(d as i64 - 1) - n3 as i64);
    for k in 1..d {
        if (3 * k) % d != 0 {
            let [h20, h11, h02] = n_alpha_block(k, d, n3);
            t.add(k, 2, 0, 2, h20);
            t.add(k, 1, 1, 2, h11);
            t.add(k, 0, 2, 2, h02);
        }
    }
    if d % 3 == 0 {
        let h = cubic_values(d, n3, beta3 as i64);
        for ((p, q), v) in h.at_gamma() {
            t.add(d / 3, p, q, 2, v);
        }
        for ((p, q), v) in h.at_gamma_prime() {
            t.add(2 * d / 3, p, q, 2, v);
        }
    }
    Ok(t)
}

/// Sets `t = −1`.
pub fn specialize_hd(table: &EquivariantHodgeTable) -> HdPoly {
    let mut hd = HdPoly::new(table.d());
    for (k, s, v) in table.iter() {
        let sign = if s.j % 2 == 0 { 1 } else { -1 };
        hd.add(k, s.p, s.q, sign * v);
    }
    hd
}

/// Recovers `PD` from `HD` for the Milnor fiber of any reduced plane curve.
///
/// At the trivial character, `H⁰` contributes the constant term, `H¹` is of
/// type `(1,1)`, and `H²` has weights 3 and 4. At a nontrivial character,
/// `H¹` has weight 1 and `H²` has weight at least 2. These degree classes
/// are disjoint, so each monomial of `HD` comes from exactly one `H^j`.
pub fn reconstruct_pd(hd: &HdPoly) -> Result<EquivariantHodgeTable, HodgeError> {
    let d = hd.d();
    let mut t = EquivariantHodgeTable::new(d);
    for (k, p, q, c) in hd.iter() {
        let bad = |why: &str| {
            HodgeError::NotCurveMilnorFiber(format!("u^{p} v^{q} at character {k}: {why}"))
        };
        if k >= d {
            return Err(bad("character out of range"));
        }
        if p > 2 || q > 2 {
            return Err(bad("Hodge degree above 2"));
        }
        let (j, mult) = match (k, p + q) {
            (0, 0) => (0, c),
            (0, 2) if p == 1 => (1, -c),
            (0, 3 | 4) => (2, c),
            (0, _) => {
                return Err(bad(
                    "no cohomology group has this type at the trivial character",
                ))
            }
            (_, 1) => (1, -c),
            (_, 2..=4) => (2, c),
            (_, _) => {
                return Err(bad(
                    "no cohomology group has this type at a nontrivial character",
                ))
            }
        };
        if mult < 0 {
            return Err(bad(&format!(
                "would give negative multiplicity {mult} in H^{j}"
            )));
        }
        t.add(k, p, q, j, mult);
    }
    Ok(t)
}

/// Spectrum from the table by the definition
/// `n_α = Σ_{j≥1} (−1)^j dim Gr_F^p H^j(F)_λ`, `p = ⌊3 − α⌋`, `λ = λ_{αd mod d}`,
/// with `dim Gr_F^p H^j_λ = Σ_{q ≥ j−p} h^{p,q}(H^j)_λ`. `H⁰` is left out.
pub fn spectrum_from_hodge(table: &EquivariantHodgeTable) -> SpectrumPoly {
    let d = table.d() as i64;
    let mut terms = Vec::new();
    for k in 0..d {
        for s in 0..3 {
            // k = 0 stands for α ∈ {1, 2, 3}
            let num = if k == 0 { d } else { k } + s * d;
            let alpha = Rational64::new(num, d);
            let p = (Rational64::from_integer(3) - alpha)
                .floor()
                .to_i64()
                .unwrap();
            let mut n = 0;
            for (slot, v) in table.character(k as usize) {
                if slot.j >= 1
                    && i64::from(slot.p) == p
                    && i64::from(slot.q) >= i64::from(slot.j) - p
                {
                    n += if slot.j % 2 == 0 { v } else { -v };
                }
            }
            terms.push((alpha, n));
        }
    }
    SpectrumPoly::from_terms(terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BettiReport {
    pub b0: i64,
    pub b1: i64,
    pub b2: i64,
    #[serde(rename = "chi_F")]
    pub chi_f: i64,
}

/// Betti numbers of `F`, checked against `b₀ = 1`, `b₁ = d − 1 + 2β₃` and
/// `χ(F) = d·χ(M)`.
pub fn betti_and_euler(
    table: &EquivariantHodgeTable,
    summary: &ArrangementSummary,
    beta3: usize,
) -> Result<BettiReport, HodgeError> {
    let (b0, b1, b2) = (table.betti(0), table.betti(1), table.betti(2));
    let d = summary.d as i64;
    if b0 != 1 {
        return Err(HodgeError::Consistency {
            identity: "b0 = 1",
            detail: format!("b0 = {b0}"),
        });
    }
    let expected_b1 = d - 1 + 2 * beta3 as i64;
    if b1 != expected_b1 {
        return Err(HodgeError::Consistency {
            identity: "b1 = d - 1 + 2*beta3",
            detail: format!("b1 = {b1}, expected {expected_b1}"),
        });
    }
    let chi_f = b0 - b1 + b2;
    if chi_f != d * summary.chi_m {
        return Err(HodgeError::Consistency {
            identity: "b0 - b1 + b2 = d*chi(M)",
            detail: format!("{chi_f} != {d} * {}", summary.chi_m),
        });
    }
    Ok(BettiReport { b0, b1, b2, chi_f })
}
