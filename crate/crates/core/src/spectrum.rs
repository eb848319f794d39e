//! The spectrum `Sp(A) = Σ n_α t^α` of an arrangement with only double and
//! triple points, from the number of lines `d` and of triple points `n₃`.
//!
//! Only exponents `α = j/d + s` with `1 ≤ j ≤ d`, `s ∈ {0, 1, 2}` can carry a
//! nonzero coefficient. With `c = ⌈3j/d⌉`:
//!
//! ```text
//! n_α     = C(j−1, 2)   − n₃·C(c−1, 2)
//! n_{α+1} = (j−1)(d−j−1) − n₃·(c−1)(3−c)
//! n_{α+2} = C(d−j−1, 2) − n₃·C(3−c, 2) − [j = d]
//! ```
//!
//! where `C(n, 2) = 0` for every `n < 2`, negative `n` included.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// `C(n, 2)`, zero for `n < 2`.
pub fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `(n_α, n_{α+1}, n_{α+2})` for `α = j/d`.
pub fn n_alpha_block(j: usize, d: usize, n3: usize) -> [i64; 3] {
    assert!(
        d >= 2 && (1..=d).contains(&j),
        "need 1 <= j <= d and d >= 2"
    );
    let (j, d, n3) = (j as i64, d as i64, n3 as i64);
    let c = Integer::div_ceil(&(3 * j), &d);
    let delta = i64::from(j == d);
    [
        binom2(j - 1) - n3 * binom2(c - 1),
        (j - 1) * (d - j - 1) - n3 * (c - 1) * (3 - c),
        binom2(d - j - 1) - n3 * binom2(3 - c) - delta,
    ]
}

/// Exact sparse polynomial in fractional powers of `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumPoly {
    terms: BTreeMap<Rational64, i64>,
}

impl SpectrumPoly {
    /// Collects `(α, n_α)` pairs, summing repeats and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational64, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (alpha, c) in terms {
            *map.entry(alpha).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        SpectrumPoly { terms: map }
    }

    pub fn coeff(&self, alpha: Rational64) -> i64 {
        self.terms.get(&alpha).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing `α`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, i64)> + '_ {
        self.terms.iter().map(|(a, c)| (*a, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Sp(1)`, the sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }
}

pub fn spectrum(d: usize, n3: usize) -> SpectrumPoly {
    SpectrumPoly::from_terms((1..=d).flat_map(move |j| {
        let alpha = Rational64::new(j as i64, d as i64);
        n_alpha_block(j, d, n3)
            .into_iter()
            .enumerate()
            .map(move |(s, c)| (alpha + Rational64::from_integer(s as i64), c))
    }))
}

/// `"p/q"` for fractions, `"p"` for integers.
pub fn format_exponent(alpha: Rational64) -> String {
    alpha.to_string()
}

/// One `{ "alpha": "p/q", "coeff": n }` object per term, sorted by `α`.
impl Serialize for SpectrumPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term {
            alpha: String,
            coeff: i64,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (alpha, coeff) in self.terms() {
            seq.serialize_element(&Term {
                alpha: format_exponent(alpha),
                coeff,
            })?;
        }
        seq.end()
    }
}

/// `t^(1/3) + 3t^(4/9) - 2t^(5/3) + … - t^3`
impl fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms().enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            if alpha.is_one() {
                f.write_str("t")?;
            } else if alpha.is_integer() {
                write!(f, "t^{alpha}")?;
            } else {
                write!(f, "t^({alpha})")?;
            }
        }
        Ok(())
    }
}

/// `true` if every exponent lies in `(0, 3]` and has denominator dividing `d`.
pub fn support_is_valid(sp: &SpectrumPoly, d: usize) -> bool {
    sp.terms().all(|(a, _)| {
        a > Rational64::zero()
            && a <= Rational64::from_integer(3)
            && d as i64 % a.denom().abs() == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn ceva_blocks() {
        assert_eq!(n_alpha_block(6, 9, 12), [10, -2, 1]);
        assert_eq!(n_alpha_block(9, 9, 12), [16, -8, -1]);
        assert_eq!(n_alpha_block(1, 9, 12), [0, 0, 9]);
        assert_eq!(n_alpha_block(4, 9, 12), [3, 0, 6]);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom2(-1), 0);
        assert_eq!(binom2(-5), 0);
        assert_eq!(binom2(1), 0);
        assert_eq!(binom2(2), 1);
        assert_eq!(binom2(8), 28);
    }

    #[test]
    fn triangle_spectrum() {
        let sp = spectrum(3, 0);
        assert_eq!(sp.to_string(), "t - 2t^2 - t^3");
        assert_eq!(sp.len(), 3);
    }

    #[test]
    fn two_lines_spectrum() {
        assert_eq!(n_alpha_block(1, 2, 0), [0, 0, 0]);
        assert_eq!(n_alpha_block(2, 2, 0), [0, -1, -1]);
        let sp = spectrum(2, 0);
        assert_eq!(sp.to_string(), "-t^2 - t^3");
    }

    #[test]
    fn ceva_spectrum_terms() {
        let sp = spectrum(9, 12);
        assert_eq!(sp.len(), 19);
        assert_eq!(sp.coeff(r(1, 3)), 1);
        assert_eq!(sp.coeff(r(5, 3)), -2);
        assert_eq!(sp.coeff(r(19, 9)), 9);
        assert_eq!(sp.coeff(r(1, 9)), 0);
        assert_eq!(sp.total(), 79);
        assert!(support_is_valid(&sp, 9));
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&spectrum(3, 0)).unwrap();
        assert_eq!(
            json,
            r#"[{"alpha":"1","coeff":1},{"alpha":"2","coeff":-2},{"alpha":"3","coeff":-1}]"#
        );
    }

    proptest::proptest! {
        #[test]
        fn structural_identities(d in 2usize..40, n3_frac in 0.0f64..1.0) {
            let n3 = (n3_frac * (d * (d - 1) / 6) as f64) as usize;
            let sp = spectrum(d, n3);
            proptest::prop_assert!(support_is_valid(&sp, d));
            let (d, n3) = (d as i64, n3 as i64);
            // n_1 = b₂(M), n_2 = −(d−1)
            proptest::prop_assert_eq!(sp.coeff(r(1, 1)), binom2(d - 1) - n3);
            proptest::prop_assert_eq!(sp.coeff(r(2, 1)), -(d - 1));
            for j in 1..d {
                if (3 * j) % d != 0 {
                    proptest::prop_assert_eq!(sp.coeff(r(j, d)), sp.coeff(r(d - j, d) + 2));
                }
            }
        }
    }
}
