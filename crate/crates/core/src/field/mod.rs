//! Exact arithmetic over `Q` and the cyclotomic fields `Q(ζ_m)`.
//!
//! An element of `Q(ζ_m)` is stored as its coefficient vector in the power
//! basis `1, ζ, …, ζ^{φ(m)-1}` of `Q[x]/(Φ_m)`. Because `Φ_m` is irreducible
//! this quotient is a field, every element has exactly one such vector, and
//! equality is plain vector equality.
//!
//! ```
//! use arrhodge::field::CyclotomicField;
//!
//! let k = CyclotomicField::new(3).unwrap();
//! let z = k.zeta();
//! // ζ² + ζ + 1 = 0 in Q(ζ₃)
//! let s = &(&(&z * &z) + &z) + &k.one();
//! assert!(s.is_zero());
//! ```

mod parse;
pub(crate) mod poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use self::poly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be at least 1")]
    InvalidOrder,
    #[error("cannot parse coefficient {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// The `m`-th cyclotomic polynomial, coefficients in ascending degree.
///
/// Obtained by exact division of `x^m - 1` by the product of `Φ_e` over the
/// proper divisors `e` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Result<Vec<BigInt>, FieldError> {
    if m == 0 {
        return Err(FieldError::InvalidOrder);
    }
    let mut product: QPoly = vec![BigRational::one()];
    for e in 1..m {
        if m % e == 0 {
            let phi_e = cyclotomic_polynomial(e)?;
            product = poly::mul(&product, &poly::from_ints(&phi_e));
        }
    }
    let numerator = poly::from_ints(&poly::x_pow_minus_one(m as usize));
    let (quot, rem) = poly::div_rem(&numerator, &product);
    assert!(
        rem.is_empty(),
        "x^{m} - 1 not divisible by lower cyclotomics"
    );
    Ok(quot
        .into_iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect())
}

/// The field `Q(ζ_m)` together with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: QPoly,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>, FieldError> {
        let modulus = poly::from_ints(&cyclotomic_polynomial(order)?);
        Ok(Arc::new(CyclotomicField { order, modulus }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field over `Q`, i.e. `φ(m)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The defining polynomial `Φ_m`.
    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicElement {
        CyclotomicElement {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CyclotomicElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> CyclotomicElement {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    /// The primitive root `ζ_m`, i.e. the class of `x`.
    pub fn zeta(self: &Arc<Self>) -> CyclotomicElement {
        self.zeta_pow(1)
    }

    /// `ζ_m^k` for any non-negative `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: u64) -> CyclotomicElement {
        let k = (k % u64::from(self.order)) as usize;
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        self.from_poly(p)
    }

    /// Reduces an arbitrary polynomial in `ζ` to canonical form.
    pub fn from_poly(self: &Arc<Self>, p: Vec<BigRational>) -> CyclotomicElement {
        CyclotomicElement {
            field: Arc::clone(self),
            coeffs: self.reduce(p),
        }
    }

    /// Parses a coefficient string such as `"-1/2 + 3*z^2"`.
    pub fn parse(self: &Arc<Self>, input: &str) -> Result<CyclotomicElement, FieldError> {
        parse::parse_element(self, input)
    }

    fn reduce(&self, p: Vec<BigRational>) -> Vec<BigRational> {
        let (_, mut rem) = poly::div_rem(&p, &self.modulus);
        rem.resize(self.degree(), BigRational::zero());
        rem
    }
}

/// An element of `Q(ζ_m)` in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coefficients in the basis `1, ζ, …, ζ^{φ(m)-1}`; always `φ(m)` long.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), FieldError> {
        if self.order() != other.order() {
            return Err(FieldError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<BigRational>) -> Self {
        CyclotomicElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_order(other)?;
        let product = poly::mul(&self.coeffs, &other.coeffs);
        Ok(self.with_coeffs(self.field.reduce(product)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s) = poly::gcd_ext(&self.coeffs, &self.field.modulus);
        debug_assert_eq!(g, vec![BigRational::one()]);
        Ok(self.with_coeffs(self.field.reduce(s)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl Hash for CyclotomicElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z_{})[{}]", self.order(), self)
    }
}

/// Renders in the same grammar [`CyclotomicField::parse`] accepts.
impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if monomial.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{a}*{monomial}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.with_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

// Operator forms panic on an order mismatch; use the `checked_*` methods when
// the operands may come from different fields.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicElement> for &CyclotomicElement {
            type Output = CyclotomicElement;
            fn $method(self, rhs: &CyclotomicElement) -> CyclotomicElement {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }

        impl $trait<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $method(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Makes a rational from machine integers; the denominator must be nonzero.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
