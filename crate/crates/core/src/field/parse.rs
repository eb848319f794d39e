//! Coefficient strings: sums and differences of terms `c`, `z`, `z^k`,
//! `c*z^k` (the `*` may be omitted), with `c` a signed rational such as
//! `-3/2`. Whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CyclotomicElement, CyclotomicField, FieldError};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self, reason: impl Into<String>) -> FieldError {
        FieldError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

pub(super) fn parse_element(
    field: &Arc<CyclotomicField>,
    input: &str,
) -> Result<CyclotomicElement, FieldError> {
    let mut cur = Cursor {
        chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        input,
    };
    if cur.chars.is_empty() {
        return Err(cur.error("empty coefficient"));
    }

    // Accumulate as a polynomial in ζ of arbitrary degree, reduce once at the end.
    let mut acc: Vec<BigRational> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            Some(c) => return Err(cur.error(format!("expected '+' or '-', found {c:?}"))),
            None => unreachable!(),
        };
        first = false;

        let mut coeff = BigRational::one();
        let mut have_coeff = false;
        if let Some(num) = cur.digits() {
            let num: BigInt = num.parse().unwrap();
            let den: BigInt = if cur.peek() == Some('/') {
                cur.bump();
                let d = cur
                    .digits()
                    .ok_or_else(|| cur.error("missing denominator"))?;
                d.parse().unwrap()
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(cur.error("zero denominator"));
            }
            coeff = BigRational::new(num, den);
            have_coeff = true;
            if cur.peek() == Some('*') {
                cur.bump();
                if cur.peek() != Some('z') {
                    return Err(cur.error("expected 'z' after '*'"));
                }
            }
        }

        let mut power = 0usize;
        if cur.peek() == Some('z') {
            cur.bump();
            power = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                let k = cur.digits().ok_or_else(|| cur.error("missing exponent"))?;
                power = k.parse().map_err(|_| cur.error("exponent too large"))?;
            }
        } else if !have_coeff {
            return Err(match cur.peek() {
                Some(c) => cur.error(format!("unexpected character {c:?}")),
                None => cur.error("dangling sign"),
            });
        }

        if negative {
            coeff = -coeff;
        }
        // Exponents only matter modulo the order.
        let power = power % field.order() as usize;
        if acc.len() <= power {
            acc.resize(power + 1, BigRational::zero());
        }
        acc[power] += coeff;
    }
    Ok(field.from_poly(acc))
}
