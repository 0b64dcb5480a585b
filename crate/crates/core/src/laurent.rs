//! Laurent polynomials `K[x, x⁻¹]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> LaurentPoly {
        LaurentPoly { field, coeffs: BTreeMap::new() }
    }

    pub fn one(field: Field) -> LaurentPoly {
        LaurentPoly::monomial(field, 0, field.one())
    }

    /// `c·xᵏ`.
    pub fn monomial(field: Field, k: i64, c: Scalar) -> LaurentPoly {
        let mut p = LaurentPoly::zero(field);
        p.add_term(k, &c);
        p
    }

    pub fn x(field: Field) -> LaurentPoly {
        LaurentPoly::monomial(field, 1, field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        let slot = self.coeffs.entry(k).or_insert_with(|| self.field.zero());
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Whether this is exactly `xᵏ`.
    pub fn is_monomial(&self, k: i64) -> bool {
        self.coeffs.len() == 1 && self.coefficient(k).is_one()
    }

    /// The substitution `x ↦ x⁻¹`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.field);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `-2*x^-1 + 1 + x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            match (mag.is_one(), var.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&var)?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn arithmetic_and_printing() {
        let x = LaurentPoly::x(Q);
        let xi = x.invert_variable();
        assert_eq!(&x * &xi, LaurentPoly::one(Q));
        let p = &(&x + &LaurentPoly::one(Q)) - &LaurentPoly::monomial(Q, -1, Q.from_i64(2));
        assert_eq!(p.to_string(), "-2*x^-1 + 1 + x");
        assert!((&p - &p).is_zero());
        assert_eq!(LaurentPoly::zero(Q).to_string(), "0");
        assert!(LaurentPoly::monomial(Q, -3, Q.one()).is_monomial(-3));
    }
}
