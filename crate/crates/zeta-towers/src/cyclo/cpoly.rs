//! Polynomials in one variable u with cyclotomic coefficients. The
//! reciprocal L-function of a character lives here: a polynomial over
//! Q(zeta_{p^m}) whose coefficients the Galois group permutes.

use num_rational::BigRational;
use num_traits::One;

use super::CycloElement;
use crate::error::{Error, Result};
use crate::linalg::IntPoly;

/// Polynomial over Q(zeta_{p^m}), coefficients ascending and trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    p: u64,
    level: u32,
    coeffs: Vec<CycloElement>,
}

impl CycloPoly {
    pub fn new(p: u64, level: u32, mut coeffs: Vec<CycloElement>) -> Self {
        while coeffs.last().is_some_and(CycloElement::is_zero) {
            coeffs.pop();
        }
        CycloPoly { p, level, coeffs }
    }

    pub fn zero(p: u64, level: u32) -> Self {
        CycloPoly {
            p,
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64, level: u32) -> Self {
        CycloPoly::new(p, level, vec![CycloElement::one(p, level)])
    }

    pub fn from_int_poly(p: u64, level: u32, f: &IntPoly) -> Self {
        CycloPoly::new(
            p,
            level,
            f.coeffs()
                .iter()
                .map(|c| CycloElement::from_integer(p, level, c))
                .collect(),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[CycloElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycloElement::zero(self.p, self.level))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "polynomial coefficient fields differ: level {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(CycloPoly::new(self.p, self.level, out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycloPoly::zero(self.p, self.level));
        }
        let mut out =
            vec![CycloElement::zero(self.p, self.level); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(CycloPoly::new(self.p, self.level, out))
    }

    /// Apply zeta -> zeta^k to every coefficient.
    pub fn galois_map(&self, k: u64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.galois_map(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloPoly::new(self.p, self.level, coeffs))
    }

    pub fn eval(&self, x: &CycloElement) -> Result<CycloElement> {
        let mut acc = CycloElement::zero(self.p, self.level);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn eval_one(&self) -> Result<CycloElement> {
        self.eval(&CycloElement::one(self.p, self.level))
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<CycloElement> {
        self.eval(&CycloElement::from_rational(self.p, self.level, x.clone()))
    }

    /// Reverse coefficients: degree-n f(u) to u^n f(1/u).
    pub fn reciprocal(&self, degree: usize) -> Self {
        let mut out = vec![CycloElement::zero(self.p, self.level); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= degree, "reciprocal degree too small");
            out[degree - i] = c.clone();
        }
        CycloPoly::new(self.p, self.level, out)
    }

    /// Multiplicity of the root u = 1, via synthetic division over the
    /// field.
    pub fn root_multiplicity_at_one(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cur = self.coeffs.clone();
        let mut mult = 0;
        loop {
            let mut acc = CycloElement::zero(self.p, self.level);
            let mut quot = vec![CycloElement::zero(self.p, self.level); cur.len().saturating_sub(1)];
            for (i, c) in cur.iter().enumerate().rev() {
                acc = acc.add(c)?;
                if i > 0 {
                    quot[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                return Ok(mult);
            }
            mult += 1;
            cur = quot;
            if cur.is_empty() {
                return Ok(mult);
            }
        }
    }

    /// All coefficients rational integers? Then hand back the integer
    /// polynomial.
    pub fn to_int_poly(&self) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let r = c.to_rational()?;
            if !r.denom().is_one() {
                return Err(Error::NotIntegral(format!("coefficient {c}")));
            }
            out.push(r.numer().clone());
        }
        Ok(IntPoly::new(out))
    }
}

impl std::fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{i}")?,
            }
        }
        Ok(())
    }
}
