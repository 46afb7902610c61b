//! Laurent polynomials in several variables over the integers,
//! Z[T1^±1, ..., Td^±1]. The voltage variables of a tower live here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{FlScalar, IntPoly};

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
/// The map is ordered so iteration, display, and hashing are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolyZ {
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolyZ {
    pub fn zero(arity: usize) -> Self {
        LaurentPolyZ {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: i64) -> Self {
        Self::monomial(arity, &vec![0; arity], BigInt::from(c))
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, 1)
    }

    /// The variable T_{i+1} (zero-based index).
    pub fn variable(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index {i} out of range for arity {arity}");
        let mut e = vec![0i64; arity];
        e[i] = 1;
        Self::monomial(arity, &e, BigInt::one())
    }

    pub fn monomial(arity: usize, exponents: &[i64], coeff: BigInt) -> Self {
        assert_eq!(exponents.len(), arity, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents.to_vec(), coeff);
        }
        LaurentPolyZ { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_add(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c))
            .collect();
        LaurentPolyZ {
            arity: self.arity,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = LaurentPolyZ::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LaurentPolyZ::zero(self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * k))
            .collect();
        LaurentPolyZ {
            arity: self.arity,
            terms,
        }
    }

    /// Value at T1 = ... = Td = 1: the sum of all coefficients.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// One-variable case only: factor out the smallest power of T so the
    /// rest is an ordinary polynomial. Returns (polynomial, that power).
    /// A unit times the result generates the same ideal in Z[T^±1].
    pub fn to_univariate(&self) -> Result<(IntPoly, i64)> {
        if self.arity != 1 {
            return Err(Error::RequiresDimensionOne(self.arity));
        }
        if self.is_zero() {
            return Err(Error::ZeroLaurent("cannot normalize the zero polynomial"));
        }
        let min = self.terms.keys().map(|e| e[0]).min().expect("nonzero");
        let max = self.terms.keys().map(|e| e[0]).max().expect("nonzero");
        let mut coeffs = vec![BigInt::zero(); (max - min + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e[0] - min) as usize] = c.clone();
        }
        Ok((IntPoly::new(coeffs), min))
    }
}

impl FlScalar for LaurentPolyZ {
    fn zero_like(&self) -> Self {
        LaurentPolyZ::zero(self.arity)
    }
    fn one_like(&self) -> Self {
        LaurentPolyZ::one(self.arity)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn exact_div_small(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let kb = BigInt::from(k);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (q, r) = num_integer::Integer::div_rem(c, &kb);
                debug_assert!(r.is_zero(), "non-exact division in determinant recursion");
                (e.clone(), q)
            })
            .collect();
        LaurentPolyZ {
            arity: self.arity,
            terms,
        }
    }
}

impl fmt::Display for LaurentPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let is_const = e.iter().all(|&x| x == 0);
            let mag = c.magnitude().to_string();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if mag != "1" || is_const {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                if self.arity == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T{}", i + 1)?;
                }
                if x != 1 {
                    write!(f, "^{x}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}
