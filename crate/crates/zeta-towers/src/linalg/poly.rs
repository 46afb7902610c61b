//! Integer polynomials and characteristic polynomials.
//!
//! Characteristic polynomials use the Faddeev-LeVerrier recurrence,
//! which needs only ring operations plus exact division by small
//! integers. The generic driver works over any torsion-free
//! commutative ring via [`FlScalar`], so the same code serves integer
//! matrices, cyclotomic matrices, and Laurent-polynomial matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Polynomial over `BigInt`, coefficients ascending. The zero
/// polynomial is the empty vector; otherwise the leading coefficient
/// is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Reverse coefficients: f(x) of degree n to x^n f(1/x).
    pub fn reciprocal(&self, degree: usize) -> IntPoly {
        let mut out = vec![BigInt::zero(); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= degree, "reciprocal degree too small");
            out[degree - i] = c.clone();
        }
        IntPoly::new(out)
    }
}

impl std::fmt::Display for IntPoly {
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
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Ring element usable by the Faddeev-LeVerrier driver. `exact_div_small`
/// must panic-free divide by a small integer when divisibility is
/// guaranteed (it always is inside the recurrence).
pub trait FlScalar: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn exact_div_small(&self, k: i64) -> Self;
}

impl FlScalar for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn exact_div_small(&self, k: i64) -> Self {
        let d = BigInt::from(k);
        let (q, r) = self.div_rem(&d);
        assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        q
    }
}

/// Characteristic polynomial det(xI - M) of a square matrix over any
/// torsion-free commutative ring, coefficients ascending, monic.
///
/// Matrix products skip zero entries, so permutation-like matrices run
/// in O(n^3) rather than O(n^4).
pub fn faddeev_leverrier<T: FlScalar>(m: &[Vec<T>]) -> Vec<T> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    if n == 0 {
        // det over the trivial matrix: constant 1 needs a sample; none
        // exists, so a 0x0 matrix is the caller's responsibility.
        return Vec::new();
    }
    let sample = &m[0][0];
    let zero = sample.zero_like();
    let one = sample.one_like();

    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = one.clone();

    // M1 = A, c_{n-1} = -tr(A); M_k = A(M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
    let mut mk: Vec<Vec<T>> = m.to_vec();
    let tr = trace(&mk);
    coeffs[n - 1] = tr.neg_ref();
    for k in 2..=n {
        let shift = &coeffs[n - k + 1];
        let mut shifted = mk;
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = row[i].add_ref(shift);
        }
        mk = mat_mul(m, &shifted, &zero);
        let tr = trace(&mk);
        coeffs[n - k] = tr.neg_ref().exact_div_small(k as i64);
    }
    coeffs
}

fn trace<T: FlScalar>(m: &[Vec<T>]) -> T {
    let mut acc = m[0][0].clone();
    for (i, row) in m.iter().enumerate().skip(1) {
        acc = acc.add_ref(&row[i]);
    }
    acc
}

fn mat_mul<T: FlScalar>(a: &[Vec<T>], b: &[Vec<T>], zero: &T) -> Vec<Vec<T>> {
    let n = a.len();
    let mut out = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero_elem() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if bkj.is_zero_elem() {
                    continue;
                }
                out[i][j] = out[i][j].add_ref(&aik.mul_ref(bkj));
            }
        }
    }
    out
}

/// Characteristic polynomial det(xI - M) of an integer matrix.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    Ok(IntPoly::new(faddeev_leverrier(&rows)))
}

/// Multiplicity of the root x = 1, by repeated synthetic division.
pub fn root_multiplicity_at_one(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut cur = f.coeffs.clone();
    let mut mult = 0;
    loop {
        // Horner from the top: remainder is f(1), quotient stays integral.
        let mut acc = BigInt::zero();
        let mut quot = vec![BigInt::zero(); cur.len().saturating_sub(1)];
        for (i, c) in cur.iter().enumerate().rev() {
            acc += c;
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

/// Resultant Res(f, g) of two integer polynomials, as the determinant
/// of their Sylvester matrix. For monic f this is the product of g over
/// the roots of f, which is how norms from cyclotomic fields are taken.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        Some(n) => n,
        None => return Err(Error::ZeroPolynomial),
    };
    if g.is_zero() {
        return Ok(if n == 0 {
            BigInt::one() // two nonzero constants
        } else {
            BigInt::zero()
        });
    }
    let m = g.degree().expect("nonzero");
    if n == 0 && m == 0 {
        return Ok(BigInt::one());
    }
    let size = n + m;
    let mut s = IntMatrix::zero(size, size);
    // m rows of f's coefficients (descending), then n rows of g's
    for r in 0..m {
        for k in 0..=n {
            s.set(r, r + k, f.coeff(n - k));
        }
    }
    for r in 0..n {
        for k in 0..=m {
            s.set(m + r, r + k, g.coeff(m - k));
        }
    }
    s.det_bareiss()
}
