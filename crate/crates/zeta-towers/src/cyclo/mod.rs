//! Exact arithmetic in the cyclotomic fields Q(zeta_{p^m}), characters
//! of the voltage groups (Z/p^n)^d, and their Galois orbits.
//!
//! Elements are stored on the power basis 1, z, ..., z^{phi(p^m)-1}
//! with rational coefficients, where z is a primitive p^m-th root of
//! unity. Reduction uses z^{p^m} = 1 followed by the minimal polynomial
//! relation z^{phi} = -(1 + z^{p^{m-1}} + z^{2 p^{m-1}} + ...).

mod cpoly;
pub mod local;

pub use cpoly::CycloPoly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolyZ;
use crate::linalg::{resultant, FlScalar, IntPoly};
use crate::tower::{element_unrank, group_order, is_prime};

/// Euler phi of p^m.
pub fn phi_prime_power(p: u64, m: u32) -> u64 {
    if m == 0 {
        1
    } else {
        p.pow(m) - p.pow(m - 1)
    }
}

/// The p^m-th cyclotomic polynomial. For m = 0 this is x - 1.
pub fn cyclotomic_poly(p: u64, m: u32) -> IntPoly {
    if m == 0 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let step = p.pow(m - 1) as usize;
    let mut coeffs = vec![BigInt::zero(); (p as usize - 1) * step + 1];
    for k in 0..p as usize {
        coeffs[k * step] = BigInt::one();
    }
    IntPoly::new(coeffs)
}

/// Units of Z/q in increasing order; empty for q <= 1.
pub fn units_mod(q: u64) -> Vec<u64> {
    if q <= 1 {
        return Vec::new();
    }
    (1..q).filter(|&u| num_integer::gcd(u, q) == 1).collect()
}

/// Multiplicative order of l modulo q; requires gcd(l, q) = 1.
pub fn multiplicative_order(l: u64, q: u64) -> u64 {
    if q == 1 {
        return 1;
    }
    let l = l % q;
    assert_eq!(num_integer::gcd(l, q), 1, "l must be a unit mod q");
    let mut acc = l;
    let mut ord = 1;
    while acc != 1 {
        acc = (acc as u128 * l as u128 % q as u128) as u64;
        ord += 1;
    }
    ord
}

/// An element of Q(zeta_{p^m}) on the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElement {
    p: u64,
    level: u32,
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    fn basis_len(p: u64, level: u32) -> usize {
        phi_prime_power(p, level) as usize
    }

    pub fn zero(p: u64, level: u32) -> Self {
        CycloElement {
            p,
            level,
            coeffs: vec![BigRational::zero(); Self::basis_len(p, level)],
        }
    }

    pub fn one(p: u64, level: u32) -> Self {
        Self::from_rational(p, level, BigRational::one())
    }

    pub fn from_rational(p: u64, level: u32, r: BigRational) -> Self {
        let mut e = Self::zero(p, level);
        e.coeffs[0] = r;
        e
    }

    pub fn from_integer(p: u64, level: u32, n: &BigInt) -> Self {
        Self::from_rational(p, level, BigRational::from_integer(n.clone()))
    }

    /// zeta^k, the k-th power of the distinguished primitive root.
    pub fn root_power(p: u64, level: u32, k: u64) -> Self {
        let q = p.pow(level);
        let mut dense = vec![BigRational::zero(); q.max(1) as usize];
        dense[(k % q.max(1)) as usize] = BigRational::one();
        Self::from_dense(p, level, dense)
    }

    /// Build from coefficients of arbitrary powers of zeta; exponents
    /// are first folded with z^{p^m} = 1, then reduced below phi(p^m).
    pub fn from_dense(p: u64, level: u32, raw: Vec<BigRational>) -> Self {
        let q = p.pow(level) as usize;
        let phi = Self::basis_len(p, level);
        // stage 1: fold exponents into 0..q
        let mut folded = vec![BigRational::zero(); q];
        for (e, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[e % q] += c;
            }
        }
        // stage 2: rewrite exponents phi..q using the minimal polynomial
        let mut coeffs = vec![BigRational::zero(); phi];
        if level == 0 {
            coeffs[0] = folded[0].clone();
            return CycloElement { p, level, coeffs };
        }
        let step = p.pow(level - 1) as usize;
        for (e, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < phi {
                coeffs[e] += c;
            } else {
                // z^e = -sum_{k=0}^{p-2} z^{k*step + (e - phi)}
                let r = e - phi;
                for k in 0..(p - 1) as usize {
                    coeffs[k * step + r] -= c.clone();
                }
            }
        }
        CycloElement { p, level, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotIntegral(format!(
                "element is not rational: {self}"
            )))
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "cyclotomic levels differ: p^{} vs p^{}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            p: self.p,
            level: self.level,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.coeffs.len();
        let mut dense = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[i + j] += a * b;
            }
        }
        Ok(Self::from_dense(self.p, self.level, dense))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloElement {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm
    /// against the minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Internal("inverse of zero".into()));
        }
        if self.level == 0 {
            return Ok(Self::from_rational(
                self.p,
                0,
                BigRational::one() / self.coeffs[0].clone(),
            ));
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.p, self.level)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let f = rp_trim(self.coeffs.clone());

        // extended euclid: r0 = phi, r1 = f; track t with t*f = r mod phi
        let mut r0 = phi;
        let mut r1 = f;
        let mut t0: Vec<BigRational> = Vec::new();
        let mut t1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = rp_divmod(&r0, &r1);
            let tq = rp_sub(&t0, &rp_mul(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = tq;
        }
        // r0 is a nonzero constant: gcd(f, phi) since phi is irreducible
        debug_assert_eq!(r0.len(), 1, "minimal polynomial must be coprime to f");
        let scale = BigRational::one() / r0[0].clone();
        let inv = rp_scale(&t0, &scale);
        let mut dense = vec![BigRational::zero(); inv.len().max(1)];
        dense[..inv.len()].clone_from_slice(&inv);
        let out = Self::from_dense(self.p, self.level, dense);
        debug_assert!(
            self.mul(&out).map(|x| x == Self::one(self.p, self.level)).unwrap_or(false),
            "inverse check"
        );
        Ok(out)
    }

    /// The Galois automorphism zeta -> zeta^k; k must be prime to p.
    pub fn galois_map(&self, k: u64) -> Result<Self> {
        if self.level == 0 {
            return Ok(self.clone());
        }
        let q = self.p.pow(self.level);
        if num_integer::gcd(k % q, q) != 1 {
            return Err(Error::Internal(format!(
                "galois exponent {k} not a unit mod {q}"
            )));
        }
        let mut dense = vec![BigRational::zero(); q as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as u64 * k % q) as usize;
                dense[e] += c;
            }
        }
        Ok(Self::from_dense(self.p, self.level, dense))
    }

    /// Reinterpret in the bigger field Q(zeta_{p^target}), target >= level:
    /// zeta_{p^m} = (zeta_{p^target})^{p^{target-m}}.
    pub fn lift_to_level(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return Err(Error::LevelMismatch(format!(
                "cannot lift level {} down to {}",
                self.level, target
            )));
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let stretch = self.p.pow(target - self.level) as usize;
        let q = self.p.pow(target) as usize;
        let mut dense = vec![BigRational::zero(); q];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[i * stretch] += c;
            }
        }
        Ok(Self::from_dense(self.p, target, dense))
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// The element as an integer polynomial in zeta; errors when any
    /// coefficient has a denominator.
    pub fn integer_rep(&self) -> Result<IntPoly> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(format!("{self}")));
        }
        Ok(IntPoly::new(
            self.coeffs.iter().map(|c| c.numer().clone()).collect(),
        ))
    }

    /// Field norm down to Q: the product of all Galois conjugates,
    /// computed as a resultant with the minimal polynomial.
    pub fn norm_to_q(&self) -> Result<BigRational> {
        if self.level == 0 {
            return Ok(self.coeffs[0].clone());
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        // clear denominators: norm(f/D) = Res(Phi, D f) / D^phi
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let g = IntPoly::new(ints);
        let phi = cyclotomic_poly(self.p, self.level);
        let res = resultant(&phi, &g)?;
        let scale = denom_lcm.pow(phi_prime_power(self.p, self.level) as u32);
        Ok(BigRational::new(res, scale))
    }
}

impl FlScalar for CycloElement {
    fn zero_like(&self) -> Self {
        CycloElement::zero(self.p, self.level)
    }
    fn one_like(&self) -> Self {
        CycloElement::one(self.p, self.level)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other).expect("level match inside determinant")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other).expect("level match inside determinant")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn exact_div_small(&self, k: i64) -> Self {
        let r = BigRational::new(BigInt::one(), BigInt::from(k));
        self.scale(&r)
    }
}

impl std::fmt::Display for CycloElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "z")?;
            } else if i > 1 {
                write!(f, "z^{i}")?;
            }
        }
        Ok(())
    }
}

// -- rational polynomial helpers for the extended Euclid above --

fn rp_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rp_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    rp_trim(out)
}

fn rp_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rp_trim(out)
}

fn rp_scale(a: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    rp_trim(a.iter().map(|x| x * s).collect())
}

fn rp_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return (Vec::new(), rp_trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().expect("nonzero").clone();
    for k in (0..quot.len()).rev() {
        let idx = k + den.len() - 1;
        if rem[idx].is_zero() {
            continue;
        }
        let q = &rem[idx] / &lead;
        quot[k] = q.clone();
        for (j, d) in den.iter().enumerate() {
            let delta = d * &q;
            rem[k + j] -= delta;
        }
    }
    (rp_trim(quot), rp_trim(rem))
}

/// A character of (Z/p^n)^d, stored at its exact level: the smallest m
/// with all exponents defined mod p^m. The trivial character has level 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    p: u64,
    level: u32,
    exponents: Vec<u64>,
}

impl Character {
    /// Normalizes to the exact level by dividing out powers of p common
    /// to all exponents (and to the modulus).
    pub fn new(p: u64, level: u32, exponents: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if exponents.is_empty() {
            return Err(Error::MalformedSpec("character needs at least one exponent".into()));
        }
        let q = p.pow(level);
        let mut exps: Vec<u64> = exponents.iter().map(|&e| e % q.max(1)).collect();
        let mut lvl = level;
        // reduce: while every exponent is divisible by p (and level > 0)
        while lvl > 0 && exps.iter().all(|&e| e % p == 0) {
            if exps.iter().all(|&e| e == 0) {
                lvl = 0;
                for e in exps.iter_mut() {
                    *e = 0;
                }
                break;
            }
            for e in exps.iter_mut() {
                *e /= p;
            }
            lvl -= 1;
        }
        Ok(Character {
            p,
            level: lvl,
            exponents: exps,
        })
    }

    pub fn trivial(p: u64, d: usize) -> Self {
        Character {
            p,
            level: 0,
            exponents: vec![0; d],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Exact level m: the character has order p^m.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.level)
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.level == 0
    }

    /// Value on a single group element, as a power of zeta_{p^level}.
    pub fn eval_element(&self, g: &[u64]) -> Result<CycloElement> {
        if g.len() != self.exponents.len() {
            return Err(Error::DimensionMismatch(format!(
                "character dimension {} vs element dimension {}",
                self.exponents.len(),
                g.len()
            )));
        }
        let q = self.order() as u128;
        let mut e = 0u128;
        for (c, x) in self.exponents.iter().zip(g.iter()) {
            e = (e + *c as u128 * (*x as u128 % q)) % q;
        }
        Ok(CycloElement::root_power(self.p, self.level, e as u64))
    }

    /// Composition with the Galois action: chi^u for a unit u.
    pub fn power(&self, u: u64) -> Result<Self> {
        let q = self.order().max(1) as u128;
        Character::new(
            self.p,
            self.level,
            self.exponents
                .iter()
                .map(|&e| (e as u128 * u as u128 % q) as u64)
                .collect(),
        )
    }
}

/// Evaluate a Laurent polynomial at the character: T_i goes to
/// zeta^{c_i}. The result lives at the character's exact level.
pub fn char_eval(f: &LaurentPolyZ, chi: &Character) -> Result<CycloElement> {
    if f.arity() != chi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "laurent arity {} vs character dimension {}",
            f.arity(),
            chi.dim()
        )));
    }
    let q = chi.order() as i128;
    let mut acc = CycloElement::zero(chi.p(), chi.level());
    for (e, c) in f.terms() {
        let mut exp = 0i128;
        for (&ci, &ei) in chi.exponents().iter().zip(e.iter()) {
            exp += ci as i128 * ei as i128;
        }
        let exp = exp.rem_euclid(q) as u64;
        let mono = CycloElement::root_power(chi.p(), chi.level(), exp)
            .scale(&BigRational::from_integer(c.clone()));
        acc = acc.add(&mono)?;
    }
    Ok(acc)
}

/// A Galois orbit of characters: all chi^u for units u mod the order.
/// The representative is the lexicographically smallest exponent vector
/// in the orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisOrbit {
    pub representative: Character,
    pub orbit_size: u64,
}

impl GaloisOrbit {
    /// Residue degree of the rational prime l on this orbit's field:
    /// the order of l in (Z/p^m)^*.
    pub fn local_degree(&self, l: u64) -> u64 {
        multiplicative_order(l, self.representative.order())
    }
}

/// All characters of (Z/p^n)^d grouped into Galois orbits, sorted by
/// exact level and then by representative. Orbit sizes always sum to
/// p^{nd}.
pub fn enumerate_character_orbits(p: u64, d: usize, level: u32) -> Result<Vec<GaloisOrbit>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total = group_order(p, d, level);
    if total > 1 << 22 {
        return Err(Error::BudgetExceeded {
            needed: total.min(u64::MAX as u128) as u64,
            budget: 1 << 22,
        });
    }
    let mut orbits: BTreeMap<Character, u64> = BTreeMap::new();
    for rank in 0..total as u64 {
        let exps = element_unrank(p, d, level, rank);
        let chi = Character::new(p, level, exps)?;
        let q = chi.order();
        // canonical representative: lex-min over unit multiples
        let mut best = chi.exponents().to_vec();
        if chi.level() > 0 {
            for u in units_mod(q) {
                let cand: Vec<u64> = chi
                    .exponents()
                    .iter()
                    .map(|&e| (e as u128 * u as u128 % q as u128) as u64)
                    .collect();
                if cand < best {
                    best = cand;
                }
            }
        }
        let rep = Character {
            p,
            level: chi.level(),
            exponents: best,
        };
        *orbits.entry(rep).or_insert(0) += 1;
    }
    let out: Vec<GaloisOrbit> = orbits
        .into_iter()
        .map(|(representative, orbit_size)| {
            debug_assert_eq!(
                orbit_size,
                phi_prime_power(p, representative.level()),
                "orbit size must be phi of the order"
            );
            GaloisOrbit {
                representative,
                orbit_size,
            }
        })
        .collect();
    debug_assert_eq!(
        out.iter().map(|o| o.orbit_size as u128).sum::<u128>(),
        total
    );
    Ok(out)
}

/// An orbit of characters under the local Galois group at l, generated
/// by chi -> chi^l. Valuations at any prime above l are constant on such
/// an orbit, and for d = 1 these orbits biject with the primes above l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusOrbit {
    pub representative: Character,
    pub orbit_size: u64,
    pub l: u64,
}

impl FrobeniusOrbit {
    /// Residue degree of l on this orbit's level: the order of l in
    /// (Z/p^m)^*. Equals the orbit size.
    pub fn local_degree(&self) -> u64 {
        multiplicative_order(self.l, self.representative.order())
    }
}

/// All characters of (Z/p^n)^d grouped into orbits of the Frobenius
/// chi -> chi^l, sorted by exact level then representative. Requires
/// l != p so the pairing with primes above l is unramified.
pub fn enumerate_frobenius_orbits(
    p: u64,
    d: usize,
    level: u32,
    l: u64,
) -> Result<Vec<FrobeniusOrbit>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if l == p {
        return Err(Error::RamifiedPrime { l });
    }
    let total = group_order(p, d, level);
    if total > 1 << 22 {
        return Err(Error::BudgetExceeded {
            needed: total.min(u64::MAX as u128) as u64,
            budget: 1 << 22,
        });
    }
    let mut orbits: BTreeMap<Character, u64> = BTreeMap::new();
    for rank in 0..total as u64 {
        let exps = element_unrank(p, d, level, rank);
        let chi = Character::new(p, level, exps)?;
        let q = chi.order();
        // canonical representative: lex-min over Frobenius powers
        let mut best = chi.exponents().to_vec();
        if chi.level() > 0 {
            let f = multiplicative_order(l, q);
            let mut scale = 1u64;
            for _ in 1..f {
                scale = (scale as u128 * l as u128 % q as u128) as u64;
                let cand: Vec<u64> = chi
                    .exponents()
                    .iter()
                    .map(|&e| (e as u128 * scale as u128 % q as u128) as u64)
                    .collect();
                if cand < best {
                    best = cand;
                }
            }
        }
        let rep = Character {
            p,
            level: chi.level(),
            exponents: best,
        };
        *orbits.entry(rep).or_insert(0) += 1;
    }
    let out: Vec<FrobeniusOrbit> = orbits
        .into_iter()
        .map(|(representative, orbit_size)| {
            debug_assert_eq!(
                orbit_size,
                multiplicative_order(l, representative.order()),
                "frobenius orbit size must be the residue degree"
            );
            FrobeniusOrbit {
                representative,
                orbit_size,
                l,
            }
        })
        .collect();
    debug_assert_eq!(
        out.iter().map(|o| o.orbit_size as u128).sum::<u128>(),
        total
    );
    Ok(out)
}
