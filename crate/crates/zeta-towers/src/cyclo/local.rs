//! l-adic valuations of cyclotomic integers for primes l != p.
//!
//! l is unramified in Q(zeta_{p^m}), so the primes above l correspond to
//! the irreducible factors of the p^m-th cyclotomic polynomial modulo l,
//! all of the same degree f = order of l in (Z/p^m)^*. The valuation of
//! an integral element e at the prime of a factor h is read off exactly:
//! lift h to h~ modulo a high power l^K (Hensel), take the integer
//! resultant Res(h~, rep(e)), and divide its l-valuation by f. The
//! precision K is chosen from a Hadamard bound on the full norm so the
//! answer is provably unaffected by the truncation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{cyclotomic_poly, multiplicative_order, phi_prime_power, CycloElement, FrobeniusOrbit};
use crate::error::{Error, Result};
use crate::linalg::{resultant, IntPoly};

/// l-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, l: u64) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    let lb = BigInt::from(l);
    let mut v = 0;
    let mut cur = n.abs();
    loop {
        let (q, r) = cur.div_rem(&lb);
        if !r.is_zero() {
            return Ok(v);
        }
        v += 1;
        cur = q;
    }
}

/// The splitting data of l in Q(zeta_{p^m}): all irreducible factors of
/// the cyclotomic polynomial mod l, each one standing for a prime above
/// l. Factors are sorted, and index 0 is the distinguished prime that
/// plays the role of a fixed embedding into an algebraic closure of Q_l.
#[derive(Debug, Clone)]
pub struct LocalField {
    p: u64,
    level: u32,
    l: u64,
    residue_degree: u64,
    factors: Vec<Vec<u64>>,
}

impl LocalField {
    pub fn new(p: u64, level: u32, l: u64) -> Result<Self> {
        if !crate::tower::is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if l == p && level > 0 {
            return Err(Error::RamifiedPrime { l });
        }
        if level == 0 {
            return Ok(LocalField {
                p,
                level,
                l,
                residue_degree: 1,
                factors: vec![vec![(l - 1) % l, 1]], // x - 1 over F_l
            });
        }
        let q = p.pow(level);
        let f = multiplicative_order(l, q);
        let factors = factor_cyclotomic_mod_l(p, level, l, f)?;
        Ok(LocalField {
            p,
            level,
            l,
            residue_degree: f,
            factors,
        })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// f: the residue degree of every prime above l.
    pub fn residue_degree(&self) -> u64 {
        self.residue_degree
    }

    /// g: how many primes lie above l.
    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factors_mod_l(&self) -> &[Vec<u64>] {
        &self.factors
    }

    /// Valuation of an integral element at the prime of factor `idx`,
    /// normalized so the valuation of l itself is 1.
    pub fn valuation_at_factor(&self, e: &CycloElement, idx: usize) -> Result<u64> {
        self.valuation_with_extra_precision(e, idx, 0)
    }

    fn valuation_with_extra_precision(
        &self,
        e: &CycloElement,
        idx: usize,
        extra: u32,
    ) -> Result<u64> {
        if e.p() != self.p || e.level() != self.level {
            return Err(Error::LevelMismatch(format!(
                "element lives at level {} but the local data is for level {}",
                e.level(),
                self.level
            )));
        }
        if e.is_zero() {
            return Err(Error::InfiniteValuation);
        }
        let rep = e.integer_rep()?;
        if self.level == 0 {
            return int_valuation(&rep.coeff(0), self.l);
        }
        let phi = cyclotomic_poly(self.p, self.level);
        let f = self.residue_degree;

        // |Res(h_P, rep)| <= |Norm(e)| = |Res(phi, rep)| <= Hadamard-type
        // bound, so any precision beyond its l-length is sound.
        let bound = norm_bound(&phi, &rep);
        let bound_digits = bound.bits() / u64::from(self.l.ilog2()) + 1;
        let precision = u32::try_from(bound_digits + 20)
            .map_err(|_| Error::Internal("l-adic precision overflow".into()))?
            + extra;

        let lifted = hensel_lift_factor(&phi, &self.factors[idx], self.l, precision)?;
        let res = resultant(&lifted, &rep)?;
        if res.is_zero() {
            return Err(Error::Internal(
                "resultant vanished below guaranteed precision".into(),
            ));
        }
        let v = int_valuation(&res, self.l)?;
        if v > bound_digits {
            return Err(Error::Internal(format!(
                "valuation {v} exceeds the norm bound {bound_digits}; precision logic is wrong"
            )));
        }
        if v % f != 0 {
            return Err(Error::Internal(format!(
                "valuation {v} of the local norm is not a multiple of the residue degree {f}"
            )));
        }
        Ok(v / f)
    }

    /// Valuation at the distinguished prime (factor 0). This is the
    /// concrete stand-in for fixing one embedding of the cyclotomic
    /// field into an algebraic closure of Q_l.
    pub fn valuation_at_base_prime(&self, e: &CycloElement) -> Result<u64> {
        self.valuation_at_factor(e, 0)
    }

    /// Index of the factor vanishing at zbar^s, where zbar is the root
    /// of factor 0 in its residue field. s must be prime to p.
    pub fn factor_containing_root_power(&self, s: u64) -> Result<usize> {
        if self.level == 0 {
            return Ok(0);
        }
        let h0 = &self.factors[0];
        // zbar^s in F_l[x]/(h0)
        let zs = fl_pow_mod(&[0, 1], &BigUint::from(s), h0, self.l);
        let mut hit = None;
        for (i, h) in self.factors.iter().enumerate() {
            // evaluate h at zs modulo (h0, l) by Horner
            let mut acc: Vec<u64> = Vec::new();
            for c in h.iter().rev() {
                acc = fl_rem(&fl_add(&fl_mul(&acc, &zs, self.l), &[*c], self.l), h0, self.l);
            }
            if acc.is_empty() {
                if hit.is_some() {
                    return Err(Error::Internal(
                        "root power contained in two coprime factors".into(),
                    ));
                }
                hit = Some(i);
            }
        }
        hit.ok_or_else(|| Error::Internal("no factor contains the requested root power".into()))
    }
}

/// Valuation of an integral element in the local component cut out by a
/// Frobenius orbit of characters: the orbit is paired with one prime
/// above l (the factor containing zbar^s for the representative's first
/// unit exponent s), and the valuation is taken there. Summing
/// f * local_valuation over all exact-level orbits recovers the
/// l-valuation of the full norm.
pub fn local_valuation(e: &CycloElement, l: u64, orbit: &FrobeniusOrbit) -> Result<u64> {
    if orbit.l != l {
        return Err(Error::LevelMismatch(format!(
            "orbit was built for l = {}, valuation requested at l = {l}",
            orbit.l
        )));
    }
    let chi = &orbit.representative;
    if e.p() != chi.p() || e.level() != chi.level() {
        return Err(Error::LevelMismatch(format!(
            "element at level {} vs orbit at level {}",
            e.level(),
            chi.level()
        )));
    }
    let field = LocalField::new(e.p(), e.level(), l)?;
    if e.level() == 0 {
        return field.valuation_at_factor(e, 0);
    }
    let s = chi
        .exponents()
        .iter()
        .copied()
        .find(|&c| c % e.p() != 0)
        .ok_or_else(|| {
            Error::Internal("exact-level character must have a unit exponent".into())
        })?;
    let idx = field.factor_containing_root_power(s)?;
    field.valuation_at_factor(e, idx)
}

/// Valuation at the distinguished prime above l for the element's own
/// level; the per-level fixed-embedding convention.
pub fn valuation_at_base_prime(e: &CycloElement, l: u64) -> Result<u64> {
    LocalField::new(e.p(), e.level(), l)?.valuation_at_base_prime(e)
}

/// Hadamard-style bound on |Res(phi, g)| from the Sylvester matrix row
/// norms: ||phi||_1^{deg g} * ||g||_1^{deg phi}.
fn norm_bound(phi: &IntPoly, g: &IntPoly) -> BigUint {
    let norm1 = |f: &IntPoly| -> BigUint {
        f.coeffs()
            .iter()
            .map(|c| c.magnitude().clone())
            .sum::<BigUint>()
            .max(BigUint::one())
    };
    let dp = phi.degree().unwrap_or(0) as u32;
    let dg = g.degree().unwrap_or(0) as u32;
    norm1(phi).pow(dg) * norm1(g).pow(dp)
}

/// All irreducible factors of the p^level-th cyclotomic polynomial
/// modulo l, each monic of degree f, sorted by coefficient vector.
pub fn factor_cyclotomic_mod_l(p: u64, level: u32, l: u64, f: u64) -> Result<Vec<Vec<u64>>> {
    let phi = cyclotomic_poly(p, level);
    let phi_mod: Vec<u64> = phi
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.mod_floor(&BigInt::from(l));
            u64::try_from(r).expect("mod_floor is nonnegative and < l")
        })
        .collect();
    let phi_mod = fl_trim(phi_mod);
    debug_assert_eq!(
        fl_degree(&phi_mod).unwrap_or(0) as u64,
        phi_prime_power(p, level),
        "cyclotomic polynomial must not drop degree mod l"
    );

    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut work = vec![fl_monic(&phi_mod, l)];
    while let Some(blob) = work.pop() {
        let deg = fl_degree(&blob).expect("blobs are nonzero") as u64;
        debug_assert_eq!(deg % f, 0, "blob degree divisible by residue degree");
        if deg == f {
            done.push(blob);
            continue;
        }
        let split = split_equal_degree(&blob, f, l)?;
        let (quot, rem) = fl_divmod(&blob, &split, l);
        debug_assert!(rem.is_empty(), "split must divide the blob");
        work.push(split);
        work.push(fl_monic(&quot, l));
    }
    done.sort();
    Ok(done)
}

/// One nontrivial monic divisor of `blob`, a squarefree product of at
/// least two degree-f irreducibles over F_l. Cantor-Zassenhaus with a
/// deterministic probe sequence; the failure chance per probe is at most
/// 1/2, and 64 probes are allowed before giving up.
fn split_equal_degree(blob: &[u64], f: u64, l: u64) -> Result<Vec<u64>> {
    const MAX_PROBES: usize = 64;
    let deg = fl_degree(blob).expect("nonzero blob");
    for probe in 0..MAX_PROBES {
        let a = probe_poly(probe as u64, deg, l);
        if a.is_empty() {
            continue;
        }
        // a sharing a factor with the blob is already a split
        let shared = fl_gcd(&a, blob, l);
        if let Some(d) = fl_degree(&shared) {
            if d > 0 && d < deg {
                return Ok(shared);
            }
        }
        let candidate = if l == 2 {
            // trace map a + a^2 + a^4 + ... separates roots in char 2
            let mut acc = fl_rem(&a, blob, l);
            let mut tr = acc.clone();
            for _ in 1..f {
                acc = fl_rem(&fl_mul(&acc, &acc, l), blob, l);
                tr = fl_add(&tr, &acc, l);
            }
            tr
        } else {
            // a^((l^f - 1)/2) is +-1 at each irreducible factor
            let exp = (BigUint::from(l).pow(u32::try_from(f).expect("small degree"))
                - BigUint::one())
                / BigUint::from(2u32);
            let b = fl_pow_mod(&a, &exp, blob, l);
            fl_sub(&b, &[1], l)
        };
        let g = fl_gcd(&candidate, blob, l);
        if let Some(d) = fl_degree(&g) {
            if d > 0 && d < deg {
                return Ok(g);
            }
        }
    }
    Err(Error::FactorizationStuck(MAX_PROBES))
}

/// Deterministic pseudo-random probe polynomial of degree < deg.
fn probe_poly(attempt: u64, deg: usize, l: u64) -> Vec<u64> {
    let mut state = attempt
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(0x1234_5678_9ABC_DEF1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut v: Vec<u64> = (0..deg).map(|_| next() % l).collect();
    // make sure early probes hit the classic x + c family too
    if attempt < l.min(8) {
        v = vec![attempt % l, 1];
    }
    fl_trim(v)
}

/// Lift a factor of `phi` from F_l to Z/l^precision. Returns the lifted
/// factor with coefficients in [0, l^precision). Linear Hensel steps:
/// the Bezout data stays mod l, only the residual climbs.
pub fn hensel_lift_factor(
    phi: &IntPoly,
    h0: &[u64],
    l: u64,
    precision: u32,
) -> Result<IntPoly> {
    let lb = BigInt::from(l);
    let phi_mod: Vec<u64> = phi
        .coeffs()
        .iter()
        .map(|c| u64::try_from(c.mod_floor(&lb)).expect("reduced"))
        .collect();
    let phi_mod = fl_trim(phi_mod);
    let (g0, rem) = fl_divmod(&phi_mod, h0, l);
    if !rem.is_empty() {
        return Err(Error::Internal("factor does not divide phi mod l".into()));
    }
    let (gcd, _, t) = fl_ext_gcd(h0, &g0, l);
    if fl_degree(&gcd) != Some(0) {
        return Err(Error::Internal(
            "factor and cofactor are not coprime mod l".into(),
        ));
    }
    // normalize so t*g0 = 1 mod h0
    let t = fl_scale(&t, fl_scalar_inverse(gcd[0], l), l);

    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut modulus = lb.clone();
    for _ in 1..precision {
        // E = (phi - h*g) / modulus, reduced mod l
        let prod = bigpoly_mul(&h, &g);
        let mut residual: Vec<BigInt> = phi.coeffs().to_vec();
        if residual.len() < prod.len() {
            residual.resize(prod.len(), BigInt::zero());
        }
        for (r, q) in residual.iter_mut().zip(prod.iter()) {
            *r -= q;
        }
        let e_mod: Vec<u64> = residual
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&modulus);
                debug_assert!(r.is_zero(), "hensel invariant broken");
                u64::try_from(q.mod_floor(&lb)).expect("reduced")
            })
            .collect();
        let e_mod = fl_trim(e_mod);

        // solve g0*dh + h0*dg = E with deg dh < deg h0
        let (_, dh) = {
            let te = fl_mul(&t, &e_mod, l);
            let (q, r) = fl_divmod(&te, h0, l);
            (q, r)
        };
        // dg = (E - g0*dh) / h0, exact
        let num = fl_sub(&e_mod, &fl_mul(&g0, &dh, l), l);
        let (dg, rem) = fl_divmod(&num, h0, l);
        debug_assert!(rem.is_empty(), "correction must divide exactly");

        for (i, &c) in dh.iter().enumerate() {
            if i >= h.len() {
                h.resize(i + 1, BigInt::zero());
            }
            h[i] += &modulus * BigInt::from(c);
        }
        for (i, &c) in dg.iter().enumerate() {
            if i >= g.len() {
                g.resize(i + 1, BigInt::zero());
            }
            g[i] += &modulus * BigInt::from(c);
        }
        modulus *= &lb;
    }
    debug_assert!(
        {
            let prod = bigpoly_mul(&h, &g);
            phi.coeffs()
                .iter()
                .zip(prod.iter())
                .all(|(a, b)| (a - b).mod_floor(&modulus).is_zero())
        },
        "lifted factorization must match phi at full precision"
    );
    Ok(IntPoly::new(h))
}

fn bigpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// -- dense polynomial arithmetic over F_l (ascending coefficients,
//    trimmed, entries in [0, l)) --

fn fl_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fl_degree(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn fl_add(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % l;
    }
    fl_trim(out)
}

fn fl_sub(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + l - y % l) % l;
    }
    fl_trim(out)
}

fn fl_mul(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % l as u128;
        }
    }
    fl_trim(out.into_iter().map(|c| c as u64).collect())
}

fn fl_scale(a: &[u64], c: u64, l: u64) -> Vec<u64> {
    fl_trim(
        a.iter()
            .map(|&x| (x as u128 * c as u128 % l as u128) as u64)
            .collect(),
    )
}

fn fl_scalar_inverse(c: u64, l: u64) -> u64 {
    // Fermat: c^{l-2} mod l
    let mut base = c as u128 % l as u128;
    let mut exp = l - 2;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % l as u128;
        }
        base = base * base % l as u128;
        exp >>= 1;
    }
    acc as u64
}

fn fl_monic(a: &[u64], l: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lead) if lead == 1 => a.to_vec(),
        Some(&lead) => fl_scale(a, fl_scalar_inverse(lead, l), l),
    }
}

fn fl_divmod(a: &[u64], b: &[u64], l: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), fl_trim(a.to_vec()));
    }
    let lead_inv = fl_scalar_inverse(*b.last().expect("nonzero"), l);
    let mut rem: Vec<u64> = a.to_vec();
    let mut quot = vec![0u64; a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let idx = k + b.len() - 1;
        let coeff = (rem[idx] as u128 * lead_inv as u128 % l as u128) as u64;
        if coeff == 0 {
            continue;
        }
        quot[k] = coeff;
        for (j, &bc) in b.iter().enumerate() {
            let sub = coeff as u128 * bc as u128 % l as u128;
            rem[k + j] = ((rem[k + j] as u128 + l as u128 - sub) % l as u128) as u64;
        }
    }
    (fl_trim(quot), fl_trim(rem))
}

fn fl_rem(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    fl_divmod(a, b, l).1
}

fn fl_gcd(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let mut r0 = fl_trim(a.to_vec());
    let mut r1 = fl_trim(b.to_vec());
    while !r1.is_empty() {
        let r = fl_rem(&r0, &r1, l);
        r0 = r1;
        r1 = r;
    }
    fl_monic(&r0, l)
}

/// (g, s, t) with s*a + t*b = g; g is the (not yet monic) gcd.
fn fl_ext_gcd(a: &[u64], b: &[u64], l: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = fl_trim(a.to_vec());
    let mut r1 = fl_trim(b.to_vec());
    let mut s0: Vec<u64> = vec![1];
    let mut s1: Vec<u64> = Vec::new();
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = fl_divmod(&r0, &r1, l);
        let s = fl_sub(&s0, &fl_mul(&q, &s1, l), l);
        let t = fl_sub(&t0, &fl_mul(&q, &t1, l), l);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

fn fl_pow_mod(base: &[u64], exp: &BigUint, modulus: &[u64], l: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = vec![1];
    let mut cur = fl_rem(base, modulus, l);
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc = fl_rem(&fl_mul(&acc, &cur, l), modulus, l);
        }
        if i + 1 < bits {
            cur = fl_rem(&fl_mul(&cur, &cur, l), modulus, l);
        }
    }
    acc
}
