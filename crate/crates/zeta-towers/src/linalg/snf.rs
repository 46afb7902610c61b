//! Smith normal form over the integers.
//!
//! Diagonalizing with elementary operations alone lets intermediate
//! entries grow exponentially on dense inputs, so the computation runs
//! in two stages. A fraction-free (Bareiss) elimination first finds the
//! rank and the determinant of one maximal nonsingular submatrix; its
//! entries are minors of the input and stay Hadamard-bounded. That
//! determinant N is a multiple of every invariant factor, which makes
//! reducing any entry modulo N a legal column operation against the
//! implicit relation vectors N * e_i: the elementary diagonalization
//! then runs with every entry kept in (-N/2, N/2]. Each diagonal entry
//! d contributes the cyclic group Z/gcd(d, N), each pivot-less row a
//! copy of Z/N, and a gcd/lcm pass restores the divisibility chain
//! before the free-rank copies of N are dropped again.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation.
///
/// `invariant_factors` is the nonzero diagonal (1s included),
/// `rank` its length, and `cokernel_rank` the number of zero rows of
/// the diagonal form, i.e. the free rank of coker(M) for M acting on
/// column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub cokernel_rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let (rank, minor) = rank_and_pivot_minor(m);
    if rank == 0 {
        return SnfResult {
            invariant_factors: Vec::new(),
            rank: 0,
            cokernel_rank: rows,
        };
    }
    let modulus = minor.abs();
    if modulus.is_one() {
        // a unimodular maximal minor: every invariant factor is 1
        return SnfResult {
            invariant_factors: vec![BigInt::one(); rank],
            rank,
            cokernel_rank: rows - rank,
        };
    }

    let diag = diagonalize(m, Some(&modulus));
    let mut factors: Vec<BigInt> = diag.iter().map(|d| d.gcd(&modulus)).collect();
    factors.extend(std::iter::repeat(modulus.clone()).take(rows - diag.len()));
    let mut factors = divisibility_chain(factors);
    // rows - rank of the N copies stand for the free part, not torsion
    for _ in rank..rows {
        debug_assert_eq!(factors.last(), Some(&modulus), "free part must sit at N");
        factors.pop();
    }
    debug_assert_eq!(factors.len(), rank);
    SnfResult {
        invariant_factors: factors,
        rank,
        cokernel_rank: rows - rank,
    }
}

/// Fraction-free Gaussian elimination with full pivoting: the rank, and
/// the determinant (up to sign) of the square submatrix the pivots
/// traced out. Intermediate entries are minors of the input, so they
/// stay polynomially sized.
fn rank_and_pivot_minor(m: &IntMatrix) -> (usize, BigInt) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let bound = rows.min(cols);
    let mut prev = BigInt::one();
    let mut k = 0;
    while k < bound {
        let Some((pi, pj)) = min_abs_pivot(&a, k, rows, cols) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            // rows with a zero leading entry still rescale by pivot/prev
            for j in k + 1..cols {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free step divides exactly");
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
        k += 1;
    }
    (k, prev)
}

fn min_abs_pivot(
    a: &[Vec<BigInt>],
    k: usize,
    rows: usize,
    cols: usize,
) -> Option<(usize, usize)> {
    let mut pivot: Option<(usize, usize)> = None;
    for i in k..rows {
        for j in k..cols {
            if a[i][j].is_zero() {
                continue;
            }
            match pivot {
                Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => {}
                _ => pivot = Some((i, j)),
            }
        }
    }
    pivot
}

/// Representative of x in (-n/2, n/2].
fn balanced(x: BigInt, modulus: Option<&BigInt>) -> BigInt {
    match modulus {
        None => x,
        Some(n) => {
            let mut r = x.mod_floor(n);
            if (&r + &r) > *n {
                r -= n;
            }
            r
        }
    }
}

/// Diagonalize by elementary row/column operations, optionally with all
/// entries reduced modulo `modulus` throughout. Returns the positive
/// pivot diagonal; with a modulus, entries congruent to 0 are zero.
///
/// Pivoting picks the entry of minimal absolute value in the remaining
/// block; quotients round to nearest, so promoted remainders shrink the
/// pivot by at least half and the clearing loops terminate.
fn diagonalize(m: &IntMatrix, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| balanced(m.at(i, j).clone(), modulus))
                .collect()
        })
        .collect();

    let bound = rows.min(cols);
    let mut k = 0;
    while k < bound {
        let Some((pi, pj)) = min_abs_pivot(&a, k, rows, cols) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }

        // clear row and column k; restart on any nonzero remainder
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&a[i][k], &a[k][k]);
                for j in k..cols {
                    let t = &a[k][j] * &q;
                    a[i][j] = balanced(&a[i][j] - t, modulus);
                }
                if !a[i][k].is_zero() {
                    // remainder smaller than pivot; promote it
                    a.swap(k, i);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&a[k][j], &a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let t = &row[k] * &q;
                    row[j] = balanced(&row[j] - t, modulus);
                }
                if !a[k][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // divisibility fix: pivot must divide every remaining entry
        let mut fixed = true;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !a[i][j].is_zero() && !(&a[i][j] % &a[k][k]).is_zero() {
                    // fold that row into row k and re-run the pivot step
                    for col in k..cols {
                        let t = a[i][col].clone();
                        a[k][col] = balanced(&a[k][col] + t, modulus);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            if a[k][k].is_negative() {
                a[k][k] = -a[k][k].clone();
            }
            k += 1;
        }
    }

    (0..k).map(|i| a[i][i].clone()).collect()
}

/// Canonical invariant factors of the direct sum of Z/v over positive
/// moduli v: pairwise gcd/lcm replacements until every factor divides
/// the next. Each replacement keeps the group and the factor count and
/// strictly increases the sum, so the loop terminates.
fn divisibility_chain(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    loop {
        let mut changed = false;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if (&v[j] % &v[i]).is_zero() {
                    continue;
                }
                let g = v[i].gcd(&v[j]);
                let l = &v[i] / &g * &v[j];
                v[i] = g;
                v[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    v.sort();
    v
}

/// Quotient rounding toward the nearest integer, so remainders have at
/// most half the pivot's magnitude.
fn rounded_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    let two_r = &r + &r;
    if two_r.abs() > d.abs() {
        if (r.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

impl SnfResult {
    /// Torsion factors of the cokernel: invariant factors greater than 1.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}
