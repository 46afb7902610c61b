//! Zeta functions of digraphs and their factorization into character
//! L-functions along a voltage tower.
//!
//! The zeta function of a digraph counts closed walks; its reciprocal is
//! the polynomial det(Id - u A). For a derived level X_n of a voltage
//! tower, this determinant factors as the product over all characters
//! omega of the level-n voltage group of the twisted determinants
//! det(Id - u A_omega), where A_omega evaluates each voltage monomial at
//! omega. Grouping the characters into Galois orbits collects the
//! factors into integer polynomials, and the whole factorization is an
//! exact identity in Z[u] that [`ArtinReport::holds`] checks.

use num_bigint::BigInt;

use crate::cyclo::{char_eval, enumerate_character_orbits, units_mod, Character, CycloElement, CycloPoly, GaloisOrbit};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{char_poly, faddeev_leverrier, IntPoly};
use crate::tower::{derived_digraph, symbolic_adjacency, VoltageAssignment};

/// det(Id - u A): the reciprocal of the closed-walk zeta function,
/// normalized so the constant term is 1.
pub fn zeta_reciprocal(g: &Digraph) -> Result<IntPoly> {
    let chi = char_poly(&g.adjacency_matrix()?)?;
    Ok(chi.reciprocal(g.vertex_count()))
}

/// The adjacency matrix twisted by a character: every edge contributes
/// the character value of its voltage instead of 1.
pub fn twisted_adjacency(
    base: &Digraph,
    alpha: &VoltageAssignment,
    chi: &Character,
) -> Result<Vec<Vec<CycloElement>>> {
    if chi.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch(format!(
            "character has {} exponents, voltages have {} coordinates",
            chi.dim(),
            alpha.dim()
        )));
    }
    let sym = symbolic_adjacency(base, alpha)?;
    sym.iter()
        .map(|row| row.iter().map(|entry| char_eval(entry, chi)).collect())
        .collect()
}

/// det(Id - u A_chi): the reciprocal of the L-function of a character,
/// a polynomial with coefficients in the character's cyclotomic field.
pub fn l_function_reciprocal(
    base: &Digraph,
    alpha: &VoltageAssignment,
    chi: &Character,
) -> Result<CycloPoly> {
    let tw = twisted_adjacency(base, alpha, chi)?;
    let coeffs = faddeev_leverrier(&tw);
    let charpoly = CycloPoly::new(chi.p(), chi.level(), coeffs);
    Ok(charpoly.reciprocal(base.vertex_count()))
}

/// Product of the L-function reciprocals over one full Galois orbit of
/// characters; the conjugate factors multiply out to an integer
/// polynomial.
pub fn orbit_l_factor(
    base: &Digraph,
    alpha: &VoltageAssignment,
    orbit: &GaloisOrbit,
) -> Result<IntPoly> {
    let rep = &orbit.representative;
    let lrec = l_function_reciprocal(base, alpha, rep)?;
    let order = rep.order();
    if order <= 1 {
        return lrec.to_int_poly();
    }
    let mut prod = CycloPoly::one(rep.p(), rep.level());
    for k in units_mod(order) {
        prod = prod.mul(&lrec.galois_map(k)?)?;
    }
    prod.to_int_poly()
}

/// One Galois orbit of characters together with its integer L-factor.
#[derive(Debug, Clone)]
pub struct ArtinFactor {
    pub orbit: GaloisOrbit,
    pub factor: IntPoly,
}

/// Both sides of the zeta factorization at one tower level: the zeta
/// reciprocal of the derived graph, and the per-orbit L-factors whose
/// product should reproduce it.
#[derive(Debug, Clone)]
pub struct ArtinReport {
    pub level: u32,
    pub zeta_reciprocal: IntPoly,
    pub factors: Vec<ArtinFactor>,
}

impl ArtinReport {
    pub fn product_of_factors(&self) -> IntPoly {
        let mut prod = IntPoly::one();
        for f in &self.factors {
            prod = prod.mul(&f.factor);
        }
        prod
    }

    pub fn holds(&self) -> bool {
        self.product_of_factors() == self.zeta_reciprocal
    }
}

/// Compute the zeta reciprocal of the level-n derived graph and its full
/// character factorization.
pub fn artin_factorization(
    base: &Digraph,
    alpha: &VoltageAssignment,
    level: u32,
    budget: u64,
) -> Result<ArtinReport> {
    let derived = derived_digraph(base, alpha, level, budget)?;
    let zr = zeta_reciprocal(&derived)?;
    let orbits = enumerate_character_orbits(alpha.prime(), alpha.dim(), level)?;
    let mut factors = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let factor = orbit_l_factor(base, alpha, &orbit)?;
        factors.push(ArtinFactor { orbit, factor });
    }
    Ok(ArtinReport {
        level,
        zeta_reciprocal: zr,
        factors,
    })
}

/// Closed-walk counts N_1, ..., N_max: N_v is the trace of the v-th
/// power of the adjacency matrix.
pub fn closed_walk_counts(g: &Digraph, max: usize) -> Result<Vec<BigInt>> {
    let a = g.adjacency_matrix()?;
    let n = g.vertex_count();
    let mut power = a.clone();
    let mut out = Vec::with_capacity(max);
    for step in 0..max {
        if step > 0 {
            let mut next = crate::linalg::IntMatrix::zero(n, n);
            for i in 0..n {
                for k in 0..n {
                    if power.at(i, k).bits() == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let add = power.at(i, k) * a.at(k, j);
                        *next.at_mut(i, j) += add;
                    }
                }
            }
            power = next;
        }
        let mut tr = BigInt::from(0);
        for i in 0..n {
            tr += power.at(i, i);
        }
        out.push(tr);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn cycle_with_voltage(voltages: &[i64], p: u64) -> (Digraph, VoltageAssignment) {
        let r = voltages.len();
        let g = Digraph::directed_cycle(r);
        let alpha =
            VoltageAssignment::new(p, 1, voltages.iter().map(|&v| vec![v]).collect()).unwrap();
        (g, alpha)
    }

    #[test]
    fn cycle_zeta_is_one_minus_u_to_r() {
        for r in 1..=5 {
            let zr = zeta_reciprocal(&Digraph::directed_cycle(r)).unwrap();
            let mut want = vec![BigInt::zero(); r + 1];
            want[0] = BigInt::one();
            want[r] = BigInt::from(-1);
            assert_eq!(zr, IntPoly::new(want));
        }
    }

    #[test]
    fn walk_counts_match_direct_enumeration() {
        // DFS over the adjacency lists, counting closed walks edge by
        // edge, agrees with traces of matrix powers
        fn dfs_count(g: &Digraph, start: usize, at: usize, remaining: usize) -> u64 {
            if remaining == 0 {
                return u64::from(at == start);
            }
            let mut total = 0;
            for e in g.edges() {
                if e.src == at {
                    total += dfs_count(g, start, e.dst, remaining - 1);
                }
            }
            total
        }

        let mut seed = 0x5EEDu64;
        let mut next = move |m: u64| {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..12 {
            let n = 2 + next(3) as usize;
            let mut rows = vec![vec![0i64; n]; n];
            for row in rows.iter_mut() {
                for entry in row.iter_mut() {
                    *entry = next(3) as i64 - 1;
                    if *entry < 0 {
                        *entry = 0;
                    }
                }
            }
            let g = match Digraph::from_adjacency(&rows) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let counts = closed_walk_counts(&g, 5).unwrap();
            for (v, count) in counts.iter().enumerate() {
                let brute: u64 = (0..n).map(|s| dfs_count(&g, s, s, v + 1)).sum();
                assert_eq!(*count, BigInt::from(brute), "length {}", v + 1);
            }
        }
    }

    #[test]
    fn log_derivative_of_zeta_generates_walk_counts() {
        // with P(u) = det(Id - uA), the series -u P'(u) / P(u) has the
        // walk counts N_v as coefficients
        let graphs = [
            Digraph::from_adjacency(&[vec![1, 1], vec![1, 0]]).unwrap(),
            Digraph::from_adjacency(&[vec![2, 2, 0], vec![1, 1, 1], vec![1, 2, 1]]).unwrap(),
            Digraph::directed_cycle(4),
        ];
        let depth = 8;
        for g in &graphs {
            let p = zeta_reciprocal(g).unwrap();
            let counts = closed_walk_counts(g, depth).unwrap();
            // numerator -u P'(u)
            let mut num = vec![BigInt::zero(); depth + 1];
            for i in 1..=p.degree().unwrap_or(0) {
                if i <= depth {
                    num[i] = -(BigInt::from(i as i64) * p.coeff(i));
                }
            }
            // divide by P term by term; P(0) = 1 keeps everything integral
            let mut series = vec![BigInt::zero(); depth + 1];
            for k in 0..=depth {
                let mut acc = num[k].clone();
                for j in 1..=k {
                    acc -= p.coeff(j) * &series[k - j];
                }
                series[k] = acc;
            }
            for v in 1..=depth {
                assert_eq!(series[v], counts[v - 1], "N_{v} for {g:?}");
            }
        }
    }

    #[test]
    fn trivial_character_recovers_base_zeta() {
        let (g, alpha) = cycle_with_voltage(&[0, 0, 1], 3);
        let chi = Character::trivial(3, 1);
        let lrec = l_function_reciprocal(&g, &alpha, &chi).unwrap();
        assert_eq!(lrec.to_int_poly().unwrap(), zeta_reciprocal(&g).unwrap());
    }

    #[test]
    fn cycle_l_function_twists_the_top_coefficient() {
        // one unit of voltage around an r-cycle turns det(Id - uA) from
        // 1 - u^r into 1 - zeta u^r
        let (g, alpha) = cycle_with_voltage(&[0, 0, 1], 3);
        let chi = Character::new(3, 1, vec![1]).unwrap();
        let lrec = l_function_reciprocal(&g, &alpha, &chi).unwrap();
        assert_eq!(lrec.degree(), Some(3));
        assert!(lrec.coeff(0).is_rational());
        let z = CycloElement::root_power(3, 1, 1);
        assert_eq!(lrec.coeff(3), z.neg());
    }

    #[test]
    fn conjugate_characters_give_conjugate_l_functions() {
        let (g, alpha) = cycle_with_voltage(&[1, 0, 2], 5);
        let chi = Character::new(5, 1, vec![1]).unwrap();
        let l1 = l_function_reciprocal(&g, &alpha, &chi).unwrap();
        let chi2 = chi.power(2).unwrap();
        let l2 = l_function_reciprocal(&g, &alpha, &chi2).unwrap();
        assert_eq!(l1.galois_map(2).unwrap(), l2);
    }

    #[test]
    fn artin_factorization_on_cycles() {
        // connected tower: 3-cycle with net voltage 1, p = 3, levels 0..2
        let (g, alpha) = cycle_with_voltage(&[0, 0, 1], 3);
        for level in 0..=2 {
            let report = artin_factorization(&g, &alpha, level, 1 << 20).unwrap();
            assert!(report.holds(), "level {level}");
            assert_eq!(
                report.factors.len(),
                enumerate_character_orbits(3, 1, level).unwrap().len()
            );
        }
    }

    #[test]
    fn artin_factorization_handles_disconnected_towers() {
        // net voltage 0 around the cycle: the derived graphs fall apart,
        // the factorization still holds
        let (g, alpha) = cycle_with_voltage(&[1, 0, -1], 2);
        for level in 0..=2 {
            let report = artin_factorization(&g, &alpha, level, 1 << 20).unwrap();
            assert!(report.holds(), "level {level}");
        }
    }

    #[test]
    fn artin_factorization_in_dimension_two() {
        // two loops on one vertex with independent voltage coordinates
        let g = Digraph::new(vec!["v".into()], &[(0, 0), (0, 0)]).unwrap();
        let alpha = VoltageAssignment::new(2, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let report = artin_factorization(&g, &alpha, 1, 1 << 20).unwrap();
        assert!(report.holds());
        // 4 characters in 4 singleton orbits at p = 2, level 1
        assert_eq!(report.factors.len(), 4);
        let derived = derived_digraph(&g, &alpha, 1, 1 << 20).unwrap();
        assert_eq!(derived.vertex_count(), 4);
    }

    #[test]
    fn artin_factorization_on_a_dense_base() {
        let g = Digraph::from_adjacency(&[vec![2, 2, 0], vec![1, 1, 1], vec![1, 2, 1]]).unwrap();
        let alpha = VoltageAssignment::new(
            3,
            1,
            (0..g.edge_count()).map(|i| vec![i as i64 % 3]).collect(),
        )
        .unwrap();
        let report = artin_factorization(&g, &alpha, 1, 1 << 20).unwrap();
        assert!(report.holds());
    }
}
