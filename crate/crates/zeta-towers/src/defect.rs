//! Analytic versus algebraic Bowen-Franks ranks and the defect series
//! of a tower.
//!
//! The analytic rank a(X) is the multiplicity of u = 1 as a root of
//! det(Id - uA): the algebraic multiplicity of eigenvalue 1 of the
//! adjacency matrix. The algebraic rank b(X) is the free rank of the
//! Bowen-Franks group: the geometric multiplicity of that eigenvalue.
//! Their difference, the defect, is nonnegative, decomposes over the
//! characters of a voltage tower level by level, and never decreases
//! along a tower.

use crate::cyclo::{enumerate_character_orbits, Character, CycloElement, GaloisOrbit};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::root_multiplicity_at_one;
use crate::tower::{tower_strongly_connected, VoltageAssignment};
use crate::util::par_map;
use crate::zeta::{l_function_reciprocal, twisted_adjacency, zeta_reciprocal};

/// Multiplicity of the eigenvalue 1 of the adjacency matrix, counted
/// with algebraic multiplicity; equivalently the order of vanishing of
/// det(Id - uA) at u = 1.
pub fn analytic_rank(g: &Digraph) -> Result<usize> {
    root_multiplicity_at_one(&zeta_reciprocal(g)?)
}

/// Free rank of the Bowen-Franks group: the geometric multiplicity of
/// eigenvalue 1 of the adjacency matrix.
pub fn algebraic_rank(g: &Digraph) -> Result<usize> {
    Ok(crate::groups::bowen_franks_group(g)?.free_rank)
}

/// Rank of a matrix over a cyclotomic field by Gaussian elimination
/// with exact arithmetic.
fn rank_over_cyclotomic(mut m: Vec<Vec<CycloElement>>) -> Result<usize> {
    let rows = m.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inverse()?;
        for j in col..cols {
            m[rank][j] = m[rank][j].mul(&inv)?;
        }
        for i in 0..rows {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..cols {
                let delta = factor.mul(&m[rank][j])?;
                m[i][j] = m[i][j].sub(&delta)?;
            }
        }
        rank += 1;
        col += 1;
    }
    Ok(rank)
}

/// The analytic and algebraic ranks of one character: the u = 1
/// vanishing order of its L-function reciprocal, and the corank of
/// Id - A_omega over the character's cyclotomic field.
pub fn per_character_ranks(
    base: &Digraph,
    alpha: &VoltageAssignment,
    chi: &Character,
) -> Result<(usize, usize)> {
    let lrec = l_function_reciprocal(base, alpha, chi)?;
    let analytic = lrec.root_multiplicity_at_one()?;

    let tw = twisted_adjacency(base, alpha, chi)?;
    let n = tw.len();
    let mut id_minus = tw;
    for (i, row) in id_minus.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = if i == j {
                CycloElement::one(chi.p(), chi.level()).sub(entry)?
            } else {
                entry.neg()
            };
        }
    }
    let algebraic = n - rank_over_cyclotomic(id_minus)?;
    Ok((analytic, algebraic))
}

/// Ranks attached to one Galois orbit of characters; all members of the
/// orbit share them.
#[derive(Debug, Clone)]
pub struct CharacterRanks {
    pub orbit: GaloisOrbit,
    pub analytic: usize,
    pub algebraic: usize,
}

/// One level of the defect series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectLevel {
    pub level: u32,
    pub analytic: usize,
    pub algebraic: usize,
    pub defect: usize,
}

/// The defect series of a tower with its per-orbit decomposition.
#[derive(Debug, Clone)]
pub struct DefectReport {
    pub levels: Vec<DefectLevel>,
    pub per_orbit: Vec<CharacterRanks>,
    /// Earliest computed level from which the defect stays constant
    /// through the end of the computed range.
    pub stabilized_from: Option<u32>,
    /// Whether the defect stayed equal to its level-0 value on every
    /// computed level; evidence for, never proof of, constancy.
    pub constant_defect_observed: bool,
}

/// Defect series for levels 0..=n_max, computed through the character
/// decomposition: each Galois orbit contributes orbit_size copies of
/// its representative's ranks to every level from its own upward.
pub fn defect_series(
    base: &Digraph,
    alpha: &VoltageAssignment,
    n_max: u32,
    threads: usize,
) -> Result<DefectReport> {
    if !tower_strongly_connected(base, alpha)? {
        return Err(Error::TowerNotConnected);
    }
    let orbits = enumerate_character_orbits(alpha.prime(), alpha.dim(), n_max)?;
    let computed = par_map(orbits, threads, |orbit| -> Result<CharacterRanks> {
        let (analytic, algebraic) = per_character_ranks(base, alpha, &orbit.representative)?;
        Ok(CharacterRanks {
            orbit,
            analytic,
            algebraic,
        })
    });
    let per_orbit = computed.into_iter().collect::<Result<Vec<_>>>()?;

    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut analytic = 0usize;
        let mut algebraic = 0usize;
        for ranks in per_orbit
            .iter()
            .filter(|r| r.orbit.representative.level() <= n)
        {
            analytic += ranks.orbit.orbit_size as usize * ranks.analytic;
            algebraic += ranks.orbit.orbit_size as usize * ranks.algebraic;
        }
        if analytic < algebraic {
            return Err(Error::Internal(format!(
                "analytic rank {analytic} below algebraic rank {algebraic} at level {n}"
            )));
        }
        let defect = analytic - algebraic;
        if let Some(prev) = levels.last().map(|l: &DefectLevel| l.defect) {
            if defect < prev {
                return Err(Error::Internal(format!(
                    "defect decreased from {prev} to {defect} at level {n}"
                )));
            }
        }
        levels.push(DefectLevel {
            level: n,
            analytic,
            algebraic,
            defect,
        });
    }

    let final_defect = levels.last().expect("at least level 0").defect;
    let stabilized_from = levels
        .iter()
        .rev()
        .take_while(|l| l.defect == final_defect)
        .last()
        .map(|l| l.level);
    let constant_defect_observed = levels.iter().all(|l| l.defect == levels[0].defect);

    Ok(DefectReport {
        levels,
        per_orbit,
        stabilized_from,
        constant_defect_observed,
    })
}

/// For a constant unit voltage in one variable, the level from which
/// the lemma guarantees the defect stops moving: 0 when p - 1 > |V|,
/// otherwise the smallest n with phi(p^n) > |V|.
pub fn constant_voltage_stabilization_level(
    base: &Digraph,
    alpha: &VoltageAssignment,
) -> Result<u32> {
    if alpha.dim() != 1 {
        return Err(Error::RequiresDimensionOne(alpha.dim()));
    }
    let value = alpha.constant_value()?;
    let p = alpha.prime();
    if value[0].rem_euclid(p as i64) == 0 {
        return Err(Error::MalformedSpec(
            "constant voltage must be a unit at p".into(),
        ));
    }
    let r = base.vertex_count() as u64;
    if p - 1 > r {
        return Ok(0);
    }
    let mut n = 1;
    loop {
        let phi = p.pow(n) - p.pow(n - 1);
        if phi > r {
            return Ok(n);
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::level_groups;
    use crate::tower::derived_digraph;

    fn pos_defect_graph() -> Digraph {
        Digraph::from_adjacency(&[vec![1, 0, 1], vec![1, 2, 0], vec![1, 1, 2]]).unwrap()
    }

    /// A = [[1,0,2],[2,3,0],[2,2,3]] with voltages arranged so the
    /// twisted matrix has 1+T and 2+T entries; its Bowen-Franks
    /// function vanishes identically and the defect grows like p^n.
    fn growing_defect_tower(p: u64) -> (Digraph, VoltageAssignment) {
        let g = Digraph::from_adjacency(&[vec![1, 0, 2], vec![2, 3, 0], vec![2, 2, 3]]).unwrap();
        let mut voltages = vec![vec![0i64]; g.edge_count()];
        voltages[1] = vec![1];
        voltages[3] = vec![1];
        voltages[5] = vec![1];
        voltages[8] = vec![1];
        voltages[10] = vec![1];
        voltages[12] = vec![1];
        (g, VoltageAssignment::new(p, 1, voltages).unwrap())
    }

    #[test]
    fn ranks_of_fixed_graphs() {
        let g = pos_defect_graph();
        assert_eq!(analytic_rank(&g).unwrap(), 2);
        assert_eq!(algebraic_rank(&g).unwrap(), 1);

        for r in 1..=5 {
            let c = Digraph::directed_cycle(r);
            assert_eq!(analytic_rank(&c).unwrap(), 1);
            assert_eq!(algebraic_rank(&c).unwrap(), 1);
        }

        let twice_id = Digraph::from_adjacency(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(analytic_rank(&twice_id).unwrap(), 0);
        assert_eq!(algebraic_rank(&twice_id).unwrap(), 0);
    }

    #[test]
    fn analytic_dominates_algebraic_on_random_graphs() {
        let mut seed = 0xD1CEu64;
        let mut next = move |m: u64| {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..25 {
            let n = 1 + next(4) as usize;
            let mut rows = vec![vec![0i64; n]; n];
            for row in rows.iter_mut() {
                for entry in row.iter_mut() {
                    *entry = (next(5) as i64 - 2).max(0);
                }
            }
            let g = Digraph::from_adjacency(&rows).unwrap();
            let a = analytic_rank(&g).unwrap();
            let b = algebraic_rank(&g).unwrap();
            assert!(a >= b, "a = {a}, b = {b} on {rows:?}");
        }
    }

    #[test]
    fn trivial_character_ranks_match_base_graph() {
        let (g, alpha) = growing_defect_tower(3);
        let (a, b) = per_character_ranks(&g, &alpha, &Character::trivial(3, 1)).unwrap();
        assert_eq!(a, analytic_rank(&g).unwrap());
        assert_eq!(b, algebraic_rank(&g).unwrap());
        assert_eq!((a, b), (2, 1));
    }

    #[test]
    fn growing_defect_tower_has_constant_character_ranks() {
        let (g, alpha) = growing_defect_tower(3);
        for orbit in enumerate_character_orbits(3, 1, 1).unwrap() {
            let (a, b) = per_character_ranks(&g, &alpha, &orbit.representative).unwrap();
            assert_eq!((a, b), (2, 1), "orbit {:?}", orbit.representative);
        }
        let report = defect_series(&g, &alpha, 1, 2).unwrap();
        // a(X_n) = 2 * 3^n, b(X_n) = 3^n, defect 3^n
        assert_eq!(report.levels[0].analytic, 2);
        assert_eq!(report.levels[0].algebraic, 1);
        assert_eq!(report.levels[0].defect, 1);
        assert_eq!(report.levels[1].analytic, 6);
        assert_eq!(report.levels[1].algebraic, 3);
        assert_eq!(report.levels[1].defect, 3);
        assert!(!report.constant_defect_observed);
    }

    #[test]
    fn defect_jump_then_stabilize_at_p5() {
        // 4-vertex base over p = 5: no defect at level 0, defect 4 from
        // level 1 on; the twisted matrix at every order-5 character
        // collapses to a fixed 0/1 matrix with a(omega) = 2, b(omega) = 1
        let g = Digraph::from_adjacency(&[
            vec![1, 1, 0, 5],
            vec![1, 6, 1, 0],
            vec![0, 6, 6, 1],
            vec![1, 0, 1, 1],
        ])
        .unwrap();
        // give 5 parallel edges voltages 0..4 (and 6 parallel edges an
        // extra zero), matching entries T^4+...+T+1 / T^4+...+T+2
        let mut voltages = vec![vec![0i64]; g.edge_count()];
        let mut set = |start: usize, vals: &[i64]| {
            for (k, &v) in vals.iter().enumerate() {
                voltages[start + k] = vec![v];
            }
        };
        // source-major edge ids: col 0: v1->v1 (0), v1->v2 (1), v1->v4 (2);
        // col 1: v2->v1 (3), 6x v2->v2 (4..=9), 6x v2->v3 (10..=15);
        // col 2: v3->v2 (16), 6x v3->v3 (17..=22), v3->v4 (23);
        // col 3: 5x v4->v1 (24..=28), v4->v3 (29)
        set(4, &[0, 0, 1, 2, 3, 4]);
        set(10, &[0, 0, 1, 2, 3, 4]);
        set(17, &[0, 0, 1, 2, 3, 4]);
        set(24, &[0, 1, 2, 3, 4]);
        let alpha = VoltageAssignment::new(5, 1, voltages).unwrap();

        // the intended twisted entries
        let sym = crate::tower::symbolic_adjacency(&g, &alpha).unwrap();
        let run_plus = |c: i64| {
            let mut f = crate::laurent::LaurentPolyZ::constant(1, c);
            for e in 1..=4 {
                f = f.add(&crate::laurent::LaurentPolyZ::monomial(
                    1,
                    &[e],
                    num_bigint::BigInt::from(1),
                ));
            }
            f
        };
        assert_eq!(sym[0][3], run_plus(1));
        assert_eq!(sym[1][1], run_plus(2));
        assert_eq!(sym[2][1], run_plus(2));
        assert_eq!(sym[2][2], run_plus(2));

        assert_eq!(analytic_rank(&g).unwrap(), 0);
        let report = defect_series(&g, &alpha, 2, 4).unwrap();
        let defects: Vec<usize> = report.levels.iter().map(|l| l.defect).collect();
        assert_eq!(defects, vec![0, 4, 4]);
        assert_eq!(report.stabilized_from, Some(1));
        assert!(!report.constant_defect_observed);
    }

    #[test]
    fn constant_cycle_towers_have_no_defect() {
        let g = Digraph::directed_cycle(3);
        let alpha = VoltageAssignment::new(5, 1, vec![vec![1]; 3]).unwrap();
        let report = defect_series(&g, &alpha, 2, 1).unwrap();
        assert!(report.levels.iter().all(|l| l.defect == 0));
        assert!(report.constant_defect_observed);
        assert_eq!(report.stabilized_from, Some(0));
        // every level is a single directed cycle with a = b = 1
        assert_eq!(report.levels[2].analytic, 1);
        assert_eq!(report.levels[2].algebraic, 1);
    }

    #[test]
    fn character_decomposition_matches_derived_graphs() {
        // levels 0 and 1: summed per-orbit ranks equal the ranks of the
        // derived digraph computed directly
        let cases: Vec<(Digraph, VoltageAssignment)> = vec![
            growing_defect_tower(3),
            {
                let g = Digraph::from_adjacency(&[vec![0, 2], vec![2, 0]]).unwrap();
                let mut v = vec![vec![0i64]; 4];
                v[0] = vec![1];
                v[1] = vec![1];
                (g, VoltageAssignment::new(3, 1, v).unwrap())
            },
            {
                let g = Digraph::directed_cycle(4);
                (
                    g,
                    VoltageAssignment::new(2, 1, vec![vec![1], vec![0], vec![0], vec![0]])
                        .unwrap(),
                )
            },
        ];
        for (g, alpha) in cases {
            let report = defect_series(&g, &alpha, 1, 2).unwrap();
            for n in 0..=1u32 {
                let derived = derived_digraph(&g, &alpha, n, 1 << 20).unwrap();
                let a_direct = analytic_rank(&derived).unwrap();
                let b_direct = algebraic_rank(&derived).unwrap();
                let row = &report.levels[n as usize];
                assert_eq!(row.analytic, a_direct, "level {n}");
                assert_eq!(row.algebraic, b_direct, "level {n}");
            }
        }
    }

    #[test]
    fn disconnected_towers_are_rejected() {
        let g = Digraph::directed_cycle(3);
        let alpha = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![1]]).unwrap();
        assert!(matches!(
            defect_series(&g, &alpha, 1, 1),
            Err(Error::TowerNotConnected)
        ));
    }

    #[test]
    fn stabilization_levels() {
        let mk = |r: usize, p: u64| {
            let g = Digraph::directed_cycle(r);
            let alpha = VoltageAssignment::new(p, 1, vec![vec![1]; r]).unwrap();
            constant_voltage_stabilization_level(&g, &alpha).unwrap()
        };
        assert_eq!(mk(3, 5), 0); // p - 1 = 4 > 3
        assert_eq!(mk(4, 5), 2); // phi(5) = 4 is not > 4, phi(25) = 20 is
        assert_eq!(mk(6, 7), 2); // phi(7) = 6 is not > 6, phi(49) = 42 is

        // non-constant voltage is rejected
        let g = Digraph::directed_cycle(3);
        let alpha = VoltageAssignment::new(5, 1, vec![vec![1], vec![1], vec![2]]).unwrap();
        assert!(matches!(
            constant_voltage_stabilization_level(&g, &alpha),
            Err(Error::NonConstantVoltage)
        ));

        // voltage divisible by p is rejected
        let alpha = VoltageAssignment::new(5, 1, vec![vec![5]; 3]).unwrap();
        assert!(matches!(
            constant_voltage_stabilization_level(&g, &alpha),
            Err(Error::MalformedSpec(_))
        ));
    }

    #[test]
    fn growing_defect_agrees_with_group_ranks() {
        // the algebraic rank series must match the free rank of the
        // Bowen-Franks groups computed through Smith normal forms
        let (g, alpha) = growing_defect_tower(3);
        let report = defect_series(&g, &alpha, 1, 1).unwrap();
        for n in 0..=1u32 {
            let lg = level_groups(&g, &alpha, n, 1 << 20).unwrap();
            assert_eq!(
                report.levels[n as usize].algebraic,
                lg.bowen_franks.free_rank,
                "level {n}"
            );
        }
    }
}
