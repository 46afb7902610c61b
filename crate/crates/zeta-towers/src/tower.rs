//! Voltage assignments and the derived graphs they generate.
//!
//! A voltage assignment sends each edge of a base graph to an element of
//! Z^d. Reducing modulo p^n gives a finite abelian voltage group
//! (Z/p^n)^d, and the derived graph at level n has vertex set
//! V x (Z/p^n)^d with an edge (u, s) -> (v, s + voltage(e)) for each base
//! edge e: u -> v. Levels 0, 1, 2, ... form the tower of the pair.

use num_bigint::BigInt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolyZ;

/// An assignment of a Z^d voltage to every edge of a base graph, together
/// with the prime p whose powers cut out the tower levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment {
    prime: u64,
    dim: usize,
    values: Vec<Vec<i64>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

impl VoltageAssignment {
    pub fn new(prime: u64, dim: usize, values: Vec<Vec<i64>>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if dim == 0 {
            return Err(Error::MalformedSpec("voltage dimension must be positive".into()));
        }
        for v in &values {
            if v.len() != dim {
                return Err(Error::VoltageArity {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        Ok(VoltageAssignment {
            prime,
            dim,
            values,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    /// Voltage of one edge reduced into (Z/p^n)^d.
    pub fn reduced(&self, edge: usize, level: u32) -> Vec<u64> {
        let modulus = self.prime.pow(level) as i64;
        self.values[edge]
            .iter()
            .map(|&x| x.rem_euclid(modulus) as u64)
            .collect()
    }

    /// All voltages constant? Returns the common value.
    pub fn constant_value(&self) -> Result<Vec<i64>> {
        let first = self
            .values
            .first()
            .ok_or(Error::NonConstantVoltage)?
            .clone();
        if self.values.iter().all(|v| *v == first) {
            Ok(first)
        } else {
            Err(Error::NonConstantVoltage)
        }
    }
}

/// Order of (Z/p^n)^d as a u128 so deep levels cannot overflow before
/// the budget check rejects them.
pub fn group_order(prime: u64, dim: usize, level: u32) -> u128 {
    (prime as u128).pow(level * dim as u32)
}

/// Mixed-radix rank of a group element, first coordinate least
/// significant: rank(g) = g[0] + g[1] p^n + g[2] p^{2n} + ...
pub fn element_rank(prime: u64, level: u32, g: &[u64]) -> u64 {
    let base = prime.pow(level);
    let mut acc = 0u64;
    for &x in g.iter().rev() {
        debug_assert!(x < base);
        acc = acc * base + x;
    }
    acc
}

pub fn element_unrank(prime: u64, dim: usize, level: u32, mut rank: u64) -> Vec<u64> {
    let base = prime.pow(level);
    let mut g = Vec::with_capacity(dim);
    for _ in 0..dim {
        g.push(rank % base);
        rank /= base;
    }
    g
}

/// The derived graph at the given tower level. Level 0 is the base graph
/// itself (with relabeled vertices for uniform output).
///
/// Vertex (v, g) gets index v * |group| + rank(g), so the base vertex is
/// the major key and all copies of it are contiguous.
pub fn derived_digraph(
    base: &Digraph,
    alpha: &VoltageAssignment,
    level: u32,
    budget: u64,
) -> Result<Digraph> {
    if alpha.edge_count() != base.edge_count() {
        return Err(Error::VoltageLength {
            expected: base.edge_count(),
            got: alpha.edge_count(),
        });
    }
    let order = group_order(alpha.prime(), alpha.dim(), level);
    let vertices = order.saturating_mul(base.vertex_count() as u128);
    if vertices > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: vertices.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let order = order as u64;
    let modulus = alpha.prime().pow(level);

    let mut labels = Vec::with_capacity((base.vertex_count() as u64 * order) as usize);
    for lbl in base.labels() {
        for s in 0..order {
            let g = element_unrank(alpha.prime(), alpha.dim(), level, s);
            let coords: Vec<String> = g.iter().map(u64::to_string).collect();
            labels.push(format!("{lbl}@({})", coords.join(",")));
        }
    }

    let mut arcs = Vec::with_capacity((base.edge_count() as u64 * order) as usize);
    for s in 0..order {
        let g = element_unrank(alpha.prime(), alpha.dim(), level, s);
        for e in base.edges() {
            let shifted: Vec<u64> = g
                .iter()
                .zip(alpha.values()[e.id].iter())
                .map(|(&a, &b)| {
                    ((a as i64 + b).rem_euclid(modulus as i64)) as u64
                })
                .collect();
            let src = e.src as u64 * order + s;
            let dst = e.dst as u64 * order + element_rank(alpha.prime(), level, &shifted);
            arcs.push((src as usize, dst as usize));
        }
    }
    Digraph::new(labels, &arcs)
}

/// Whether every level of the tower is strongly connected. The voltage
/// group is a p-group, so strong connectivity at level 1 already forces
/// it at every level: a quotient of a disconnected level is disconnected,
/// and conversely the level-n group is an iterated extension of the
/// level-1 group by Frattini-trivial steps.
pub fn tower_strongly_connected(base: &Digraph, alpha: &VoltageAssignment) -> Result<bool> {
    if !base.is_strongly_connected() {
        return Ok(false);
    }
    let level1 = derived_digraph(base, alpha, 1, u64::MAX)?;
    Ok(level1.is_strongly_connected())
}

/// The voltage-decorated adjacency matrix: entry (i, j) is the sum of
/// monomials T^{voltage(e)} over edges e: v_j -> v_i. Specializing the
/// variables at roots of unity recovers every level's adjacency data.
pub fn symbolic_adjacency(
    base: &Digraph,
    alpha: &VoltageAssignment,
) -> Result<Vec<Vec<LaurentPolyZ>>> {
    if alpha.edge_count() != base.edge_count() {
        return Err(Error::VoltageLength {
            expected: base.edge_count(),
            got: alpha.edge_count(),
        });
    }
    let n = base.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = alpha.dim();
    let mut m = vec![vec![LaurentPolyZ::zero(d); n]; n];
    for e in base.edges() {
        let mono = LaurentPolyZ::monomial(d, &alpha.values()[e.id], BigInt::from(1));
        m[e.dst][e.src] = m[e.dst][e.src].add(&mono);
    }
    Ok(m)
}

/// D - A_alpha: the symbolic Laplacian whose determinant is the p-adic
/// interpolation of the tower's tree counts.
pub fn symbolic_laplacian(
    base: &Digraph,
    alpha: &VoltageAssignment,
) -> Result<Vec<Vec<LaurentPolyZ>>> {
    let mut m = symbolic_adjacency(base, alpha)?;
    let d = alpha.dim();
    for row in m.iter_mut() {
        for entry in row.iter_mut() {
            *entry = entry.neg();
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        let deg = base.out_degree(i) as i64;
        row[i] = row[i].add(&LaurentPolyZ::constant(d, deg));
    }
    Ok(m)
}

/// Id - A_alpha: the symbolic Bowen-Franks matrix.
pub fn symbolic_id_minus_adjacency(
    base: &Digraph,
    alpha: &VoltageAssignment,
) -> Result<Vec<Vec<LaurentPolyZ>>> {
    let mut m = symbolic_adjacency(base, alpha)?;
    let d = alpha.dim();
    for row in m.iter_mut() {
        for entry in row.iter_mut() {
            *entry = entry.neg();
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].add(&LaurentPolyZ::one(d));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn two_loop_graph() -> (Digraph, VoltageAssignment) {
        // one vertex, two loops with voltages 0 and 1
        let g = Digraph::new(vec!["a".into()], &[(0, 0), (0, 0)]).unwrap();
        let v = VoltageAssignment::new(2, 1, vec![vec![0], vec![1]]).unwrap();
        (g, v)
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(VoltageAssignment::new(6, 1, vec![]).is_err());
    }

    #[test]
    fn rank_unrank_round_trip() {
        for rank in 0..27u64 {
            let g = element_unrank(3, 3, 1, rank);
            assert_eq!(element_rank(3, 1, &g), rank);
        }
        for rank in 0..81u64 {
            let g = element_unrank(3, 1, 4, rank);
            assert_eq!(element_rank(3, 4, &g), rank);
        }
    }

    #[test]
    fn derived_level_zero_is_base_shape() {
        let (g, v) = two_loop_graph();
        let d0 = derived_digraph(&g, &v, 0, 1000).unwrap();
        assert_eq!(d0.vertex_count(), 1);
        assert_eq!(d0.edge_count(), 2);
    }

    #[test]
    fn derived_two_loops_gives_cycle_with_loops() {
        // loops with voltages 0 and 1 over Z/2: each sheet keeps one loop
        // and sends one edge to the other sheet
        let (g, v) = two_loop_graph();
        let d1 = derived_digraph(&g, &v, 1, 1000).unwrap();
        assert_eq!(d1.vertex_count(), 2);
        assert_eq!(d1.edge_count(), 4);
        let a = d1.adjacency_matrix().unwrap();
        // each sheet: one loop (voltage 0) and one crossing edge (voltage 1)
        assert_eq!(*a.at(0, 0), BigInt::from(1));
        assert_eq!(*a.at(1, 0), BigInt::from(1));
        assert_eq!(*a.at(0, 1), BigInt::from(1));
        assert_eq!(*a.at(1, 1), BigInt::from(1));
        assert!(d1.is_strongly_connected());
    }

    #[test]
    fn derived_counts_scale_with_group_order() {
        let g = Digraph::from_adjacency(&[vec![2, 2, 0], vec![1, 1, 1], vec![1, 2, 1]]).unwrap();
        let volts: Vec<Vec<i64>> = (0..g.edge_count()).map(|_| vec![1]).collect();
        let v = VoltageAssignment::new(3, 1, volts).unwrap();
        for n in 0..3u32 {
            let order = 3u64.pow(n);
            let dn = derived_digraph(&g, &v, n, 10_000).unwrap();
            assert_eq!(dn.vertex_count() as u64, 3 * order);
            assert_eq!(dn.edge_count() as u64, 11 * order);
            // out-degree is preserved fiberwise
            for s in 0..order as usize {
                assert_eq!(dn.out_degree(s), g.out_degree(0));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let (g, v) = two_loop_graph();
        let err = derived_digraph(&g, &v, 10, 600).unwrap_err();
        match err {
            Error::BudgetExceeded { needed, budget } => {
                assert_eq!(needed, 1024);
                assert_eq!(budget, 600);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn connectivity_decision_matches_deep_levels() {
        // cycle of length 3 with total voltage 1 over p = 2: connected tower
        let g = Digraph::directed_cycle(3);
        let v = VoltageAssignment::new(2, 1, vec![vec![1], vec![0], vec![0]]).unwrap();
        assert!(tower_strongly_connected(&g, &v).unwrap());
        for n in 1..=3u32 {
            assert!(derived_digraph(&g, &v, n, 10_000).unwrap().is_strongly_connected());
        }

        // total voltage 3 over p = 3: voltage sums to 0 mod 3, tower splits
        let w = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![1]]).unwrap();
        assert!(!tower_strongly_connected(&g, &w).unwrap());
        for n in 1..=2u32 {
            assert!(!derived_digraph(&g, &w, n, 10_000).unwrap().is_strongly_connected());
        }
    }

    #[test]
    fn symbolic_adjacency_specializes_to_level_zero() {
        let g = Digraph::from_adjacency(&[vec![2, 2, 0], vec![1, 1, 1], vec![1, 2, 1]]).unwrap();
        let volts: Vec<Vec<i64>> = (0..g.edge_count()).map(|_| vec![1]).collect();
        let v = VoltageAssignment::new(3, 1, volts).unwrap();
        let sym = symbolic_adjacency(&g, &v).unwrap();
        let a = g.adjacency_matrix().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sym[i][j].eval_ones(), *a.at(i, j));
            }
        }
        // all edges carry voltage 1, so every entry is a multiple of T
        assert_eq!(sym[0][0].coeff(&[1]), BigInt::from(2));
        assert!(sym[0][0].coeff(&[0]).is_zero());
    }

    #[test]
    fn symbolic_laplacian_vanishes_at_ones() {
        // columns of D - A sum to zero, and at T = 1 the symbolic matrix
        // must agree with the level-zero Laplacian
        let g = Digraph::from_adjacency(&[vec![1, 0, 1], vec![1, 2, 0], vec![1, 1, 2]]).unwrap();
        let volts: Vec<Vec<i64>> = (0..g.edge_count())
            .map(|i| vec![i as i64 % 2])
            .collect();
        let v = VoltageAssignment::new(2, 1, volts).unwrap();
        let sym = symbolic_laplacian(&g, &v).unwrap();
        let l = g.laplacian().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sym[i][j].eval_ones(), *l.at(i, j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn dimension_two_group_enumeration() {
        let g = Digraph::new(vec!["a".into()], &[(0, 0), (0, 0)]).unwrap();
        let v = VoltageAssignment::new(2, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let d1 = derived_digraph(&g, &v, 1, 1000).unwrap();
        assert_eq!(d1.vertex_count(), 4);
        assert_eq!(d1.edge_count(), 8);
        assert!(d1.is_strongly_connected());
    }
}
