//! Picard (sandpile) and Bowen-Franks groups of digraphs and of the
//! levels of a voltage tower.
//!
//! Both groups are cokernels of integer matrices built from the
//! adjacency operator: coker(D - A) for the Picard group and
//! coker(Id - A) for the Bowen-Franks group. The descent check
//! [`control_descent`] re-derives a level's group from any higher level
//! by adding the translation relations of the intermediate covering
//! group, which must give the same Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cyclo::local::int_valuation;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::tower::{derived_digraph, element_rank, element_unrank, group_order, VoltageAssignment};

/// A finitely generated abelian group in invariant-factor form:
/// Z^free_rank x Z/t_1 x ... x Z/t_k with t_1 | t_2 | ... | t_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroupPresentation {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

impl AbGroupPresentation {
    /// Cokernel of an integer matrix acting on column vectors.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        AbGroupPresentation {
            free_rank: snf.cokernel_rank,
            torsion_factors: snf.torsion_factors(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * f.abs())
    }

    /// l-adic valuation of the torsion order.
    pub fn torsion_order_valuation(&self, l: u64) -> Result<u64> {
        int_valuation(&self.torsion_order(), l)
    }
}

impl fmt::Display for AbGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion_factors {
            parts.push(format!("Z/{}", t.abs()));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Which cokernel to take: the Picard group coker(D - A) or the
/// Bowen-Franks group coker(Id - A).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Picard,
    BowenFranks,
}

impl GroupKind {
    pub fn presentation_matrix(self, g: &Digraph) -> Result<IntMatrix> {
        match self {
            GroupKind::Picard => g.laplacian(),
            GroupKind::BowenFranks => g.id_minus_adjacency(),
        }
    }
}

/// coker(D - A): degree matrix minus adjacency. Free rank equals the
/// number of reaches; for a strongly connected graph it is Z plus the
/// torsion sandpile group.
pub fn picard_group(g: &Digraph) -> Result<AbGroupPresentation> {
    Ok(AbGroupPresentation::from_matrix(&g.laplacian()?))
}

/// coker(Id - A): the Bowen-Franks group of the edge shift.
pub fn bowen_franks_group(g: &Digraph) -> Result<AbGroupPresentation> {
    Ok(AbGroupPresentation::from_matrix(&g.id_minus_adjacency()?))
}

/// Both groups at one level of a voltage tower.
#[derive(Debug, Clone)]
pub struct LevelGroups {
    pub level: u32,
    pub vertex_count: usize,
    pub picard: AbGroupPresentation,
    pub bowen_franks: AbGroupPresentation,
}

pub fn level_groups(
    base: &Digraph,
    alpha: &VoltageAssignment,
    level: u32,
    budget: u64,
) -> Result<LevelGroups> {
    let derived = derived_digraph(base, alpha, level, budget)?;
    Ok(LevelGroups {
        level,
        vertex_count: derived.vertex_count(),
        picard: picard_group(&derived)?,
        bowen_franks: bowen_franks_group(&derived)?,
    })
}

/// Groups for levels 0..=max_level.
pub fn level_groups_up_to(
    base: &Digraph,
    alpha: &VoltageAssignment,
    max_level: u32,
    budget: u64,
) -> Result<Vec<LevelGroups>> {
    (0..=max_level)
        .map(|n| level_groups(base, alpha, n, budget))
        .collect()
}

/// The two routes to a level's group compared: directly from the
/// level-n derived graph, and by descending from a higher level m by
/// quotienting out the translation action of p^n * (Z/p^m)^d.
#[derive(Debug, Clone)]
pub struct ControlReport {
    pub kind: GroupKind,
    pub level: u32,
    pub from_level: u32,
    pub direct: AbGroupPresentation,
    pub descended: AbGroupPresentation,
}

impl ControlReport {
    pub fn holds(&self) -> bool {
        self.direct == self.descended
    }
}

/// Re-derive the level-n group from the level-m presentation (m >= n)
/// by appending one relation column per level-m vertex and translation
/// generator: translating the group coordinate by p^n in each direction
/// must act trivially after descent.
pub fn control_descent(
    base: &Digraph,
    alpha: &VoltageAssignment,
    kind: GroupKind,
    level: u32,
    from_level: u32,
    budget: u64,
) -> Result<ControlReport> {
    if from_level < level {
        return Err(Error::LevelMismatch(format!(
            "cannot descend from level {from_level} down to level {level}"
        )));
    }
    let target = derived_digraph(base, alpha, level, budget)?;
    let direct = AbGroupPresentation::from_matrix(&kind.presentation_matrix(&target)?);

    let high = derived_digraph(base, alpha, from_level, budget)?;
    let presentation = kind.presentation_matrix(&high)?;

    let p = alpha.prime();
    let d = alpha.dim();
    let order = group_order(p, d, from_level) as u64;
    let step = p.pow(level); // translation by p^level generates the kernel of descent
    let modulus = p.pow(from_level);

    let rows = high.vertex_count();
    let relation_cols = rows * d;
    let mut augmented = IntMatrix::zero(rows, presentation.cols() + relation_cols);
    for i in 0..rows {
        for j in 0..presentation.cols() {
            augmented.set(i, j, presentation.at(i, j).clone());
        }
    }
    let mut col = presentation.cols();
    for v in 0..base.vertex_count() {
        for s in 0..order {
            let sigma = element_unrank(p, d, from_level, s);
            for dir in 0..d {
                let mut shifted = sigma.clone();
                shifted[dir] = (shifted[dir] + step) % modulus;
                let from = v * order as usize + s as usize;
                let to = v * order as usize + element_rank(p, from_level, &shifted) as usize;
                if from != to {
                    *augmented.at_mut(to, col) += BigInt::one();
                    *augmented.at_mut(from, col) -= BigInt::one();
                }
                col += 1;
            }
        }
    }
    let descended = AbGroupPresentation::from_matrix(&augmented);

    Ok(ControlReport {
        kind,
        level,
        from_level,
        direct,
        descended,
    })
}
