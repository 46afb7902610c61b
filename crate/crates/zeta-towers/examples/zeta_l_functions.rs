//! Zeta functions of levels and their factorization into character
//! L-functions: det(Id - uA_{X_n}) equals the product over Galois
//! orbits of characters of the (rational) orbit L-factors.
//!
//! ```bash
//! cargo run -p zeta-towers --example zeta_l_functions
//! ```

use zeta_towers::cyclo::enumerate_character_orbits;
use zeta_towers::zeta::{artin_factorization, l_function_reciprocal};
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    let base = Digraph::from_adjacency(&[vec![1, 1], vec![2, 0]])?;
    let alpha = VoltageAssignment::new(2, 1, vec![vec![0], vec![1], vec![0], vec![0]])?;

    // Reciprocal zeta of the base: det(Id - uA), lowest degree first.
    let report = artin_factorization(&base, &alpha, 1, 1 << 20)?;
    println!(
        "level 1 zeta reciprocal coefficients: {:?}",
        report
            .zeta_reciprocal
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );
    for f in &report.factors {
        println!(
            "orbit {:?} (size {}): factor {:?}",
            f.orbit.representative.exponents(),
            f.orbit.orbit_size,
            f.factor.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    println!(
        "product of orbit factors equals the level zeta reciprocal: {}",
        report.holds()
    );

    // The individual L-function of a nontrivial character lives over a
    // cyclotomic field; its coefficients are vectors over the power
    // basis 1, zeta, zeta^2, ...
    for orbit in enumerate_character_orbits(2, 1, 1)? {
        let rep = orbit.representative;
        let lrec = l_function_reciprocal(&base, &alpha, &rep)?;
        println!(
            "L-reciprocal at character {:?} of order {}: degree {:?}",
            rep.exponents(),
            rep.order(),
            lrec.degree()
        );
    }
    Ok(())
}
