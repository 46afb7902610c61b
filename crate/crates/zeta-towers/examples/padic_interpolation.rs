//! The two interpolating determinants of a tower and the identities
//! that tie them to every level: det(D - A_alpha) and det(Id - A_alpha)
//! are single Laurent polynomials whose character values recover the
//! L-data of all levels at once.
//!
//! ```bash
//! cargo run -p zeta-towers --example padic_interpolation
//! ```

use zeta_towers::cyclo::{char_eval, enumerate_character_orbits};
use zeta_towers::iwasawa::{interpolation_check, p_adic_bf, p_adic_zeta};
use zeta_towers::zeta::l_function_reciprocal;
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    let base = Digraph::from_adjacency(&[vec![0, 2], vec![2, 0]])?;
    let alpha = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![0], vec![0]])?;

    let zeta = p_adic_zeta(&base, &alpha)?;
    let bf = p_adic_bf(&base, &alpha)?;
    println!("det(D - A_alpha)  = {zeta:?}");
    println!("det(Id - A_alpha) = {bf:?}");

    // At every character the Bowen-Franks function evaluates to the
    // L-reciprocal at u = 1; for out-regular bases the Picard function
    // evaluates to q^r * L-reciprocal(1/q).
    for orbit in enumerate_character_orbits(alpha.prime(), alpha.dim(), 1)? {
        let rep = &orbit.representative;
        let l_at_one = l_function_reciprocal(&base, &alpha, rep)?.eval_one()?;
        let bf_value = char_eval(&bf, rep)?;
        println!(
            "character {:?}: omega(det(Id - A_alpha)) = L-rec(1) is {} [{:?}]",
            rep.exponents(),
            bf_value == l_at_one,
            bf_value.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        );
        println!(
            "  both interpolation identities hold: {}",
            interpolation_check(&base, &alpha, rep)?
        );
    }
    Ok(())
}
