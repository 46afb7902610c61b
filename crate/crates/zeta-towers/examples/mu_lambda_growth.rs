//! Iwasawa-style invariants of the interpolating functions and the
//! growth law they predict: mu_l controls the leading term of
//! ord_l |Pic(X_n)_tor| along the tower, and for d = 1 the pair
//! (mu_p, lambda_p) comes from the substitution T = 1 + S.
//!
//! ```bash
//! cargo run -p zeta-towers --example mu_lambda_growth
//! ```

use zeta_towers::groups::GroupKind;
use zeta_towers::iwasawa::{growth_experiment, iwasawa_mu_lambda_d1, mu_l, p_adic_zeta};
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    let base = Digraph::from_adjacency(&[vec![0, 2], vec![2, 0]])?;
    let alpha = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![0], vec![0]])?;

    let zeta = p_adic_zeta(&base, &alpha)?;
    println!("det(D - A_alpha) = 4 - 4T");
    for l in [2u64, 5, 7] {
        println!("  mu_{l} = {}", mu_l(&zeta, l)?);
    }

    // d = 1: substitute T = 1 + S and read mu (minimum p-valuation of
    // the coefficients) and lambda (first position attaining it).
    let inv = iwasawa_mu_lambda_d1(&zeta, 2)?;
    println!("at p = 2: mu = {}, lambda = {}", inv.mu, inv.lambda);

    // The observed 2-adic torsion of Pic(X_n) against the leading-term
    // prediction p^n * mu_2: the residual stays bounded.
    let table = growth_experiment(&base, &alpha, 2, 3, GroupKind::Picard, 1 << 20, 2)?;
    println!("\nord_2 |Pic(X_n)_tor| along the 3-tower (mu_2 = {}):", table.mu);
    println!("level  observed  predicted  residual");
    for row in &table.rows {
        println!(
            "{:>5}  {:>8}  {:>9}  {:>8}",
            row.level, row.observed, row.predicted, row.residual
        );
    }
    println!("max scaled residual: {}", table.max_scaled_residual());
    Ok(())
}
