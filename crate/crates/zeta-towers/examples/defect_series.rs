//! The defect series of a tower: analytic rank (vanishing order of the
//! zeta reciprocal at u = 1) minus algebraic rank (free rank of the
//! Bowen-Franks group), level by level, decomposed over character
//! orbits. The defect is nonnegative and never decreases.
//!
//! ```bash
//! cargo run -p zeta-towers --example defect_series
//! ```

use zeta_towers::defect::{
    algebraic_rank, analytic_rank, constant_voltage_stabilization_level, defect_series,
};
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    // A 3-vertex base whose Bowen-Franks function vanishes identically:
    // the defect grows like 3^n along the tower.
    let spec = std::fs::read("crates/zeta-towers/fixtures/vanishing_bf_p3.json")
        .or_else(|_| std::fs::read("fixtures/vanishing_bf_p3.json"))?;
    let (base, alpha) = zeta_towers::parse_graph_spec(&spec)?;

    println!(
        "base ranks: analytic {}, algebraic {}",
        analytic_rank(&base)?,
        algebraic_rank(&base)?
    );

    let report = defect_series(&base, &alpha, 2, 2)?;
    println!("\nlevel  analytic  algebraic  defect");
    for l in &report.levels {
        println!(
            "{:>5}  {:>8}  {:>9}  {:>6}",
            l.level, l.analytic, l.algebraic, l.defect
        );
    }
    println!("\nper-orbit contributions:");
    for r in &report.per_orbit {
        println!(
            "  character {:?} at level {} (orbit size {}): a = {}, b = {}",
            r.orbit.representative.exponents(),
            r.orbit.representative.level(),
            r.orbit.orbit_size,
            r.analytic,
            r.algebraic
        );
    }

    // Constant unit voltages in one variable: the defect provably stops
    // moving once phi(p^n) exceeds the number of vertices.
    let cycle = Digraph::directed_cycle(4);
    let constant = VoltageAssignment::new(5, 1, vec![vec![1]; 4])?;
    println!(
        "\n4-cycle with constant voltage over p = 5: defect stabilizes from level {}",
        constant_voltage_stabilization_level(&cycle, &constant)?
    );
    Ok(())
}
