//! Characteristic-ideal components at an auxiliary prime l: each
//! Frobenius orbit of characters contributes an ideal (l^t), and the
//! orbit contributions add up exactly to the observed jump of
//! ord_l |Pic(X_n)_tor| between levels.
//!
//! ```bash
//! cargo run -p zeta-towers --example char_ideals
//! ```

use zeta_towers::cyclo::enumerate_frobenius_orbits;
use zeta_towers::groups::{level_groups, GroupKind};
use zeta_towers::iwasawa::{orbit_char_ideal, CharIdealComponent};
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    let base = Digraph::from_adjacency(&[vec![0, 2], vec![2, 0]])?;
    let alpha = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![0], vec![0]])?;
    let l = 2u64;
    let n = 2u32;

    // Sum f * t over Frobenius orbits of exact level 1..=n.
    let mut sum = 0u64;
    for orbit in enumerate_frobenius_orbits(alpha.prime(), alpha.dim(), n, l)? {
        if orbit.representative.level() == 0 {
            continue;
        }
        let f = orbit.local_degree();
        match orbit_char_ideal(&base, &alpha, l, &orbit, GroupKind::Picard)? {
            CharIdealComponent::Power(t) => {
                println!(
                    "orbit {:?} at level {}: residue degree {}, ideal (2^{})",
                    orbit.representative.exponents(),
                    orbit.representative.level(),
                    f,
                    t
                );
                sum += f * t;
            }
            CharIdealComponent::NonTorsion => {
                println!(
                    "orbit {:?}: interpolating function vanishes (non-torsion component)",
                    orbit.representative.exponents()
                );
            }
        }
    }

    let ord = |level: u32| -> zeta_towers::Result<u64> {
        Ok(level_groups(&base, &alpha, level, 1 << 20)?
            .picard
            .torsion_order_valuation(l)?)
    };
    let jump = ord(n)? - ord(0)?;
    println!("\nsum of f * t over orbits:      {sum}");
    println!("ord_2 |Pic(X_{n})_tor| - ord_2 |Pic(X_0)_tor| = {jump}");
    assert_eq!(sum, jump);
    println!("the orbit ideals account for the torsion growth exactly");
    Ok(())
}
