//! Build a tower in code and inspect its base graph: connectivity,
//! regularity, and whether the whole tower stays strongly connected.
//!
//! ```bash
//! cargo run -p zeta-towers --example inspect_tower
//! ```

use zeta_towers::tower::tower_strongly_connected;
use zeta_towers::{Digraph, VoltageAssignment};

fn main() -> zeta_towers::Result<()> {
    // Adjacency convention: entry (i, j) counts edges from vertex j to
    // vertex i, so out-degrees are column sums.
    let base = Digraph::from_adjacency(&[vec![0, 2], vec![2, 0]])?;

    // One voltage vector per edge, in edge-id order (edges are listed
    // source by source). Here both v1 -> v2 edges carry voltage 1.
    let alpha = VoltageAssignment::new(3, 1, vec![vec![1], vec![1], vec![0], vec![0]])?;

    let conn = base.connectivity()?;
    println!("base graph: {} vertices, {} edges", base.vertex_count(), base.edge_count());
    println!("strongly connected: {}", conn.strongly_connected);
    println!("weakly connected:   {}", conn.weakly_connected);
    println!("reaches (free rank of Pic): {}", conn.reach_count);
    match base.out_regular_degree() {
        Some(q) => println!("out-regular of degree {q}"),
        None => println!("not out-regular"),
    }

    // Connectivity of every level of the tower is decided at level 1.
    println!(
        "tower over p = {}, d = {} strongly connected: {}",
        alpha.prime(),
        alpha.dim(),
        tower_strongly_connected(&base, &alpha)?
    );

    // The same tower can be read from a JSON file; the two routes agree.
    let json = zeta_towers::serialize_graph_spec(&base, &alpha)?;
    let (base2, alpha2) = zeta_towers::parse_graph_spec(json.as_bytes())?;
    assert_eq!(base, base2);
    assert_eq!(alpha.values(), alpha2.values());
    println!("\ncanonical JSON form:\n{json}");
    Ok(())
}
