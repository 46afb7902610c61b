//! Materialize the derived covers of a voltage tower and watch the
//! level graphs grow: level n has |V| * p^(n*d) vertices, and every
//! level is strongly connected as soon as level 1 is.
//!
//! ```bash
//! cargo run -p zeta-towers --example derived_covers
//! ```

use zeta_towers::tower::derived_digraph;

fn main() -> zeta_towers::Result<()> {
    // Undirected triangle: each listed edge appears with its reversal
    // carrying the negated voltage.
    let spec = r#"{
        "p": 2, "d": 1,
        "vertices": ["a", "b", "c"],
        "edges": [
            {"src": "a", "dst": "b", "voltage": [0]},
            {"src": "b", "dst": "c", "voltage": [0]},
            {"src": "c", "dst": "a", "voltage": [1]}
        ],
        "mode": "undirected"
    }"#;
    let (base, alpha) = zeta_towers::parse_graph_spec(spec.as_bytes())?;
    println!(
        "base: {} vertices, {} directed edges (undirected triangle)",
        base.vertex_count(),
        base.edge_count()
    );

    for level in 0..=3 {
        let derived = derived_digraph(&base, &alpha, level, 1 << 20)?;
        println!(
            "level {level}: {:>3} vertices, {:>3} edges, strongly connected: {}",
            derived.vertex_count(),
            derived.edge_count(),
            derived.is_strongly_connected()
        );
    }

    // The derived graph of the triangle tower at level n is the cycle
    // on 3 * 2^n vertices; its edge labels name the fiber coordinates.
    let level1 = derived_digraph(&base, &alpha, 1, 1 << 20)?;
    println!("\nlevel 1 edges:");
    let labels = level1.labels();
    for e in level1.edges() {
        println!("  {} -> {}", labels[e.src], labels[e.dst]);
    }
    Ok(())
}
