//! Build the stock shapes and inspect their cells.
//!
//! A shape here is a finite 2-truncated simplicial set: vertices, directed
//! edges, and triangles. Each triangle names two composable edges and the
//! edge their composite must equal, which is what later turns matrix
//! assignments into a composition law.

use qstack::sset::{glue_at_vertices, one_skeleton, square, standard_simplex};

fn describe(label: &str, s: &qstack::SSet2) {
    println!(
        "{label}: {} vertices, {} edges (+{} identity), {} triangles",
        s.vertex_count(),
        s.edge_count(),
        s.identity_edge_count(),
        s.triangle_count()
    );
}

fn main() {
    // The full simplex on n+1 vertices has an edge for every i < j and a
    // triangle for every i < j < k.
    for n in 1..=4 {
        let s = standard_simplex(n).unwrap();
        describe(&format!("simplex n={n}"), &s);
        assert!(s.validate().is_empty());
    }

    // Dropping the triangles leaves a shape with no composition demands.
    let sk = one_skeleton(3).unwrap();
    describe("1-skeleton n=3", &sk);

    // A commuting square: two triangles share the diagonal, so any valid
    // matrix assignment satisfies  w * u = diag = y * v.
    let sq = square();
    describe("square", &sq);
    for t in sq.triangles() {
        println!("  triangle {}: {} then {} equals {}", t.id, t.first, t.second, t.long);
    }

    // Glue two intervals tip to tail and get a wedge. Cell ids must stay
    // distinct outside the identified vertices, so build the second
    // interval with its own names.
    let i1 = one_skeleton(1).unwrap();
    let mut i2 = qstack::SSet2::new();
    i2.add_vertex("p").unwrap();
    i2.add_vertex("q").unwrap();
    i2.add_edge("e", "p", "q").unwrap();
    let glued = glue_at_vertices(&i1, &i2, &[("v1".to_string(), "p".to_string())]).unwrap();
    describe("two intervals glued at a point", &glued);

    println!("\ncanonical JSON of the square:\n{}", sq.to_canonical_json());
}
