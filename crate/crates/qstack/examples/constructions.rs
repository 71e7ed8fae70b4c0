//! Derive new quivers from old: framing, doubling, and the gauge extension.

use std::collections::BTreeMap;

use qstack::dsl::{print_doc, QuiverDoc};
use qstack::quiver::{double, frame, tilde, FramingFn};
use qstack::sset::SSet2;

fn main() {
    // Start from the Jordan quiver: one vertex, one loop.
    let mut shape = SSet2::new();
    shape.add_vertex("v").unwrap();
    shape.add_edge("b", "v", "v").unwrap();

    // Framing attaches a fresh vertex fr_v and an edge f_v : v -> fr_v.
    let (framed, framing) = frame(&shape).unwrap();
    let dims: BTreeMap<String, usize> =
        [("v".to_string(), 2), ("fr_v".to_string(), 1)].into_iter().collect();
    let doc = QuiverDoc::new("framed_jordan", framed.clone(), framing.clone(), dims).unwrap();
    println!("--- framed ---\n{}", print_doc(&doc));

    // Doubling adds a reversed edge e* for every edge. Framing data carries
    // over unchanged because doubling does not touch vertices.
    let doubled = double(&framed).unwrap();
    println!(
        "--- doubled ---\nedges: {}",
        doubled
            .shape
            .edges()
            .iter()
            .map(|e| format!("{}: {} -> {}", e.id, e.src, e.tgt))
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("reverse of b is {}", doubled.reverse_of("b").unwrap());

    // The gauge extension duplicates each regular vertex v to v', joins the
    // copies with a mutually inverse pair g_v, g_v_inv (witnessed by
    // triangles against marked identity loops), and records the composite
    // of every regular edge with the gauge edge at its target. Framing
    // vertices are shared between the two layers.
    let tq = tilde(&framed, &framing).unwrap();
    println!("--- gauge extension ---");
    println!(
        "vertices: {:?}",
        tq.shape.vertices()
    );
    println!(
        "gauge pair at v: {:?}",
        tq.gauge_edge("v").unwrap()
    );
    println!("composite recorded for loop b: {}", tq.composite_edge("b").unwrap());
    println!(
        "edges kept framing-side only: {:?}",
        tq.framing_only_edges()
    );
    for t in tq.shape.triangles() {
        println!("  {}: {} . {} => {}", t.id, t.first, t.second, t.long);
    }

    let all = FramingFn::with_framing(&tq.shape, &["fr_v"]).unwrap();
    let tilde_dims: BTreeMap<String, usize> = [
        ("v".to_string(), 2),
        ("v'".to_string(), 2),
        ("fr_v".to_string(), 1),
    ]
    .into_iter()
    .collect();
    let tilde_doc =
        QuiverDoc::new("framed_jordan_tilde", tq.shape.clone(), all, tilde_dims).unwrap();
    println!("--- gauge extension as a document ---\n{}", print_doc(&tilde_doc));
}
