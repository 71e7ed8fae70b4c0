//! Count representations over small prime fields and divide by the gauge
//! group order. The quotient is the groupoid (stacky) count: each orbit
//! contributes 1 over the order of its stabilizer, so the total is usually
//! not an integer.

use std::collections::BTreeMap;

use qstack::action::{count_points, gl_order};
use qstack::quiver::FramingFn;
use qstack::sset::{one_skeleton, SSet2};

fn dims(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn main() {
    // |GL_d(F_p)| = prod_{i<d} (p^d - p^i)
    for (p, d) in [(2u64, 1usize), (2, 2), (3, 2), (5, 3)] {
        println!("|GL_{d}(F_{p})| = {}", gl_order(p, d));
    }
    println!();

    // One arrow a -> b, one-dimensional on both sides: p representations,
    // gauge group GL_1 x GL_1 of order (p-1)^2.
    let interval = one_skeleton(1).unwrap();
    let d = dims(&[("v0", 1), ("v1", 1)]);
    let all_regular = FramingFn::all_regular(&interval);
    println!("interval, dims (1,1):");
    for p in [2u64, 3, 5, 7] {
        let r = count_points(&interval, &d, p, &all_regular).unwrap();
        println!(
            "  p={p}: reps {}, gauge order {}, stacky {}",
            r.rep_count, r.gauge_order, r.stacky
        );
    }

    // The Jordan loop at dimension 2: p^4 matrices, gauge GL_2 acting by
    // conjugation. The stacky count over every p equals the number of
    // conjugacy classes of 2x2 matrices weighted by automorphisms.
    let mut jordan = SSet2::new();
    jordan.add_vertex("v").unwrap();
    jordan.add_edge("b", "v", "v").unwrap();
    let d = dims(&[("v", 2)]);
    let all_regular = FramingFn::all_regular(&jordan);
    println!("jordan loop, dim 2:");
    for p in [2u64, 3] {
        let r = count_points(&jordan, &d, p, &all_regular).unwrap();
        println!(
            "  p={p}: reps {}, gauge order {}, stacky {}",
            r.rep_count, r.gauge_order, r.stacky
        );
    }

    // Framing vertices carry no gauge factor: with w framed, only GL(V_v)
    // divides out.
    let mut framed = SSet2::new();
    framed.add_vertex("v").unwrap();
    framed.add_vertex("w").unwrap();
    framed.add_edge("j", "v", "w").unwrap();
    let f = FramingFn::with_framing(&framed, &["w"]).unwrap();
    let d = dims(&[("v", 1), ("w", 2)]);
    println!("framed arrow v -> w, dims (1,2):");
    for p in [2u64, 3, 5] {
        let r = count_points(&framed, &d, p, &f).unwrap();
        println!(
            "  p={p}: reps {}, gauge order {}, stacky {}",
            r.rep_count, r.gauge_order, r.stacky
        );
    }
}
