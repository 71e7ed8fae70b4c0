//! Decompose a small representation set into gauge orbits and verify the
//! orbit-stabilizer bookkeeping by hand.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use qstack::action::orbit_census;
use qstack::quiver::FramingFn;
use qstack::sset::{one_skeleton, SSet2};

fn main() {
    // Interval over F_3, dims (1,1). The 3 reps split into the zero map
    // and the two nonzero maps, which the gauge torus identifies.
    let interval = one_skeleton(1).unwrap();
    let dims: BTreeMap<String, usize> =
        [("v0".to_string(), 1), ("v1".to_string(), 1)].into_iter().collect();
    let census = orbit_census(&interval, &dims, 3, &FramingFn::all_regular(&interval)).unwrap();
    println!(
        "interval / F_3: {} reps, group order {}",
        census.rep_count, census.group_order
    );
    let mut total = 0u64;
    let mut stacky = BigRational::from(BigInt::from(0));
    for (i, o) in census.orbits.iter().enumerate() {
        println!(
            "  orbit {i}: size {}, stabilizer order {}",
            o.size, o.stabilizer_order
        );
        assert_eq!(o.size * o.stabilizer_order, census.group_order);
        total += o.size;
        stacky += BigRational::new(BigInt::from(1), BigInt::from(o.stabilizer_order));
    }
    assert_eq!(total, census.rep_count);
    assert_eq!(stacky, census.stacky);
    println!("  orbit sizes partition the rep set; stacky sum {}", census.stacky);

    // Jordan loop over F_2 at dimension 2: conjugacy classes of 2x2
    // matrices over F_2. There are 8 classes; the stacky count is
    // p^4 / |GL_2| = 16/6 = 8/3.
    let mut jordan = SSet2::new();
    jordan.add_vertex("v").unwrap();
    jordan.add_edge("b", "v", "v").unwrap();
    let dims: BTreeMap<String, usize> = [("v".to_string(), 2)].into_iter().collect();
    let census = orbit_census(&jordan, &dims, 2, &FramingFn::all_regular(&jordan)).unwrap();
    println!(
        "\njordan dim 2 / F_2: {} matrices, {} conjugacy classes, stacky {}",
        census.rep_count,
        census.orbits.len(),
        census.stacky
    );
    for o in &census.orbits {
        println!("  class of size {}, centralizer order {}", o.size, o.stabilizer_order);
    }
}
