//! A tuple of endomorphisms is integrable exactly when its diagram
//! representation validates.
//!
//! The diagram stacks the fields into one map, tensors it up two levels,
//! and wedges out the symmetric part; the top-level triangle then holds
//! iff every pairwise commutator [phi_t, phi_s] vanishes. The failing
//! witness is always that one triangle, so the check also localizes the
//! defect.

use qstack::higgs::{
    diagram_commutator_block, higgs_morphism_check, higgs_to_diagram, integrability_check,
    morphism_to_square, HiggsDatum,
};
use qstack::matrix::Matrix;
use qstack::rep::validate_rep;
use qstack::scalar::Ring;

fn main() {
    let ring = Ring::Rational;

    // Two commuting diagonal fields.
    let commuting = HiggsDatum::new(
        2,
        vec![
            Matrix::from_i64(ring, &[&[1, 0], &[0, 2]]),
            Matrix::from_i64(ring, &[&[3, 0], &[0, 5]]),
        ],
    )
    .unwrap();
    let rep = higgs_to_diagram(&commuting).unwrap();
    println!(
        "commuting pair: integrable={}, diagram defects={:?}",
        integrability_check(&commuting, 0.0).unwrap(),
        validate_rep(&rep, 0.0)
    );
    for v in ["a", "b", "c", "d"] {
        print!("dim {v} = {}  ", rep.dim_of(v).unwrap());
    }
    println!();

    // A nilpotent pair with [phi_0, phi_1] = diag(1, -1) != 0.
    let crossed = HiggsDatum::new(
        2,
        vec![
            Matrix::from_i64(ring, &[&[0, 1], &[0, 0]]),
            Matrix::from_i64(ring, &[&[0, 0], &[1, 0]]),
        ],
    )
    .unwrap();
    let rep = higgs_to_diagram(&crossed).unwrap();
    let defects = validate_rep(&rep, 0.0);
    println!(
        "\nnilpotent pair: integrable={}, diagram defects={:?}",
        integrability_check(&crossed, 0.0).unwrap(),
        defects
    );
    // The defect block of e_ad is literally the commutator.
    let block = diagram_commutator_block(&rep, 0, 1, 2, 2);
    println!("e_ad block (0,1) = [phi_0, phi_1]:");
    for i in 0..2 {
        let row: Vec<String> = (0..2).map(|j| block.get(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }

    // Morphisms of tuples are intertwiners, and a candidate map becomes a
    // representation of the commuting square that validates iff it
    // intertwines.
    let scaled = HiggsDatum::new(
        2,
        vec![
            Matrix::from_i64(ring, &[&[1, 0], &[0, 2]]),
            Matrix::from_i64(ring, &[&[3, 0], &[0, 5]]),
        ],
    )
    .unwrap();
    let good = Matrix::from_i64(ring, &[&[4, 0], &[0, 9]]);
    let skew = Matrix::from_i64(ring, &[&[0, 1], &[1, 0]]);
    for (label, map) in [("diagonal", &good), ("skew", &skew)] {
        let ok = higgs_morphism_check(&commuting, &scaled, map, 0.0).unwrap();
        let square = morphism_to_square(&commuting, &scaled, map).unwrap();
        let defects = validate_rep(&square, 0.0);
        println!(
            "\n{label} map: intertwines={ok}, square defects={defects:?}"
        );
    }

    // JSON round trip for the on-disk format.
    let text = qstack::json::to_canonical_string(&commuting.to_json_value());
    let back = HiggsDatum::from_json_value(&qstack::json::parse(&text).unwrap()).unwrap();
    assert_eq!(back.fields(), commuting.fields());
    println!("\ncanonical JSON round trip holds:\n{text}");
}
