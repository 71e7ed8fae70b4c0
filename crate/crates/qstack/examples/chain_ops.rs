//! Representations of the full simplex restrict, degenerate, and reindex
//! along monotone maps, and the assignments compose functorially.

use std::collections::BTreeMap;

use qstack::matrix::Matrix;
use qstack::rep::{
    check_chain_coherence, degenerate_along, reindex_along, restrict_along, validate_rep, Rep,
};
use qstack::scalar::Ring;
use qstack::sset::standard_simplex;

fn main() {
    let ring = Ring::prime_field(7).unwrap();
    let shape = standard_simplex(3).unwrap();
    let dims: BTreeMap<String, usize> = (0..=3).map(|i| (format!("v{i}"), 2)).collect();

    // Fill the consecutive edges, then force every long edge to be the
    // product of the steps it spans. That makes all 4 triangles hold.
    let mut r = Rep::zero(&shape, ring, &dims).unwrap();
    let steps = [
        Matrix::from_i64(ring, &[&[1, 2], &[3, 4]]),
        Matrix::from_i64(ring, &[&[0, 1], &[1, 1]]),
        Matrix::from_i64(ring, &[&[2, 0], &[0, 5]]),
    ];
    for (i, m) in steps.iter().enumerate() {
        r.set_mat(&format!("e{}_{}", i, i + 1), m.clone()).unwrap();
    }
    for i in 0..=3 {
        for j in (i + 2)..=3 {
            let mut acc = Matrix::identity(ring, 2);
            for (k, m) in steps.iter().enumerate() {
                if k >= i && k < j {
                    acc = m.mul(&acc).unwrap();
                }
            }
            r.set_mat(&format!("e{i}_{j}"), acc).unwrap();
        }
    }
    assert!(validate_rep(&r, 0.0).is_empty());
    println!("rep on the 3-simplex validates");

    // Restriction along a strictly monotone inclusion picks out a face.
    let face = restrict_along(&[0, 2, 3], &r).unwrap();
    assert_eq!(face.mat("e0_1").unwrap(), r.mat("e0_2").unwrap());
    println!("face (0,2,3): its first edge is the old e0_2");

    // Degeneracy along a surjection inserts identity edges.
    let stretched = degenerate_along(&[0, 1, 1, 2, 3], &r).unwrap();
    assert!(stretched.mat("e1_2").unwrap().is_identity());
    assert!(validate_rep(&stretched, 0.0).is_empty());
    println!("collapsing map stretches to a 4-simplex rep with an identity edge");

    // The two compose: restricting the stretched rep along a section of
    // the surjection gives back exactly the reindexing along the
    // composite map.
    let iota = [0usize, 2, 3, 4];
    let sigma = [0usize, 1, 1, 2, 3];
    let restricted = restrict_along(&iota, &stretched).unwrap();
    let composite: Vec<usize> = iota.iter().map(|&i| sigma[i]).collect();
    let direct = reindex_along(&composite, &r).unwrap();
    assert_eq!(restricted, direct);
    println!("functor law: restrict(degenerate) equals reindex along the composite");

    // Coherence: every sub-chain route agrees with the direct edge, and
    // the verdict matches the triangle-by-triangle check.
    assert!(check_chain_coherence(&r, 0.0).unwrap());
    let mut broken = r.clone();
    let bumped = broken
        .mat("e0_3")
        .unwrap()
        .add(&Matrix::from_i64(ring, &[&[1, 0], &[0, 0]]))
        .unwrap();
    broken.set_mat("e0_3", bumped).unwrap();
    assert!(!check_chain_coherence(&broken, 0.0).unwrap());
    println!("coherence check accepts the good rep and flags the perturbed one");
}
