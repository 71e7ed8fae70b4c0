//! Walk every representation of a small shape over a prime field.
//!
//! Enumeration is lexicographic in the free matrix entries and streams one
//! representation at a time; a budget guard rejects instances whose raw
//! assignment space exceeds 2^24.

use std::collections::BTreeMap;

use qstack::enumerate::{count_reps, enumerate_reps, free_entry_count};
use qstack::sset::{square, standard_simplex};

fn main() {
    // The commuting square with all dims 1 over F_3: five edges, and the
    // two triangles force diag = w*u = y*v. Count by hand: pick u, w, v
    // freely (27 triples). When v != 0 (18 triples) y is determined; when
    // v = 0 (9 triples) we need w*u = 0, which happens for 5 of the 9
    // (u,w) pairs, and then y is free (3 choices): 18 + 5*3 = 33.
    let sq = square();
    let dims: BTreeMap<String, usize> =
        ["a", "b", "c", "d"].iter().map(|v| (v.to_string(), 1)).collect();
    println!("square, dims all 1, p=3:");
    println!("  free entries: {}", free_entry_count(&sq, &dims).unwrap());
    let total = count_reps(&sq, &dims, 3).unwrap();
    println!("  valid assignments: {total}");
    assert_eq!(total, 33);

    // Stream the full simplex on three vertices at dims (1,1,1) over F_2
    // and tabulate how many of the p^2 valid reps kill the long edge.
    let simplex = standard_simplex(2).unwrap();
    let dims: BTreeMap<String, usize> =
        (0..=2).map(|i| (format!("v{i}"), 1)).collect();
    let mut long_zero = 0usize;
    let mut seen = 0usize;
    for rep in enumerate_reps(&simplex, &dims, 2).unwrap() {
        seen += 1;
        if rep.mat("e0_2").unwrap().is_zero() {
            long_zero += 1;
        }
    }
    println!("simplex n=2, p=2: {seen} reps, {long_zero} with zero composite");
    assert_eq!(seen as u64, count_reps(&simplex, &dims, 2).unwrap());

    // The guard refuses a hopeless instance instead of running forever.
    let wide: BTreeMap<String, usize> =
        (0..=2).map(|i| (format!("v{i}"), 4)).collect();
    match count_reps(&simplex, &wide, 61) {
        Err(e) => println!("dims (4,4,4) over F_61 rejected: {e}"),
        Ok(_) => unreachable!("the budget guard must trip"),
    }
}
