//! Representations of the gauge extension are exactly pairs
//! (group element, representation) of the original framed quiver.
//!
//! Encode such a pair, decode it back, and confirm the counting identity
//! |Rep(extension)| = |G| * |Rep(original)| over a small field.

use std::collections::BTreeMap;

use qstack::action::{act, count_points, tilde_decode, tilde_encode, GaugeElement};
use qstack::enumerate::count_reps;
use qstack::matrix::Matrix;
use qstack::quiver::{tilde, FramingFn};
use qstack::scalar::Ring;
use qstack::rep::Rep;
use qstack::sset::SSet2;

fn main() {
    // Framed chain: a -> b regular, b -> w with w framed.
    let mut shape = SSet2::new();
    for v in ["a", "b", "w"] {
        shape.add_vertex(v).unwrap();
    }
    shape.add_edge("e", "a", "b").unwrap();
    shape.add_edge("f", "b", "w").unwrap();
    let framing = FramingFn::with_framing(&shape, &["w"]).unwrap();

    let ring = Ring::prime_field(5).unwrap();
    let dims: BTreeMap<String, usize> = [
        ("a".to_string(), 2),
        ("b".to_string(), 1),
        ("w".to_string(), 1),
    ]
    .into_iter()
    .collect();

    // A representation and a gauge element (framing vertex w gets none).
    let mut rho = Rep::zero(&shape, ring, &dims).unwrap();
    rho.set_mat("e", Matrix::from_i64(ring, &[&[1, 2]])).unwrap();
    rho.set_mat("f", Matrix::from_i64(ring, &[&[3]])).unwrap();
    let g = GaugeElement::new(
        [
            ("a".to_string(), Matrix::from_i64(ring, &[&[1, 1], &[0, 1]])),
            ("b".to_string(), Matrix::from_i64(ring, &[&[2]])),
        ]
        .into_iter()
        .collect(),
    )
    .unwrap();

    // Encode: unprimed edges carry rho, primed edges carry g . rho, the
    // gauge edges carry g itself, and each composite edge is forced.
    let encoded = tilde_encode(&g, &rho, &framing).unwrap();
    println!("encoded rep has {} matrices", encoded.mats().len());
    assert!(qstack::rep::validate_rep(&encoded, 0.0).is_empty());

    let (g2, rho2, psi) = tilde_decode(&shape, &framing, &encoded, 0.0).unwrap();
    assert_eq!(g2.mats(), g.mats());
    assert_eq!(rho2, rho);
    assert_eq!(psi, act(&g, &rho, &framing).unwrap());
    println!("decoded gauge element and representation match the originals");
    println!("primed layer equals the gauge transform of the unprimed layer");

    // Counting over F_2 and F_3: every valid assignment on the extension
    // decodes uniquely, so the counts factor.
    let small_dims: BTreeMap<String, usize> = [
        ("a".to_string(), 1),
        ("b".to_string(), 1),
        ("w".to_string(), 1),
    ]
    .into_iter()
    .collect();
    for p in [2u64, 3] {
        let tq = tilde(&shape, &framing).unwrap();
        let mut tilde_dims = small_dims.clone();
        for v in ["a", "b"] {
            tilde_dims.insert(tq.primed_vertex(v).unwrap().clone(), small_dims[v]);
        }
        let extended = count_reps(&tq.shape, &tilde_dims, p).unwrap();
        let base = count_points(&shape, &small_dims, p, &framing).unwrap();
        let product = base.gauge_order.clone() * base.rep_count.clone();
        println!(
            "p={p}: |Rep(ext)| = {extended}, |G| * |Rep| = {} * {} = {product}",
            base.gauge_order, base.rep_count
        );
        assert_eq!(product.to_string(), extended.to_string());
    }
}
