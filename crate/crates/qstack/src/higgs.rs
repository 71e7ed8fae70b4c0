//! Tuples of commuting-or-not endomorphisms, and their encoding as
//! representations of a fixed five-vertex shape whose single nontrivial
//! witness route forces exactly the pairwise commutators to vanish.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{matrix_from_value, matrix_to_value};
use crate::matrix::Matrix;
use crate::quiver::higgs_shape;
use crate::rep::Rep;
use crate::scalar::Ring;
use crate::sset::square;

/// A rank-`n` space with `m` endomorphisms `phi_1 .. phi_m`, all over one
/// ring.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsDatum {
    n: usize,
    phi: Vec<Matrix>,
}

impl HiggsDatum {
    pub fn new(n: usize, phi: Vec<Matrix>) -> Result<HiggsDatum> {
        let mut ring = None;
        for (k, m) in phi.iter().enumerate() {
            if (m.rows(), m.cols()) != (n, n) {
                return Err(Error::Dimension(format!(
                    "field {k} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            match ring {
                None => ring = Some(m.ring()),
                Some(r) if r == m.ring() => {}
                Some(r) => {
                    return Err(Error::Ring(format!(
                        "field {k} is over {}, expected {r}",
                        m.ring()
                    )))
                }
            }
        }
        Ok(HiggsDatum { n, phi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.phi.len()
    }

    pub fn fields(&self) -> &[Matrix] {
        &self.phi
    }

    /// Ring of the fields; rank-0 data defaults to the rationals.
    pub fn ring(&self) -> Ring {
        self.phi.first().map(Matrix::ring).unwrap_or(Ring::Rational)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m(),
            "ring": self.ring().name(),
            "phi": self.phi.iter().map(matrix_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &Value) -> Result<HiggsDatum> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("expected an object".to_string()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field \"n\"".to_string()))?
            as usize;
        let m = obj
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field \"m\"".to_string()))?
            as usize;
        let ring = Ring::from_name(
            obj.get("ring")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json("missing string field \"ring\"".to_string()))?,
        )?;
        let arr = obj
            .get("phi")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field \"phi\"".to_string()))?;
        if arr.len() != m {
            return Err(Error::Json(format!(
                "\"m\" is {m} but \"phi\" has {} entries",
                arr.len()
            )));
        }
        let phi = arr
            .iter()
            .map(|mv| matrix_from_value(ring, n, n, mv))
            .collect::<Result<Vec<_>>>()?;
        HiggsDatum::new(n, phi)
    }
}

/// All pairwise commutators vanish (exactly over exact rings, within `tol`
/// entrywise-Frobenius over floats).
pub fn integrability_check(h: &HiggsDatum, tol: f64) -> Result<bool> {
    let zero = Matrix::zeros(h.ring(), h.n, h.n);
    for i in 0..h.m() {
        for j in (i + 1)..h.m() {
            let c = h.phi[i]
                .mul(&h.phi[j])?
                .sub(&h.phi[j].mul(&h.phi[i])?)?;
            if !c.eq_within(&zero, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Index of the ordered pair `(t, s)` with `t < s` among the
/// lexicographically sorted pairs out of `m`.
fn pair_index(t: usize, s: usize, m: usize) -> usize {
    t * m - t * (t + 1) / 2 + (s - t - 1)
}

/// The stacked-fields matrix `V -> V (x) K`: output index `(i, t)` is
/// `i * m + t` and carries `phi_t[i, j]`.
fn stacked_fields(h: &HiggsDatum) -> Result<Matrix> {
    let (n, m) = (h.n, h.m());
    Matrix::from_fn(h.ring(), n * m, n, |row, j| {
        let (i, t) = (row / m, row % m);
        h.phi[t].get(i, j).clone()
    })
}

/// The antisymmetrizer `K (x) K -> wedge^2 K`: basis `(t, s)` maps to
/// `+pair(t, s)` when `t < s`, to `-pair(s, t)` when `t > s`, to zero on
/// the diagonal.
fn wedge_projector(ring: Ring, m: usize) -> Result<Matrix> {
    let pairs = m * (m.max(1) - 1) / 2;
    Matrix::from_fn(ring, pairs, m * m, |row, col| {
        let (t, s) = (col / m, col % m);
        use crate::scalar::Scalar;
        if t < s && pair_index(t, s, m) == row {
            Scalar::one(ring)
        } else if t > s && pair_index(s, t, m) == row {
            Scalar::one(ring).neg()
        } else {
            Scalar::zero(ring)
        }
    })
}

/// Encodes the datum as a representation of [`higgs_shape`]. The two
/// forced routes always hold; the witness through the zero object holds
/// exactly when the long composite vanishes, and that composite stacks the
/// pairwise commutators. So the representation validates iff the datum is
/// integrable.
pub fn higgs_to_diagram(h: &HiggsDatum) -> Result<Rep> {
    let ring = h.ring();
    let (n, m) = (h.n, h.m());
    let pairs = m * (m.max(1) - 1) / 2;
    let labeled = higgs_shape();

    let mut dims = BTreeMap::new();
    dims.insert("a".to_string(), n);
    dims.insert("b".to_string(), n * m);
    dims.insert("c".to_string(), n * m * m);
    dims.insert("d".to_string(), n * pairs);
    dims.insert("b'".to_string(), 0);

    let e_ab = stacked_fields(h)?;
    let e_bc = e_ab.kron(&Matrix::identity(ring, m))?;
    let e_cd = Matrix::identity(ring, n).kron(&wedge_projector(ring, m)?)?;
    let e_ac = e_bc.mul(&e_ab)?;
    let e_ad = e_cd.mul(&e_ac)?;

    let mut mats = BTreeMap::new();
    mats.insert("e_ab".to_string(), e_ab);
    mats.insert("e_bc".to_string(), e_bc);
    mats.insert("e_cd".to_string(), e_cd);
    mats.insert("e_ac".to_string(), e_ac);
    mats.insert("e_ad".to_string(), e_ad);
    mats.insert("e_ab'".to_string(), Matrix::zeros(ring, 0, n));
    mats.insert("e_b'd".to_string(), Matrix::zeros(ring, n * pairs, 0));
    Rep::from_mats(labeled.shape.clone(), dims, mats)
}

/// Reads the `(i, pair(t, s))` block of the diagram's long composite; it
/// equals the commutator `[phi_t, phi_s]`.
pub fn diagram_commutator_block(rep: &Rep, t: usize, s: usize, n: usize, m: usize) -> Matrix {
    let e_ad = rep.mat("e_ad").expect("diagram reps carry e_ad");
    let pairs = m * (m.max(1) - 1) / 2;
    let p = pair_index(t, s, m);
    Matrix::from_fn(e_ad.ring(), n, n, |i, j| e_ad.get(i * pairs + p, j).clone()).unwrap()
}

/// `map` intertwines the two tuples: `map * phi_i = psi_i * map` for all i.
pub fn higgs_morphism_check(
    src: &HiggsDatum,
    dst: &HiggsDatum,
    map: &Matrix,
    tol: f64,
) -> Result<bool> {
    if src.m() != dst.m() {
        return Err(Error::Dimension(format!(
            "source has {} fields, target has {}",
            src.m(),
            dst.m()
        )));
    }
    if (map.rows(), map.cols()) != (dst.n, src.n) {
        return Err(Error::Dimension(format!(
            "map is {}x{}, expected {}x{}",
            map.rows(),
            map.cols(),
            dst.n,
            src.n
        )));
    }
    for i in 0..src.m() {
        let lhs = map.mul(&src.phi[i])?;
        let rhs = dst.phi[i].mul(map)?;
        if !lhs.eq_within(&rhs, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Composition of intertwiners is composition of matrices; dimension
/// compatibility is re-checked.
pub fn compose_higgs_morphisms(g: &Matrix, f: &Matrix) -> Result<Matrix> {
    g.mul(f)
}

/// Encodes a candidate intertwiner as a representation of the commuting
/// square: the two routes around the square compute `(psi stack) . map`
/// and `(map (x) id) . (phi stack)`, so the representation validates iff
/// the intertwining equations hold.
pub fn morphism_to_square(src: &HiggsDatum, dst: &HiggsDatum, map: &Matrix) -> Result<Rep> {
    if src.m() != dst.m() {
        return Err(Error::Dimension(format!(
            "source has {} fields, target has {}",
            src.m(),
            dst.m()
        )));
    }
    if (map.rows(), map.cols()) != (dst.n, src.n) {
        return Err(Error::Dimension(format!(
            "map is {}x{}, expected {}x{}",
            map.rows(),
            map.cols(),
            dst.n,
            src.n
        )));
    }
    let ring = src.ring();
    let m = src.m();
    let shape = square();

    let mut dims = BTreeMap::new();
    dims.insert("a".to_string(), src.n);
    dims.insert("b".to_string(), src.n * m);
    dims.insert("c".to_string(), dst.n);
    dims.insert("d".to_string(), dst.n * m);

    let u = stacked_fields(src)?;
    let w = map.kron(&Matrix::identity(ring, m))?;
    let y = stacked_fields(dst)?;
    let diag = y.mul(map)?;

    let mut mats = BTreeMap::new();
    mats.insert("u".to_string(), u);
    mats.insert("v".to_string(), map.clone());
    mats.insert("w".to_string(), w);
    mats.insert("y".to_string(), y);
    mats.insert("diag".to_string(), diag);
    Rep::from_mats(shape, dims, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::to_canonical_string;
    use crate::rep::validate_rep;
    use crate::scalar::Scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(ring: Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(ring, rows)
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        assert_eq!(pair_index(0, 1, 3), 0);
        assert_eq!(pair_index(0, 2, 3), 1);
        assert_eq!(pair_index(1, 2, 3), 2);
        assert_eq!(pair_index(0, 1, 2), 0);
        assert_eq!(pair_index(2, 3, 4), 5);
    }

    #[test]
    fn commuting_fields_validate_noncommuting_fail_at_the_zero_route() {
        let commuting = HiggsDatum::new(
            2,
            vec![
                mat(Ring::Rational, &[&[1, 0], &[0, 2]]),
                mat(Ring::Rational, &[&[3, 0], &[0, 4]]),
            ],
        )
        .unwrap();
        assert!(integrability_check(&commuting, 0.0).unwrap());
        let rep = higgs_to_diagram(&commuting).unwrap();
        assert!(validate_rep(&rep, 0.0).is_empty());

        let nilpotents = HiggsDatum::new(
            2,
            vec![
                mat(Ring::Rational, &[&[0, 1], &[0, 0]]),
                mat(Ring::Rational, &[&[0, 0], &[1, 0]]),
            ],
        )
        .unwrap();
        assert!(!integrability_check(&nilpotents, 0.0).unwrap());
        let rep = higgs_to_diagram(&nilpotents).unwrap();
        let diags = validate_rep(&rep, 0.0);
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert!(diags[0].contains("t_ab'd"), "the zero route is the witness that breaks");
    }

    #[test]
    fn diagram_dimensions() {
        let h = HiggsDatum::new(
            2,
            vec![
                mat(Ring::Fp(2), &[&[0, 0], &[0, 0]]),
                mat(Ring::Fp(2), &[&[0, 0], &[0, 0]]),
            ],
        )
        .unwrap();
        let rep = higgs_to_diagram(&h).unwrap();
        assert_eq!(rep.dim_of("a"), Some(2));
        assert_eq!(rep.dim_of("b"), Some(4));
        assert_eq!(rep.dim_of("c"), Some(8));
        assert_eq!(rep.dim_of("d"), Some(2));
        assert_eq!(rep.dim_of("b'"), Some(0));
    }

    #[test]
    fn long_composite_stacks_the_commutators() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for m in [2usize, 3] {
            for _ in 0..30 {
                let phi: Vec<Matrix> = (0..m)
                    .map(|_| {
                        Matrix::from_fn(Ring::Rational, 2, 2, |_, _| {
                            Scalar::from_i64(Ring::Rational, rng.gen_range(-4..=4))
                        })
                        .unwrap()
                    })
                    .collect();
                let h = HiggsDatum::new(2, phi.clone()).unwrap();
                let rep = higgs_to_diagram(&h).unwrap();
                for t in 0..m {
                    for s in (t + 1)..m {
                        let block = diagram_commutator_block(&rep, t, s, 2, m);
                        let direct = phi[t]
                            .mul(&phi[s])
                            .unwrap()
                            .sub(&phi[s].mul(&phi[t]).unwrap())
                            .unwrap();
                        assert_eq!(block, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn single_field_is_always_integrable() {
        let h = HiggsDatum::new(2, vec![mat(Ring::Fp(3), &[&[1, 2], &[0, 1]])]).unwrap();
        assert!(integrability_check(&h, 0.0).unwrap());
        let rep = higgs_to_diagram(&h).unwrap();
        assert!(validate_rep(&rep, 0.0).is_empty());
        assert_eq!(rep.dim_of("d"), Some(0));
    }

    #[test]
    fn exhaustive_equivalence_over_f2_at_rank_one() {
        // Rank 1, two fields: scalars always commute, so every datum is
        // integrable and every diagram validates.
        for a in 0..2i64 {
            for b in 0..2i64 {
                let h = HiggsDatum::new(
                    1,
                    vec![mat(Ring::Fp(2), &[&[a]]), mat(Ring::Fp(2), &[&[b]])],
                )
                .unwrap();
                assert!(integrability_check(&h, 0.0).unwrap());
                assert!(validate_rep(&higgs_to_diagram(&h).unwrap(), 0.0).is_empty());
            }
        }
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let h = HiggsDatum::new(
            2,
            vec![
                mat(Ring::Rational, &[&[1, 2], &[3, 4]]),
                mat(Ring::Rational, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap();
        let text = to_canonical_string(&h.to_json_value());
        let back = HiggsDatum::from_json_value(&crate::json::parse(&text).unwrap()).unwrap();
        assert_eq!(back, h);
        assert_eq!(to_canonical_string(&back.to_json_value()), text);

        let wrong_m = text.replace("\"m\":2", "\"m\":3");
        assert!(HiggsDatum::from_json_value(&crate::json::parse(&wrong_m).unwrap()).is_err());
    }

    #[test]
    fn intertwiners_check_and_bridge_to_the_square() {
        let phi = vec![mat(Ring::Rational, &[&[1, 1], &[0, 1]])];
        let src = HiggsDatum::new(2, phi.clone()).unwrap();
        let dst = HiggsDatum::new(2, phi).unwrap();
        let id = Matrix::identity(Ring::Rational, 2);
        assert!(higgs_morphism_check(&src, &dst, &id, 0.0).unwrap());
        let rep = morphism_to_square(&src, &dst, &id).unwrap();
        assert!(validate_rep(&rep, 0.0).is_empty());

        // A map that fails to intertwine breaks exactly one square route.
        let skew = mat(Ring::Rational, &[&[0, 1], &[1, 0]]);
        assert!(!higgs_morphism_check(&src, &dst, &skew, 0.0).unwrap());
        let rep = morphism_to_square(&src, &dst, &skew).unwrap();
        let diags = validate_rep(&rep, 0.0);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].contains("t_uw"));
    }

    #[test]
    fn morphism_composition_preserves_intertwining() {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        for _ in 0..30 {
            // Conjugates of a fixed commuting tuple, with the conjugating
            // matrices as intertwiners.
            let base = vec![
                mat(Ring::Rational, &[&[1, 0], &[0, 2]]),
                mat(Ring::Rational, &[&[5, 0], &[0, 7]]),
            ];
            let a = HiggsDatum::new(2, base.clone()).unwrap();
            let diag = |x: i64, y: i64| mat(Ring::Rational, &[&[x, 0], &[0, y]]);
            let f = diag(rng.gen_range(1..5), rng.gen_range(1..5));
            let g = diag(rng.gen_range(1..5), rng.gen_range(1..5));
            // Diagonal maps intertwine diagonal tuples.
            assert!(higgs_morphism_check(&a, &a, &f, 0.0).unwrap());
            assert!(higgs_morphism_check(&a, &a, &g, 0.0).unwrap());
            let gf = compose_higgs_morphisms(&g, &f).unwrap();
            assert!(higgs_morphism_check(&a, &a, &gf, 0.0).unwrap());
            assert_eq!(gf, g.mul(&f).unwrap());
        }
    }

    #[test]
    fn construction_rejects_mismatched_fields() {
        assert!(HiggsDatum::new(
            2,
            vec![
                mat(Ring::Rational, &[&[1, 0], &[0, 1]]),
                mat(Ring::Rational, &[&[1]]),
            ]
        )
        .is_err());
        assert!(HiggsDatum::new(
            1,
            vec![mat(Ring::Rational, &[&[1]]), mat(Ring::Fp(2), &[&[1]])]
        )
        .is_err());
        let src = HiggsDatum::new(1, vec![mat(Ring::Rational, &[&[1]])]).unwrap();
        let dst = HiggsDatum::new(
            1,
            vec![mat(Ring::Rational, &[&[1]]), mat(Ring::Rational, &[&[2]])],
        )
        .unwrap();
        assert!(higgs_morphism_check(&src, &dst, &Matrix::identity(Ring::Rational, 1), 0.0).is_err());
    }
}
