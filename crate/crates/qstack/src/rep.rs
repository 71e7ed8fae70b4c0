//! Matrix representations of 2-truncated shapes, and the point-level
//! category of triples `(src dim, tgt dim, matrix)` with composition
//! performed through the trace pairing rather than by row-column sums.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Ring, Scalar};
use crate::sset::{one_skeleton, standard_simplex, SIMPLEX_CAP, SSet2};

/// A linear map presented as a matrix: `mat` has shape `tgt_dim x src_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple {
    mat: Matrix,
}

impl Triple {
    pub fn new(mat: Matrix) -> Triple {
        Triple { mat }
    }

    pub fn src_dim(&self) -> usize {
        self.mat.cols()
    }

    pub fn tgt_dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn ring(&self) -> Ring {
        self.mat.ring()
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }
}

/// The identity map on an `n`-dimensional space.
pub fn identity_triple(ring: Ring, n: usize) -> Triple {
    Triple::new(Matrix::identity(ring, n))
}

/// Composes `g` after `f` by explicitly forming the four-index tensor on
/// `U* (x) V (x) V* (x) W` and contracting the middle pair with the trace
/// pairing. Mathematically this is the matrix product `g.mat * f.mat`; the
/// point of the routine is that it takes the tensor route.
pub fn compose_via_trace(g: &Triple, f: &Triple) -> Result<Triple> {
    if g.ring() != f.ring() {
        return Err(Error::Ring(format!(
            "composing a {} map after a {} map",
            g.ring(),
            f.ring()
        )));
    }
    if f.tgt_dim() != g.src_dim() {
        return Err(Error::Dimension(format!(
            "composite of {}->{} after {}->{}",
            g.src_dim(),
            g.tgt_dim(),
            f.src_dim(),
            f.tgt_dim()
        )));
    }
    let ring = f.ring();
    let (u, v, w) = (f.src_dim(), f.tgt_dim(), g.tgt_dim());

    // T[i,j,k,l] = f[j,i] * g[l,k]: the image of (f, g) under the canonical
    // map Hom(U,V) x Hom(V,W) -> U* (x) V (x) V* (x) W, laid out with the
    // last index fastest.
    let mut tensor = vec![Scalar::zero(ring); u * v * v * w];
    for i in 0..u {
        for j in 0..v {
            let fij = f.mat.get(j, i);
            for k in 0..v {
                for l in 0..w {
                    tensor[((i * v + j) * v + k) * w + l] = fij.mul(g.mat.get(l, k));
                }
            }
        }
    }

    // Trace pairing on the middle V (x) V*: contract j against k.
    let mut out = Matrix::zeros(ring, w, u);
    for i in 0..u {
        for l in 0..w {
            let mut acc = Scalar::zero(ring);
            for j in 0..v {
                acc = acc.add(&tensor[((i * v + j) * v + j) * w + l]);
            }
            out.set(l, i, acc);
        }
    }
    Ok(Triple::new(out))
}

/// Block-diagonal direct sum of two maps.
pub fn oplus1(f: &Triple, g: &Triple) -> Result<Triple> {
    Ok(Triple::new(f.mat.direct_sum(&g.mat)?))
}

/// Scalar rescaling `lambda * f`.
pub fn scale(lambda: &Scalar, f: &Triple) -> Result<Triple> {
    Ok(Triple::new(f.mat.scale(lambda)?))
}

/// Pointwise sum of two parallel maps.
pub fn add(f: &Triple, g: &Triple) -> Result<Triple> {
    Ok(Triple::new(f.mat.add(&g.mat)?))
}

/// Tensor product on maps; the right factor's index runs fastest.
pub fn tensor1(f: &Triple, g: &Triple) -> Result<Triple> {
    Ok(Triple::new(f.mat.kron(&g.mat)?))
}

/// Tensor product on objects.
pub fn tensor0(m: usize, n: usize) -> usize {
    m * n
}

/// A representation: one space per vertex, one matrix per edge, over a
/// single ring. Matrix shapes are enforced at construction; the triangle
/// constraints are what [`validate_rep`] checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    shape: SSet2,
    ring: Ring,
    dims: BTreeMap<String, usize>,
    mats: BTreeMap<String, Matrix>,
}

impl Rep {
    /// The rep with all edge matrices zero (identity edges get identities).
    pub fn zero(shape: &SSet2, ring: Ring, dims: &BTreeMap<String, usize>) -> Result<Rep> {
        let mut mats = BTreeMap::new();
        for e in shape.edges() {
            let (rows, cols) = edge_shape(dims, &e.src, &e.tgt)?;
            let m = if e.identity {
                Matrix::identity(ring, rows)
            } else {
                Matrix::zeros(ring, rows, cols)
            };
            mats.insert(e.id.clone(), m);
        }
        Rep::from_mats(shape.clone(), dims.clone(), mats)
    }

    pub fn from_mats(
        shape: SSet2,
        dims: BTreeMap<String, usize>,
        mats: BTreeMap<String, Matrix>,
    ) -> Result<Rep> {
        for v in shape.vertices() {
            if !dims.contains_key(v) {
                return Err(Error::Invalid(format!("no dimension assigned to vertex {v:?}")));
            }
        }
        let mut ring = None;
        for e in shape.edges() {
            let m = mats
                .get(&e.id)
                .ok_or_else(|| Error::Invalid(format!("no matrix assigned to edge {:?}", e.id)))?;
            let (rows, cols) = edge_shape(&dims, &e.src, &e.tgt)?;
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Dimension(format!(
                    "edge {:?} needs a {rows}x{cols} matrix, got {}x{}",
                    e.id,
                    m.rows(),
                    m.cols()
                )));
            }
            match ring {
                None => ring = Some(m.ring()),
                Some(r) if r == m.ring() => {}
                Some(r) => {
                    return Err(Error::Ring(format!(
                        "edge {:?} is over {}, expected {r}",
                        e.id,
                        m.ring()
                    )))
                }
            }
        }
        Ok(Rep {
            shape,
            ring: ring.unwrap_or(Ring::Rational),
            dims,
            mats,
        })
    }

    pub fn shape(&self) -> &SSet2 {
        &self.shape
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dims(&self) -> &BTreeMap<String, usize> {
        &self.dims
    }

    pub fn dim_of(&self, vertex: &str) -> Option<usize> {
        self.dims.get(vertex).copied()
    }

    pub fn mats(&self) -> &BTreeMap<String, Matrix> {
        &self.mats
    }

    pub fn mat(&self, edge: &str) -> Option<&Matrix> {
        self.mats.get(edge)
    }

    /// Replaces one edge matrix, keeping the shape contract.
    pub fn set_mat(&mut self, edge: &str, m: Matrix) -> Result<()> {
        let e = self
            .shape
            .edge(edge)
            .ok_or_else(|| Error::Shape(format!("no edge {edge:?}")))?;
        let (rows, cols) = edge_shape(&self.dims, &e.src, &e.tgt)?;
        if (m.rows(), m.cols()) != (rows, cols) {
            return Err(Error::Dimension(format!(
                "edge {edge:?} needs a {rows}x{cols} matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.ring() != self.ring {
            return Err(Error::Ring(format!(
                "edge {edge:?} assigned a {} matrix in a {} rep",
                m.ring(),
                self.ring
            )));
        }
        match self.mats.get_mut(edge) {
            Some(slot) => *slot = m,
            None => {
                self.mats.insert(edge.to_string(), m);
            }
        }
        Ok(())
    }

    /// The triple carried by one edge.
    pub fn triple(&self, edge: &str) -> Option<Triple> {
        self.mat(edge).cloned().map(Triple::new)
    }
}

fn edge_shape(dims: &BTreeMap<String, usize>, src: &str, tgt: &str) -> Result<(usize, usize)> {
    let s = dims
        .get(src)
        .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {src:?}")))?;
    let t = dims
        .get(tgt)
        .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {tgt:?}")))?;
    Ok((*t, *s))
}

/// Collects every violated constraint of `r`: identity edges must carry
/// identities, and each witness's long edge must equal the composite of its
/// legs (exactly over exact rings, within `tol` in Frobenius norm over
/// floats). Empty output means `r` is a representation.
pub fn validate_rep(r: &Rep, tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    for e in r.shape.edges() {
        if e.identity {
            let m = &r.mats[&e.id];
            let ok = if r.ring.is_exact() {
                m.is_identity()
            } else {
                m.frobenius_distance(&Matrix::identity(r.ring, m.rows())) <= tol
            };
            if !ok {
                out.push(format!("identity edge {:?} does not carry the identity", e.id));
            }
        }
    }
    for t in r.shape.triangles() {
        let first = &r.mats[&t.first];
        let second = &r.mats[&t.second];
        let long = &r.mats[&t.long];
        match second.mul(first) {
            Ok(composite) => {
                if !composite.eq_within(long, tol) {
                    out.push(format!(
                        "triangle {:?}: long edge {:?} differs from the composite of {:?} then {:?}",
                        t.id, t.long, t.first, t.second
                    ));
                }
            }
            Err(e) => out.push(format!("triangle {:?}: {e}", t.id)),
        }
    }
    out
}

/// True when all triangle constraints hold (ignoring identity-tag checks).
pub fn triangles_hold(r: &Rep, tol: f64) -> bool {
    r.shape.triangles().iter().all(|t| {
        match r.mats[&t.second].mul(&r.mats[&t.first]) {
            Ok(c) => c.eq_within(&r.mats[&t.long], tol),
            Err(_) => false,
        }
    })
}

/// Which chain flavor a rep lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChainFlavor {
    /// The full simplex with all witnesses.
    Simplex,
    /// The 1-skeleton: all edges, no witnesses.
    Skeleton,
}

/// Prebuilt `(simplex, skeleton)` models per length; chain recognition runs
/// in tight enumeration loops and must not rebuild them on every call.
fn chain_models(n: usize) -> &'static (SSet2, SSet2) {
    static MODELS: OnceLock<Vec<(SSet2, SSet2)>> = OnceLock::new();
    &MODELS.get_or_init(|| {
        (0..=SIMPLEX_CAP)
            .map(|k| {
                let simplex = standard_simplex(k).expect("within the simplex cap");
                let skeleton = one_skeleton(k).expect("within the simplex cap");
                (simplex, skeleton)
            })
            .collect::<Vec<_>>()
    })[n]
}

fn chain_flavor(shape: &SSet2) -> Result<(usize, ChainFlavor)> {
    if shape.vertex_count() == 0 {
        return Err(Error::Shape("a chain needs at least one vertex".to_string()));
    }
    let n = shape.vertex_count() - 1;
    if n > SIMPLEX_CAP {
        standard_simplex(n)?;
        unreachable!("the simplex constructor rejects lengths over the cap");
    }
    let (simplex, skeleton) = chain_models(n);
    if shape == simplex {
        Ok((n, ChainFlavor::Simplex))
    } else if shape == skeleton {
        Ok((n, ChainFlavor::Skeleton))
    } else {
        Err(Error::Shape(
            "chain operations need a standard simplex or its 1-skeleton".to_string(),
        ))
    }
}

/// Core of the chain functor: reindexes a chain rep along any monotone map
/// `h: [m] -> [n]`, given as its m+1 values. Each output edge carries the
/// composite of the input's consecutive edges along the corresponding run;
/// collapsed runs carry identities.
pub fn reindex_along(h: &[usize], chain: &Rep) -> Result<Rep> {
    let (n, flavor) = chain_flavor(chain.shape())?;
    if h.is_empty() {
        return Err(Error::Invalid("the index map must have at least one value".to_string()));
    }
    for w in h.windows(2) {
        if w[0] > w[1] {
            return Err(Error::Invalid(format!(
                "index map is not monotone: {} then {}",
                w[0], w[1]
            )));
        }
    }
    if *h.last().unwrap() > n {
        return Err(Error::Invalid(format!(
            "index map value {} exceeds the chain length {n}",
            h.last().unwrap()
        )));
    }
    let m = h.len() - 1;
    let out_shape = match flavor {
        ChainFlavor::Simplex => standard_simplex(m)?,
        ChainFlavor::Skeleton => one_skeleton(m)?,
    };
    let ring = chain.ring();
    let mut dims = BTreeMap::new();
    for (i, &hi) in h.iter().enumerate() {
        dims.insert(format!("v{i}"), chain.dims()[&format!("v{hi}")]);
    }
    let mut mats = BTreeMap::new();
    for i in 0..=m {
        for j in (i + 1)..=m {
            let mut acc = Matrix::identity(ring, chain.dims()[&format!("v{}", h[i])]);
            for k in h[i]..h[j] {
                let step = chain
                    .mat(&format!("e{}_{}", k, k + 1))
                    .expect("chain shapes carry all consecutive edges");
                acc = step.mul(&acc)?;
            }
            mats.insert(format!("e{i}_{j}"), acc);
        }
    }
    Rep::from_mats(out_shape, dims, mats)
}

/// Restriction along a strictly monotone injection: composes the subchains
/// between consecutive chosen vertices.
pub fn restrict_along(iota: &[usize], chain: &Rep) -> Result<Rep> {
    for w in iota.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Invalid(format!(
                "restriction map must be strictly monotone: {} then {}",
                w[0], w[1]
            )));
        }
    }
    reindex_along(iota, chain)
}

/// Degeneracy along a monotone surjection: collapsed edges become identity
/// blocks, the rest are copied.
pub fn degenerate_along(sigma: &[usize], chain: &Rep) -> Result<Rep> {
    let (n, _) = chain_flavor(chain.shape())?;
    let mut covered = vec![false; n + 1];
    for &s in sigma {
        if s <= n {
            covered[s] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return Err(Error::Invalid("degeneracy map must be surjective".to_string()));
    }
    for w in sigma.windows(2) {
        if w[0] > w[1] || w[1] - w[0] > 1 {
            return Err(Error::Invalid(
                "degeneracy map must be monotone with steps of at most one".to_string(),
            ));
        }
    }
    reindex_along(sigma, chain)
}

/// Checks multiplicative coherence of a rep of the n-simplex (n at most 8)
/// two ways: every subset of at least two vertices must compose, along its
/// consecutive members' direct edges, to the direct edge between its
/// endpoints; and every witness must hold. The two verdicts always agree
/// (witnesses are the three-element case, and larger subsets follow by
/// induction); both are computed and cross-checked here.
pub fn check_chain_coherence(r: &Rep, tol: f64) -> Result<bool> {
    let (n, flavor) = chain_flavor(r.shape())?;
    if flavor != ChainFlavor::Simplex {
        return Err(Error::Shape("coherence is about the full simplex".to_string()));
    }
    if n > 8 {
        return Err(Error::Guard(format!("coherence check capped at n=8, got {n}")));
    }
    // Resolve the direct edges once; the subset walk below runs hot in
    // exhaustive sweeps and must not re-derive ids per member pair.
    let mut grid: Vec<Option<&Matrix>> = vec![None; (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in (i + 1)..=n {
            grid[i * (n + 1) + j] = Some(r.mat(&format!("e{i}_{j}")).unwrap());
        }
    }
    let mut subsets_ok = true;
    'subsets: for mask in 0u32..(1 << (n + 1)) {
        if mask.count_ones() < 3 {
            // A pair composes its single direct edge with nothing and
            // agrees by construction.
            continue;
        }
        let mut acc: Option<(usize, Matrix)> = None;
        let mut prev = usize::MAX;
        let mut hi = 0usize;
        for i in 0..=n {
            if mask & (1 << i) == 0 {
                continue;
            }
            if prev != usize::MAX {
                let step = grid[prev * (n + 1) + i].unwrap();
                acc = Some(match acc {
                    None => (prev, step.clone()),
                    Some((lo, a)) => (lo, step.mul(&a)?),
                });
            }
            prev = i;
            hi = i;
        }
        let (lo, route) = acc.unwrap();
        if !route.eq_within(grid[lo * (n + 1) + hi].unwrap(), tol) {
            subsets_ok = false;
            break 'subsets;
        }
    }
    let triangles_ok = triangles_hold(r, tol);
    assert_eq!(
        subsets_ok, triangles_ok,
        "subset-composite route and witness route disagree; this is a library bug"
    );
    Ok(subsets_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: schoolbook row-column product, written directly.
    fn naive_matmul(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.ring(), a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = Scalar::zero(a.ring());
                for k in 0..a.cols() {
                    acc = acc.add(&a.get(i, k).mul(b.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn random_matrix(ring: Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| {
            Scalar::from_i64(ring, rng.gen_range(-9..=9))
        })
        .unwrap()
    }

    #[test]
    fn trace_composition_equals_matmul_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in [Ring::Fp(7), Ring::Rational] {
            for _ in 0..200 {
                let f = Triple::new(random_matrix(ring, 4, 3, &mut rng));
                let g = Triple::new(random_matrix(ring, 2, 4, &mut rng));
                let via_trace = compose_via_trace(&g, &f).unwrap();
                assert_eq!(*via_trace.matrix(), naive_matmul(g.matrix(), f.matrix()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let f = Triple::new(random_matrix(Ring::Float, 4, 3, &mut rng));
            let g = Triple::new(random_matrix(Ring::Float, 2, 4, &mut rng));
            let via_trace = compose_via_trace(&g, &f).unwrap();
            let oracle = naive_matmul(g.matrix(), f.matrix());
            let rel = via_trace.matrix().frobenius_distance(&oracle)
                / oracle.frobenius_norm().max(1.0);
            assert!(rel <= 1e-12);
        }
    }

    #[test]
    fn trace_composition_edge_cases() {
        let e2 = identity_triple(Ring::Rational, 2);
        assert_eq!(compose_via_trace(&e2, &e2).unwrap(), e2);

        let f = Triple::new(Matrix::from_i64(Ring::Fp(5), &[&[3]]));
        let g = Triple::new(Matrix::from_i64(Ring::Fp(5), &[&[4]]));
        assert_eq!(
            compose_via_trace(&g, &f).unwrap().matrix().get(0, 0),
            &Scalar::fp(5, 2)
        );

        // Through a zero-dimensional middle space the composite is zero.
        let into_zero = Triple::new(Matrix::zeros(Ring::Rational, 0, 3));
        let out_of_zero = Triple::new(Matrix::zeros(Ring::Rational, 2, 0));
        let z = compose_via_trace(&out_of_zero, &into_zero).unwrap();
        assert_eq!((z.tgt_dim(), z.src_dim()), (2, 3));
        assert!(z.matrix().is_zero());

        let wrong = Triple::new(Matrix::zeros(Ring::Rational, 3, 3));
        assert!(compose_via_trace(&wrong, &out_of_zero).is_err());
    }

    #[test]
    fn category_axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let f = Triple::new(random_matrix(Ring::Rational, 3, 2, &mut rng));
            let g = Triple::new(random_matrix(Ring::Rational, 4, 3, &mut rng));
            let h = Triple::new(random_matrix(Ring::Rational, 2, 4, &mut rng));
            let left = compose_via_trace(&h, &compose_via_trace(&g, &f).unwrap()).unwrap();
            let right = compose_via_trace(&compose_via_trace(&h, &g).unwrap(), &f).unwrap();
            assert_eq!(left, right);
            let id_src = identity_triple(Ring::Rational, f.src_dim());
            let id_tgt = identity_triple(Ring::Rational, f.tgt_dim());
            assert_eq!(compose_via_trace(&f, &id_src).unwrap(), f);
            assert_eq!(compose_via_trace(&id_tgt, &f).unwrap(), f);
            let c = compose_via_trace(&g, &f).unwrap();
            assert_eq!(c.src_dim(), f.src_dim());
            assert_eq!(c.tgt_dim(), g.tgt_dim());
        }
    }

    #[test]
    fn pointwise_structure() {
        let a = Triple::new(Matrix::from_i64(Ring::Rational, &[&[2]]));
        let b = Triple::new(Matrix::from_i64(Ring::Rational, &[&[5]]));
        let sum = oplus1(&a, &b).unwrap();
        assert_eq!(
            *sum.matrix(),
            Matrix::from_i64(Ring::Rational, &[&[2, 0], &[0, 5]])
        );

        let zeroed = scale(&Scalar::from_i64(Ring::Rational, 0), &sum).unwrap();
        assert!(zeroed.matrix().is_zero());

        let doubled = add(&a, &a).unwrap();
        assert_eq!(*doubled.matrix(), Matrix::from_i64(Ring::Rational, &[&[4]]));
        assert!(add(&a, &sum).is_err());

        // Tensoring with the one-dimensional identity changes nothing.
        let m = Triple::new(Matrix::from_i64(Ring::Rational, &[&[1, 2], &[3, 4]]));
        let e1 = identity_triple(Ring::Rational, 1);
        assert_eq!(tensor1(&m, &e1).unwrap(), m);
        assert_eq!(tensor0(3, 4), 12);
        // Mixed-product law ties tensor1 to composition.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let f = Triple::new(random_matrix(Ring::Fp(5), 2, 3, &mut rng));
            let g = Triple::new(random_matrix(Ring::Fp(5), 3, 2, &mut rng));
            let x = Triple::new(random_matrix(Ring::Fp(5), 2, 2, &mut rng));
            let y = Triple::new(random_matrix(Ring::Fp(5), 2, 2, &mut rng));
            let lhs = compose_via_trace(&tensor1(&g, &y).unwrap(), &tensor1(&f, &x).unwrap())
                .unwrap();
            let rhs = tensor1(
                &compose_via_trace(&g, &f).unwrap(),
                &compose_via_trace(&y, &x).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    /// A coherent chain rep on the n-simplex: random consecutive edges,
    /// all longer edges forced to the corresponding products.
    pub(crate) fn random_chain_rep(
        ring: Ring,
        dims: &[usize],
        rng: &mut ChaCha8Rng,
    ) -> Rep {
        let n = dims.len() - 1;
        let shape = standard_simplex(n).unwrap();
        let mut dim_map = BTreeMap::new();
        for (i, d) in dims.iter().enumerate() {
            dim_map.insert(format!("v{i}"), *d);
        }
        let mut mats = BTreeMap::new();
        for i in 0..n {
            mats.insert(
                format!("e{}_{}", i, i + 1),
                random_matrix(ring, dims[i + 1], dims[i], rng),
            );
        }
        for (i, &di) in dims.iter().enumerate() {
            for j in (i + 2)..=n {
                let mut acc = Matrix::identity(ring, di);
                for k in i..j {
                    acc = mats[&format!("e{}_{}", k, k + 1)].mul(&acc).unwrap();
                }
                mats.insert(format!("e{i}_{j}"), acc);
            }
        }
        Rep::from_mats(shape, dim_map, mats).unwrap()
    }

    #[test]
    fn validate_rep_flags_exactly_the_broken_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut r = random_chain_rep(Ring::Fp(7), &[2, 2, 2], &mut rng);
        assert!(validate_rep(&r, 0.0).is_empty());

        // Perturb the long edge: exactly one witness breaks.
        let bad = r.mat("e0_2").unwrap().add(&Matrix::identity(Ring::Fp(7), 2)).unwrap();
        r.set_mat("e0_2", bad).unwrap();
        let diags = validate_rep(&r, 0.0);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].contains("t0_1_2"));
    }

    #[test]
    fn float_validation_uses_the_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut r = random_chain_rep(Ring::Float, &[2, 2, 2], &mut rng);
        let mut nudged = r.mat("e0_2").unwrap().clone();
        let bumped = nudged.get(0, 0).add(&Scalar::Float(1e-12));
        nudged.set(0, 0, bumped);
        r.set_mat("e0_2", nudged).unwrap();
        assert!(validate_rep(&r, 1e-9).is_empty());
        assert_eq!(validate_rep(&r, 1e-15).len(), 1);
    }

    #[test]
    fn rep_construction_rejects_bad_data() {
        let shape = standard_simplex(1).unwrap();
        let mut dims = BTreeMap::new();
        dims.insert("v0".to_string(), 2);
        assert!(Rep::zero(&shape, Ring::Fp(3), &dims).is_err(), "missing v1 dim");
        dims.insert("v1".to_string(), 3);
        let mut r = Rep::zero(&shape, Ring::Fp(3), &dims).unwrap();
        assert!(r.set_mat("e0_1", Matrix::zeros(Ring::Fp(3), 2, 2)).is_err());
        assert!(r.set_mat("e0_1", Matrix::zeros(Ring::Fp(5), 3, 2)).is_err());
        assert!(r.set_mat("ghost", Matrix::zeros(Ring::Fp(3), 1, 1)).is_err());
        assert!(r.set_mat("e0_1", Matrix::zeros(Ring::Fp(3), 3, 2)).is_ok());
    }

    #[test]
    fn restrict_identity_and_endpoint_selection() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let r = random_chain_rep(Ring::Rational, &[2, 3, 2], &mut rng);
        let same = restrict_along(&[0, 1, 2], &r).unwrap();
        assert_eq!(same, r);

        // Selecting the endpoints composes the two steps.
        let ends = restrict_along(&[0, 2], &r).unwrap();
        let composite = r.mat("e1_2").unwrap().mul(r.mat("e0_1").unwrap()).unwrap();
        assert_eq!(ends.mat("e0_1").unwrap(), &composite);
        assert_eq!(ends.mat("e0_1").unwrap(), r.mat("e0_2").unwrap());

        assert!(restrict_along(&[0, 0, 1], &r).is_err(), "not strictly monotone");
        assert!(restrict_along(&[0, 3], &r).is_err(), "out of range");
    }

    #[test]
    fn degenerate_inserts_identity_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let r = random_chain_rep(Ring::Fp(5), &[2, 3], &mut rng);
        let stretched = degenerate_along(&[0, 0, 1], &r).unwrap();
        assert!(stretched.mat("e0_1").unwrap().is_identity());
        assert_eq!(stretched.mat("e1_2").unwrap(), r.mat("e0_1").unwrap());
        assert_eq!(stretched.mat("e0_2").unwrap(), r.mat("e0_1").unwrap());
        assert!(validate_rep(&stretched, 0.0).is_empty());

        assert!(degenerate_along(&[0, 0], &r).is_err(), "not surjective");
        assert!(degenerate_along(&[1, 0], &r).is_err(), "not monotone");

        // A section of the collapse restores the original rep.
        let back = restrict_along(&[0, 2], &stretched).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn chain_functor_laws_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
            let r = random_chain_rep(Ring::Fp(3), &dims, &mut rng);
            // sigma: [3] -> [3] surjective collapse patterns, iota into [3].
            let sigma = [0usize, 1, 1, 2, 3];
            let stretched = degenerate_along(&sigma, &r).unwrap();
            let iota = [0usize, 2, 4];
            let restricted = restrict_along(&iota, &stretched).unwrap();
            let composite: Vec<usize> = iota.iter().map(|&i| sigma[i]).collect();
            let direct = reindex_along(&composite, &r).unwrap();
            assert_eq!(restricted, direct);
        }
    }

    #[test]
    fn coherence_verdicts_agree_and_detect_breaks() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let r = random_chain_rep(Ring::Fp(2), &[1, 2, 2, 1], &mut rng);
        assert!(check_chain_coherence(&r, 0.0).unwrap());
        assert!(validate_rep(&r, 0.0).is_empty());

        let mut broken = r.clone();
        let flipped = broken.mat("e0_3").unwrap().add(
            &Matrix::from_i64(Ring::Fp(2), &[&[1]]),
        ).unwrap();
        broken.set_mat("e0_3", flipped).unwrap();
        assert!(!check_chain_coherence(&broken, 0.0).unwrap());
        assert!(!validate_rep(&broken, 0.0).is_empty());

        let skeleton_rep = {
            let shape = one_skeleton(2).unwrap();
            let dims: BTreeMap<String, usize> =
                [("v0", 1), ("v1", 1), ("v2", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
            Rep::zero(&shape, Ring::Fp(2), &dims).unwrap()
        };
        assert!(check_chain_coherence(&skeleton_rep, 0.0).is_err());

        let big = random_chain_rep(Ring::Fp(2), &[1; 10], &mut rng);
        assert!(check_chain_coherence(&big, 0.0).is_err(), "n=9 exceeds the cap");
    }
}
