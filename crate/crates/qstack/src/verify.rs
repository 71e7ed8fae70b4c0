//! Self-check suites runnable from the command line. Each suite draws
//! deterministic pseudo-random instances, checks a law against an
//! independently coded expectation, and reports failures individually.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{act, count_points, tilde_decode, tilde_encode, GaugeElement};
use crate::enumerate::count_reps;
use crate::error::{Error, Result};
use crate::higgs::{higgs_to_diagram, integrability_check, HiggsDatum};
use crate::matrix::Matrix;
use crate::moment::{build_moment_map, equivariance_check, eval_moment, trace_sum};
use crate::quiver::{frame, tilde, FramingFn};
use crate::rep::{
    add, check_chain_coherence, compose_via_trace, degenerate_along, identity_triple,
    reindex_along, restrict_along, scale, tensor1, validate_rep, Rep, Triple,
};
use crate::scalar::{Ring, Scalar};
use crate::sset::{one_skeleton, standard_simplex, SSet2};

pub const SUITES: [&str; 7] = [
    "trace-composition",
    "internal-category",
    "simplicial-functoriality",
    "moment-assembly",
    "higgs-equivalence",
    "tilde-bijection",
    "chain-coherence",
];

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one named suite, or all of them for `"all"`.
pub fn run_suite(name: &str, cases: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    match name {
        "all" => SUITES.iter().map(|s| run_one(s, cases, seed)).collect(),
        s if SUITES.contains(&s) => Ok(vec![run_one(s, cases, seed)?]),
        other => Err(Error::Invalid(format!(
            "unknown suite {other:?}; expected one of {} or \"all\"",
            SUITES.join(", ")
        ))),
    }
}

fn run_one(name: &str, cases: usize, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult {
        name: name.to_string(),
        cases: 0,
        failures: Vec::new(),
    };
    match name {
        "trace-composition" => trace_composition(cases, &mut rng, &mut out)?,
        "internal-category" => internal_category(cases, &mut rng, &mut out)?,
        "simplicial-functoriality" => simplicial_functoriality(cases, &mut rng, &mut out)?,
        "moment-assembly" => moment_assembly(cases, &mut rng, &mut out)?,
        "higgs-equivalence" => higgs_equivalence(cases, &mut rng, &mut out)?,
        "tilde-bijection" => tilde_bijection(cases, &mut rng, &mut out)?,
        "chain-coherence" => chain_coherence(cases, &mut rng, &mut out)?,
        other => return Err(Error::Invalid(format!("unknown suite {other:?}"))),
    }
    Ok(out)
}

fn random_matrix(ring: Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| {
        Scalar::from_i64(ring, rng.gen_range(-9..=9))
    })
    .unwrap()
}

fn random_invertible(ring: Ring, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, d, d, rng);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// Schoolbook row-column product, the oracle for the tensor-contraction
/// route.
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

fn trace_composition(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    for k in 0..cases {
        let ring = [Ring::Fp(7), Ring::Rational, Ring::Float][k % 3];
        let (u, v, w) = (
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
        );
        let f = Triple::new(random_matrix(ring, v, u, rng));
        let g = Triple::new(random_matrix(ring, w, v, rng));
        let got = compose_via_trace(&g, &f)?;
        let want = naive_matmul(g.matrix(), f.matrix());
        out.cases += 1;
        let ok = if ring.is_exact() {
            *got.matrix() == want
        } else {
            got.matrix().frobenius_distance(&want) <= 1e-12 * want.frobenius_norm().max(1.0)
        };
        if !ok {
            out.failures.push(format!(
                "case {k}: trace composition disagrees with the direct product over {ring} at {u}x{v}x{w}"
            ));
        }
    }
    Ok(())
}

fn internal_category(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    for k in 0..cases {
        let ring = [Ring::Fp(5), Ring::Rational][k % 2];
        let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=3)).collect();
        let f = Triple::new(random_matrix(ring, dims[1], dims[0], rng));
        let g = Triple::new(random_matrix(ring, dims[2], dims[1], rng));
        let h = Triple::new(random_matrix(ring, dims[3], dims[2], rng));
        out.cases += 1;
        let assoc_left = compose_via_trace(&h, &compose_via_trace(&g, &f)?)?;
        let assoc_right = compose_via_trace(&compose_via_trace(&h, &g)?, &f)?;
        if assoc_left != assoc_right {
            out.failures.push(format!("case {k}: associativity fails over {ring}"));
            continue;
        }
        let id_s = identity_triple(ring, f.src_dim());
        let id_t = identity_triple(ring, f.tgt_dim());
        if compose_via_trace(&f, &id_s)? != f || compose_via_trace(&id_t, &f)? != f {
            out.failures.push(format!("case {k}: unit laws fail over {ring}"));
            continue;
        }
        let c = compose_via_trace(&g, &f)?;
        if c.src_dim() != f.src_dim() || c.tgt_dim() != g.tgt_dim() {
            out.failures.push(format!("case {k}: source/target bookkeeping fails"));
            continue;
        }
        // Bilinearity of composition against sums and scalings.
        let f2 = Triple::new(random_matrix(ring, dims[1], dims[0], rng));
        let lam = Scalar::from_i64(ring, rng.gen_range(-3..=3));
        let lhs = compose_via_trace(&g, &add(&scale(&lam, &f)?, &f2)?)?;
        let rhs = add(
            &scale(&lam, &compose_via_trace(&g, &f)?)?,
            &compose_via_trace(&g, &f2)?,
        )?;
        if lhs != rhs {
            out.failures.push(format!("case {k}: bilinearity fails over {ring}"));
            continue;
        }
        // Mixed product: tensor then compose equals compose then tensor.
        let x = Triple::new(random_matrix(ring, 2, 2, rng));
        let y = Triple::new(random_matrix(ring, 2, 2, rng));
        let mixed_l = compose_via_trace(&tensor1(&g, &y)?, &tensor1(&f, &x)?)?;
        let mixed_r = tensor1(&compose_via_trace(&g, &f)?, &compose_via_trace(&y, &x)?)?;
        if mixed_l != mixed_r {
            out.failures.push(format!("case {k}: mixed product law fails over {ring}"));
        }
    }
    Ok(())
}

fn random_chain(ring: Ring, dims: &[usize], rng: &mut ChaCha8Rng) -> Rep {
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

fn simplicial_functoriality(
    cases: usize,
    rng: &mut ChaCha8Rng,
    out: &mut SuiteResult,
) -> Result<()> {
    for k in 0..cases {
        let n = 3;
        let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(1..=3)).collect();
        let chain = random_chain(Ring::Fp(5), &dims, rng);
        out.cases += 1;

        // Identity map is the identity functor.
        let idmap: Vec<usize> = (0..=n).collect();
        if reindex_along(&idmap, &chain)? != chain {
            out.failures.push(format!("case {k}: identity reindexing is not the identity"));
            continue;
        }
        // A surjection up from [n+1] followed by a section restricts back.
        let mut sigma: Vec<usize> = Vec::new();
        let repeat_at = rng.gen_range(0..=n);
        for v in 0..=n {
            sigma.push(v);
            if v == repeat_at {
                sigma.push(v);
            }
        }
        let stretched = degenerate_along(&sigma, &chain)?;
        let mut iota = Vec::new();
        let mut seen = usize::MAX;
        for (pos, &v) in sigma.iter().enumerate() {
            if v != seen {
                iota.push(pos);
                seen = v;
            }
        }
        let restricted = restrict_along(&iota, &stretched)?;
        let composite: Vec<usize> = iota.iter().map(|&i| sigma[i]).collect();
        let direct = reindex_along(&composite, &chain)?;
        if restricted != direct || restricted != chain {
            out.failures.push(format!(
                "case {k}: section after degeneracy differs from the composite reindexing"
            ));
            continue;
        }
        // Two random monotone maps compose functorially.
        let h1: Vec<usize> = {
            let mut v: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=n)).collect();
            v.sort();
            v
        };
        let h2: Vec<usize> = {
            let mut v: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
            v.sort();
            v
        };
        let inner = reindex_along(&h1, &chain)?;
        let outer = reindex_along(&h2, &inner)?;
        let direct = reindex_along(&h2.iter().map(|&i| h1[i]).collect::<Vec<_>>(), &chain)?;
        if outer != direct {
            out.failures.push(format!("case {k}: reindexing does not compose functorially"));
        }
    }
    Ok(())
}

fn moment_assembly(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    // Framed loop: the evaluated component must equal the commutator plus
    // the framing product, assembled independently.
    let mut loop_shape = SSet2::new();
    loop_shape.add_vertex("v").unwrap();
    loop_shape.add_edge("b", "v", "v").unwrap();
    let (framed, f) = frame(&loop_shape).unwrap();
    let (doubled, expr) = build_moment_map(&framed, &f)?;
    let dims: BTreeMap<String, usize> =
        [("v".to_string(), 2), ("fr_v".to_string(), 1)].into();

    for k in 0..cases {
        out.cases += 1;
        let mut rep = Rep::zero(&doubled.shape, Ring::Rational, &dims)?;
        let b1 = random_matrix(Ring::Rational, 2, 2, rng);
        let b2 = random_matrix(Ring::Rational, 2, 2, rng);
        let i_mat = random_matrix(Ring::Rational, 2, 1, rng);
        let j_mat = random_matrix(Ring::Rational, 1, 2, rng);
        rep.set_mat("b", b1.clone())?;
        rep.set_mat("b*", b2.clone())?;
        rep.set_mat("f_v", j_mat.clone())?;
        rep.set_mat("f_v*", i_mat.clone())?;
        let oracle = naive_matmul(&b1, &b2)
            .sub(&naive_matmul(&b2, &b1))?
            .add(&naive_matmul(&i_mat, &j_mat))?;
        let mu = eval_moment(&expr, &rep)?;
        if mu["v"] != oracle {
            out.failures.push(format!("case {k}: framed loop component disagrees with the direct formula"));
            continue;
        }

        // Equivariance under a random change of basis, over a prime field.
        let mut rep_p = Rep::zero(&doubled.shape, Ring::Fp(7), &dims)?;
        for (e, rows, cols) in [("b", 2, 2), ("b*", 2, 2), ("f_v", 1, 2), ("f_v*", 2, 1)] {
            rep_p.set_mat(e, random_matrix(Ring::Fp(7), rows, cols, rng))?;
        }
        let g = GaugeElement::new(
            [("v".to_string(), random_invertible(Ring::Fp(7), 2, rng))].into(),
        )?;
        if !equivariance_check(&expr, &rep_p, &g, &f, 0.0)? {
            out.failures.push(format!("case {k}: equivariance fails"));
            continue;
        }

        // Without framing, the traces must sum to zero.
        let f0 = FramingFn::all_regular(&loop_shape);
        let (doubled0, expr0) = build_moment_map(&loop_shape, &f0)?;
        let dims0: BTreeMap<String, usize> = [("v".to_string(), 3)].into();
        let mut rep0 = Rep::zero(&doubled0.shape, Ring::Rational, &dims0)?;
        rep0.set_mat("b", random_matrix(Ring::Rational, 3, 3, rng))?;
        rep0.set_mat("b*", random_matrix(Ring::Rational, 3, 3, rng))?;
        if !trace_sum(&expr0, &rep0)?.is_zero() {
            out.failures.push(format!("case {k}: unframed trace identity fails"));
        }
    }
    Ok(())
}

fn higgs_equivalence(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    for k in 0..cases {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        // Odd cases draw arbitrary tuples; even cases build commuting ones
        // as polynomials in a single random matrix.
        let phi: Vec<Matrix> = if k % 2 == 0 {
            let a = random_matrix(Ring::Rational, n, n, rng);
            let a2 = naive_matmul(&a, &a);
            (0..m)
                .map(|_| {
                    let c0 = Scalar::from_i64(Ring::Rational, rng.gen_range(-2..=2));
                    let c1 = Scalar::from_i64(Ring::Rational, rng.gen_range(-2..=2));
                    let c2 = Scalar::from_i64(Ring::Rational, rng.gen_range(-2..=2));
                    Matrix::identity(Ring::Rational, n)
                        .scale(&c0)
                        .unwrap()
                        .add(&a.scale(&c1).unwrap())
                        .unwrap()
                        .add(&a2.scale(&c2).unwrap())
                        .unwrap()
                })
                .collect()
        } else {
            (0..m).map(|_| random_matrix(Ring::Rational, n, n, rng)).collect()
        };
        let h = HiggsDatum::new(n, phi)?;
        out.cases += 1;
        let direct = integrability_check(&h, 0.0)?;
        let via_diagram = validate_rep(&higgs_to_diagram(&h)?, 0.0).is_empty();
        if direct != via_diagram {
            out.failures.push(format!(
                "case {k}: integrability ({direct}) and diagram validity ({via_diagram}) disagree at n={n} m={m}"
            ));
        }
    }
    Ok(())
}

fn tilde_bijection(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    // Exhaustive count on the interval: the gauge-extended shape has
    // exactly |gauge group| times |representations| points.
    let shape = one_skeleton(1)?;
    let f = FramingFn::all_regular(&shape);
    let tq = tilde(&shape, &f)?;
    for p in [2u64, 3] {
        let dims: BTreeMap<String, usize> =
            [("v0".to_string(), 1), ("v1".to_string(), 1)].into();
        let mut dims_ext = dims.clone();
        dims_ext.insert("v0'".to_string(), 1);
        dims_ext.insert("v1'".to_string(), 1);
        out.cases += 1;
        let extended = count_reps(&tq.shape, &dims_ext, p)?;
        let base = count_points(&shape, &dims, p, &f)?;
        let expected = base.gauge_order.clone() * base.rep_count.clone();
        if num_bigint::BigUint::from(extended) != expected {
            out.failures.push(format!(
                "p={p}: extended count {extended} differs from group times reps {expected}"
            ));
        }
    }

    // Random round trips through the encoding at mixed dimensions.
    let mut chain = SSet2::new();
    for v in ["a", "b", "w"] {
        chain.add_vertex(v).unwrap();
    }
    chain.add_edge("e", "a", "b").unwrap();
    chain.add_edge("j", "b", "w").unwrap();
    let fw = FramingFn::with_framing(&chain, &["w"])?;
    let dims: BTreeMap<String, usize> = [
        ("a".to_string(), 2),
        ("b".to_string(), 2),
        ("w".to_string(), 1),
    ]
    .into();
    for k in 0..cases {
        out.cases += 1;
        let mut rho = Rep::zero(&chain, Ring::Fp(5), &dims)?;
        rho.set_mat("e", random_matrix(Ring::Fp(5), 2, 2, rng))?;
        rho.set_mat("j", random_matrix(Ring::Fp(5), 1, 2, rng))?;
        let g = GaugeElement::new(
            [
                ("a".to_string(), random_invertible(Ring::Fp(5), 2, rng)),
                ("b".to_string(), random_invertible(Ring::Fp(5), 2, rng)),
            ]
            .into(),
        )?;
        let packed = tilde_encode(&g, &rho, &fw)?;
        if !validate_rep(&packed, 0.0).is_empty() {
            out.failures.push(format!("case {k}: encoded representation does not validate"));
            continue;
        }
        let (g2, rho2, psi) = tilde_decode(&chain, &fw, &packed, 0.0)?;
        if g2.mats() != g.mats() || rho2 != rho || psi != act(&g, &rho, &fw)? {
            out.failures.push(format!("case {k}: decode does not invert encode"));
        }
    }
    Ok(())
}

fn chain_coherence(cases: usize, rng: &mut ChaCha8Rng, out: &mut SuiteResult) -> Result<()> {
    for k in 0..cases {
        let n = rng.gen_range(2..=4);
        let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(1..=2)).collect();
        let chain = random_chain(Ring::Fp(5), &dims, rng);
        out.cases += 1;
        if !check_chain_coherence(&chain, 0.0)? {
            out.failures.push(format!("case {k}: a coherent chain was rejected"));
            continue;
        }
        // Bump one long edge: coherence must now fail.
        let mut broken = chain.clone();
        let target = format!("e0_{n}");
        let old = broken.mat(&target).unwrap().clone();
        let mut bump = Matrix::zeros(Ring::Fp(5), old.rows(), old.cols());
        bump.set(0, 0, Scalar::fp(5, 1));
        broken.set_mat(&target, old.add(&bump)?)?;
        if check_chain_coherence(&broken, 0.0)? {
            out.failures.push(format!("case {k}: a broken chain was accepted"));
        }
    }
    Ok(())
}
