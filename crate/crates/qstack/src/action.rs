//! The change-of-basis action on representations, its encoding into the
//! gauge-extended shape, and finite-field point counts with their stacky
//! (groupoid) cardinalities.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::enumerate::{count_reps, enumerate_reps, ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{tilde, FramingFn};
use crate::rep::{validate_rep, Rep};
use crate::scalar::{Ring, Scalar};
use crate::sset::SSet2;

/// One invertible matrix per regular vertex; framing vertices are acted on
/// trivially. Inverses are computed once at construction.
#[derive(Clone, Debug)]
pub struct GaugeElement {
    mats: BTreeMap<String, Matrix>,
    invs: BTreeMap<String, Matrix>,
}

impl GaugeElement {
    pub fn new(mats: BTreeMap<String, Matrix>) -> Result<GaugeElement> {
        let mut invs = BTreeMap::new();
        for (v, m) in &mats {
            if !m.is_square() {
                return Err(Error::Dimension(format!(
                    "gauge matrix at {v:?} is {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            let inv = m
                .inverse()
                .map_err(|_| Error::Singular(format!("gauge matrix at {v:?} is singular")))?;
            invs.insert(v.clone(), inv);
        }
        Ok(GaugeElement { mats, invs })
    }

    /// The identity gauge at the given per-vertex dimensions.
    pub fn identity(ring: Ring, dims: &BTreeMap<String, usize>) -> GaugeElement {
        let mats = dims
            .iter()
            .map(|(v, d)| (v.clone(), Matrix::identity(ring, *d)))
            .collect();
        GaugeElement::new(mats).expect("identity matrices are invertible")
    }

    pub fn mats(&self) -> &BTreeMap<String, Matrix> {
        &self.mats
    }

    pub fn mat(&self, vertex: &str) -> Option<&Matrix> {
        self.mats.get(vertex)
    }

    pub fn inverse_mat(&self, vertex: &str) -> Option<&Matrix> {
        self.invs.get(vertex)
    }

    /// Vertexwise product `self * other` (apply `other` first).
    pub fn compose(&self, other: &GaugeElement) -> Result<GaugeElement> {
        if self.mats.len() != other.mats.len() {
            return Err(Error::Invalid("gauge elements live over different vertex sets".into()));
        }
        let mut mats = BTreeMap::new();
        for (v, m) in &self.mats {
            let o = other
                .mats
                .get(v)
                .ok_or_else(|| Error::Invalid(format!("no gauge matrix at {v:?}")))?;
            mats.insert(v.clone(), m.mul(o)?);
        }
        GaugeElement::new(mats)
    }
}

fn gauge_factor<'a>(
    g: &'a GaugeElement,
    f: &FramingFn,
    vertex: &str,
    dim: usize,
    ring: Ring,
    inverse: bool,
) -> Result<std::borrow::Cow<'a, Matrix>> {
    use std::borrow::Cow;
    if f.is_framing(vertex) {
        return Ok(Cow::Owned(Matrix::identity(ring, dim)));
    }
    let m = if inverse { g.inverse_mat(vertex) } else { g.mat(vertex) };
    let m = m.ok_or_else(|| Error::Invalid(format!("no gauge matrix at regular vertex {vertex:?}")))?;
    if m.rows() != dim {
        return Err(Error::Dimension(format!(
            "gauge matrix at {vertex:?} is {}x{}, vertex has dimension {dim}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(Cow::Borrowed(m))
}

/// Transforms every edge matrix by `x_e -> g_tgt * x_e * g_src^{-1}`, with
/// the identity at framing vertices. Preserves validity.
pub fn act(g: &GaugeElement, rep: &Rep, f: &FramingFn) -> Result<Rep> {
    f.check_total(rep.shape())?;
    let ring = rep.ring();
    let mut mats = BTreeMap::new();
    for e in rep.shape().edges() {
        let x = rep.mat(&e.id).expect("reps carry all edges");
        let left = gauge_factor(g, f, &e.tgt, rep.dims()[&e.tgt], ring, false)?;
        let right = gauge_factor(g, f, &e.src, rep.dims()[&e.src], ring, true)?;
        mats.insert(e.id.clone(), left.mul(x)?.mul(&right)?);
    }
    Rep::from_mats(rep.shape().clone(), rep.dims().clone(), mats)
}

/// Packs a gauge element and a representation into a single representation
/// of the gauge-extended shape: the unprimed cells carry `rho`, the primed
/// cells carry the translate `act(g, rho)`, the `g_v` edges carry `g`.
pub fn tilde_encode(g: &GaugeElement, rho: &Rep, f: &FramingFn) -> Result<Rep> {
    let shape = rho.shape();
    let tq = tilde(shape, f)?;
    let moved = act(g, rho, f)?;
    let ring = rho.ring();

    let mut dims = BTreeMap::new();
    let mut mats = BTreeMap::new();
    for v in shape.vertices() {
        dims.insert(v.clone(), rho.dims()[v]);
        if !f.is_framing(v) {
            dims.insert(tq.primed_vertex(v).unwrap().clone(), rho.dims()[v]);
        }
    }
    for e in shape.edges() {
        mats.insert(e.id.clone(), rho.mat(&e.id).unwrap().clone());
        if !(f.is_framing(&e.src) && f.is_framing(&e.tgt)) {
            mats.insert(
                tq.primed_edge(&e.id).unwrap().clone(),
                moved.mat(&e.id).unwrap().clone(),
            );
        }
    }
    for v in shape.vertices() {
        if f.is_framing(v) {
            continue;
        }
        let gv = g
            .mat(v)
            .ok_or_else(|| Error::Invalid(format!("no gauge matrix at regular vertex {v:?}")))?;
        if gv.rows() != rho.dims()[v] {
            return Err(Error::Dimension(format!(
                "gauge matrix at {v:?} is {}x{}, vertex has dimension {}",
                gv.rows(),
                gv.cols(),
                rho.dims()[v]
            )));
        }
        let (fwd, bwd) = tq.gauge_edge(v).unwrap().clone();
        mats.insert(fwd, gv.clone());
        mats.insert(bwd, g.inverse_mat(v).unwrap().clone());
        let d = rho.dims()[v];
        mats.insert(format!("id_{v}"), Matrix::identity(ring, d));
        mats.insert(
            format!("id_{}", tq.primed_vertex(v).unwrap()),
            Matrix::identity(ring, d),
        );
    }
    for (e, composite_id) in tq.composite_edges() {
        let edge = shape.edge(e).unwrap();
        let gv = g.mat(&edge.tgt).unwrap();
        mats.insert(composite_id.clone(), gv.mul(rho.mat(e).unwrap())?);
    }
    Rep::from_mats(tq.shape.clone(), dims, mats)
}

/// Unpacks a representation of the gauge-extended shape back into the gauge
/// element, the unprimed representation, and the primed representation.
/// The primed part always equals `act(g, rho)`; this is re-checked.
pub fn tilde_decode(
    original: &SSet2,
    f: &FramingFn,
    rep: &Rep,
    tol: f64,
) -> Result<(GaugeElement, Rep, Rep)> {
    let tq = tilde(original, f)?;
    if *rep.shape() != tq.shape {
        return Err(Error::Shape("representation does not live on the gauge-extended shape".into()));
    }
    let problems = validate_rep(rep, tol);
    if !problems.is_empty() {
        return Err(Error::Invalid(format!(
            "input is not a representation: {}",
            problems.join("; ")
        )));
    }
    for v in original.vertices() {
        if !f.is_framing(v) && rep.dims()[v] != rep.dims()[tq.primed_vertex(v).unwrap()] {
            return Err(Error::Dimension(format!(
                "vertex {v:?} and its primed copy have different dimensions"
            )));
        }
    }

    let mut gauge_mats = BTreeMap::new();
    for v in original.vertices() {
        if !f.is_framing(v) {
            let (fwd, _) = tq.gauge_edge(v).unwrap();
            gauge_mats.insert(v.clone(), rep.mat(fwd).unwrap().clone());
        }
    }
    let g = GaugeElement::new(gauge_mats)?;

    let mut dims = BTreeMap::new();
    for v in original.vertices() {
        dims.insert(v.clone(), rep.dims()[v]);
    }
    let mut rho_mats = BTreeMap::new();
    let mut psi_mats = BTreeMap::new();
    for e in original.edges() {
        rho_mats.insert(e.id.clone(), rep.mat(&e.id).unwrap().clone());
        let primed_source = if f.is_framing(&e.src) && f.is_framing(&e.tgt) {
            e.id.clone()
        } else {
            tq.primed_edge(&e.id).unwrap().clone()
        };
        psi_mats.insert(e.id.clone(), rep.mat(&primed_source).unwrap().clone());
    }
    let rho = Rep::from_mats(original.clone(), dims.clone(), rho_mats)?;
    let psi = Rep::from_mats(original.clone(), dims, psi_mats)?;

    let moved = act(&g, &rho, f)?;
    for (id, m) in psi.mats() {
        if !m.eq_within(moved.mat(id).unwrap(), tol) {
            return Err(Error::Invalid(format!(
                "primed edge for {id:?} does not carry the gauge translate"
            )));
        }
    }
    Ok((g, rho, psi))
}

/// Order of the general linear group over `F_p` in dimension `d`:
/// the product of `p^d - p^i` for `i < d`.
pub fn gl_order(p: u64, d: usize) -> BigUint {
    let pb = BigUint::from(p);
    let pd = pb.pow(d as u32);
    let mut order = BigUint::from(1u32);
    for i in 0..d {
        order *= &pd - pb.pow(i as u32);
    }
    order
}

/// Point count of a shape over `F_p` together with the order of the gauge
/// group (regular vertices only) and the stacky quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub rep_count: BigUint,
    pub gauge_order: BigUint,
    pub stacky: BigRational,
}

pub fn count_points(
    shape: &SSet2,
    dims: &BTreeMap<String, usize>,
    p: u64,
    f: &FramingFn,
) -> Result<CountReport> {
    f.check_total(shape)?;
    let rep_count = BigUint::from(count_reps(shape, dims, p)?);
    let mut gauge_order = BigUint::from(1u32);
    for v in shape.vertices() {
        if !f.is_framing(v) {
            let d = *dims
                .get(v)
                .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {v:?}")))?;
            gauge_order *= gl_order(p, d);
        }
    }
    let stacky = BigRational::new(
        BigInt::from(rep_count.clone()),
        BigInt::from(gauge_order.clone()),
    );
    Ok(CountReport {
        rep_count,
        gauge_order,
        stacky,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub size: u64,
    pub stabilizer_order: u64,
}

/// Full orbit decomposition of the representation set under the gauge
/// group, with stabilizer orders. Only viable for small instances; guarded
/// by [`ENUMERATION_BUDGET`] on `|reps| * |group|`.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub rep_count: u64,
    pub group_order: u64,
    pub orbits: Vec<OrbitInfo>,
    /// Sum over orbits of `1 / stabilizer order`.
    pub stacky: BigRational,
}

fn digit_key(rep: &Rep) -> Vec<u64> {
    let mut key = Vec::new();
    for (id, m) in rep.mats() {
        if rep.shape().edge(id).map(|e| e.identity).unwrap_or(false) {
            continue;
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                match m.get(i, j) {
                    Scalar::Fp { value, .. } => key.push(*value),
                    _ => unreachable!("census runs over prime fields"),
                }
            }
        }
    }
    key
}

fn all_invertible(p: u64, d: usize) -> Result<Vec<Matrix>> {
    let ring = Ring::prime_field(p)?;
    let cells = d * d;
    let mut budget = 1u128;
    for _ in 0..cells {
        budget = budget.saturating_mul(p as u128);
        if budget > ENUMERATION_BUDGET {
            return Err(Error::Guard(format!(
                "enumerating {d}x{d} matrices over F_{p} exceeds the budget"
            )));
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; cells];
    loop {
        let mut m = Matrix::zeros(ring, d, d);
        for (k, &v) in digits.iter().enumerate() {
            m.set(k / d, k % d, Scalar::fp(p, v));
        }
        if m.inverse().is_ok() {
            out.push(m);
        }
        let mut carried = true;
        for i in (0..cells).rev() {
            if digits[i] + 1 < p {
                digits[i] += 1;
                carried = false;
                break;
            }
            digits[i] = 0;
        }
        if carried {
            break;
        }
    }
    Ok(out)
}

pub fn orbit_census(
    shape: &SSet2,
    dims: &BTreeMap<String, usize>,
    p: u64,
    f: &FramingFn,
) -> Result<OrbitCensus> {
    f.check_total(shape)?;
    let report = count_points(shape, dims, p, f)?;
    let rep_count: u64 = report
        .rep_count
        .clone()
        .try_into()
        .map_err(|_| Error::Guard("representation count overflows the census".into()))?;
    let group_order: u64 = report
        .gauge_order
        .clone()
        .try_into()
        .map_err(|_| Error::Guard("gauge group order overflows the census".into()))?;
    if (rep_count as u128) * (group_order as u128) > ENUMERATION_BUDGET {
        return Err(Error::Guard(format!(
            "{rep_count} representations times {group_order} gauge elements exceeds the {ENUMERATION_BUDGET} budget"
        )));
    }

    let reps: Vec<Rep> = enumerate_reps(shape, dims, p)?.collect();
    let mut index = BTreeMap::new();
    for (i, r) in reps.iter().enumerate() {
        index.insert(digit_key(r), i);
    }

    // Materialize the gauge group as an odometer over per-vertex GL lists.
    let regular: Vec<&String> = shape.vertices().iter().filter(|v| !f.is_framing(v)).collect();
    let mut per_vertex = Vec::new();
    for v in &regular {
        per_vertex.push(all_invertible(p, dims[v.as_str()])?);
    }
    let mut group = Vec::new();
    let mut picks = vec![0usize; regular.len()];
    loop {
        let mut mats = BTreeMap::new();
        for (k, v) in regular.iter().enumerate() {
            mats.insert((*v).clone(), per_vertex[k][picks[k]].clone());
        }
        group.push(GaugeElement::new(mats)?);
        let mut carried = true;
        for i in (0..picks.len()).rev() {
            if picks[i] + 1 < per_vertex[i].len() {
                picks[i] += 1;
                carried = false;
                break;
            }
            picks[i] = 0;
        }
        if carried {
            break;
        }
    }
    assert_eq!(group.len() as u64, group_order);

    let mut visited = vec![false; reps.len()];
    let mut orbits = Vec::new();
    for i in 0..reps.len() {
        if visited[i] {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut stabilizer = 0u64;
        for g in &group {
            let moved = act(g, &reps[i], f)?;
            let j = *index
                .get(&digit_key(&moved))
                .expect("the action permutes the representation set");
            members.insert(j);
            if j == i {
                stabilizer += 1;
            }
        }
        let size = members.len() as u64;
        assert_eq!(
            size * stabilizer,
            group_order,
            "orbit-stabilizer accounting failed; this is a library bug"
        );
        for &j in &members {
            visited[j] = true;
        }
        orbits.push(OrbitInfo {
            size,
            stabilizer_order: stabilizer,
        });
    }

    let mut stacky = BigRational::from_integer(BigInt::from(0));
    let mut total = 0u64;
    for o in &orbits {
        stacky += BigRational::new(BigInt::from(1), BigInt::from(o.stabilizer_order));
        total += o.size;
    }
    assert_eq!(total, rep_count, "orbits must partition the representation set");
    assert_eq!(stacky, report.stacky, "orbit mass must equal the stacky count");
    Ok(OrbitCensus {
        rep_count,
        group_order,
        orbits,
        stacky,
    })
}
