//! Symbolic assembly and evaluation of the moment map attached to a framed
//! quiver: one endomorphism-valued component per regular vertex, built from
//! the doubled shape.
//!
//! Sign and orientation convention, fixed once here: each term is a loop at
//! its vertex, leaving via `first` and returning via `second`, contributing
//! `sign * M(second) * M(first)`. An edge `a: u -> v` between regular
//! vertices contributes `+ x_a x_{a*}` at `v` and `- x_{a*} x_a` at `u`;
//! an edge between a regular vertex and a framing vertex contributes its
//! into-the-regular-vertex composite with sign `+`, regardless of which way
//! the original edge points. Edges between two framing vertices contribute
//! nothing.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::action::{act, GaugeElement};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{double, require_classical, Doubled, FramingFn};
use crate::rep::{add, compose_via_trace, scale, Rep, Triple};
use crate::scalar::Scalar;
use crate::sset::SSet2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTerm {
    /// +1 or -1.
    pub sign: i8,
    /// Edge leaving the vertex.
    pub first: String,
    /// Edge returning to the vertex.
    pub second: String,
}

/// The moment map as data: per regular vertex, the signed loops whose sum
/// is that component. All edge ids refer to the doubled shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentExpr {
    components: BTreeMap<String, Vec<MomentTerm>>,
}

impl MomentExpr {
    pub fn components(&self) -> &BTreeMap<String, Vec<MomentTerm>> {
        &self.components
    }

    pub fn terms(&self, vertex: &str) -> Option<&[MomentTerm]> {
        self.components.get(vertex).map(Vec::as_slice)
    }

    /// The same expression with every sign flipped (evaluates to the
    /// negated moment map).
    pub fn negated(&self) -> MomentExpr {
        let components = self
            .components
            .iter()
            .map(|(v, terms)| {
                let flipped = terms
                    .iter()
                    .map(|t| MomentTerm {
                        sign: -t.sign,
                        first: t.first.clone(),
                        second: t.second.clone(),
                    })
                    .collect();
                (v.clone(), flipped)
            })
            .collect();
        MomentExpr { components }
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (v, terms) in &self.components {
            let arr: Vec<Value> = terms
                .iter()
                .map(|t| json!({"sign": t.sign, "first": t.first, "second": t.second}))
                .collect();
            map.insert(v.clone(), Value::Array(arr));
        }
        Value::Object(map)
    }
}

/// Doubles the framed shape and assembles the moment expression over it.
pub fn build_moment_map(framed: &SSet2, f: &FramingFn) -> Result<(Doubled, MomentExpr)> {
    require_classical(framed, "moment map input")?;
    f.check_total(framed)?;
    let doubled = double(framed)?;

    let mut components: BTreeMap<String, Vec<MomentTerm>> = BTreeMap::new();
    for v in framed.vertices() {
        if !f.is_framing(v) {
            components.insert(v.clone(), Vec::new());
        }
    }
    for e in framed.edges() {
        let rev = doubled
            .reverse_of(&e.id)
            .expect("doubling names a reverse for every edge")
            .clone();
        match (f.is_framing(&e.src), f.is_framing(&e.tgt)) {
            (false, false) => {
                components.get_mut(&e.tgt).unwrap().push(MomentTerm {
                    sign: 1,
                    first: rev.clone(),
                    second: e.id.clone(),
                });
                components.get_mut(&e.src).unwrap().push(MomentTerm {
                    sign: -1,
                    first: e.id.clone(),
                    second: rev,
                });
            }
            (false, true) => {
                components.get_mut(&e.src).unwrap().push(MomentTerm {
                    sign: 1,
                    first: e.id.clone(),
                    second: rev,
                });
            }
            (true, false) => {
                components.get_mut(&e.tgt).unwrap().push(MomentTerm {
                    sign: 1,
                    first: rev,
                    second: e.id.clone(),
                });
            }
            (true, true) => {}
        }
    }
    Ok((doubled, MomentExpr { components }))
}

/// Evaluates every component on a representation of the doubled shape,
/// going through the trace-pairing composition.
pub fn eval_moment(expr: &MomentExpr, rep: &Rep) -> Result<BTreeMap<String, Matrix>> {
    let ring = rep.ring();
    let mut out = BTreeMap::new();
    for (v, terms) in &expr.components {
        let d = rep
            .dim_of(v)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {v:?}")))?;
        let mut acc = Triple::new(Matrix::zeros(ring, d, d));
        for t in terms {
            let first = rep
                .triple(&t.first)
                .ok_or_else(|| Error::Invalid(format!("no matrix for edge {:?}", t.first)))?;
            let second = rep
                .triple(&t.second)
                .ok_or_else(|| Error::Invalid(format!("no matrix for edge {:?}", t.second)))?;
            let mut term = compose_via_trace(&second, &first)?;
            if t.sign < 0 {
                term = scale(&Scalar::from_i64(ring, -1), &term)?;
            }
            acc = add(&acc, &term)?;
        }
        out.insert(v.clone(), acc.into_matrix());
    }
    Ok(out)
}

/// Largest deviation, over regular vertices, of the evaluated moment map
/// from `lambda_v` times the identity, in Frobenius norm.
pub fn moment_residual(
    expr: &MomentExpr,
    rep: &Rep,
    lambda: &BTreeMap<String, Scalar>,
) -> Result<f64> {
    let values = eval_moment(expr, rep)?;
    let mut worst = 0.0f64;
    for (v, mu) in &values {
        let l = lambda
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("no level assigned to vertex {v:?}")))?;
        let target = Matrix::identity(rep.ring(), mu.rows()).scale(l)?;
        worst = worst.max(mu.frobenius_distance(&target));
    }
    Ok(worst)
}

/// Whether the moment map equals the level exactly (exact rings) or within
/// `tol` (floats).
pub fn moment_matches(
    expr: &MomentExpr,
    rep: &Rep,
    lambda: &BTreeMap<String, Scalar>,
    tol: f64,
) -> Result<bool> {
    let values = eval_moment(expr, rep)?;
    for (v, mu) in &values {
        let l = lambda
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("no level assigned to vertex {v:?}")))?;
        let target = Matrix::identity(rep.ring(), mu.rows()).scale(l)?;
        if !mu.eq_within(&target, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum of the traces of all components. Without framing vertices this is
/// identically zero: the two contributions of each doubled pair share a
/// trace and cancel.
pub fn trace_sum(expr: &MomentExpr, rep: &Rep) -> Result<Scalar> {
    let values = eval_moment(expr, rep)?;
    let mut acc = Scalar::zero(rep.ring());
    for mu in values.values() {
        acc = acc.add(&mu.trace()?);
    }
    Ok(acc)
}

/// A level is unreachable when the shape has no framing vertices and the
/// weighted sum of the level over dimensions is nonzero, because the trace
/// of the moment map is then forced to vanish.
pub fn lambda_obstructed(
    framed: &SSet2,
    f: &FramingFn,
    dims: &BTreeMap<String, usize>,
    lambda: &BTreeMap<String, Scalar>,
) -> Result<bool> {
    if framed.vertices().iter().any(|v| f.is_framing(v)) {
        return Ok(false);
    }
    let mut acc: Option<Scalar> = None;
    for v in framed.vertices() {
        let l = lambda
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("no level assigned to vertex {v:?}")))?;
        let d = *dims
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {v:?}")))?;
        let weighted = l.mul(&Scalar::from_i64(l.ring(), d as i64));
        acc = Some(match acc {
            None => weighted,
            Some(a) => a.add(&weighted),
        });
    }
    Ok(match acc {
        None => false,
        Some(total) => !total.is_zero(),
    })
}

/// The moment map intertwines the change-of-basis action: transforming the
/// representation conjugates each component. Verifies this on one instance.
pub fn equivariance_check(
    expr: &MomentExpr,
    rep: &Rep,
    g: &GaugeElement,
    f: &FramingFn,
    tol: f64,
) -> Result<bool> {
    let moved = act(g, rep, f)?;
    let before = eval_moment(expr, rep)?;
    let after = eval_moment(expr, &moved)?;
    for (v, mu) in &before {
        let gv = g
            .mat(v)
            .ok_or_else(|| Error::Invalid(format!("no gauge matrix at regular vertex {v:?}")))?;
        let conjugated = gv.mul(mu)?.mul(g.inverse_mat(v).unwrap())?;
        if !after[v].eq_within(&conjugated, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
