//! Finite 2-truncated simplicial sets. Cells are named by string ids.
//! A triangle records a composition witness: its `long` edge is asserted
//! to be the composite of `first` followed by `second`. Degenerate edges
//! carry an identity tag and are excluded from advertised edge counts.
//!
//! Orientation convention, used everywhere downstream: the 0th face of an
//! edge is its source and the 1st face is its target.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub tgt: String,
    /// True for degenerate edges; reps must assign these the identity matrix.
    pub identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub id: String,
    /// First leg, from the triangle's initial vertex.
    pub first: String,
    /// Second leg, out of the first leg's target.
    pub second: String,
    /// The asserted composite of `second` after `first`.
    pub long: String,
}

#[derive(Clone, Debug, Default)]
pub struct SSet2 {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    vertex_pos: BTreeMap<String, usize>,
    edge_pos: BTreeMap<String, usize>,
}

impl PartialEq for SSet2 {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.triangles == other.triangles
    }
}

impl Eq for SSet2 {}

impl SSet2 {
    pub fn new() -> SSet2 {
        SSet2::default()
    }

    /// Assembles a shape from raw parts without checking anything; run
    /// [`SSet2::validate`] to collect diagnostics. Duplicate ids resolve to
    /// the first occurrence for lookup purposes.
    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>, triangles: Vec<Triangle>) -> SSet2 {
        let mut s = SSet2 {
            vertices,
            edges,
            triangles,
            vertex_pos: BTreeMap::new(),
            edge_pos: BTreeMap::new(),
        };
        s.rebuild_index();
        s
    }

    fn rebuild_index(&mut self) {
        self.vertex_pos.clear();
        for (i, v) in self.vertices.iter().enumerate() {
            self.vertex_pos.entry(v.clone()).or_insert(i);
        }
        self.edge_pos.clear();
        for (i, e) in self.edges.iter().enumerate() {
            self.edge_pos.entry(e.id.clone()).or_insert(i);
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<()> {
        let id = id.into();
        if self.vertex_pos.contains_key(&id) {
            return Err(Error::Shape(format!("duplicate vertex id {id:?}")));
        }
        self.vertex_pos.insert(id.clone(), self.vertices.len());
        self.vertices.push(id);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Result<()> {
        self.push_edge(id.into(), src.into(), tgt.into(), false)
    }

    /// Adds a degenerate edge at `vertex`.
    pub fn add_identity_edge(
        &mut self,
        id: impl Into<String>,
        vertex: impl Into<String>,
    ) -> Result<()> {
        let v = vertex.into();
        self.push_edge(id.into(), v.clone(), v, true)
    }

    fn push_edge(&mut self, id: String, src: String, tgt: String, identity: bool) -> Result<()> {
        if self.edge_pos.contains_key(&id) {
            return Err(Error::Shape(format!("duplicate edge id {id:?}")));
        }
        for v in [&src, &tgt] {
            if !self.vertex_pos.contains_key(v) {
                return Err(Error::Shape(format!(
                    "edge {id:?} refers to missing vertex {v:?}"
                )));
            }
        }
        self.edge_pos.insert(id.clone(), self.edges.len());
        self.edges.push(Edge {
            id,
            src,
            tgt,
            identity,
        });
        Ok(())
    }

    pub fn add_triangle(
        &mut self,
        id: impl Into<String>,
        first: impl Into<String>,
        second: impl Into<String>,
        long: impl Into<String>,
    ) -> Result<()> {
        let id = id.into();
        let (first, second, long) = (first.into(), second.into(), long.into());
        if self.triangles.iter().any(|t| t.id == id) {
            return Err(Error::Shape(format!("duplicate triangle id {id:?}")));
        }
        let f = self
            .edge(&first)
            .ok_or_else(|| Error::Shape(format!("triangle {id:?} refers to missing edge {first:?}")))?;
        let s = self
            .edge(&second)
            .ok_or_else(|| Error::Shape(format!("triangle {id:?} refers to missing edge {second:?}")))?;
        let l = self
            .edge(&long)
            .ok_or_else(|| Error::Shape(format!("triangle {id:?} refers to missing edge {long:?}")))?;
        if f.tgt != s.src || f.src != l.src || s.tgt != l.tgt {
            return Err(Error::Shape(format!(
                "triangle {id:?} has incompatible faces: {first:?}: {}->{}, {second:?}: {}->{}, {long:?}: {}->{}",
                f.src, f.tgt, s.src, s.tgt, l.src, l.tgt
            )));
        }
        self.triangles.push(Triangle {
            id,
            first,
            second,
            long,
        });
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_pos.contains_key(id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_pos.get(id).map(|&i| &self.edges[i])
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_pos.get(id).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of non-degenerate edges; identity edges are bookkeeping.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.identity).count()
    }

    pub fn identity_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.identity).count()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Collects every structural violation; empty means the shape is a valid
    /// 2-truncated simplicial set. Each diagnostic names the offending id.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for v in &self.vertices {
            if seen.insert(v.clone(), ()).is_some() {
                out.push(format!("duplicate vertex id {v:?}"));
            }
        }
        let mut seen_edges = BTreeMap::new();
        for e in &self.edges {
            if seen_edges.insert(e.id.clone(), ()).is_some() {
                out.push(format!("duplicate edge id {:?}", e.id));
            }
            for v in [&e.src, &e.tgt] {
                if !self.vertex_pos.contains_key(v) {
                    out.push(format!("edge {:?} refers to missing vertex {v:?}", e.id));
                }
            }
            if e.identity && e.src != e.tgt {
                out.push(format!(
                    "identity edge {:?} has distinct endpoints {:?} and {:?}",
                    e.id, e.src, e.tgt
                ));
            }
        }
        let mut seen_tris = BTreeMap::new();
        for t in &self.triangles {
            if seen_tris.insert(t.id.clone(), ()).is_some() {
                out.push(format!("duplicate triangle id {:?}", t.id));
            }
            let faces = [&t.first, &t.second, &t.long];
            let mut resolved = Vec::new();
            for f in faces {
                match self.edge(f) {
                    Some(e) => resolved.push(e),
                    None => out.push(format!("triangle {:?} refers to missing edge {f:?}", t.id)),
                }
            }
            if let [f, s, l] = resolved[..] {
                if f.tgt != s.src {
                    out.push(format!(
                        "triangle {:?}: first leg {:?} ends at {:?} but second leg {:?} starts at {:?}",
                        t.id, f.id, f.tgt, s.id, s.src
                    ));
                }
                if f.src != l.src {
                    out.push(format!(
                        "triangle {:?}: long edge {:?} starts at {:?}, expected {:?}",
                        t.id, l.id, l.src, f.src
                    ));
                }
                if s.tgt != l.tgt {
                    out.push(format!(
                        "triangle {:?}: long edge {:?} ends at {:?}, expected {:?}",
                        t.id, l.id, l.tgt, s.tgt
                    ));
                }
            }
        }
        out
    }

    /// Reorders cells deterministically: vertices lexicographically, edges by
    /// endpoints then id, triangles by faces then id. Ids are untouched, so
    /// two shapes built with the same names in different orders compare equal
    /// after sorting.
    pub fn sorted(&self) -> SSet2 {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut edges = self.edges.clone();
        edges.sort_by(|a, b| {
            (&a.src, &a.tgt, &a.id).cmp(&(&b.src, &b.tgt, &b.id))
        });
        let mut triangles = self.triangles.clone();
        triangles.sort_by(|a, b| {
            (&a.first, &a.second, &a.long, &a.id).cmp(&(&b.first, &b.second, &b.long, &b.id))
        });
        SSet2::from_parts(vertices, edges, triangles)
    }

    pub fn to_json_value(&self) -> Value {
        let mut root = Map::new();
        root.insert(
            "vertices".to_string(),
            Value::Array(self.vertices.iter().map(|v| Value::from(v.clone())).collect()),
        );
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("id".to_string(), Value::from(e.id.clone()));
                m.insert("src".to_string(), Value::from(e.src.clone()));
                m.insert("tgt".to_string(), Value::from(e.tgt.clone()));
                if e.identity {
                    m.insert("identity".to_string(), Value::Bool(true));
                }
                Value::Object(m)
            })
            .collect();
        root.insert("edges".to_string(), Value::Array(edges));
        let triangles: Vec<Value> = self
            .triangles
            .iter()
            .map(|t| {
                let mut m = Map::new();
                m.insert("id".to_string(), Value::from(t.id.clone()));
                m.insert("first".to_string(), Value::from(t.first.clone()));
                m.insert("second".to_string(), Value::from(t.second.clone()));
                m.insert("long".to_string(), Value::from(t.long.clone()));
                Value::Object(m)
            })
            .collect();
        root.insert("triangles".to_string(), Value::Array(triangles));
        Value::Object(root)
    }

    pub fn to_canonical_json(&self) -> String {
        json::to_canonical_string(&self.to_json_value())
    }

    pub fn from_json_value(v: &Value) -> Result<SSet2> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("expected a shape object".to_string()))?;
        let vertices = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing vertices array".to_string()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Json(format!("vertex id {x} is not a string")))
            })
            .collect::<Result<Vec<_>>>()?;
        let str_field = |m: &Map<String, Value>, key: &str| -> Result<String> {
            m.get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::Json(format!("missing string field {key:?}")))
        };
        let edges = obj
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing edges array".to_string()))?
            .iter()
            .map(|x| {
                let m = x
                    .as_object()
                    .ok_or_else(|| Error::Json("edge is not an object".to_string()))?;
                Ok(Edge {
                    id: str_field(m, "id")?,
                    src: str_field(m, "src")?,
                    tgt: str_field(m, "tgt")?,
                    identity: m.get("identity").and_then(Value::as_bool).unwrap_or(false),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let triangles = obj
            .get("triangles")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing triangles array".to_string()))?
            .iter()
            .map(|x| {
                let m = x
                    .as_object()
                    .ok_or_else(|| Error::Json("triangle is not an object".to_string()))?;
                Ok(Triangle {
                    id: str_field(m, "id")?,
                    first: str_field(m, "first")?,
                    second: str_field(m, "second")?,
                    long: str_field(m, "long")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SSet2::from_parts(vertices, edges, triangles))
    }

    pub fn from_json(text: &str) -> Result<SSet2> {
        SSet2::from_json_value(&json::parse(text)?)
    }
}

/// The full n-simplex: vertices `v0..vn`, one edge per ordered pair, one
/// composition witness per ordered triple. Supports n up to 16.
/// Largest `n` the stock chain constructors will build.
pub(crate) const SIMPLEX_CAP: usize = 16;

pub fn standard_simplex(n: usize) -> Result<SSet2> {
    if n > SIMPLEX_CAP {
        return Err(Error::Shape(format!(
            "standard simplex capped at n={SIMPLEX_CAP}, got {n}"
        )));
    }
    let mut s = SSet2::new();
    for i in 0..=n {
        s.add_vertex(format!("v{i}"))?;
    }
    for i in 0..=n {
        for j in (i + 1)..=n {
            s.add_edge(format!("e{i}_{j}"), format!("v{i}"), format!("v{j}"))?;
        }
    }
    for i in 0..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                s.add_triangle(
                    format!("t{i}_{j}_{k}"),
                    format!("e{i}_{j}"),
                    format!("e{j}_{k}"),
                    format!("e{i}_{k}"),
                )?;
            }
        }
    }
    Ok(s)
}

/// The 1-skeleton of the n-simplex: same vertices and edges, no witnesses.
pub fn one_skeleton(n: usize) -> Result<SSet2> {
    let full = standard_simplex(n)?;
    Ok(SSet2::from_parts(
        full.vertices.clone(),
        full.edges.clone(),
        Vec::new(),
    ))
}

/// The commuting square (the product of two intervals): two triangles
/// sharing the diagonal.
pub fn square() -> SSet2 {
    let mut s = SSet2::new();
    for v in ["a", "b", "c", "d"] {
        s.add_vertex(v).unwrap();
    }
    s.add_edge("u", "a", "b").unwrap();
    s.add_edge("v", "a", "c").unwrap();
    s.add_edge("w", "b", "d").unwrap();
    s.add_edge("y", "c", "d").unwrap();
    s.add_edge("diag", "a", "d").unwrap();
    s.add_triangle("t_uw", "u", "w", "diag").unwrap();
    s.add_triangle("t_vy", "v", "y", "diag").unwrap();
    s
}

/// Glues `b` onto `a` by identifying, for each pair `(va, vb)`, the vertex
/// `vb` of `b` with the vertex `va` of `a`. All other ids must be disjoint.
pub fn glue_at_vertices(a: &SSet2, b: &SSet2, pairs: &[(String, String)]) -> Result<SSet2> {
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut used_targets: BTreeMap<String, String> = BTreeMap::new();
    for (va, vb) in pairs {
        if !a.has_vertex(va) {
            return Err(Error::Shape(format!("gluing pair names missing vertex {va:?}")));
        }
        if !b.has_vertex(vb) {
            return Err(Error::Shape(format!("gluing pair names missing vertex {vb:?}")));
        }
        if rename.insert(vb.clone(), va.clone()).is_some() {
            return Err(Error::Shape(format!(
                "vertex {vb:?} appears in more than one gluing pair"
            )));
        }
        if let Some(prev) = used_targets.insert(va.clone(), vb.clone()) {
            return Err(Error::Shape(format!(
                "identification is not injective: both {prev:?} and {vb:?} map to {va:?}"
            )));
        }
    }
    let mut out = a.clone();
    for v in b.vertices() {
        if rename.contains_key(v) {
            continue;
        }
        out.add_vertex(v.clone())?;
    }
    let renamed = |v: &String| rename.get(v).unwrap_or(v).clone();
    for e in b.edges() {
        if e.identity {
            out.add_identity_edge(e.id.clone(), renamed(&e.src))?;
        } else {
            out.push_edge(e.id.clone(), renamed(&e.src), renamed(&e.tgt), false)?;
        }
    }
    for t in b.triangles() {
        out.add_triangle(t.id.clone(), t.first.clone(), t.second.clone(), t.long.clone())?;
    }
    Ok(out)
}

/// Reverses every edge and swaps the legs of every witness. An involution.
pub fn opposite(s: &SSet2) -> SSet2 {
    let edges = s
        .edges()
        .iter()
        .map(|e| Edge {
            id: e.id.clone(),
            src: e.tgt.clone(),
            tgt: e.src.clone(),
            identity: e.identity,
        })
        .collect();
    let triangles = s
        .triangles()
        .iter()
        .map(|t| Triangle {
            id: t.id.clone(),
            first: t.second.clone(),
            second: t.first.clone(),
            long: t.long.clone(),
        })
        .collect();
    SSet2::from_parts(s.vertices().to_vec(), edges, triangles)
}
