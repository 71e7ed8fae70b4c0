//! Quiver-level constructions on shapes: framing, doubling, the
//! gauge-encoding construction (which presents a group action as extra
//! cells), and the pentagon shape whose representations are Higgs data.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::sset::SSet2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    Regular,
    Framing,
}

/// Marks each vertex of a shape as regular or framing. Gauge groups,
/// moment components, and the gauge-encoding construction all act on the
/// regular part only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FramingFn {
    roles: BTreeMap<String, VertexRole>,
}

impl FramingFn {
    pub fn all_regular(shape: &SSet2) -> FramingFn {
        let roles = shape
            .vertices()
            .iter()
            .map(|v| (v.clone(), VertexRole::Regular))
            .collect();
        FramingFn { roles }
    }

    /// Every vertex regular except the listed framing ones.
    pub fn with_framing<T: AsRef<str>>(shape: &SSet2, framing: &[T]) -> Result<FramingFn> {
        let mut f = FramingFn::all_regular(shape);
        for v in framing {
            let v = v.as_ref();
            if !shape.has_vertex(v) {
                return Err(Error::Shape(format!("framing names missing vertex {v:?}")));
            }
            f.roles.insert(v.to_string(), VertexRole::Framing);
        }
        Ok(f)
    }

    pub fn set(&mut self, vertex: impl Into<String>, role: VertexRole) {
        self.roles.insert(vertex.into(), role);
    }

    pub fn role(&self, vertex: &str) -> Option<VertexRole> {
        self.roles.get(vertex).copied()
    }

    pub fn is_framing(&self, vertex: &str) -> bool {
        matches!(self.roles.get(vertex), Some(VertexRole::Framing))
    }

    /// Errors unless every vertex of `shape` has an assigned role.
    pub fn check_total(&self, shape: &SSet2) -> Result<()> {
        for v in shape.vertices() {
            if !self.roles.contains_key(v) {
                return Err(Error::Shape(format!("framing function misses vertex {v:?}")));
            }
        }
        Ok(())
    }

    pub fn regular_vertices<'a>(&self, shape: &'a SSet2) -> Vec<&'a String> {
        shape
            .vertices()
            .iter()
            .filter(|v| !self.is_framing(v))
            .collect()
    }

    pub fn to_json_value(&self) -> Value {
        let mut m = Map::new();
        for (v, role) in &self.roles {
            let tag = match role {
                VertexRole::Regular => "regular",
                VertexRole::Framing => "framing",
            };
            m.insert(v.clone(), Value::from(tag));
        }
        Value::Object(m)
    }

    pub fn from_json_value(v: &Value) -> Result<FramingFn> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("expected a vertex-to-role object".to_string()))?;
        let mut roles = BTreeMap::new();
        for (vertex, tag) in obj {
            let role = match tag.as_str() {
                Some("regular") => VertexRole::Regular,
                Some("framing") => VertexRole::Framing,
                _ => {
                    return Err(Error::Json(format!(
                        "role for {vertex:?} must be \"regular\" or \"framing\""
                    )))
                }
            };
            roles.insert(vertex.clone(), role);
        }
        Ok(FramingFn { roles })
    }
}

fn require_clean(shape: &SSet2, what: &str) -> Result<()> {
    let diags = shape.validate();
    if !diags.is_empty() {
        return Err(Error::Invalid(format!("{what} does not validate: {}", diags.join("; "))));
    }
    Ok(())
}

/// A classical quiver in this setting: validates, no triangles, no
/// identity edges.
pub fn require_classical(shape: &SSet2, what: &str) -> Result<()> {
    require_clean(shape, what)?;
    if shape.triangle_count() != 0 {
        return Err(Error::Invalid(format!("{what} must have no triangles")));
    }
    if shape.identity_edge_count() != 0 {
        return Err(Error::Invalid(format!("{what} must have no identity edges")));
    }
    Ok(())
}

/// Attaches one framing vertex `fr_v` and one edge `f_v : v -> fr_v` at
/// every vertex. Ids follow the `fr_`/`f_` convention; a collision with an
/// existing id is an error.
pub fn frame(shape: &SSet2) -> Result<(SSet2, FramingFn)> {
    let vertices: Vec<String> = shape.vertices().to_vec();
    frame_at(shape, &vertices)
}

/// Framing restricted to a subset of vertices.
pub fn frame_at<T: AsRef<str>>(shape: &SSet2, at: &[T]) -> Result<(SSet2, FramingFn)> {
    require_clean(shape, "input shape")?;
    let mut out = shape.clone();
    let mut f = FramingFn::all_regular(shape);
    for v in at {
        let v = v.as_ref();
        if !shape.has_vertex(v) {
            return Err(Error::Shape(format!("cannot frame missing vertex {v:?}")));
        }
        let fv = format!("fr_{v}");
        let ev = format!("f_{v}");
        out.add_vertex(fv.clone())?;
        out.add_edge(ev, v, fv.clone())?;
        f.set(fv, VertexRole::Framing);
    }
    Ok((out, f))
}

/// A doubled shape together with its edge-reversal involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doubled {
    pub shape: SSet2,
    reversal: BTreeMap<String, String>,
}

impl Doubled {
    /// The reversed partner of an edge. Identity edges are self-paired.
    pub fn reverse_of(&self, edge: &str) -> Option<&String> {
        self.reversal.get(edge)
    }

    pub fn reversal(&self) -> &BTreeMap<String, String> {
        &self.reversal
    }
}

/// Adjoins a reversed copy `e*` of every non-identity edge, and the mirror
/// image of every witness. Identity edges are their own reversals and are
/// not duplicated.
pub fn double(shape: &SSet2) -> Result<Doubled> {
    require_clean(shape, "input shape")?;
    let mut out = shape.clone();
    let mut reversal = BTreeMap::new();
    for e in shape.edges() {
        if e.identity {
            reversal.insert(e.id.clone(), e.id.clone());
            continue;
        }
        let rev = format!("{}*", e.id);
        out.add_edge(rev.clone(), e.tgt.clone(), e.src.clone())?;
        reversal.insert(e.id.clone(), rev.clone());
        reversal.insert(rev, e.id.clone());
    }
    for t in shape.triangles() {
        let rev = |id: &String| reversal.get(id).cloned().unwrap_or_else(|| id.clone());
        out.add_triangle(
            format!("{}*", t.id),
            rev(&t.second),
            rev(&t.first),
            rev(&t.long),
        )?;
    }
    Ok(Doubled { shape: out, reversal })
}

/// The gauge-encoding construction applied to a classical quiver with a
/// framing function. The result's representations are exactly the triples
/// (gauge element g, rep, its g-translate): primed copies carry the
/// translate, `g_v` edges carry the group element, and the composite edges
/// plus seven witness families force all the defining relations.
#[derive(Clone, Debug)]
pub struct TildeQuiver {
    pub shape: SSet2,
    /// Regular vertex -> its primed copy.
    primed_vertex: BTreeMap<String, String>,
    /// Non-framing-to-framing edge -> its primed copy.
    primed_edge: BTreeMap<String, String>,
    /// Regular vertex -> (g_v, g_v inverse witness edge).
    gauge_edges: BTreeMap<String, (String, String)>,
    /// Edge with both endpoints regular -> the composite edge for its square.
    composite_edge: BTreeMap<String, String>,
    /// Edges of the input with both endpoints framing (kept as a single copy).
    framing_only_edges: Vec<String>,
}

impl TildeQuiver {
    pub fn primed_vertex(&self, v: &str) -> Option<&String> {
        self.primed_vertex.get(v)
    }

    pub fn primed_edge(&self, e: &str) -> Option<&String> {
        self.primed_edge.get(e)
    }

    pub fn gauge_edge(&self, v: &str) -> Option<&(String, String)> {
        self.gauge_edges.get(v)
    }

    pub fn composite_edge(&self, e: &str) -> Option<&String> {
        self.composite_edge.get(e)
    }

    /// All (both-endpoints-regular edge, composite edge) pairs.
    pub fn composite_edges(&self) -> &BTreeMap<String, String> {
        &self.composite_edge
    }

    pub fn framing_only_edges(&self) -> &[String] {
        &self.framing_only_edges
    }
}

fn prime(id: &str) -> String {
    format!("{id}'")
}

pub fn tilde(shape: &SSet2, f: &FramingFn) -> Result<TildeQuiver> {
    require_classical(shape, "input quiver")?;
    f.check_total(shape)?;

    let regular: Vec<String> = shape
        .vertices()
        .iter()
        .filter(|v| !f.is_framing(v))
        .cloned()
        .collect();

    let mut out = SSet2::new();
    for v in shape.vertices() {
        out.add_vertex(v.clone())?;
    }
    for v in &regular {
        out.add_vertex(prime(v))?;
    }

    let mut primed_vertex = BTreeMap::new();
    for v in &regular {
        primed_vertex.insert(v.clone(), prime(v));
    }
    // Endpoints of primed cells: regular endpoints move to the primed copy,
    // framing endpoints stay put.
    let primed_end = |v: &String| -> String {
        if f.is_framing(v) {
            v.clone()
        } else {
            prime(v)
        }
    };

    let mut framing_only_edges = Vec::new();
    for e in shape.edges() {
        out.add_edge(e.id.clone(), e.src.clone(), e.tgt.clone())?;
        if f.is_framing(&e.src) && f.is_framing(&e.tgt) {
            framing_only_edges.push(e.id.clone());
        }
    }
    let mut primed_edge = BTreeMap::new();
    for e in shape.edges() {
        if f.is_framing(&e.src) && f.is_framing(&e.tgt) {
            continue;
        }
        let copy = prime(&e.id);
        out.add_edge(copy.clone(), primed_end(&e.src), primed_end(&e.tgt))?;
        primed_edge.insert(e.id.clone(), copy);
    }

    let mut gauge_edges = BTreeMap::new();
    for v in &regular {
        let g = format!("g_{v}");
        let g_inv = format!("g_{v}_inv");
        out.add_edge(g.clone(), v.clone(), prime(v))?;
        out.add_edge(g_inv.clone(), prime(v), v.clone())?;
        gauge_edges.insert(v.clone(), (g, g_inv));
    }

    let mut composite_edge = BTreeMap::new();
    for e in shape.edges() {
        if !f.is_framing(&e.src) && !f.is_framing(&e.tgt) {
            let c = format!("c_{}", e.id);
            out.add_edge(c.clone(), e.src.clone(), prime(&e.tgt))?;
            composite_edge.insert(e.id.clone(), c);
        }
    }

    for v in &regular {
        out.add_identity_edge(format!("id_{v}"), v.clone())?;
        out.add_identity_edge(format!("id_{}", prime(v)), prime(v))?;
    }

    // Witnesses. alpha_v / beta_v make g_v invertible; the edge families
    // force the primed copy to be the gauge translate of the plain copy.
    for v in &regular {
        let (g, g_inv) = &gauge_edges[v];
        out.add_triangle(format!("alpha_{v}"), g.clone(), g_inv.clone(), format!("id_{v}"))?;
        out.add_triangle(
            format!("beta_{v}"),
            g_inv.clone(),
            g.clone(),
            format!("id_{}", prime(v)),
        )?;
    }
    for e in shape.edges() {
        let src_framing = f.is_framing(&e.src);
        let tgt_framing = f.is_framing(&e.tgt);
        match (src_framing, tgt_framing) {
            (false, false) => {
                let c = &composite_edge[&e.id];
                let (g_tgt, _) = &gauge_edges[&e.tgt];
                let (g_src, _) = &gauge_edges[&e.src];
                out.add_triangle(format!("alpha_{}", e.id), e.id.clone(), g_tgt.clone(), c.clone())?;
                out.add_triangle(
                    format!("beta_{}", e.id),
                    g_src.clone(),
                    primed_edge[&e.id].clone(),
                    c.clone(),
                )?;
            }
            (false, true) => {
                let (g_src, _) = &gauge_edges[&e.src];
                out.add_triangle(
                    format!("delta_{}", e.id),
                    g_src.clone(),
                    primed_edge[&e.id].clone(),
                    e.id.clone(),
                )?;
            }
            (true, false) => {
                let (g_tgt, _) = &gauge_edges[&e.tgt];
                out.add_triangle(
                    format!("eps_{}", e.id),
                    e.id.clone(),
                    g_tgt.clone(),
                    primed_edge[&e.id].clone(),
                )?;
            }
            (true, true) => {}
        }
    }

    Ok(TildeQuiver {
        shape: out,
        primed_vertex,
        primed_edge,
        gauge_edges,
        composite_edge,
        framing_only_edges,
    })
}

/// A shape together with a role label on every cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledShape {
    pub shape: SSet2,
    labels: BTreeMap<String, String>,
}

impl LabeledShape {
    pub fn label(&self, cell: &str) -> Option<&String> {
        self.labels.get(cell)
    }

    pub fn labels(&self) -> &BTreeMap<String, String> {
        &self.labels
    }

    /// The unique cell carrying a label, if present exactly once.
    pub fn cell_with_label(&self, label: &str) -> Option<&String> {
        let mut hits = self.labels.iter().filter(|(_, l)| l.as_str() == label);
        let first = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        Some(first.0)
    }
}

/// The pentagon shape for Higgs data over a point: the chain
/// `a -> b -> c -> d` (field, field tensor twist, alternation target) must
/// agree with the route `a -> b' -> d` through the zero object. Expressing
/// a triple composite with 2-dimensional witnesses takes two carrier edges
/// (`e_ac`, `e_ad`) and three triangles; the zero route then forces the
/// long composite `e_ad` to vanish.
pub fn higgs_shape() -> LabeledShape {
    let mut s = SSet2::new();
    for v in ["a", "b", "c", "d", "b'"] {
        s.add_vertex(v).unwrap();
    }
    s.add_edge("e_ab", "a", "b").unwrap();
    s.add_edge("e_bc", "b", "c").unwrap();
    s.add_edge("e_cd", "c", "d").unwrap();
    s.add_edge("e_ab'", "a", "b'").unwrap();
    s.add_edge("e_b'd", "b'", "d").unwrap();
    s.add_edge("e_ac", "a", "c").unwrap();
    s.add_edge("e_ad", "a", "d").unwrap();
    s.add_triangle("t_abc", "e_ab", "e_bc", "e_ac").unwrap();
    s.add_triangle("t_acd", "e_ac", "e_cd", "e_ad").unwrap();
    s.add_triangle("t_ab'd", "e_ab'", "e_b'd", "e_ad").unwrap();
    let labels: BTreeMap<String, String> = [
        ("a", "bundle"),
        ("b", "bundle_tensor_twist"),
        ("c", "bundle_tensor_twist_squared"),
        ("d", "bundle_tensor_alternation"),
        ("b'", "zero_object"),
        ("e_ab", "higgs_field"),
        ("e_bc", "higgs_field_tensor_id"),
        ("e_cd", "id_tensor_alternation"),
        ("e_ab'", "into_zero"),
        ("e_b'd", "out_of_zero"),
        ("e_ac", "carrier_ac"),
        ("e_ad", "long_composite"),
        ("t_abc", "witness_ac"),
        ("t_acd", "witness_ad"),
        ("t_ab'd", "witness_zero_route"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    LabeledShape { shape: s, labels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{glue_at_vertices, standard_simplex};

    fn jordan() -> SSet2 {
        let mut s = SSet2::new();
        s.add_vertex("v").unwrap();
        s.add_edge("a", "v", "v").unwrap();
        s
    }

    fn a2() -> SSet2 {
        let mut s = SSet2::new();
        s.add_vertex("a").unwrap();
        s.add_vertex("b").unwrap();
        s.add_edge("e", "a", "b").unwrap();
        s
    }

    /// Linear quiver a -> b -> c with c marked as framing.
    fn chain_with_framed_tail() -> (SSet2, FramingFn) {
        let mut s = SSet2::new();
        for v in ["a", "b", "c"] {
            s.add_vertex(v).unwrap();
        }
        s.add_edge("e_ab", "a", "b").unwrap();
        s.add_edge("e_bc", "b", "c").unwrap();
        let f = FramingFn::with_framing(&s, &["c"]).unwrap();
        (s, f)
    }

    #[test]
    fn frame_attaches_one_leg_per_vertex() {
        let (framed, f) = frame(&jordan()).unwrap();
        assert_eq!(framed.vertex_count(), 2);
        assert_eq!(framed.edge_count(), 2);
        assert!(f.is_framing("fr_v"));
        assert!(!f.is_framing("v"));

        let (framed, f) = frame(&a2()).unwrap();
        assert_eq!(framed.vertex_count(), 4);
        assert_eq!(framed.edge_count(), 3);
        assert_eq!(f.regular_vertices(&framed).len(), 2);

        let empty = SSet2::new();
        let (framed, _) = frame(&empty).unwrap();
        assert_eq!(framed.vertex_count(), 0);
    }

    #[test]
    fn frame_is_gluing_intervals() {
        // Build the same thing by hand out of two copies of the interval
        // 0 -> 1, glued at the vertices of I.
        let i = a2();
        let (framed, _) = frame(&i).unwrap();
        let mut legs = SSet2::new();
        for v in ["glue_a", "glue_b"] {
            legs.add_vertex(v).unwrap();
        }
        legs.add_vertex("fr_a").unwrap();
        legs.add_vertex("fr_b").unwrap();
        legs.add_edge("f_a", "glue_a", "fr_a").unwrap();
        legs.add_edge("f_b", "glue_b", "fr_b").unwrap();
        let glued = glue_at_vertices(
            &i,
            &legs,
            &[("a".into(), "glue_a".into()), ("b".into(), "glue_b".into())],
        )
        .unwrap();
        assert_eq!(glued.sorted(), framed.sorted());
    }

    #[test]
    fn frame_rejects_id_collisions() {
        let mut s = SSet2::new();
        s.add_vertex("v").unwrap();
        s.add_vertex("fr_v").unwrap();
        assert!(frame(&s).is_err());
    }

    #[test]
    fn double_counts_and_involution() {
        let d = double(&jordan()).unwrap();
        assert_eq!(d.shape.vertex_count(), 1);
        assert_eq!(d.shape.edge_count(), 2);
        assert_eq!(d.reverse_of("a"), Some(&"a*".to_string()));
        assert_eq!(d.reverse_of("a*"), Some(&"a".to_string()));

        let d = double(&a2()).unwrap();
        assert_eq!(d.shape.vertex_count(), 2);
        assert_eq!(d.shape.edge_count(), 2);
        let rev = d.shape.edge("e*").unwrap();
        assert_eq!((rev.src.as_str(), rev.tgt.as_str()), ("b", "a"));

        let mut edgeless = SSet2::new();
        edgeless.add_vertex("x").unwrap();
        let d = double(&edgeless).unwrap();
        assert_eq!(d.shape, edgeless);

        let (framed, _) = frame(&jordan()).unwrap();
        let d = double(&framed).unwrap();
        assert_eq!(d.shape.vertex_count(), 2);
        assert_eq!(d.shape.edge_count(), 4);
    }

    #[test]
    fn double_carries_witnesses_to_the_mirror() {
        let s = standard_simplex(2).unwrap();
        let d = double(&s).unwrap();
        assert_eq!(d.shape.triangle_count(), 2);
        let mirrored = d
            .shape
            .triangles()
            .iter()
            .find(|t| t.id == "t0_1_2*")
            .unwrap();
        assert_eq!(mirrored.first, "e1_2*");
        assert_eq!(mirrored.second, "e0_1*");
        assert_eq!(mirrored.long, "e0_2*");
        assert!(d.shape.validate().is_empty());
    }

    #[test]
    fn tilde_of_the_framed_chain_matches_the_worked_example() {
        let (i, f) = chain_with_framed_tail();
        let t = tilde(&i, &f).unwrap();
        assert!(t.shape.validate().is_empty());
        assert_eq!(t.shape.vertex_count(), 5);
        assert_eq!(t.shape.edge_count(), 9, "4 doubled + 4 iso + 1 composite");
        assert_eq!(t.shape.identity_edge_count(), 4);
        assert_eq!(t.shape.triangle_count(), 7);

        // The square over the regular edge a->b.
        let alpha = t.shape.triangles().iter().find(|x| x.id == "alpha_e_ab").unwrap();
        assert_eq!((alpha.first.as_str(), alpha.second.as_str(), alpha.long.as_str()),
            ("e_ab", "g_b", "c_e_ab"));
        let beta = t.shape.triangles().iter().find(|x| x.id == "beta_e_ab").unwrap();
        assert_eq!((beta.first.as_str(), beta.second.as_str(), beta.long.as_str()),
            ("g_a", "e_ab'", "c_e_ab"));
        // The edge into the framing vertex: e_bc' composes with g_b back to e_bc.
        let delta = t.shape.triangles().iter().find(|x| x.id == "delta_e_bc").unwrap();
        assert_eq!((delta.first.as_str(), delta.second.as_str(), delta.long.as_str()),
            ("g_b", "e_bc'", "e_bc"));
        // The primed copy of e_bc ends at the unprimed framing vertex.
        let copy = t.shape.edge("e_bc'").unwrap();
        assert_eq!((copy.src.as_str(), copy.tgt.as_str()), ("b'", "c"));
    }

    #[test]
    fn tilde_counts_follow_the_incidence_formulas() {
        // Oracle: recount cells from the defining formulas for several
        // quivers, including loops, framing-to-framing edges, and edges out
        // of framing vertices.
        let mut s = SSet2::new();
        for v in ["p", "q", "w1", "w2"] {
            s.add_vertex(v).unwrap();
        }
        s.add_edge("loop_p", "p", "p").unwrap();
        s.add_edge("e_pq", "p", "q").unwrap();
        s.add_edge("e_qw", "q", "w1").unwrap();
        s.add_edge("e_wp", "w2", "p").unwrap();
        s.add_edge("e_ww", "w1", "w2").unwrap();
        let f = FramingFn::with_framing(&s, &["w1", "w2"]).unwrap();
        let t = tilde(&s, &f).unwrap();
        assert!(t.shape.validate().is_empty());

        let regular = 2usize;
        let framing = 2usize;
        let s_edges = 1usize; // e_ww
        let rr = 2usize; // loop_p, e_pq
        let rf = 1usize; // e_qw
        let fr = 1usize; // e_wp
        let non_s = rr + rf + fr;
        assert_eq!(t.shape.vertex_count(), 2 * regular + framing);
        assert_eq!(t.shape.edge_count(), 2 * non_s + s_edges + 2 * regular + rr);
        assert_eq!(t.shape.triangle_count(), 2 * regular + 2 * rr + rf + fr);
        assert_eq!(t.framing_only_edges(), &["e_ww".to_string()]);
    }

    #[test]
    fn tilde_of_an_all_framed_quiver_is_the_quiver_itself() {
        let mut s = SSet2::new();
        for v in ["x", "y"] {
            s.add_vertex(v).unwrap();
        }
        s.add_edge("e", "x", "y").unwrap();
        let f = FramingFn::with_framing(&s, &["x", "y"]).unwrap();
        let t = tilde(&s, &f).unwrap();
        assert_eq!(t.shape, s);
    }

    #[test]
    fn tilde_rejects_non_classical_input() {
        let simplex = standard_simplex(2).unwrap();
        let f = FramingFn::all_regular(&simplex);
        assert!(tilde(&simplex, &f).is_err(), "witnesses are not allowed");

        let i = a2();
        let partial = FramingFn::with_framing(&SSet2::new(), &[] as &[&str]).unwrap();
        assert!(tilde(&i, &partial).is_err(), "framing function must be total");
    }

    #[test]
    fn higgs_shape_is_the_witnessed_pentagon() {
        let p = higgs_shape();
        assert!(p.shape.validate().is_empty());
        assert_eq!(p.shape.vertex_count(), 5);
        assert_eq!(p.shape.edge_count(), 7);
        assert_eq!(p.shape.triangle_count(), 3);
        // Labels are a bijection onto the cells.
        let cell_count =
            p.shape.vertex_count() + p.shape.edges().len() + p.shape.triangle_count();
        assert_eq!(p.labels().len(), cell_count);
        assert_eq!(p.cell_with_label("long_composite"), Some(&"e_ad".to_string()));
        assert_eq!(p.cell_with_label("zero_object"), Some(&"b'".to_string()));
    }

    #[test]
    fn framing_fn_json_round_trip() {
        let (s, f) = chain_with_framed_tail();
        let v = f.to_json_value();
        let back = FramingFn::from_json_value(&v).unwrap();
        assert_eq!(back, f);
        assert!(back.check_total(&s).is_ok());
    }
}
