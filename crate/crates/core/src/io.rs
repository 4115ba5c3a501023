//! JSON encodings of instances and results, and DOT for Hasse diagrams.
//!
//! Ids in JSON are the external vertex and edge labels; faces are named by
//! their index in the traced embedding.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{square_cells, triangle_cells, FamilySpec, Instance};
use crate::geometry::Point;
use crate::graph::{build_graph, trace_faces_any, DirectedEdge, GraphSpec, MultiGraph};
use crate::matching::{AsmMatrix, DFactor};
use crate::orientation::{EdgeBias, HasseDiagram, HeightFunction, Orientation, Q};
use crate::torus::PhaseDiagram;

/// `p/q`, always with a denominator.
pub fn rational(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let (p, q) = (p.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?);
    (q != 0).then(|| Q::new(p, q))
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn pins_value(g: &MultiGraph) -> Value {
    g.pinned()
        .map(|d| json!({"edge": g.edge_label(d.edge), "tail": g.vertex_label(d.tail), "head": g.vertex_label(d.head)}))
        .collect()
}

pub fn graph_value(g: &MultiGraph) -> Value {
    let spec = g.to_spec();
    let mut obj = Map::new();
    obj.insert("vertices".into(), json!(spec.vertices));
    obj.insert("edges".into(), spec.edges.iter().map(|&(id, u, v)| json!({"id": id, "ends": [u, v]})).collect());
    if let Some(rot) = &spec.rotation {
        obj.insert("rotation".into(), Value::Object(rot.iter().map(|(v, es)| (v.to_string(), json!(es))).collect()));
    }
    if !spec.pinned.is_empty() {
        obj.insert("pinned".into(), pins_value(g));
    }
    Value::Object(obj)
}

/// Graph JSON with `identify` for torus instances and a `manifest` holding
/// the family, `v*`, `f*`, pins, witnesses and the bias table.
pub fn instance_value(inst: &Instance) -> Value {
    let g = &inst.graph;
    let mut obj = match graph_value(g) {
        Value::Object(m) => m,
        _ => unreachable!("graph_value returns an object"),
    };
    if let Some((w, h)) = inst.torus {
        obj.insert("identify".into(), json!({"width": w, "height": h}));
    }
    let mut m = Map::new();
    if let Some(spec) = inst.spec {
        m.insert("family".into(), json!(spec.tag()));
        m.insert(
            "params".into(),
            Value::Object(spec.params().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect()),
        );
    }
    m.insert("vstar".into(), json!(g.vertex_label(inst.vstar)));
    if let Some(f) = inst.fstar {
        m.insert("fstar".into(), json!(f));
    }
    m.insert("pins".into(), pins_value(g));
    if let Some(r) = &inst.reference {
        m.insert("reference".into(), orientation_value(g, r));
    }
    if let Some(d) = &inst.degrees {
        m.insert(
            "degrees".into(),
            Value::Object(g.vertices().map(|v| (g.vertex_label(v).to_string(), json!(d[v]))).collect()),
        );
    }
    if let Some(b) = &inst.black {
        m.insert("black".into(), g.vertices().filter(|&v| b[v]).map(|v| g.vertex_label(v)).collect());
    }
    if let Some(c) = &inst.coords {
        m.insert(
            "coords".into(),
            Value::Object(g.vertices().map(|v| (g.vertex_label(v).to_string(), json!([c[v].0, c[v].1]))).collect()),
        );
    }
    if let Some(b) = &inst.bias {
        let vals = b.values();
        m.insert(
            "bias".into(),
            Value::Object(
                g.edges()
                    .map(|e| (g.edge_label(e).to_string(), json!([rational(vals[2 * e]), rational(vals[2 * e + 1])])))
                    .collect(),
            ),
        );
    }
    obj.insert("manifest".into(), Value::Object(m));
    Value::Object(obj)
}

pub fn instance_to_json(inst: &Instance) -> String {
    render(&instance_value(inst))
}

fn schema(pointer: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), reason: reason.into() }
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    format!("{ptr}/{}", key.to_string().replace('~', "~0").replace('/', "~1"))
}

fn object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(ptr, "expected an object"))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn uint(v: &Value, ptr: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

fn int(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(ptr, "expected an integer"))
}

fn get<'a>(obj: &'a Map<String, Value>, ptr: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(ptr, format!("missing key {key:?}")))
}

fn key_id(key: &str, ptr: &str) -> Result<u64> {
    key.parse().map_err(|_| schema(child(ptr, key), "key is not an integer id"))
}

fn pair(v: &Value, ptr: &str) -> Result<(i64, i64)> {
    match array(v, ptr)?.as_slice() {
        [a, b] => Ok((int(a, &child(ptr, 0))?, int(b, &child(ptr, 1))?)),
        _ => Err(schema(ptr, "expected two entries")),
    }
}

fn id_pair(v: &Value, ptr: &str) -> Result<(u64, u64)> {
    match array(v, ptr)?.as_slice() {
        [a, b] => Ok((uint(a, &child(ptr, 0))?, uint(b, &child(ptr, 1))?)),
        _ => Err(schema(ptr, "expected two entries")),
    }
}

fn parse_pins(v: &Value, ptr: &str) -> Result<Vec<(u64, u64, u64)>> {
    array(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let at = child(ptr, i);
            let o = object(p, &at)?;
            let f = |k: &str| uint(get(o, &at, k)?, &child(&at, k));
            Ok((f("edge")?, f("tail")?, f("head")?))
        })
        .collect()
}

fn parse_graph(obj: &Map<String, Value>) -> Result<MultiGraph> {
    let vertices = array(get(obj, "", "vertices")?, "/vertices")?
        .iter()
        .enumerate()
        .map(|(i, v)| uint(v, &child("/vertices", i)))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (i, e) in array(get(obj, "", "edges")?, "/edges")?.iter().enumerate() {
        let at = child("/edges", i);
        let o = object(e, &at)?;
        let id = uint(get(o, &at, "id")?, &child(&at, "id"))?;
        let (u, v) = id_pair(get(o, &at, "ends")?, &child(&at, "ends"))?;
        edges.push((id, u, v));
    }
    let rotation = match obj.get("rotation") {
        None | Some(Value::Null) => None,
        Some(r) => {
            let mut map = std::collections::BTreeMap::new();
            for (k, order) in object(r, "/rotation")? {
                let at = child("/rotation", k);
                let ids = array(order, &at)?
                    .iter()
                    .enumerate()
                    .map(|(i, e)| uint(e, &child(&at, i)))
                    .collect::<Result<Vec<_>>>()?;
                map.insert(key_id(k, "/rotation")?, ids);
            }
            Some(map)
        }
    };
    let pinned = match obj.get("pinned") {
        None | Some(Value::Null) => Vec::new(),
        Some(p) => parse_pins(p, "/pinned")?,
    };
    build_graph(&GraphSpec { vertices, edges, rotation, pinned })
}

/// Orientation from a map edge id -> `[tail, head]` covering every edge.
pub fn parse_orientation(g: &MultiGraph, v: &Value, ptr: &str) -> Result<Orientation> {
    let o = object(v, ptr)?;
    let mut darts = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        let label = g.edge_label(e);
        let at = child(ptr, label);
        let (t, h) =
            id_pair(o.get(&label.to_string()).ok_or_else(|| schema(ptr, format!("edge {label} missing")))?, &at)?;
        let t = g.vertex_by_label(t).ok_or(Error::UnknownVertex(t))?;
        let h = g.vertex_by_label(h).ok_or(Error::UnknownVertex(h))?;
        darts.push(DirectedEdge::new(e, t, h));
    }
    if let Some(k) = o.keys().find(|k| k.parse::<u64>().ok().and_then(|l| g.edge_by_label(l)).is_none()) {
        return Err(schema(child(ptr, k), "not an edge id"));
    }
    Orientation::from_directed(g, darts)
}

fn vertex_map<'a>(g: &MultiGraph, v: &'a Value, ptr: &str) -> Result<Vec<&'a Value>> {
    let o = object(v, ptr)?;
    g.vertices()
        .map(|u| {
            let label = g.vertex_label(u);
            o.get(&label.to_string()).ok_or_else(|| schema(ptr, format!("vertex {label} missing")))
        })
        .collect()
}

fn apply_manifest(inst: &mut Instance, m: &Map<String, Value>) -> Result<()> {
    let g = inst.graph.clone();
    if let Some(tag) = m.get("family") {
        let tag = tag.as_str().ok_or_else(|| schema("/manifest/family", "expected a string"))?;
        let params = match m.get("params") {
            Some(p) => object(p, "/manifest/params")?.clone(),
            None => Map::new(),
        };
        inst.spec = Some(FamilySpec::from_tag(tag, |k| params.get(k).and_then(Value::as_u64).map(|x| x as usize))?);
    }
    if let Some(v) = m.get("vstar") {
        let label = uint(v, "/manifest/vstar")?;
        inst.vstar = g.vertex_by_label(label).ok_or(Error::UnknownVertex(label))?;
    }
    if let Some(f) = m.get("fstar") {
        let f = uint(f, "/manifest/fstar")? as usize;
        let faces = trace_faces_any(&g)?.num_faces();
        if f >= faces {
            return Err(schema("/manifest/fstar", format!("embedding has {faces} faces")));
        }
        inst.fstar = Some(f);
    }
    if let Some(p) = m.get("pins") {
        let pins = parse_pins(p, "/manifest/pins")?;
        if pins != g.to_spec().pinned {
            return Err(schema("/manifest/pins", "pins differ from the graph's pinned edges"));
        }
    }
    if let Some(r) = m.get("reference") {
        inst.reference = Some(parse_orientation(&g, r, "/manifest/reference")?);
    }
    if let Some(d) = m.get("degrees") {
        let vals = vertex_map(&g, d, "/manifest/degrees")?;
        inst.degrees = Some(
            vals.iter()
                .zip(g.vertices())
                .map(|(x, v)| uint(x, &child("/manifest/degrees", g.vertex_label(v))).map(|d| d as usize))
                .collect::<Result<_>>()?,
        );
    }
    if let Some(b) = m.get("black") {
        let mut black = vec![false; g.num_vertices()];
        for (i, x) in array(b, "/manifest/black")?.iter().enumerate() {
            let label = uint(x, &child("/manifest/black", i))?;
            black[g.vertex_by_label(label).ok_or(Error::UnknownVertex(label))?] = true;
        }
        inst.black = Some(black);
    }
    if let Some(c) = m.get("coords") {
        let vals = vertex_map(&g, c, "/manifest/coords")?;
        inst.coords = Some(
            vals.iter()
                .zip(g.vertices())
                .map(|(x, v)| pair(x, &child("/manifest/coords", g.vertex_label(v))))
                .collect::<Result<_>>()?,
        );
    }
    if let Some(b) = m.get("bias") {
        let o = object(b, "/manifest/bias")?;
        let mut forward = Vec::with_capacity(g.num_edges());
        for e in g.edges() {
            let label = g.edge_label(e);
            let at = child("/manifest/bias", label);
            let entry =
                o.get(&label.to_string()).ok_or_else(|| schema("/manifest/bias", format!("edge {label} missing")))?;
            let vals: Vec<Q> = match array(entry, &at)?.as_slice() {
                [a, b] => [a, b]
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        x.as_str().and_then(parse_rational).ok_or_else(|| schema(child(&at, i), "expected \"p/q\""))
                    })
                    .collect::<Result<_>>()?,
                _ => return Err(schema(at, "expected two rationals")),
            };
            if vals[0] + vals[1] != Q::from_integer(1) {
                return Err(schema(at, "the two directions must sum to 1"));
            }
            forward.push(vals[0]);
        }
        inst.bias = Some(EdgeBias::from_forward(&g, |d| forward[d.edge]));
    }
    Ok(())
}

/// Instance from parsed JSON; see [`instance_value`] for the layout.
pub fn parse_instance_value(v: &Value) -> Result<Instance> {
    let obj = object(v, "")?;
    let graph = parse_graph(obj)?;
    let torus = match obj.get("identify") {
        None | Some(Value::Null) => None,
        Some(x) => {
            let o = object(x, "/identify")?;
            let w = uint(get(o, "/identify", "width")?, "/identify/width")? as usize;
            let h = uint(get(o, "/identify", "height")?, "/identify/height")? as usize;
            if w * h != graph.num_vertices() {
                return Err(schema("/identify", format!("{w} x {h} does not match {} vertices", graph.num_vertices())));
            }
            Some((w, h))
        }
    };
    let mut inst = Instance {
        spec: None,
        graph,
        coords: None,
        vstar: 0,
        fstar: None,
        reference: None,
        degrees: None,
        bias: None,
        torus,
        black: None,
    };
    if let Some(m) = obj.get("manifest") {
        apply_manifest(&mut inst, object(m, "/manifest")?)?;
    }
    Ok(inst)
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_value(&parse_json(text)?)
}

/// True for region JSON (`{"kind", "cells"}`) rather than graph JSON.
pub fn is_region(v: &Value) -> bool {
    v.get("kind").is_some() && v.get("cells").is_some()
}

/// Matching instance for a region. Square cells `[x, y]` are unit squares;
/// triangle cells `[x, y]` are up triangles for even `x` and down triangles
/// for odd `x`, in row `y` of the triangular lattice.
pub fn parse_region(v: &Value) -> Result<Instance> {
    let obj = object(v, "")?;
    let kind = get(obj, "", "kind")?.as_str().ok_or_else(|| schema("/kind", "expected a string"))?;
    let cells = array(get(obj, "", "cells")?, "/cells")?
        .iter()
        .enumerate()
        .map(|(i, c)| pair(c, &child("/cells", i)))
        .collect::<Result<Vec<Point>>>()?;
    if cells.is_empty() {
        return Err(schema("/cells", "region is empty"));
    }
    match kind {
        "squares" => square_cells(&cells),
        "triangles" => {
            triangle_cells(&cells.iter().map(|&(x, y)| (x.rem_euclid(2) == 0, x.div_euclid(2), y)).collect::<Vec<_>>())
        }
        _ => Err(schema("/kind", "expected \"squares\" or \"triangles\"")),
    }
}

/// Region cell of each vertex of a region instance.
pub fn region_cells(kind: &str, inst: &Instance) -> Vec<Point> {
    let coords = inst.coords.clone().unwrap_or_default();
    if kind != "triangles" {
        return coords;
    }
    coords
        .into_iter()
        .map(|(x, y)| {
            if (x - 1).rem_euclid(3) == 0 {
                (2 * ((x - 1) / 3), (y - 1) / 3)
            } else {
                (2 * ((x - 2) / 3) + 1, (y - 2) / 3)
            }
        })
        .collect()
}

/// Map edge id -> `[tail, head]`.
pub fn orientation_value(g: &MultiGraph, r: &Orientation) -> Value {
    Value::Object(
        r.darts(g)
            .map(|d| (g.edge_label(d.edge).to_string(), json!([g.vertex_label(d.tail), g.vertex_label(d.head)])))
            .collect(),
    )
}

/// Map vertex -> `"p/q"`.
pub fn heights_value(g: &MultiGraph, h: &HeightFunction) -> Value {
    Value::Object(g.vertices().map(|v| (g.vertex_label(v).to_string(), json!(rational(h.get(v))))).collect())
}

fn sorted_labels(g: &MultiGraph, edges: impl Iterator<Item = usize>) -> Value {
    let mut labels: Vec<u64> = edges.map(|e| g.edge_label(e)).collect();
    labels.sort_unstable();
    json!(labels)
}

/// Sorted edge ids.
pub fn dfactor_value(g: &MultiGraph, m: &DFactor) -> Value {
    sorted_labels(g, m.edges())
}

/// Sorted edge ids.
pub fn tree_value(g: &MultiGraph, t: &[usize]) -> Value {
    sorted_labels(g, t.iter().copied())
}

/// Rows of the matrix.
pub fn asm_value(a: &AsmMatrix) -> Value {
    json!(a.rows())
}

/// Map face id -> height.
pub fn face_heights_value(h: &[i64]) -> Value {
    Value::Object(h.iter().enumerate().map(|(f, &x)| (f.to_string(), json!(x))).collect())
}

pub fn phase_value(pd: &PhaseDiagram) -> Value {
    serde_json::to_value(&pd.points).expect("phase points serialize")
}

/// Elements (encoded by `f`), covers `(upper, lower)` and ranks.
pub fn hasse_value<T>(h: &HasseDiagram<T>, f: impl Fn(&T) -> Value) -> Value {
    json!({
        "size": h.len(),
        "elements": h.elements.iter().map(f).collect::<Vec<_>>(),
        "covers": h.covers.iter().map(|&(u, l)| json!([u, l])).collect::<Vec<_>>(),
        "rank": h.rank,
    })
}

/// Nodes by index with their rank, then covers upper -> lower.
pub fn hasse_dot<T>(h: &HasseDiagram<T>) -> String {
    let mut out = String::from("digraph hasse {\n");
    for i in 0..h.len() {
        match &h.rank {
            Some(r) => writeln!(out, "  {i} [label=\"{i}\", rank={}];", r[i]),
            None => writeln!(out, "  {i} [label=\"{i}\"];"),
        }
        .expect("writing to a string");
    }
    for &(u, l) in &h.covers {
        writeln!(out, "  {u} -> {l};").expect("writing to a string");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate;

    fn all_specs() -> Vec<FamilySpec> {
        vec![
            FamilySpec::Cycle { n: 4, k: 2 },
            FamilySpec::Path { n: 3 },
            FamilySpec::GridPinned { n: 3 },
            FamilySpec::Rectangle { width: 3, height: 2 },
            FamilySpec::Hexagon { a: 1, b: 2, c: 2 },
            FamilySpec::Aztec { n: 2 },
            FamilySpec::TorusGrid { width: 4, height: 4 },
            FamilySpec::KnOuter { n: 5 },
            FamilySpec::SquareWithChord,
        ]
    }

    #[test]
    fn instances_round_trip() {
        for spec in all_specs() {
            let inst = generate(spec).unwrap();
            let text = instance_to_json(&inst);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back.spec, inst.spec);
            assert_eq!(back.graph, inst.graph, "{spec}");
            assert_eq!((back.vstar, back.fstar, back.torus), (inst.vstar, inst.fstar, inst.torus));
            assert_eq!(back.reference, inst.reference);
            assert_eq!(back.degrees, inst.degrees);
            assert_eq!(back.bias, inst.bias);
            assert_eq!(back.black, inst.black);
            assert_eq!(back.coords, inst.coords);
            assert_eq!(instance_to_json(&back), text);
        }
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let missing = r#"{"vertices":[0,1],"edges":[{"id":0}]}"#;
        assert_eq!(
            parse_instance(missing).unwrap_err(),
            Error::Schema { pointer: "/edges/0".into(), reason: "missing key \"ends\"".into() }
        );
        let bad_end = r#"{"vertices":[0,1],"edges":[{"id":0,"ends":[0,"x"]}]}"#;
        assert!(matches!(parse_instance(bad_end), Err(Error::Schema { pointer, .. }) if pointer == "/edges/0/ends/1"));
        assert!(matches!(parse_instance("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_instance("[]"), Err(Error::Schema { pointer, .. }) if pointer.is_empty()));
    }

    #[test]
    fn foreign_rotation_edge() {
        let text = r#"{"vertices":[0,1,2],"edges":[{"id":0,"ends":[0,1]},{"id":1,"ends":[1,2]}],
            "rotation":{"0":[1],"1":[0,1],"2":[1]}}"#;
        assert!(matches!(parse_instance(text), Err(Error::BadRotation { vertex: 0, .. })));
    }

    #[test]
    fn orientation_and_heights() {
        let inst = generate(FamilySpec::Path { n: 2 }).unwrap();
        let g = &inst.graph;
        let r = inst.reference.clone().unwrap();
        let v = orientation_value(g, &r);
        assert_eq!(v, json!({"0": [0, 1], "1": [1, 2]}));
        assert_eq!(parse_orientation(g, &v, "").unwrap(), r);
        let h = crate::orientation::height_function(g, &r, 2, &EdgeBias::half(g)).unwrap();
        assert_eq!(heights_value(g, &h), json!({"0": "-1/1", "1": "-1/2", "2": "0/1"}));
        assert_eq!(parse_rational("3/6"), Some(Q::new(1, 2)));
        assert_eq!(parse_rational("2"), Some(Q::from_integer(2)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn dot_output() {
        let chain = HasseDiagram::new(vec![(); 4], vec![(1, 0), (2, 1), (3, 2)]).with_rank_from(0).unwrap();
        let dot = hasse_dot(&chain);
        assert_eq!(dot.matches("rank=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("  3 -> 2;\n"));
        let empty: HasseDiagram<()> = HasseDiagram::new(vec![], vec![]);
        assert_eq!(hasse_dot(&empty), "digraph hasse {\n}\n");
    }

    #[test]
    fn regions() {
        let sq = parse_json(r#"{"kind":"squares","cells":[[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
        assert!(is_region(&sq));
        let inst = parse_region(&sq).unwrap();
        assert_eq!(inst.graph.num_vertices(), 4);
        let tri = parse_json(r#"{"kind":"triangles","cells":[[0,0],[1,0]]}"#).unwrap();
        let t = parse_region(&tri).unwrap();
        assert_eq!(t.graph.num_edges(), 1);
        assert_eq!(region_cells("triangles", &t), vec![(0, 0), (1, 0)]);
        let bad = parse_json(r#"{"kind":"hexes","cells":[[0,0]]}"#).unwrap();
        assert!(matches!(parse_region(&bad), Err(Error::Schema { pointer, .. }) if pointer == "/kind"));
    }
}
