//! Deterministic instance generators with their conventional `v*`, `f*`,
//! pins, witnesses and registered biases.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::geometry::{outer_face, rotation_from_coordinates, Point};
use crate::graph::{trace_faces, DirectedEdge, FaceId, MultiGraph, VertexId};
use crate::orientation::{EdgeBias, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Cycle of length `n`, `k` edges counterclockwise.
    Cycle { n: usize, k: usize },
    /// Path of `n` edges, unconstrained.
    Path { n: usize },
    /// `(n+1)²` grid with its boundary pinned.
    GridPinned { n: usize },
    /// Plain grid graph with `width × height` vertices.
    Rectangle { width: usize, height: usize },
    /// Triangle-adjacency graph of the `a, b, c` hexagon.
    Hexagon { a: usize, b: usize, c: usize },
    /// Cell-adjacency graph of the Aztec diamond of order `n`.
    Aztec { n: usize },
    /// `width × height` grid on a torus.
    TorusGrid { width: usize, height: usize },
    /// `K_n` on a convex polygon, crossings allowed.
    KnOuter { n: usize },
    /// 4-cycle with one chord.
    SquareWithChord,
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Path { .. } => "path",
            FamilySpec::GridPinned { .. } => "grid_pinned",
            FamilySpec::Rectangle { .. } => "rectangle",
            FamilySpec::Hexagon { .. } => "hexagon",
            FamilySpec::Aztec { .. } => "aztec",
            FamilySpec::TorusGrid { .. } => "torus_grid",
            FamilySpec::KnOuter { .. } => "kn_outer",
            FamilySpec::SquareWithChord => "square_with_chord",
        }
    }

    /// Parameters as `(name, value)` pairs in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, usize)> {
        match *self {
            FamilySpec::Cycle { n, k } => vec![("n", n), ("k", k)],
            FamilySpec::Path { n }
            | FamilySpec::GridPinned { n }
            | FamilySpec::Aztec { n }
            | FamilySpec::KnOuter { n } => {
                vec![("n", n)]
            }
            FamilySpec::Rectangle { width, height } | FamilySpec::TorusGrid { width, height } => {
                vec![("width", width), ("height", height)]
            }
            FamilySpec::Hexagon { a, b, c } => vec![("a", a), ("b", b), ("c", c)],
            FamilySpec::SquareWithChord => vec![],
        }
    }

    /// Inverse of [`FamilySpec::tag`] and [`FamilySpec::params`].
    pub fn from_tag(tag: &str, get: impl Fn(&str) -> Option<usize>) -> Result<Self> {
        let need = |name: &str| get(name).ok_or_else(|| Error::BadParams(format!("{tag} needs --{name}")));
        Ok(match tag {
            "cycle" => FamilySpec::Cycle { n: need("n")?, k: need("k")? },
            "path" => FamilySpec::Path { n: need("n")? },
            "grid_pinned" | "grid" => FamilySpec::GridPinned { n: need("n")? },
            "rectangle" => FamilySpec::Rectangle { width: need("width")?, height: need("height")? },
            "hexagon" => FamilySpec::Hexagon { a: need("a")?, b: need("b")?, c: need("c")? },
            "aztec" => FamilySpec::Aztec { n: need("n")? },
            "torus_grid" | "torus" => FamilySpec::TorusGrid { width: need("width")?, height: need("height")? },
            "kn_outer" | "kn" => FamilySpec::KnOuter { n: need("n")? },
            "square_with_chord" => FamilySpec::SquareWithChord,
            other => return Err(Error::BadParams(format!("unknown family {other:?}"))),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        for (name, v) in self.params() {
            write!(f, " {name}={v}")?;
        }
        Ok(())
    }
}

/// A generated instance with every choice the lattices need.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: Option<FamilySpec>,
    pub graph: MultiGraph,
    /// Vertex positions (y axis up), when the family is drawn in the plane.
    pub coords: Option<Vec<Point>>,
    pub vstar: VertexId,
    /// Special face, for sphere embeddings.
    pub fstar: Option<FaceId>,
    /// Witness c-orientation for the orientation lattice.
    pub reference: Option<Orientation>,
    /// Degree specification for the d-factor lattice.
    pub degrees: Option<Vec<usize>>,
    /// Closed-form bias registered for the family.
    pub bias: Option<EdgeBias>,
    /// Grid dimensions, for torus instances.
    pub torus: Option<(usize, usize)>,
    /// Vertex colors for bipartite families (true = black).
    pub black: Option<Vec<bool>>,
}

impl Instance {
    fn planar(spec: Option<FamilySpec>, graph: MultiGraph, coords: Vec<Point>) -> Result<Self> {
        let graph = graph.clone().with_rotation(rotation_from_coordinates(&graph, &coords))?;
        let emb = trace_faces(&graph)?;
        let fstar = outer_face(&emb, &coords);
        let vstar = emb.faces[fstar].vertices().min().unwrap_or(0);
        Ok(Instance {
            spec,
            graph,
            coords: Some(coords),
            vstar,
            fstar: Some(fstar),
            reference: None,
            degrees: None,
            bias: None,
            torus: None,
            black: None,
        })
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

pub fn generate(spec: FamilySpec) -> Result<Instance> {
    match spec {
        FamilySpec::Cycle { n, k } => cycle(n, k),
        FamilySpec::Path { n } => path(n),
        FamilySpec::GridPinned { n } => grid_pinned(n),
        FamilySpec::Rectangle { width, height } => rectangle(width, height),
        FamilySpec::Hexagon { a, b, c } => hexagon(a, b, c),
        FamilySpec::Aztec { n } => aztec(n),
        FamilySpec::TorusGrid { width, height } => torus_grid(width, height),
        FamilySpec::KnOuter { n } => kn_outer(n),
        FamilySpec::SquareWithChord => square_with_chord(),
    }
}

/// `n` points in convex position, numbered clockwise.
fn convex_polygon(n: usize) -> Vec<Point> {
    (0..n as i64).map(|i| (-i, i * i)).collect()
}

fn cycle(n: usize, k: usize) -> Result<Instance> {
    if n < 3 || k > n {
        return Err(bad("cycle needs n >= 3 and 0 <= k <= n"));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let g = MultiGraph::new(n, &edges)?;
    let mut inst = Instance::planar(Some(FamilySpec::Cycle { n, k }), g, convex_polygon(n))?;
    inst.vstar = 0;
    // edges run clockwise; the first k are turned counterclockwise
    inst.reference = Some(Orientation::from_bits((0..n).map(|i| i >= k).collect()));
    let (n64, k64) = (n as i64, k as i64);
    inst.bias = Some(EdgeBias::from_forward(&inst.graph, |_| Ratio::new(n64 - k64, n64)));
    Ok(inst)
}

fn path(n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(bad("path needs n >= 1"));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    let g = MultiGraph::new(n + 1, &edges)?;
    let coords = (0..=n as i64).map(|i| (i, 0)).collect();
    let mut inst = Instance::planar(Some(FamilySpec::Path { n }), g, coords)?;
    inst.vstar = n;
    inst.reference = Some(Orientation::canonical(&inst.graph));
    inst.bias = Some(EdgeBias::half(&inst.graph));
    Ok(inst)
}

/// Grid graph on `width × height` points; vertex `y * width + x` sits at
/// `(x, -y)`, so row 0 is on top.
fn grid_edges(width: usize, height: usize) -> (Vec<(usize, usize)>, Vec<Point>) {
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    let coords = (0..height).flat_map(|y| (0..width).map(move |x| (x as i64, -(y as i64)))).collect();
    (edges, coords)
}

fn checkerboard(width: usize, height: usize) -> Vec<bool> {
    (0..height).flat_map(|y| (0..width).map(move |x| (x + y) % 2 == 0)).collect()
}

/// Plain grid graph with rotation, `width × height` vertices.
pub fn rectangle_grid(width: usize, height: usize) -> MultiGraph {
    rectangle(width, height).expect("valid rectangle").graph
}

fn rectangle(width: usize, height: usize) -> Result<Instance> {
    if width < 1 || height < 1 || width * height < 2 {
        return Err(bad("rectangle needs at least two vertices"));
    }
    let (edges, coords) = grid_edges(width, height);
    let g = MultiGraph::new(width * height, &edges)?;
    let mut inst = Instance::planar(Some(FamilySpec::Rectangle { width, height }), g, coords)?;
    inst.vstar = 0;
    if (width * height).is_multiple_of(2) {
        inst.degrees = Some(vec![1; width * height]);
    }
    inst.black = Some(checkerboard(width, height));
    Ok(inst)
}

fn grid_pinned(n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(bad("grid_pinned needs n >= 1"));
    }
    let w = n + 1;
    let (edges, coords) = grid_edges(w, w);
    let g = MultiGraph::new(w * w, &edges)?;
    let mut inst = Instance::planar(Some(FamilySpec::GridPinned { n }), g, coords)?;
    inst.vstar = 0;
    // reference height |x - y| / 2; every edge points to the larger value
    let h = |v: usize| ((v % w) as i64 - (v / w) as i64).abs();
    let g = &inst.graph;
    let bits: Vec<bool> = g
        .edges()
        .map(|e| {
            let (u, v) = g.ends(e);
            h(v) > h(u)
        })
        .collect();
    let reference = Orientation::from_bits(bits);
    let on_side = |a: usize, b: usize| {
        let (ax, ay, bx, by) = (a % w, a / w, b % w, b / w);
        (ay == 0 && by == 0) || (ay == n && by == n) || (ax == 0 && bx == 0) || (ax == n && bx == n)
    };
    let pins: Vec<DirectedEdge> = g
        .edges()
        .filter(|&e| {
            let (u, v) = g.ends(e);
            on_side(u, v)
        })
        .map(|e| reference.dart(g, e))
        .collect();
    inst.graph = inst.graph.clone().with_pins(pins)?;
    inst.bias = Some(EdgeBias::half(&inst.graph));
    inst.reference = Some(reference);
    Ok(inst)
}

/// Cell-adjacency graph of a set of unit squares; cell `(x, y)` is black
/// when `x + y` is even. Cells are numbered in `(y, x)` order.
pub fn square_region(cells: &[Point]) -> Result<(MultiGraph, Vec<Point>, Vec<bool>)> {
    let mut cells = cells.to_vec();
    cells.sort_by_key(|&(x, y)| (y, x));
    cells.dedup();
    let index: std::collections::HashMap<Point, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (i, &(x, y)) in cells.iter().enumerate() {
        if let Some(&j) = index.get(&(x + 1, y)) {
            edges.push((i, j));
        }
        if let Some(&j) = index.get(&(x, y + 1)) {
            edges.push((i, j));
        }
    }
    let g = MultiGraph::new(cells.len(), &edges)?;
    let g = g.clone().with_rotation(rotation_from_coordinates(&g, &cells))?;
    let black = cells.iter().map(|&(x, y)| (x + y).rem_euclid(2) == 0).collect();
    Ok((g, cells, black))
}

/// Cells of the Aztec diamond of order `n`: `|x + 1/2| + |y + 1/2| ≤ n`.
pub fn aztec_cells(n: usize) -> Vec<Point> {
    let n = n as i64;
    let mut out = Vec::new();
    for y in -n..n {
        for x in -n..n {
            if (2 * x + 1).abs() + (2 * y + 1).abs() <= 2 * n {
                out.push((x, y));
            }
        }
    }
    out
}

fn aztec(n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(bad("aztec needs n >= 1"));
    }
    let mut inst = square_cells(&aztec_cells(n))?;
    inst.spec = Some(FamilySpec::Aztec { n });
    Ok(inst)
}

/// Matching instance on the cell-adjacency graph of unit squares.
pub fn square_cells(cells: &[Point]) -> Result<Instance> {
    let (g, coords, black) = square_region(cells)?;
    let emb = trace_faces(&g)?;
    let fstar = outer_face(&emb, &coords);
    let vstar = emb.faces[fstar].vertices().min().unwrap_or(0);
    let count = g.num_vertices();
    Ok(Instance {
        spec: None,
        graph: g,
        coords: Some(coords),
        vstar,
        fstar: Some(fstar),
        reference: None,
        degrees: Some(vec![1; count]),
        bias: None,
        torus: None,
        black: Some(black),
    })
}

/// Up and down triangles of the `a, b, c` hexagon, in lattice coordinates.
/// Returns `(is_up, i, j)` triples in `(j, i, up first)` order.
pub fn hexagon_triangles(a: usize, b: usize, c: usize) -> Vec<(bool, i64, i64)> {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let inside = |x: i64, y: i64| (0..=b + c).contains(&y) && (-c..=a).contains(&x) && (0..=a + b).contains(&(x + y));
    let mut out = Vec::new();
    for j in 0..=b + c {
        for i in -c..=a {
            if inside(i, j) && inside(i + 1, j) && inside(i, j + 1) {
                out.push((true, i, j));
            }
            if inside(i + 1, j) && inside(i, j + 1) && inside(i + 1, j + 1) {
                out.push((false, i, j));
            }
        }
    }
    out
}

fn hexagon(a: usize, b: usize, c: usize) -> Result<Instance> {
    if a < 1 || b < 1 || c < 1 {
        return Err(bad("hexagon needs a, b, c >= 1"));
    }
    let mut inst = triangle_cells(&hexagon_triangles(a, b, c))?;
    inst.spec = Some(FamilySpec::Hexagon { a, b, c });
    Ok(inst)
}

/// Matching instance on the adjacency graph of triangles `(is_up, i, j)`;
/// up triangles are black.
pub fn triangle_cells(tris: &[(bool, i64, i64)]) -> Result<Instance> {
    let mut tris = tris.to_vec();
    tris.sort_by_key(|&(up, i, j)| (j, i, !up));
    tris.dedup();
    let index: std::collections::HashMap<(bool, i64, i64), usize> =
        tris.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let mut edges = Vec::new();
    for (k, &(up, i, j)) in tris.iter().enumerate() {
        if !up {
            continue;
        }
        for nb in [(false, i, j), (false, i - 1, j), (false, i, j - 1)] {
            if let Some(&l) = index.get(&nb) {
                edges.push((k, l));
            }
        }
    }
    // centroids scaled by 3; a positive linear map keeps cyclic order
    let coords: Vec<Point> =
        tris.iter().map(|&(up, i, j)| if up { (3 * i + 1, 3 * j + 1) } else { (3 * i + 2, 3 * j + 2) }).collect();
    let g = MultiGraph::new(tris.len(), &edges)?;
    let mut inst = Instance::planar(None, g, coords)?;
    inst.degrees = Some(vec![1; tris.len()]);
    inst.black = Some(tris.iter().map(|t| t.0).collect());
    Ok(inst)
}

/// Grid on a torus. Vertex `y * width + x`; rotation east, south, west, north.
pub fn torus_grid_graph(width: usize, height: usize) -> MultiGraph {
    torus_grid(width, height).expect("valid torus").graph
}

fn torus_grid(width: usize, height: usize) -> Result<Instance> {
    if width < 2 || height < 2 {
        return Err(bad("torus_grid needs width, height >= 2"));
    }
    let id = |x: usize, y: usize| (y % height) * width + (x % width);
    // edge 2v: east from v; edge 2v+1: north from v
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            edges.push((id(x, y), id(x + 1, y)));
            edges.push((id(x, y), id(x, y + 1)));
        }
    }
    let g = MultiGraph::new(width * height, &edges)?;
    let rotation = (0..height)
        .flat_map(|y| {
            (0..width).map(move |x| {
                let v = id(x, y);
                let west = id(x + width - 1, y);
                let south = id(x, y + height - 1);
                vec![2 * v, 2 * south + 1, 2 * west, 2 * v + 1]
            })
        })
        .collect();
    let g = g.with_rotation(rotation)?;
    let n = width * height;
    Ok(Instance {
        spec: Some(FamilySpec::TorusGrid { width, height }),
        graph: g,
        coords: None,
        vstar: 0,
        fstar: None,
        reference: None,
        degrees: if n.is_multiple_of(2) { Some(vec![1; n]) } else { None },
        bias: None,
        torus: Some((width, height)),
        black: if width.is_multiple_of(2) && height.is_multiple_of(2) {
            Some(checkerboard(width, height))
        } else {
            None
        },
    })
}

fn kn_outer(n: usize) -> Result<Instance> {
    if n < 3 {
        return Err(bad("kn_outer needs n >= 3"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let g = MultiGraph::new(n, &edges)?;
    let coords = convex_polygon(n);
    let g = g.clone().with_rotation(rotation_from_coordinates(&g, &coords))?;
    Ok(Instance {
        spec: Some(FamilySpec::KnOuter { n }),
        graph: g,
        coords: Some(coords),
        vstar: 0,
        fstar: None,
        reference: None,
        degrees: None,
        bias: None,
        torus: None,
        black: None,
    })
}

fn square_with_chord() -> Result<Instance> {
    let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?;
    let mut inst = Instance::planar(Some(FamilySpec::SquareWithChord), g, convex_polygon(4))?;
    inst.vstar = 0;
    Ok(inst)
}

/// Star with `k` leaves around vertex 0.
pub fn tree_star(k: usize) -> MultiGraph {
    let edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
    let g = MultiGraph::new(k + 1, &edges).expect("a star is connected");
    let mut rot = vec![(0..k).collect::<Vec<_>>()];
    rot.extend((0..k).map(|e| vec![e]));
    g.with_rotation(rot).expect("valid star rotation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        for spec in [
            FamilySpec::Cycle { n: 5, k: 2 },
            FamilySpec::Hexagon { a: 1, b: 2, c: 2 },
            FamilySpec::Aztec { n: 2 },
            FamilySpec::GridPinned { n: 3 },
        ] {
            let a = generate(spec).unwrap();
            let b = generate(spec).unwrap();
            assert_eq!(a.graph, b.graph);
            assert_eq!(a.fstar, b.fstar);
        }
    }

    #[test]
    fn sizes() {
        let h = generate(FamilySpec::Hexagon { a: 1, b: 1, c: 1 }).unwrap();
        assert_eq!(h.graph.num_vertices(), 6);
        assert_eq!(h.graph.num_edges(), 6);
        let h = generate(FamilySpec::Hexagon { a: 1, b: 2, c: 2 }).unwrap();
        assert_eq!(h.graph.num_vertices(), 2 * (2 + 2 + 4));
        let a = generate(FamilySpec::Aztec { n: 2 }).unwrap();
        assert_eq!(a.graph.num_vertices(), 12);
        let g = generate(FamilySpec::GridPinned { n: 2 }).unwrap();
        assert_eq!(g.graph.pinned().count(), 8);
        let k = generate(FamilySpec::KnOuter { n: 5 }).unwrap();
        assert_eq!(k.graph.num_edges(), 10);
        let t = generate(FamilySpec::TorusGrid { width: 4, height: 4 }).unwrap();
        assert_eq!(t.graph.num_edges(), 32);
    }

    #[test]
    fn outer_faces() {
        let c = generate(FamilySpec::Cycle { n: 4, k: 2 }).unwrap();
        let emb = trace_faces(&c.graph).unwrap();
        let f = &emb.faces[c.fstar.unwrap()];
        // vertices are numbered clockwise, as the outer face is traced
        let vs: Vec<usize> = f.vertices().collect();
        let pos = vs.iter().position(|&v| v == 0).unwrap();
        assert_eq!(vs[(pos + 1) % 4], 1);
        let r = generate(FamilySpec::Rectangle { width: 3, height: 3 }).unwrap();
        let emb = trace_faces(&r.graph).unwrap();
        assert_eq!(emb.faces[r.fstar.unwrap()].degree(), 8);
    }

    #[test]
    fn pinned_grid_boundary_directions() {
        let g = generate(FamilySpec::GridPinned { n: 3 }).unwrap();
        let w = 4;
        for p in g.graph.pinned() {
            let (tx, ty, hx, hy) = (p.tail % w, p.tail / w, p.head % w, p.head / w);
            if ty == 0 && hy == 0 {
                assert_eq!(hx, tx + 1, "top points right");
            } else if ty == 3 && hy == 3 {
                assert_eq!(hx + 1, tx, "bottom points left");
            } else if tx == 0 && hx == 0 {
                assert_eq!(hy, ty + 1, "left points down");
            } else {
                assert_eq!(hy + 1, ty, "right points up");
            }
        }
    }

    #[test]
    fn bad_params() {
        assert!(generate(FamilySpec::Cycle { n: 2, k: 0 }).is_err());
        assert!(generate(FamilySpec::Hexagon { a: 0, b: 1, c: 1 }).is_err());
        assert!(FamilySpec::from_tag("nope", |_| None).is_err());
        assert_eq!(
            FamilySpec::from_tag("cycle", |k| if k == "n" { Some(4) } else { Some(2) }).unwrap(),
            FamilySpec::Cycle { n: 4, k: 2 }
        );
    }
}
