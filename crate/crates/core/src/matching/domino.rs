use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::DFactor;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::MultiGraph;
use crate::orientation::Q;

/// A set of unit squares; square `(x, y)` has lower-left corner `(x, y)`
/// (y axis up) and is black when `x + y` is even. A periodic region wraps
/// coordinates modulo `(width, height)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    cells: Vec<Point>,
    periodic: Option<(i64, i64)>,
}

type Segment = (Point, Point);

impl Region {
    pub fn squares(cells: &[Point]) -> Self {
        let mut cells = cells.to_vec();
        cells.sort_by_key(|&(x, y)| (y, x));
        cells.dedup();
        Region { cells, periodic: None }
    }

    /// The full `width × height` grid with opposite sides identified.
    pub fn torus(width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 || width % 2 == 1 || height % 2 == 1 {
            return Err(Error::BadParams("periodic regions need even sides of at least 2".into()));
        }
        let cells: Vec<Point> = (0..height as i64).flat_map(|y| (0..width as i64).map(move |x| (x, y))).collect();
        Ok(Region { cells, periodic: Some((width as i64, height as i64)) })
    }

    pub fn rectangle(width: usize, height: usize) -> Self {
        let cells: Vec<Point> = (0..height as i64).flat_map(|y| (0..width as i64).map(move |x| (x, y))).collect();
        Region::squares(&cells)
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    fn wrap(&self, p: Point) -> Point {
        match self.periodic {
            Some((w, h)) => (p.0.rem_euclid(w), p.1.rem_euclid(h)),
            None => p,
        }
    }

    fn index(&self) -> HashMap<Point, usize> {
        self.cells.iter().enumerate().map(|(i, &c)| (c, i)).collect()
    }

    pub fn is_black(cell: Point) -> bool {
        (cell.0 + cell.1).rem_euclid(2) == 0
    }

    /// Cell-adjacency graph, with the lattice segment each edge crosses.
    /// Cells are vertices in `(y, x)` order; each cell lists its east then
    /// its north neighbour.
    pub fn graph(&self) -> Result<(MultiGraph, Vec<Segment>)> {
        let index = self.index();
        let mut edges = Vec::new();
        let mut segments = Vec::new();
        for (i, &(x, y)) in self.cells.iter().enumerate() {
            if let Some(&j) = index.get(&self.wrap((x + 1, y))) {
                edges.push((i, j));
                segments.push(self.segment((x + 1, y), (x + 1, y + 1)));
            }
            if let Some(&j) = index.get(&self.wrap((x, y + 1))) {
                edges.push((i, j));
                segments.push(self.segment((x, y + 1), (x + 1, y + 1)));
            }
        }
        Ok((MultiGraph::new(self.cells.len(), &edges)?, segments))
    }

    fn segment(&self, a: Point, b: Point) -> Segment {
        // keep the direction, wrap the start point
        let s = self.wrap(a);
        (s, (s.0 + b.0 - a.0, s.1 + b.1 - a.1))
    }

    fn contains(&self, cell: Point, index: &HashMap<Point, usize>) -> bool {
        index.contains_key(&self.wrap(cell))
    }

    /// Unit sides of the cells, as start points with a direction (+x or +y).
    fn sides(&self) -> BTreeSet<Segment> {
        let mut out = BTreeSet::new();
        for &(x, y) in &self.cells {
            out.insert(self.segment((x, y), (x + 1, y)));
            out.insert(self.segment((x, y + 1), (x + 1, y + 1)));
            out.insert(self.segment((x, y), (x, y + 1)));
            out.insert(self.segment((x + 1, y), (x + 1, y + 1)));
        }
        out
    }

    fn points(&self) -> BTreeSet<Point> {
        self.sides().into_iter().flat_map(|(a, b)| [self.wrap(a), self.wrap(b)]).collect()
    }

    /// `points - sides + cells`, 1 for a disk.
    pub fn euler_characteristic(&self) -> i64 {
        self.points().len() as i64 - self.sides().len() as i64 + self.cells.len() as i64
    }

    /// Lattice points on a side that borders a square outside the region.
    pub fn boundary_points(&self) -> BTreeSet<Point> {
        let index = self.index();
        let mut out = BTreeSet::new();
        for (a, b) in self.sides() {
            let (l, r) = side_cells(a, b);
            if !self.contains(l, &index) || !self.contains(r, &index) {
                out.insert(self.wrap(a));
                out.insert(self.wrap(b));
            }
        }
        out
    }
}

/// Squares to the left and right of the side `a -> b` (b = a + (1,0) or a + (0,1)).
fn side_cells(a: Point, b: Point) -> (Point, Point) {
    if b.1 == a.1 {
        ((a.0, a.1), (a.0, a.1 - 1))
    } else {
        ((a.0 - 1, a.1), (a.0, a.1))
    }
}

/// Height at every lattice point of the tiling `m`: walking a side that is
/// not internal to a tile changes the height by +1/4 with a black square on
/// the left and by -1/4 otherwise. The lowest point (least y, then x) is 0.
pub fn domino_height(region: &Region, m: &DFactor) -> Result<BTreeMap<Point, Q>> {
    let (g, segments) = region.graph()?;
    m.check(&g, &vec![1; g.num_vertices()])?;
    let internal: BTreeSet<Segment> = m.edges().map(|e| segments[e]).collect();
    let index = region.index();
    let quarter = Q::new(1, 4);
    let mut adj: BTreeMap<Point, Vec<(Point, Q)>> = BTreeMap::new();
    for (a, b) in region.sides() {
        if internal.contains(&(a, b)) {
            continue;
        }
        let (l, r) = side_cells(a, b);
        let up = if region.contains(l, &index) { Region::is_black(l) } else { !Region::is_black(r) };
        let step = if up { quarter } else { -quarter };
        let (a, b) = (region.wrap(a), region.wrap(b));
        adj.entry(a).or_default().push((b, step));
        adj.entry(b).or_default().push((a, -step));
    }
    let anchor = *region.points().iter().min_by_key(|p| (p.1, p.0)).ok_or(Error::EmptyEnumeration)?;
    let mut h: BTreeMap<Point, Q> = BTreeMap::from([(anchor, Q::from_integer(0))]);
    let mut queue = VecDeque::from([anchor]);
    while let Some(p) = queue.pop_front() {
        let hp = h[&p];
        for &(q, step) in adj.get(&p).map(Vec::as_slice).unwrap_or(&[]) {
            match h.get(&q) {
                Some(&hq) if hq != hp + step => return Err(Error::NotSimplyConnected(q)),
                Some(_) => {}
                None => {
                    h.insert(q, hp + step);
                    queue.push_back(q);
                }
            }
        }
    }
    if region.euler_characteristic() != 1 || h.len() != region.points().len() {
        return Err(Error::NotSimplyConnected(anchor));
    }
    Ok(h)
}
