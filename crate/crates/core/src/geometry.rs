//! Exact integer geometry: angular order, signed areas and convex hulls.

use std::cmp::Ordering;

use crate::graph::{Embedding, FaceId, MultiGraph, VertexId};

pub type Point = (i64, i64);

fn half(p: Point) -> u8 {
    // 0 for angles in [0, π), 1 for [π, 2π)
    if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
        0
    } else {
        1
    }
}

pub fn cross(a: Point, b: Point) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

/// Counterclockwise angle order of non-zero vectors, starting at the positive x-axis.
pub fn cmp_angle(a: Point, b: Point) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Clockwise rotation system read off vertex positions (y axis up).
/// Parallel edges with identical direction keep edge-id order.
pub fn rotation_from_coordinates(g: &MultiGraph, coords: &[Point]) -> Vec<Vec<usize>> {
    g.vertices()
        .map(|v| {
            let mut inc = g.incident(v).to_vec();
            inc.sort_by(|&e, &f| {
                let a = sub(coords[g.other_end(e, v)], coords[v]);
                let b = sub(coords[g.other_end(f, v)], coords[v]);
                cmp_angle(b, a).then(e.cmp(&f))
            });
            inc
        })
        .collect()
}

/// Twice the signed area of the polygon through the given vertices.
pub fn signed_area2(coords: &[Point], cycle: impl IntoIterator<Item = VertexId>) -> i64 {
    let pts: Vec<Point> = cycle.into_iter().map(|v| coords[v]).collect();
    (0..pts.len()).map(|i| cross(pts[i], pts[(i + 1) % pts.len()])).sum()
}

/// The face traced clockwise in the plane (most negative signed area).
pub fn outer_face(emb: &Embedding, coords: &[Point]) -> FaceId {
    emb.faces
        .iter()
        .min_by_key(|f| (signed_area2(coords, f.vertices()), f.id))
        .map(|f| f.id)
        .expect("an embedding has a face")
}

/// Convex hull vertices in counterclockwise order, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(sub(lower[lower.len() - 1], lower[lower.len() - 2]), sub(p, lower[lower.len() - 1])) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(sub(upper[upper.len() - 1], upper[upper.len() - 2]), sub(p, upper[upper.len() - 1])) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True when `p` lies on the boundary of the convex hull of `points`.
/// Points of a degenerate (collinear) set all lie on the boundary.
pub fn on_hull_boundary(points: &[Point], p: Point) -> bool {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return true;
    }
    (0..hull.len()).any(|i| {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        cross(sub(b, a), sub(p, a)) == 0
            && p.0 >= a.0.min(b.0)
            && p.0 <= a.0.max(b.0)
            && p.1 >= a.1.min(b.1)
            && p.1 <= a.1.max(b.1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_order() {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        for w in dirs.windows(2) {
            assert_eq!(cmp_angle(w[0], w[1]), Ordering::Less);
        }
    }

    #[test]
    fn star_rotation_is_clockwise() {
        let g = MultiGraph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        // east, north, west, south
        let coords = [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)];
        let rot = rotation_from_coordinates(&g, &coords);
        let g = g.with_rotation(rot).unwrap();
        // clockwise from east: east, south, west, north
        assert_eq!(g.rotation().unwrap()[0], vec![0, 3, 2, 1]);
    }

    #[test]
    fn hull() {
        let pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)];
        assert_eq!(convex_hull(&pts).len(), 4);
        assert!(on_hull_boundary(&pts, (1, 0)));
        assert!(on_hull_boundary(&pts, (2, 2)));
        assert!(!on_hull_boundary(&pts, (1, 1)));
        assert!(on_hull_boundary(&[(3, 3)], (3, 3)));
        assert!(on_hull_boundary(&[(0, 0), (1, 1), (2, 2)], (1, 1)));
        assert_eq!(signed_area2(&[(0, 0), (1, 0), (1, 1), (0, 1)], [0, 1, 2, 3]), 2);
    }
}
