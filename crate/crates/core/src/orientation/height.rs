use super::{EdgeBias, Orientation, Q};
use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, MultiGraph, VertexId};

/// Vertex heights anchored at `anchor`.
///
/// Across a directed edge `a -> b`: `H(b) - H(a) = [a -> b in R] - F̄(a -> b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    pub values: Vec<Q>,
    pub anchor: VertexId,
}

impl HeightFunction {
    pub fn get(&self, v: VertexId) -> Q {
        self.values[v]
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &HeightFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    pub fn pointwise_min(&self, other: &HeightFunction) -> HeightFunction {
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a.min(b)).collect();
        HeightFunction { values, anchor: self.anchor }
    }

    pub fn pointwise_max(&self, other: &HeightFunction) -> HeightFunction {
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a.max(b)).collect();
        HeightFunction { values, anchor: self.anchor }
    }
}

fn increment(g: &MultiGraph, r: &Orientation, bias: &EdgeBias, d: DirectedEdge) -> Q {
    let inside = if r.contains(g, d) { 1 } else { 0 };
    Q::from_integer(inside) - bias.get(g, d)
}

/// Propagates heights along a BFS tree from `vstar`, then checks every edge.
pub fn height_function(g: &MultiGraph, r: &Orientation, vstar: VertexId, bias: &EdgeBias) -> Result<HeightFunction> {
    let (parent, order) = g.bfs_tree(vstar);
    let mut values = vec![Q::from_integer(0); g.num_vertices()];
    for &v in order.iter().skip(1) {
        // parent dart points v -> parent
        let p = parent[v].expect("non-root has a parent");
        values[v] = values[p.head] + increment(g, r, bias, p.reversed());
    }
    for e in g.edges() {
        let d = g.dart_at(2 * e);
        if values[d.head] - values[d.tail] != increment(g, r, bias, d) {
            return Err(Error::Inconsistent(e));
        }
    }
    Ok(HeightFunction { values, anchor: vstar })
}

/// Reads the orientation off a height-function: each edge takes the
/// direction whose increment matches.
pub fn orientation_of_height(g: &MultiGraph, h: &HeightFunction, bias: &EdgeBias) -> Result<Orientation> {
    if h.values[h.anchor] != Q::from_integer(0) {
        return Err(Error::NotAnchored);
    }
    let one = Q::from_integer(1);
    let bits = g
        .edges()
        .map(|e| {
            let d = g.dart_at(2 * e);
            let diff = h.values[d.head] - h.values[d.tail];
            let f = bias.get(g, d);
            if diff == one - f {
                Ok(true)
            } else if diff == -f {
                Ok(false)
            } else {
                Err(Error::NotAHeight(e))
            }
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(Orientation::from_bits(bits))
}
