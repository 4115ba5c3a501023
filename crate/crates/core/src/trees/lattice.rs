//! The swing-down lattice of spanning trees.

use std::collections::HashMap;

use super::{Angle, ArborescencePair, HasseGraphH, SwingDirection, Tree, TreeSpace};
use crate::config::Config;
use crate::counting::spanning_tree_count;
use crate::error::{ensure, Error, Result};
use crate::graph::{EdgeId, FaceId, MultiGraph, VertexId};
use crate::matching::{DFactorLattice, TwistDirection};
use crate::orientation::HasseDiagram;
use crate::par;

/// Every spanning tree, as sorted edge lists in lexicographic order.
pub fn enumerate_spanning_trees(g: &MultiGraph, cfg: &Config) -> Result<Vec<Tree>> {
    let expected = spanning_tree_count(g);
    if expected > cfg.max_elements as u128 {
        return Err(Error::TooLarge {
            what: "spanning trees",
            size: usize::try_from(expected).unwrap_or(usize::MAX),
            cap: cfg.max_elements,
        });
    }
    let mut out = Vec::with_capacity(expected as usize);
    let mut comp: Vec<usize> = g.vertices().collect();
    grow(g, 0, &mut comp, &mut Vec::new(), &mut out);
    ensure(out.len() as u128 == expected, || {
        format!("{} trees enumerated, matrix-tree theorem gives {expected}", out.len())
    })?;
    Ok(out)
}

fn grow(g: &MultiGraph, e: EdgeId, comp: &mut Vec<usize>, chosen: &mut Vec<EdgeId>, out: &mut Vec<Tree>) {
    let need = g.num_vertices() - 1 - chosen.len();
    if need == 0 {
        out.push(chosen.clone());
        return;
    }
    if g.num_edges() - e < need {
        return;
    }
    let (a, b) = g.ends(e);
    let (ca, cb) = (comp[a], comp[b]);
    if ca != cb {
        let saved = comp.clone();
        for c in comp.iter_mut().filter(|c| **c == cb) {
            *c = ca;
        }
        chosen.push(e);
        grow(g, e + 1, comp, chosen, out);
        chosen.pop();
        *comp = saved;
    }
    grow(g, e + 1, comp, chosen, out);
}

/// `Σ q^rank`; `NotGraded` unless all maximal chains between comparable
/// elements have equal length.
pub fn rank_generating_function<T>(h: &HasseDiagram<T>) -> Result<Vec<u64>> {
    h.poset()?.rank_generating_function()
}

/// A covering pair of trees and the angle swung through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TreeCover {
    pub upper: usize,
    pub lower: usize,
    pub angle: Angle,
}

/// Spanning trees ordered by swinging down, checked against the d-factor
/// lattice of `H(v*, f*)` through the Temperley bijection.
#[derive(Clone, Debug)]
pub struct TreeLattice {
    space: TreeSpace,
    h: HasseGraphH,
    pairs: Vec<ArborescencePair>,
    covers: Vec<TreeCover>,
    hasse: HasseDiagram<Tree>,
}

impl TreeLattice {
    pub fn new(space: TreeSpace, cfg: &Config) -> Result<Self> {
        let trees = enumerate_spanning_trees(space.graph(), cfg)?;
        let pairs =
            par::map(&trees, cfg.execution, |t| space.arborescence_pair(t)).into_iter().collect::<Result<Vec<_>>>()?;
        let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let swings = par::map(&pairs, cfg.execution, |p| {
            space
                .pivotal_angles(p)
                .into_iter()
                .map(|a| Ok((a, space.swing(p, &a, SwingDirection::Down)?)))
                .collect::<Result<Vec<_>>>()
        });
        let mut covers = Vec::new();
        for (i, s) in swings.into_iter().enumerate() {
            for (angle, q) in s? {
                let j = *index.get(q.tree()).ok_or_else(|| Error::Invariant("swing left the trees".into()))?;
                covers.push(TreeCover { upper: i, lower: j, angle });
            }
        }
        covers.sort();
        let h = space.hasse_graph_h()?;
        check_temperley(&space, &h, &pairs, &covers, cfg)?;
        let pairs_only: Vec<(usize, usize)> = covers.iter().map(|c| (c.upper, c.lower)).collect();
        let hasse = HasseDiagram::new(trees, pairs_only);
        ensure(hasse.covers.len() == covers.len(), || "two angles swing one tree to the same tree".into())?;
        let lowest: Vec<usize> = (0..hasse.len()).filter(|&i| covers.iter().all(|c| c.upper != i)).collect();
        ensure(lowest.len() == 1, || format!("{} minimal trees", lowest.len()))?;
        let hasse = hasse.with_rank_from(lowest[0])?;
        Ok(TreeLattice { space, h, pairs, covers, hasse })
    }

    pub fn space(&self) -> &TreeSpace {
        &self.space
    }

    pub fn h(&self) -> &HasseGraphH {
        &self.h
    }

    pub fn pairs(&self) -> &[ArborescencePair] {
        &self.pairs
    }

    pub fn trees(&self) -> &[Tree] {
        &self.hasse.elements
    }

    /// Swing-down covers with their angles, sorted.
    pub fn covers(&self) -> &[TreeCover] {
        &self.covers
    }

    pub fn hasse(&self) -> &HasseDiagram<Tree> {
        &self.hasse
    }

    pub fn len(&self) -> usize {
        self.hasse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hasse.is_empty()
    }

    pub fn index_of(&self, tree: &[EdgeId]) -> Option<usize> {
        let mut t = tree.to_vec();
        t.sort_unstable();
        self.hasse.elements.binary_search(&t).ok()
    }

    pub fn bottom(&self) -> usize {
        self.rank().iter().position(|&r| r == 0).expect("ranked")
    }

    pub fn top(&self) -> usize {
        let rank = self.rank();
        let max = rank.iter().max().copied().unwrap_or(0);
        rank.iter().position(|&r| r == max).expect("ranked")
    }

    fn rank(&self) -> &[usize] {
        self.hasse.rank.as_deref().expect("built with ranks")
    }

    /// Join-irreducible trees, each with the angle of its only lower cover.
    pub fn join_irreducible_angles(&self) -> Vec<(usize, Angle)> {
        let mut lower: Vec<Vec<&TreeCover>> = vec![Vec::new(); self.len()];
        for c in &self.covers {
            lower[c.upper].push(c);
        }
        (0..self.len()).filter(|&i| lower[i].len() == 1).map(|i| (i, lower[i][0].angle)).collect()
    }
}

/// Round trip through `H`, twist/swing commutation, and (when `H` has a
/// planar dual) equality with the covers of the d-factor lattice of `H`.
fn check_temperley(
    space: &TreeSpace,
    h: &HasseGraphH,
    pairs: &[ArborescencePair],
    covers: &[TreeCover],
    cfg: &Config,
) -> Result<()> {
    let matchings: Vec<_> = pairs.iter().map(|p| space.temperley(h, p)).collect();
    for (p, m) in pairs.iter().zip(&matchings) {
        ensure(space.temperley_inv(h, m)? == *p, || "Temperley inverse disagrees".into())?;
    }
    let mut sorted = matchings.clone();
    sorted.sort();
    ensure(sorted == h.perfect_matchings(cfg)?, || "trees and matchings of H differ".into())?;
    let ms = match h.matching_space() {
        Ok(ms) => Some(ms),
        // a bridge of H has a loop for its dual; the order is then checked directly
        Err(Error::SelfLoop(_)) => None,
        Err(e) => return Err(e),
    };
    for c in covers {
        let face: FaceId = h.quad_face(space, &c.angle)?;
        let twisted = match &ms {
            Some(ms) => ms.twist(&matchings[c.upper], face, TwistDirection::Down)?,
            None => matchings[c.upper].toggled(h.embedding().faces[face].boundary.iter().map(|d| d.edge)),
        };
        ensure(twisted == matchings[c.lower], || format!("swing at {:?} is not a twist of H", c.angle))?;
    }
    match ms {
        Some(ms) => {
            let dl = DFactorLattice::new(ms, cfg)?;
            let dh = dl.hasse()?;
            let index: HashMap<_, usize> = matchings.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let at = |k: usize| {
                index.get(&dh.elements[k]).copied().ok_or_else(|| Error::Invariant("unknown matching".into()))
            };
            let mut pulled = dh.covers.iter().map(|&(u, l)| Ok((at(u)?, at(l)?))).collect::<Result<Vec<_>>>()?;
            pulled.sort_unstable();
            let direct: Vec<(usize, usize)> = covers.iter().map(|c| (c.upper, c.lower)).collect();
            ensure(pulled == direct, || "swing covers differ from the d-factor lattice of H".into())?;
        }
        None => {
            let direct: Vec<(usize, usize)> = covers.iter().map(|c| (c.upper, c.lower)).collect();
            let poset = crate::poset::Poset::from_covers(pairs.len(), &direct)?;
            ensure(poset.is_distributive_lattice(), || "swing order is not a distributive lattice".into())?;
        }
    }
    Ok(())
}

/// The swing-down lattice of `g` for the given `v*` and `f*`.
pub fn tree_lattice(g: &MultiGraph, vstar: VertexId, fstar: FaceId, cfg: &Config) -> Result<HasseDiagram<Tree>> {
    Ok(TreeLattice::new(TreeSpace::new(g.clone(), vstar, fstar)?, cfg)?.hasse)
}
