use std::collections::{BTreeSet, VecDeque};

use super::{CSpace, Orientation};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;

/// How to enumerate the c-orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Filter all assignments of the non-pinned edges by basis circulations.
    BruteForce,
    /// Breadth-first search from the bottom through push-ups.
    Bfs,
    /// Both, asserted equal, when the brute-force cap allows; otherwise BFS.
    Auto,
}

/// One basis cycle restricted to the non-pinned edges.
struct MaskedCycle {
    mask: u64,
    /// bit set where the cycle runs `ends.0 -> ends.1`
    sense: u64,
    /// contribution of pinned edges
    constant: i64,
    value: i64,
}

impl CSpace {
    pub fn enumerate(&self, cfg: &Config) -> Result<Vec<Orientation>> {
        match cfg.strategy {
            Strategy::BruteForce => self.enumerate_brute_force(cfg),
            Strategy::Bfs => self.enumerate_bfs(cfg),
            Strategy::Auto => {
                let bfs = self.enumerate_bfs(cfg)?;
                if self.non_pinned_edges().len() <= cfg.max_edges {
                    let brute = self.enumerate_brute_force(cfg)?;
                    if brute != bfs {
                        return Err(Error::Invariant(format!(
                            "brute force found {} c-orientations, push-up search {}",
                            brute.len(),
                            bfs.len()
                        )));
                    }
                }
                Ok(bfs)
            }
        }
    }

    fn non_pinned_edges(&self) -> Vec<usize> {
        self.graph().edges().filter(|&e| !self.graph().is_pinned(e)).collect()
    }

    pub fn enumerate_brute_force(&self, cfg: &Config) -> Result<Vec<Orientation>> {
        let g = self.graph();
        let free = self.non_pinned_edges();
        let k = free.len();
        if k > cfg.max_edges || k > 63 {
            return Err(Error::TooLarge { what: "non-pinned edges", size: k, cap: cfg.max_edges.min(63) });
        }
        let mut bit = vec![usize::MAX; g.num_edges()];
        for (i, &e) in free.iter().enumerate() {
            bit[e] = i;
        }
        let circ = self.circulation();
        let cycles: Vec<MaskedCycle> = circ
            .basis
            .cycles
            .iter()
            .zip(&circ.values)
            .map(|(cyc, &value)| {
                let mut c = MaskedCycle { mask: 0, sense: 0, constant: 0, value };
                for d in cyc {
                    let along = g.ends(d.edge).0 == d.tail;
                    match g.pin(d.edge) {
                        Some(p) => c.constant += if p == *d { 1 } else { -1 },
                        None => {
                            c.mask |= 1 << bit[d.edge];
                            if along {
                                c.sense |= 1 << bit[d.edge];
                            }
                        }
                    }
                }
                c
            })
            .collect();
        let keep = |x: u64| {
            cycles.iter().all(|c| {
                let agree = (c.mask & !(x ^ c.sense)).count_ones() as i64;
                c.constant + 2 * agree - c.mask.count_ones() as i64 == c.value
            })
        };
        let masks = par::filter_range(1u64 << k, cfg.execution, keep);
        let mut base = Orientation::canonical(g);
        for p in g.pinned() {
            if !base.contains(g, p) {
                base.flip(p.edge);
            }
        }
        let mut out: Vec<Orientation> = masks
            .into_iter()
            .map(|x| {
                let mut bits = base.bits().to_vec();
                for (i, &e) in free.iter().enumerate() {
                    bits[e] = x >> i & 1 == 1;
                }
                Orientation::from_bits(bits)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn enumerate_bfs(&self, cfg: &Config) -> Result<Vec<Orientation>> {
        let (bottom, _) = self.extremes();
        let mut seen = BTreeSet::from([bottom.clone()]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(r) = queue.pop_front() {
            for a in self.minimal_classes(&r) {
                let up = self.push_up(&r, a)?;
                if seen.insert(up.clone()) {
                    if seen.len() > cfg.max_elements {
                        return Err(Error::TooLarge {
                            what: "lattice elements",
                            size: seen.len(),
                            cap: cfg.max_elements,
                        });
                    }
                    queue.push_back(up);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn space(g: MultiGraph, r: Orientation, vstar: usize) -> CSpace {
        CSpace::new(g, r, vstar).unwrap()
    }

    #[test]
    fn c4_zero_circulation_has_six() {
        let g = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = Orientation::from_bits(vec![true, true, false, false]);
        let s = space(g, r, 0);
        let cfg = Config::default();
        assert_eq!(s.enumerate(&cfg).unwrap().len(), 6);
        assert_eq!(s.enumerate(&cfg.sequential()).unwrap(), s.enumerate(&cfg).unwrap());
    }

    #[test]
    fn unconstrained_path() {
        for n in 1..6 {
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
            let g = MultiGraph::new(n + 1, &edges).unwrap();
            let r = Orientation::canonical(&g);
            let s = space(g, r, n);
            assert_eq!(s.enumerate(&Config::default()).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
        let g = MultiGraph::new(7, &edges).unwrap();
        let s = space(g.clone(), Orientation::canonical(&g), 6);
        let cfg = Config { max_edges: 4, ..Config::default() }.with_strategy(Strategy::BruteForce);
        assert!(matches!(s.enumerate(&cfg), Err(Error::TooLarge { .. })));
        let cfg = Config { max_edges: 4, ..Config::default() };
        assert_eq!(s.enumerate(&cfg).unwrap().len(), 64);
        let cfg = Config { max_elements: 10, ..Config::default() }.with_strategy(Strategy::Bfs);
        assert!(matches!(s.enumerate(&cfg), Err(Error::TooLarge { .. })));
    }
}
