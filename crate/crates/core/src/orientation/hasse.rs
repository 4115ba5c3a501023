use std::collections::VecDeque;

use crate::error::{ensure, Result};
use crate::poset::Poset;

/// Elements with their covering pairs `(upper, lower)` and optional ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram<T> {
    pub elements: Vec<T>,
    pub covers: Vec<(usize, usize)>,
    pub rank: Option<Vec<usize>>,
}

impl<T> HasseDiagram<T> {
    pub fn new(elements: Vec<T>, mut covers: Vec<(usize, usize)>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        HasseDiagram { elements, covers, rank: None }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> HasseDiagram<U> {
        HasseDiagram { elements: self.elements.into_iter().map(f).collect(), covers: self.covers, rank: self.rank }
    }

    pub fn poset(&self) -> Result<Poset> {
        Poset::from_covers(self.len(), &self.covers)
    }

    /// Ranks by breadth-first search upward from `bottom`, checked on every cover.
    pub fn with_rank_from(mut self, bottom: usize) -> Result<Self> {
        let n = self.len();
        let mut uppers = vec![Vec::new(); n];
        for &(u, l) in &self.covers {
            uppers[l].push(u);
        }
        let mut rank = vec![usize::MAX; n];
        rank[bottom] = 0;
        let mut queue = VecDeque::from([bottom]);
        while let Some(x) = queue.pop_front() {
            for &u in &uppers[x] {
                if rank[u] == usize::MAX {
                    rank[u] = rank[x] + 1;
                    queue.push_back(u);
                }
            }
        }
        ensure(rank.iter().all(|&r| r != usize::MAX), || "element unreachable from the bottom".into())?;
        ensure(self.covers.iter().all(|&(u, l)| rank[u] == rank[l] + 1), || {
            "cover changes rank by more than one".into()
        })?;
        self.rank = Some(rank);
        Ok(self)
    }

    /// Undirected distance in the cover graph.
    pub fn distance(&self, from: usize, to: usize) -> Option<usize> {
        self.distances_from(from)[to]
    }

    pub fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let n = self.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, l) in &self.covers {
            adj[u].push(l);
            adj[l].push(u);
        }
        let mut dist = vec![None; n];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued nodes have a distance");
            for &y in &adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Coefficients of `Σ q^rank` (ranks must be present or derivable).
    pub fn rank_generating_function(&self) -> Result<Vec<u64>> {
        match &self.rank {
            Some(rank) => {
                let mut c = vec![0u64; rank.iter().max().map_or(0, |m| m + 1)];
                for &r in rank {
                    c[r] += 1;
                }
                Ok(c)
            }
            None => self.poset()?.rank_generating_function(),
        }
    }
}
