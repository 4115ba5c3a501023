//! d-factors whose dual has a forced cycle: a zero-degree vertex freezes
//! every dual edge around it, so the faces around it move as one class.

use std::collections::BTreeSet;

use orient_lattice::families::{generate, FamilySpec};
use orient_lattice::matching::{DFactorLattice, MatchingSpace};
use orient_lattice::Config;

fn grid_with_hole(size: usize) -> (MatchingSpace, DFactorLattice, usize) {
    let inst = generate(FamilySpec::Rectangle { width: size, height: size }).unwrap();
    let centre = (size / 2) * size + size / 2;
    let mut degrees = vec![1; size * size];
    degrees[centre] = 0;
    let ms = MatchingSpace::new(inst.graph.clone(), degrees, inst.fstar.unwrap(), inst.black.clone()).unwrap();
    let dl = DFactorLattice::new(ms.clone(), &Config::default()).unwrap();
    (ms, dl, centre)
}

fn matchings_avoiding(size: usize, hole: usize) -> u64 {
    let n = size * size;
    let mut adj = vec![Vec::new(); n];
    for y in 0..size {
        for x in 0..size {
            let v = y * size + x;
            if x + 1 < size {
                adj[v].push(v + 1);
                adj[v + 1].push(v);
            }
            if y + 1 < size {
                adj[v].push(v + size);
                adj[v + size].push(v);
            }
        }
    }
    fn rec(adj: &[Vec<usize>], used: &mut [bool]) -> u64 {
        let Some(v) = used.iter().position(|&u| !u) else { return 1 };
        used[v] = true;
        let mut total = 0;
        for &w in &adj[v] {
            if !used[w] {
                used[w] = true;
                total += rec(adj, used);
                used[w] = false;
            }
        }
        used[v] = false;
        total
    }
    let mut used = vec![false; n];
    used[hole] = true;
    rec(&adj, &mut used)
}

#[test]
fn faces_around_a_hole_form_one_class() {
    for size in [3, 5] {
        let (ms, dl, centre) = grid_with_hole(size);
        let space = ms.space();
        let p = space.partition();
        let around: BTreeSet<usize> = ms.vertex_cycle(centre).iter().map(|d| d.tail).collect();
        assert_eq!(around.len(), 4);
        let merged: Vec<usize> = (0..p.len()).filter(|&a| p.classes[a].len() > 1).collect();
        assert_eq!(merged.len(), 1, "size {size}");
        let class = merged[0];
        assert!(!space.is_frozen(class));
        assert_eq!(p.classes[class].iter().copied().collect::<BTreeSet<_>>(), around);
        assert_eq!(dl.len() as u64, matchings_avoiding(size, centre));
    }
}

#[test]
fn pushing_the_class_toggles_the_ring() {
    let (ms, dl, centre) = grid_with_hole(5);
    let g = ms.graph();
    let hasse = dl.hasse().unwrap();
    assert_eq!(dl.len(), 196);
    assert!(hasse.poset().unwrap().is_distributive_lattice());
    let emb = ms.embedding();
    let around: BTreeSet<usize> = ms.vertex_cycle(centre).iter().map(|d| d.tail).collect();
    let spokes: BTreeSet<usize> = g.incident(centre).iter().copied().collect();
    let mut ring = BTreeSet::new();
    for &f in &around {
        for d in &emb.faces[f].boundary {
            if !spokes.contains(&d.edge) {
                ring.insert(d.edge);
            }
        }
    }
    assert_eq!(ring.len(), 8);
    let (mut singles, mut rings) = (0, 0);
    for &(u, l) in &hasse.covers {
        let (a, b) = (&dl.factors()[u], &dl.factors()[l]);
        let diff: BTreeSet<usize> = g.edges().filter(|&e| a.contains(e) != b.contains(e)).collect();
        if diff == ring {
            rings += 1;
        } else {
            assert_eq!(diff.len(), 4, "a cover toggles {diff:?}");
            singles += 1;
        }
    }
    assert!(rings > 0 && singles > 0);
    for m in dl.factors() {
        assert!(spokes.iter().all(|&e| !m.contains(e)));
    }
}
