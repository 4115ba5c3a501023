use std::collections::BTreeSet;

use orient_lattice::families::{generate, rectangle_grid, square_cells, FamilySpec};
use orient_lattice::io::{instance_to_json, parse_instance};
use orient_lattice::matching::{DFactorLattice, MatchingSpace};
use orient_lattice::orientation::{CSpace, Comparison, Strategy};
use orient_lattice::{Config, Error, Orientation, OrientationLattice};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dominoes(free: &mut BTreeSet<(i64, i64)>) -> u64 {
    let Some(&(x, y)) = free.iter().min_by_key(|&&(x, y)| (y, x)) else { return 1 };
    free.remove(&(x, y));
    let mut total = 0;
    for other in [(x + 1, y), (x, y + 1)] {
        if free.remove(&other) {
            total += dominoes(free);
            free.insert(other);
        }
    }
    free.insert((x, y));
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_lattice_size(n in 3usize..9, k in 0usize..9) {
        let k = k % (n + 1);
        let inst = generate(FamilySpec::Cycle { n, k }).unwrap();
        let space = CSpace::new(inst.graph.clone(), inst.reference.unwrap(), inst.vstar).unwrap();
        let l = OrientationLattice::new(space, &Config::default()).unwrap();
        prop_assert_eq!(l.len(), binomial(n, k));
    }

    #[test]
    fn meet_and_join_are_bounds(n in 3usize..8, k in 1usize..4, a in 0usize..1000, b in 0usize..1000) {
        let k = k.min(n - 1);
        let inst = generate(FamilySpec::Cycle { n, k }).unwrap();
        let space = CSpace::new(inst.graph.clone(), inst.reference.unwrap(), inst.vstar).unwrap();
        let l = OrientationLattice::new(space, &Config::default()).unwrap();
        let (i, j) = (a % l.len(), b % l.len());
        let (m, s) = (l.meet_idx(i, j).unwrap(), l.join_idx(i, j).unwrap());
        let le = |x: usize, y: usize| matches!(l.compare_idx(x, y), Comparison::Less | Comparison::Equal);
        prop_assert!(le(m, i) && le(m, j) && le(i, s) && le(j, s));
        for c in 0..l.len() {
            if le(c, i) && le(c, j) {
                prop_assert!(le(c, m));
            }
            if le(i, c) && le(j, c) {
                prop_assert!(le(s, c));
            }
        }
    }

    #[test]
    fn strategies_agree(bits in proptest::collection::vec(any::<bool>(), 12), vstar in 0usize..9) {
        let g = rectangle_grid(3, 3);
        let reference = Orientation::from_bits(bits);
        let space = CSpace::new(g, reference, vstar).unwrap();
        let cfg = Config::default();
        let brute: BTreeSet<_> = space.enumerate_brute_force(&cfg).unwrap().into_iter().collect();
        let bfs: BTreeSet<_> = space.enumerate_bfs(&cfg).unwrap().into_iter().collect();
        prop_assert_eq!(&brute, &bfs);
        let auto = space.enumerate(&cfg.with_strategy(Strategy::Auto)).unwrap();
        prop_assert_eq!(auto.len(), brute.len());
    }

    #[test]
    fn region_tilings_match_brute_force(mask in 1u32..(1 << 12)) {
        let cells: Vec<(i64, i64)> = (0..12).filter(|i| mask >> i & 1 == 1).map(|i| (i % 4, i / 4)).collect();
        let want = dominoes(&mut cells.iter().copied().collect());
        let built = square_cells(&cells).and_then(|inst| {
            let ms = MatchingSpace::new(inst.graph.clone(), inst.degrees.clone().unwrap(), inst.fstar.unwrap(), inst.black.clone())?;
            DFactorLattice::new(ms, &Config::default())
        });
        match built {
            Ok(dl) => prop_assert_eq!(dl.len() as u64, want),
            Err(Error::NoDFactor) => prop_assert_eq!(want, 0),
            Err(_) => {}
        }
    }

    #[test]
    fn instances_round_trip(which in 0usize..5, p in 1usize..4, q in 1usize..4) {
        let spec = match which {
            0 => FamilySpec::Cycle { n: p + 2, k: q.min(p + 2) },
            1 => FamilySpec::Path { n: p },
            2 => FamilySpec::Rectangle { width: p + 1, height: q + 1 },
            3 => FamilySpec::Hexagon { a: p, b: q, c: 1 },
            _ => FamilySpec::GridPinned { n: p },
        };
        let inst = generate(spec).unwrap();
        let text = instance_to_json(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back.graph, &inst.graph);
        prop_assert_eq!(instance_to_json(&back), text);
    }
}
