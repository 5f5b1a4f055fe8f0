use std::collections::{BTreeMap, HashSet, VecDeque};

use rayon::prelude::*;
use tokengraph::engine::CaseKind;
use tokengraph::{construct_with_delta, enumerate_trees, Construction, Graph, PathFamily, Provenance, TokenConfig};

fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn is_move(t: &Graph, a: u64, b: u64) -> bool {
    let d = a ^ b;
    d.count_ones() == 2 && {
        let u = d.trailing_zeros() as usize;
        let v = 63 - d.leading_zeros() as usize;
        t.has_edge(u, v)
    }
}

fn brute_delta(t: &Graph, k: usize) -> usize {
    let verts = subsets(t.n(), k);
    verts.iter().map(|&a| verts.iter().filter(|&&b| is_move(t, a, b)).count()).min().unwrap()
}

/// Pairs at distance exactly 2 in `F_k(t)`, by BFS over masks.
fn distance_two_pairs(t: &Graph, k: usize) -> Vec<(u64, u64)> {
    let verts = subsets(t.n(), k);
    let mut out = Vec::new();
    for &s in &verts {
        let mut dist = BTreeMap::from([(s, 0)]);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            if dist[&a] == 2 {
                continue;
            }
            for &b in &verts {
                if !dist.contains_key(&b) && is_move(t, a, b) {
                    dist.insert(b, dist[&a] + 1);
                    queue.push_back(b);
                }
            }
        }
        out.extend(dist.into_iter().filter(|&(b, d)| d == 2 && s < b).map(|(b, _)| (s, b)));
    }
    out
}

/// Replays the family from scratch and checks it is a set of internally
/// disjoint `x - y` paths of `F_k(t)`.
fn audit(t: &Graph, x: u64, y: u64, fam: &PathFamily) {
    assert_eq!((fam.x.mask(), fam.y.mask()), (x, y));
    let mut inner_seen = HashSet::new();
    for fp in &fam.paths {
        let configs: Vec<u64> = fp.path.configs().iter().map(|c| c.mask()).collect();
        assert_eq!((configs[0], *configs.last().unwrap()), (x, y), "{}", fp.label);
        assert!(configs.windows(2).all(|w| is_move(t, w[0], w[1])), "{} is not a walk", fp.label);
        let distinct: HashSet<u64> = configs.iter().copied().collect();
        assert_eq!(distinct.len(), configs.len(), "{} repeats a configuration", fp.label);
        for &a in &configs[1..configs.len() - 1] {
            assert!(inner_seen.insert(a), "{} shares inner configuration {a:#b}", fp.label);
        }
    }
}

#[test]
fn all_pairs_on_small_trees() {
    for n in 3..=7 {
        for t in enumerate_trees(n).unwrap() {
            for k in 1..n {
                let delta = brute_delta(&t, k);
                for (x, y) in distance_two_pairs(&t, k) {
                    let (xc, yc) = (TokenConfig::from_mask(x), TokenConfig::from_mask(y));
                    let c = construct_with_delta(&t, xc, yc, delta).unwrap();
                    assert!(c.family.len() >= delta);
                    audit(&t, x, y, &c.family);
                    let back = construct_with_delta(&t, yc, xc, delta).unwrap();
                    audit(&t, y, x, &back.family);
                }
            }
        }
    }
}

struct Found {
    tree: Graph,
    k: usize,
    x: u64,
    y: u64,
    construction: Construction,
}

/// The first instance (trees on `n` vertices) whose construction satisfies `pred`.
fn find(n: usize, pred: impl Fn(&Construction) -> bool + Sync) -> Option<Found> {
    enumerate_trees(n).unwrap().into_par_iter().find_map_first(|t| {
        (2..=n / 2).find_map(|k| {
            let delta = brute_delta(&t, k);
            distance_two_pairs(&t, k).into_iter().find_map(|(x, y)| {
                let c = construct_with_delta(&t, TokenConfig::from_mask(x), TokenConfig::from_mask(y), delta).unwrap();
                pred(&c).then(|| Found { tree: t.clone(), k, x, y, construction: c })
            })
        })
    })
}

fn check_found(f: &Found) {
    audit(&f.tree, f.x, f.y, &f.construction.family);
    assert_eq!(f.construction.delta, brute_delta(&f.tree, f.k));
    let extra = f.construction.family.paths.iter().filter(|p| p.label.is_supplemental()).count();
    assert_eq!(f.construction.family.len(), f.construction.m + extra);
    assert!(f.construction.family.len() >= f.construction.delta);
}

#[test]
fn case1_one_supplemental_path() {
    let f = find(8, |c| c.case() == CaseKind::Case1 && c.slack() == 1).expect("slack 1 occurs at n = 8");
    check_found(&f);
    assert_eq!(f.construction.family.count(Provenance::P), 1);
}

#[test]
fn case1_gap_two_uses_both_supplemental_paths() {
    // No tree on at most 9 vertices reaches δ - m = 2 in Case 1.
    for n in 4..=9 {
        assert!(find(n, |c| c.case() == CaseKind::Case1 && c.slack() >= 2).is_none(), "n = {n}");
    }
    let f = find(10, |c| c.case() == CaseKind::Case1 && c.slack() == 2).expect("slack 2 occurs at n = 10");
    check_found(&f);
    assert_eq!(f.construction.family.count(Provenance::P), 1);
    assert_eq!(f.construction.family.count(Provenance::PPrime), 1);
    assert_eq!(f.construction.family.len(), f.construction.m + 2);
}

#[test]
fn case2_gap_one() {
    for n in 4..=9 {
        assert!(find(n, |c| c.case() == CaseKind::Case2 && c.slack() >= 1).is_none(), "n = {n}");
    }
    let f = find(10, |c| c.case() == CaseKind::Case2 && c.slack() == 1).expect("slack 1 occurs at n = 10");
    check_found(&f);
    let labels = [Provenance::P1, Provenance::P2, Provenance::P3, Provenance::P4];
    assert_eq!(labels.iter().map(|&l| f.construction.family.count(l)).sum::<usize>(), 1);
}

#[test]
fn case2_with_zw_edge_uses_l2() {
    let f = find(6, |c| c.case() == CaseKind::Case2 && c.family.count(Provenance::L2) > 0).expect("L2 instance");
    check_found(&f);
}

fn tree(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

fn cfg(v: &[usize]) -> u64 {
    v.iter().fold(0, |m, &i| m | 1 << i)
}

#[test]
fn case2_gap_filled_by_p1_and_p3() {
    let t = tree(10, &[(0, 1), (0, 4), (0, 7), (1, 2), (1, 3), (4, 5), (4, 6), (7, 8), (7, 9)]);
    for (x, y, label) in [
        (cfg(&[0, 1, 2, 3, 4]), cfg(&[1, 2, 3, 5, 7]), Provenance::P1),
        (cfg(&[0, 1, 2, 3, 5]), cfg(&[1, 2, 3, 4, 7]), Provenance::P3),
    ] {
        let delta = brute_delta(&t, 5);
        let c = construct_with_delta(&t, TokenConfig::from_mask(x), TokenConfig::from_mask(y), delta).unwrap();
        assert_eq!(c.case(), CaseKind::Case2);
        assert_eq!(c.slack(), 1);
        let f = Found { tree: t.clone(), k: 5, x, y, construction: c };
        check_found(&f);
        assert_eq!(f.construction.family.count(label), 1);
        if label == Provenance::P3 {
            // Its inner configurations never hold a vertex outside X ∪ Y.
            let nf = &f.construction.normalized_family;
            let w = !(nf.x.mask() | nf.y.mask()) & ((1 << 10) - 1);
            let p3 = nf.paths.iter().find(|p| p.label == Provenance::P3).unwrap();
            let configs = p3.path.configs();
            assert!(configs[1..configs.len() - 1].iter().all(|a| a.mask() & w == 0));
        }
    }
}

type Forced = (Provenance, usize, &'static [(usize, usize)], usize, &'static [usize], &'static [usize]);

/// Each step-2 path of the second case is built and validated whenever its
/// hypotheses hold, by asking for one path more than step 1 provides.
#[test]
fn case2_supplemental_paths_when_forced() {
    let cases: [Forced; 4] = [
        (Provenance::P1, 6, &[(0, 1), (0, 4), (1, 2), (2, 3), (4, 5)], 2, &[0, 2], &[1, 4]),
        (Provenance::P2, 7, &[(0, 1), (0, 4), (1, 2), (2, 3), (4, 5), (5, 6)], 3, &[0, 2, 4], &[0, 1, 5]),
        (Provenance::P3, 6, &[(0, 1), (0, 4), (0, 5), (1, 2), (1, 3)], 3, &[0, 2, 3], &[1, 2, 4]),
        (Provenance::P4, 5, &[(0, 1), (0, 3), (0, 4), (1, 2)], 2, &[0, 2], &[1, 3]),
    ];
    for (label, n, edges, k, x, y) in cases {
        let t = tree(n, edges);
        let (xm, ym) = (cfg(x), cfg(y));
        let (xc, yc) = (TokenConfig::from_mask(xm), TokenConfig::from_mask(ym));
        let m = tokengraph::normalize(&t, xc, yc).unwrap().0.m();
        let c = construct_with_delta(&t, xc, yc, m + 1).unwrap();
        assert_eq!(c.case(), CaseKind::Case2);
        assert_eq!(c.family.len(), m + 1, "{label}");
        assert_eq!(c.family.count(label), 1, "{label}");
        audit(&t, xm, ym, &c.family);
        assert!(brute_delta(&t, k) <= m);
    }
}
