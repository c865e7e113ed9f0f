mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::json;
use tangency_lab::patterns::{
    c4_witness, check_claim_p2, contains_forbidden_p5, contains_positive_c6, extremal_bruteforce_p5,
    extremal_bruteforce_positive_c6, ordered_adjacency_matrix, star_redraw, xmon_tangency_graphs, BaseChoice,
    EdgeOrderedGraph, PatternError, ZeroOneMatrix,
};
use tangency_lab::synthesis::to_doubly_grounded;
use tangency_lab::verifier::tangency_report;

const XMON_FIXTURES: [&str; 4] = [
    "xmon_single.json",
    "xmon_slanted.json",
    "xmon_three_by_three.json",
    "xmon_comb.json",
];

#[test]
fn p5_detector_matches_naive_scan() {
    let mut rng = common::rng(0x9e5);
    let (mut hits, mut misses) = (0, 0);
    for _ in 0..200 {
        let g = common::random_edge_ordered(&mut rng, 8);
        let fast = contains_forbidden_p5(&g);
        assert_eq!(fast.is_some(), common::naive_p5(&g), "{}", g.to_json());
        if let Some([a, b, c, d, e]) = fast {
            let rank = |u: usize, v: usize| {
                g.edges
                    .iter()
                    .position(|&(x, y)| (x, y) == (u, v) || (y, x) == (u, v))
                    .map(|i| g.order[i])
                    .unwrap()
            };
            assert!(rank(a, b) < rank(c, d) && rank(c, d) < rank(b, c) && rank(b, c) < rank(d, e));
            hits += 1;
        } else {
            misses += 1;
        }
    }
    assert!(hits > 20 && misses > 20, "{hits} hits, {misses} misses");
}

#[test]
fn positive_c6_detector_matches_cycle_enumeration() {
    let mut rng = common::rng(0xc6);
    let (mut hits, mut misses) = (0, 0);
    for _ in 0..500 {
        let m = common::random_matrix(&mut rng, 8);
        let fast = contains_positive_c6(&m);
        assert_eq!(fast.is_some(), common::naive_positive_c6(&m), "{}", m.to_json());
        if let Some(w) = fast {
            assert!(w.cycle.contains(&(w.rows[1], w.cols[1])));
            assert!(w.cycle.iter().all(|&(r, c)| m.get(r, c)));
            hits += 1;
        } else {
            misses += 1;
        }
    }
    assert!(hits > 50 && misses > 50, "{hits} hits, {misses} misses");
}

#[test]
fn p5_on_single_path() {
    let path = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
    let g = EdgeOrderedGraph::new(5, path.clone(), vec![1, 3, 2, 4]).unwrap();
    assert_eq!(contains_forbidden_p5(&g), Some([0, 1, 2, 3, 4]));

    let g = EdgeOrderedGraph::in_listed_order(5, path.clone()).unwrap();
    assert_eq!(contains_forbidden_p5(&g), None);

    // The reversed path e-d-c-b-a matches when de < bc < cd < ab.
    let mut witnesses = 0;
    for order in permutations(4) {
        let g = EdgeOrderedGraph::new(5, path.clone(), order.clone()).unwrap();
        let expect = (order[0] < order[2] && order[2] < order[1] && order[1] < order[3])
            || (order[3] < order[1] && order[1] < order[2] && order[2] < order[0]);
        assert_eq!(contains_forbidden_p5(&g).is_some(), expect, "{order:?}");
        witnesses += usize::from(expect);
    }
    assert_eq!(witnesses, 2);
}

#[test]
fn p5_needs_four_edges() {
    let g = EdgeOrderedGraph::new(5, vec![(0, 1), (1, 2), (2, 3)], vec![2, 3, 1]).unwrap();
    assert_eq!(contains_forbidden_p5(&g), None);
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m);
            out.push(q);
        }
    }
    out
}

#[test]
fn edge_ordered_json_roundtrip_and_validation() {
    let g = EdgeOrderedGraph::new(3, vec![(0, 1), (1, 2)], vec![2, 1]).unwrap();
    assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[1,2]],"order":[2,1]}"#);
    assert_eq!(EdgeOrderedGraph::from_json(&g.to_json()).unwrap(), g);
    assert!(matches!(
        EdgeOrderedGraph::new(3, vec![(0, 1), (1, 0)], vec![1, 2]),
        Err(PatternError::InvalidGraph(_))
    ));
    assert!(EdgeOrderedGraph::new(3, vec![(0, 1)], vec![2]).is_err());
}

#[test]
fn positive_c6_matrix_examples() {
    let full = ZeroOneMatrix::from_rows(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap();
    let w = contains_positive_c6(&full).unwrap();
    assert_eq!((w.rows, w.cols), ([0, 1, 2], [0, 1, 2]));
    assert_eq!(w.cycle.len(), 6);

    // A 6-cycle avoiding the middle entry is not positive.
    let hollow = ZeroOneMatrix::from_rows(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
    assert_eq!(contains_positive_c6(&hollow), None);

    let five = ZeroOneMatrix::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
    assert_eq!(contains_positive_c6(&five), None);

    let m = ZeroOneMatrix::from_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]]).unwrap();
    assert!(contains_positive_c6(&m).is_some());
    assert_eq!(m.row_sums(), vec![2, 2, 2]);
    assert_eq!(m.col_sums(), vec![2, 2, 2]);
}

#[test]
fn c4_detector() {
    let m = ZeroOneMatrix::from_rows(&[&[1, 0, 1], &[0, 1, 0], &[1, 1, 1]]).unwrap();
    assert_eq!(c4_witness(&m), Some(([0, 2], [0, 2])));
    let free = ZeroOneMatrix::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
    assert_eq!(c4_witness(&free), None);
}

#[test]
fn matrix_json_roundtrip() {
    let m = ZeroOneMatrix::new(2, 3, [(0, 2), (1, 0)]).unwrap();
    assert_eq!(m.to_json(), r#"{"rows":2,"cols":3,"ones":[[0,2],[1,0]]}"#);
    assert_eq!(ZeroOneMatrix::from_json(&m.to_json()).unwrap(), m);
    assert!(ZeroOneMatrix::new(2, 2, [(2, 0)]).is_err());
}

#[test]
fn xmon_fixtures_split_into_p5_free_graphs() {
    for name in XMON_FIXTURES {
        let family = common::load_family(name);
        let report = tangency_report(&family).unwrap();
        assert!(report.is_clean(), "{name}");
        let (above, below) = xmon_tangency_graphs(&family, &report).unwrap();
        assert_eq!(contains_forbidden_p5(&above), None, "{name}");
        assert_eq!(contains_forbidden_p5(&below), None, "{name}");

        let norm = |g: &EdgeOrderedGraph| -> BTreeSet<(usize, usize)> {
            g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
        };
        let (a, b) = (norm(&above), norm(&below));
        assert!(a.is_disjoint(&b), "{name}");
        let all: BTreeSet<_> = report.tangent_pairs.iter().map(|(u, v, _)| (*u.min(v), *u.max(v))).collect();
        assert_eq!(a.union(&b).cloned().collect::<BTreeSet<_>>(), all, "{name}");
        assert_eq!(above.edge_count() + below.edge_count(), report.total_tangencies, "{name}");
    }
}

#[test]
fn xmon_fixture_shapes() {
    let single = common::load_family("xmon_single.json");
    let report = tangency_report(&single).unwrap();
    let (above, below) = xmon_tangency_graphs(&single, &report).unwrap();
    assert_eq!((above.edge_count(), below.edge_count()), (1, 0));

    let report = tangency_report(&common::load_family("xmon_three_by_three.json")).unwrap();
    assert_eq!(report.total_tangencies, 4);

    let comb = common::load_family("xmon_comb.json");
    let report = tangency_report(&comb).unwrap();
    let (above, below) = xmon_tangency_graphs(&comb, &report).unwrap();
    assert_eq!((above.edge_count(), below.edge_count()), (7, 7));
}

#[test]
fn pipeline_families_are_rejected_as_non_monotone() {
    let syn = common::synthesis(2);
    let report = tangency_report(&syn.1.family).unwrap();
    assert!(matches!(
        xmon_tangency_graphs(&syn.1.family, &report),
        Err(PatternError::NotXMonotone(_))
    ));
}

#[test]
fn star_redraw_k1() {
    let syn = common::synthesis(1);
    let report = tangency_report(&syn.1.family).unwrap();
    let g = star_redraw(&syn.1.family, &report, BaseChoice::CurveStart).unwrap();
    // The second grid point lies on no line; its curve is an isolated vertex.
    assert_eq!((g.vertices.len(), g.edges.len()), (3, 1));
    let touched: BTreeSet<usize> = g.edges.iter().flat_map(|e| [e.red, e.blue]).collect();
    assert_eq!(touched.len(), 2);
    assert!(g.crossing_relation.is_empty());
    let claim = check_claim_p2(&g);
    assert!(claim.is_ok());
    assert_eq!(claim.checked[0], 0);

    let grounded = to_doubly_grounded(&syn.1.family);
    let report = tangency_report(&grounded).unwrap();
    let g = star_redraw(&grounded, &report, BaseChoice::Grounded).unwrap();
    let m = ordered_adjacency_matrix(&g).unwrap();
    // Columns are ordered bottom-up on the right side; the isolated blue curve
    // turns higher there.
    assert_eq!(m, ZeroOneMatrix::new(1, 2, [(0, 0)]).unwrap());
}

#[test]
fn adjacency_needs_grounded_bases() {
    let syn = common::synthesis(1);
    let report = tangency_report(&syn.1.family).unwrap();
    let g = star_redraw(&syn.1.family, &report, BaseChoice::CurveStart).unwrap();
    assert!(ordered_adjacency_matrix(&g).is_err());
    assert!(star_redraw(&syn.1.family, &report, BaseChoice::Grounded).is_err());
}

#[test]
fn claim_holds_on_grounded_pipeline_families() {
    for k in 1..=3 {
        let syn = common::synthesis(k);
        let grounded = to_doubly_grounded(&syn.1.family);
        let report = tangency_report(&grounded).unwrap();
        let g = star_redraw(&grounded, &report, BaseChoice::Grounded).unwrap();
        let claim = check_claim_p2(&g);
        assert!(claim.is_ok(), "k={k}: {claim:?}");

        // Parts of one curve, or of one color, are never related.
        for (a, b) in &g.crossing_relation {
            assert_ne!(a.color, b.color);
            assert_ne!(g.part(*a).curve, g.part(*b).curve);
        }

        let m = ordered_adjacency_matrix(&g).unwrap();
        let lines = syn.0.lines.len();
        assert_eq!((m.rows, m.cols), (lines, syn.0.points.len()));
        assert_eq!(m.ones.len() as u64, (k * k * k * k) as u64);
        let mut deg = vec![0; g.vertices.len()];
        for e in &g.edges {
            deg[e.red] += 1;
            deg[e.blue] += 1;
        }
        let mut row_sums = m.row_sums();
        let mut col_sums = m.col_sums();
        row_sums.sort_unstable();
        col_sums.sort_unstable();
        let mut red_deg: Vec<usize> = deg[..lines].to_vec();
        let mut blue_deg: Vec<usize> = deg[lines..].to_vec();
        red_deg.sort_unstable();
        blue_deg.sort_unstable();
        assert_eq!((row_sums, col_sums), (red_deg, blue_deg));

        assert_eq!(contains_positive_c6(&m), None, "k={k}");
        assert_eq!(c4_witness(&m), None, "k={k}");
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

#[test]
fn extremal_p5_small() {
    assert_eq!(extremal_bruteforce_p5(4).unwrap().0, 6);
    let mut prev = 0;
    for n in 1..=4 {
        let (v, g) = extremal_bruteforce_p5(n).unwrap();
        assert!(v >= prev);
        assert_eq!(g.edge_count(), v);
        assert_eq!(contains_forbidden_p5(&g), None);
        prev = v;
    }
}

#[test]
fn extremal_p5_five_golden() {
    let ((v, g), took) = timed(|| extremal_bruteforce_p5(5).unwrap());
    assert!(took < Duration::from_secs(120), "{took:?}");
    assert!(v >= 6);
    assert_eq!(contains_forbidden_p5(&g), None);
    assert_eq!(g.edge_count(), v);
    common::golden("extremal_p5_n5", json!({ "max_edges": v }));
}

#[test]
fn extremal_positive_c6_golden() {
    let mut prev = 0;
    for n in 2..=4 {
        let ((v, m), took) = timed(|| extremal_bruteforce_positive_c6(n).unwrap());
        assert!(took < Duration::from_secs(120), "n={n}: {took:?}");
        assert_eq!(contains_positive_c6(&m), None);
        assert_eq!(m.ones.len(), v);
        assert!(v >= prev);
        prev = v;
        common::golden(&format!("extremal_positive_c6_n{n}"), json!({ "max_ones": v }));
    }
    assert_eq!(extremal_bruteforce_positive_c6(2).unwrap().0, 4);
    assert!(extremal_bruteforce_positive_c6(3).unwrap().0 <= 8);
}

#[test]
fn extremal_searches_reject_large_n() {
    assert!(matches!(extremal_bruteforce_p5(6), Err(PatternError::TooLarge(..))));
    assert!(matches!(extremal_bruteforce_positive_c6(7), Err(PatternError::TooLarge(..))));
}
