#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tangency_lab::incidence::{default_shear, generate_grid_system, shear_normalize, PointLineSystem};
use tangency_lab::patterns::{EdgeOrderedGraph, ZeroOneMatrix};
use tangency_lab::synthesis::{synthesize, CurveFamily, Synthesis};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Sheared grid system for `k` with the default shear.
pub fn system(k: i64) -> PointLineSystem {
    shear_normalize(&generate_grid_system(k).unwrap(), default_shear(k)).unwrap()
}

/// Synthesis of the sheared grid system, computed once per test binary.
pub fn synthesis(k: i64) -> Arc<(PointLineSystem, Synthesis)> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<OnceLock<Arc<(PointLineSystem, Synthesis)>>>>>> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(k).or_default().clone()
    };
    slot.get_or_init(|| {
        let sys = system(k);
        let syn = synthesize(&sys).unwrap();
        Arc::new((sys, syn))
    })
    .clone()
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_family(name: &str) -> CurveFamily {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    CurveFamily::from_json(&text).unwrap()
}

/// Compare against `tests/golden/<name>.json`, writing it on the first run.
pub fn golden(name: &str, value: Value) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let path = dir.join(format!("{name}.json"));
    match std::fs::read_to_string(&path) {
        Ok(text) => {
            let stored: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(stored, value, "golden value {name} changed");
        }
        Err(_) => {
            std::fs::create_dir_all(&dir).unwrap();
            let text = serde_json::to_string_pretty(&json!(value)).unwrap();
            std::fs::write(&path, text + "\n").unwrap();
        }
    }
}

/// Reference P5 check: every ordered 5-tuple of distinct vertices.
pub fn naive_p5(g: &EdgeOrderedGraph) -> bool {
    let n = g.vertex_count;
    let mut rank = vec![vec![0usize; n]; n];
    for (&(u, v), &r) in g.edges.iter().zip(&g.order) {
        rank[u][v] = r;
        rank[v][u] = r;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let t = [a, b, c, d, e];
                        if (0..5).any(|i| (i + 1..5).any(|j| t[i] == t[j])) {
                            continue;
                        }
                        let (ab, bc, cd, de) = (rank[a][b], rank[b][c], rank[c][d], rank[d][e]);
                        if ab > 0 && bc > 0 && cd > 0 && de > 0 && ab < cd && cd < bc && bc < de {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Reference positive-C6 check on the bipartite graph side: walk every
/// 6-cycle row, column, row, column, row, column and test the ordering
/// condition directly.
pub fn naive_positive_c6(m: &ZeroOneMatrix) -> bool {
    let adj: Vec<Vec<usize>> = (0..m.rows).map(|r| (0..m.cols).filter(|&c| m.get(r, c)).collect()).collect();
    for r0 in 0..m.rows {
        for &c0 in &adj[r0] {
            for r1 in 0..m.rows {
                if r1 == r0 || !m.get(r1, c0) {
                    continue;
                }
                for &c1 in &adj[r1] {
                    if c1 == c0 {
                        continue;
                    }
                    for r2 in 0..m.rows {
                        if r2 == r0 || r2 == r1 || !m.get(r2, c1) {
                            continue;
                        }
                        for &c2 in &adj[r2] {
                            if c2 == c0 || c2 == c1 || !m.get(r0, c2) {
                                continue;
                            }
                            let edges = [(r0, c0), (r1, c0), (r1, c1), (r2, c1), (r2, c2), (r0, c2)];
                            let mut rs = [r0, r1, r2];
                            let mut cs = [c0, c1, c2];
                            rs.sort_unstable();
                            cs.sort_unstable();
                            if edges.contains(&(rs[1], cs[1])) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_side: usize) -> ZeroOneMatrix {
    let rows = rng.gen_range(1..=max_side);
    let cols = rng.gen_range(1..=max_side);
    let p: f64 = rng.gen_range(0.1..0.6);
    let ones: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    ZeroOneMatrix::new(rows, cols, ones).unwrap()
}

pub fn random_edge_ordered(rng: &mut ChaCha8Rng, max_n: usize) -> EdgeOrderedGraph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    let mut order: Vec<usize> = (1..=edges.len()).collect();
    order.shuffle(rng);
    EdgeOrderedGraph::new(n, edges, order).unwrap()
}
