//! Exhaustive extremal searches at tiny sizes.

use rayon::prelude::*;

use super::matrix::{ZeroOneMatrix, POSITIVE_C6_MASKS};
use super::ordered::EdgeOrderedGraph;
use super::PatternError;

pub const MAX_P5_SEARCH: usize = 5;
pub const MAX_POSC6_SEARCH: usize = 6;

/// Maximum number of edges of a graph on `n` vertices that has an edge order
/// avoiding the ordered path, with one such graph and order.
///
/// Edge counts are tried from the top; for each graph an avoiding order is
/// built rank by rank, pruning as soon as some path is completed in the
/// forbidden order.
pub fn extremal_bruteforce_p5(n: usize) -> Result<(usize, EdgeOrderedGraph), PatternError> {
    if n > MAX_P5_SEARCH {
        return Err(PatternError::TooLarge(n, MAX_P5_SEARCH));
    }
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = all.len();
    for m in (0..=total).rev() {
        let masks: Vec<u32> = (0u32..1 << total).filter(|s| s.count_ones() as usize == m).collect();
        let found = masks.par_iter().find_map_first(|&mask| {
            let edges: Vec<(usize, usize)> = (0..total).filter(|b| mask & (1 << b) != 0).map(|b| all[b]).collect();
            avoiding_order(n, &edges).map(|order| EdgeOrderedGraph { vertex_count: n, edges, order })
        });
        if let Some(g) = found {
            return Ok((m, g));
        }
    }
    unreachable!("the empty graph avoids every pattern")
}

/// Roles `(ab, cd, bc)` of the paths whose `de` edge is the key.
fn completions(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<[usize; 3]>> {
    let mut id = vec![vec![None; n]; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        id[u][v] = Some(i);
        id[v][u] = Some(i);
    }
    let mut out = vec![Vec::new(); edges.len()];
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = id[a][b] else { continue };
            for c in 0..n {
                if c == a {
                    continue;
                }
                let Some(bc) = id[b][c] else { continue };
                for d in 0..n {
                    if d == a || d == b {
                        continue;
                    }
                    let Some(cd) = id[c][d] else { continue };
                    for e in 0..n {
                        if e == a || e == b || e == c {
                            continue;
                        }
                        if let Some(de) = id[d][e] {
                            out[de].push([ab, cd, bc]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ranks avoiding the pattern, if any order of these edges does.
fn avoiding_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let closing = completions(n, edges);
    let m = edges.len();
    let mut rank = vec![0usize; m];
    fn go(step: usize, rank: &mut [usize], closing: &[Vec<[usize; 3]>]) -> bool {
        let m = rank.len();
        if step > m {
            return true;
        }
        for e in 0..m {
            if rank[e] != 0 {
                continue;
            }
            // Giving `e` the largest rank so far completes a forbidden path
            // iff the other three are already ranked as ab < cd < bc.
            let bad = closing[e].iter().any(|&[ab, cd, bc]| {
                rank[ab] != 0 && rank[cd] != 0 && rank[bc] != 0 && rank[ab] < rank[cd] && rank[cd] < rank[bc]
            });
            if bad {
                continue;
            }
            rank[e] = step;
            if go(step + 1, rank, closing) {
                return true;
            }
            rank[e] = 0;
        }
        false
    }
    go(1, &mut rank, &closing).then_some(rank)
}

/// Maximum number of ones in an `n x n` matrix without a positive 6-cycle,
/// with the numerically smallest such matrix (bit `n * r + c` is entry
/// `(r, c)`).
pub fn extremal_bruteforce_positive_c6(n: usize) -> Result<(usize, ZeroOneMatrix), PatternError> {
    if n > MAX_POSC6_SEARCH {
        return Err(PatternError::TooLarge(n, MAX_POSC6_SEARCH));
    }
    let cells = n * n;
    let patterns = c6_masks(n);
    let free = |m: u64| !patterns.iter().any(|&p| m & p == p);
    for k in (0..=cells).rev() {
        // Split by the highest set bit; scanning those in increasing order
        // returns the smallest avoiding mask.
        let first = if k == 0 {
            Some(0)
        } else {
            (k - 1..cells).into_par_iter().find_map_first(|top| {
                let low = combinations(top, k - 1);
                low.into_iter().map(|l| l | (1u64 << top)).find(|&m| free(m))
            })
        };
        if let Some(mask) = first {
            let ones = (0..cells).filter(|b| mask & (1 << b) != 0).map(|b| (b / n, b % n));
            return Ok((k, ZeroOneMatrix::new(n, n, ones)?));
        }
    }
    unreachable!("the zero matrix has no 6-cycle")
}

/// Every positive 6-cycle of an `n x n` matrix as a bit mask.
fn c6_masks(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .collect();
    for rs in &triples {
        for cs in &triples {
            for p in POSITIVE_C6_MASKS {
                let mut m = 0u64;
                for bit in 0..9 {
                    if p & (1 << bit) != 0 {
                        m |= 1 << (n * rs[bit / 3] + cs[bit % 3]);
                    }
                }
                out.push(m);
            }
        }
    }
    out
}

/// All `k`-subsets of the low `width` bits, in increasing numeric order.
fn combinations(width: usize, k: usize) -> Vec<u64> {
    if k > width {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut v: u64 = (1 << k) - 1;
    let limit: u64 = 1 << width;
    while v < limit {
        out.push(v);
        // Gosper's hack: next integer with the same popcount.
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}
