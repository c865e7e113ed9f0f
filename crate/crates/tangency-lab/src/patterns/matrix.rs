//! Ordered 0-1 matrices and positive 6-cycles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::drawn::{BaseChoice, DrawnBipartiteGraph};
use super::PatternError;
use crate::synthesis::Color;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroOneMatrix {
    pub rows: usize,
    pub cols: usize,
    pub ones: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    ones: Vec<(usize, usize)>,
}

impl ZeroOneMatrix {
    pub fn new(rows: usize, cols: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PatternError> {
        let ones: BTreeSet<_> = ones.into_iter().collect();
        if let Some(&(r, c)) = ones.iter().find(|&&(r, c)| r >= rows || c >= cols) {
            return Err(PatternError::InvalidMatrix(format!("({r}, {c}) outside {rows}x{cols}")));
        }
        Ok(ZeroOneMatrix { rows, cols, ones })
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self, PatternError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PatternError::InvalidMatrix("ragged rows".into()));
        }
        let ones = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(j, _)| (i, j)));
        Self::new(rows.len(), cols, ones)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.ones.contains(&(r, c))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.rows];
        for &(r, _) in &self.ones {
            s[r] += 1;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.cols];
        for &(_, c) in &self.ones {
            s[c] += 1;
        }
        s
    }

    fn row_sets(&self) -> Vec<Vec<usize>> {
        let mut v = vec![Vec::new(); self.rows];
        for &(r, c) in &self.ones {
            v[r].push(c);
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson {
            rows: self.rows,
            cols: self.cols,
            ones: self.ones.iter().copied().collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, PatternError> {
        let m: MatrixJson = serde_json::from_str(s).map_err(|e| PatternError::Json(e.to_string()))?;
        Self::new(m.rows, m.cols, m.ones)
    }
}

/// A positive 6-cycle: rows and columns in increasing order and the six
/// cycle entries, which include `(rows[1], cols[1])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveC6 {
    pub rows: [usize; 3],
    pub cols: [usize; 3],
    pub cycle: Vec<(usize, usize)>,
}

/// Six-entry 3x3 masks with two entries per row and column that use the
/// middle entry. Bit `3 * i + j` is entry `(i, j)`; each mask is the
/// complement of a permutation that moves the middle row.
pub(crate) const POSITIVE_C6_MASKS: [u16; 4] = {
    let perms = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1]];
    let mut out = [0u16; 4];
    let mut k = 0;
    while k < 4 {
        let mut m = 0x1ffu16;
        let mut i = 0;
        while i < 3 {
            m &= !(1 << (3 * i + perms[k][i]));
            i += 1;
        }
        out[k] = m;
        k += 1;
    }
    out
};

/// First positive 6-cycle in row-major triple order, if any.
pub fn contains_positive_c6(m: &ZeroOneMatrix) -> Option<PositiveC6> {
    let sets = m.row_sets();
    let rows: Vec<usize> = (0..m.rows).filter(|&r| sets[r].len() >= 2).collect();
    for (a, &r1) in rows.iter().enumerate() {
        for (b, &r2) in rows.iter().enumerate().skip(a + 1) {
            for &r3 in &rows[b + 1..] {
                let mut cols: Vec<usize> = sets[r1].iter().chain(&sets[r2]).chain(&sets[r3]).copied().collect();
                cols.sort_unstable();
                cols.dedup();
                let rs = [r1, r2, r3];
                for (x, &c1) in cols.iter().enumerate() {
                    for (y, &c2) in cols.iter().enumerate().skip(x + 1) {
                        if !m.get(r2, c2) {
                            continue;
                        }
                        for &c3 in &cols[y + 1..] {
                            let cs = [c1, c2, c3];
                            let mut mask = 0u16;
                            for i in 0..3 {
                                for j in 0..3 {
                                    if m.get(rs[i], cs[j]) {
                                        mask |= 1 << (3 * i + j);
                                    }
                                }
                            }
                            if let Some(&c) = POSITIVE_C6_MASKS.iter().find(|&&c| mask & c == c) {
                                let cycle = (0..9)
                                    .filter(|b| c & (1 << b) != 0)
                                    .map(|b| (rs[b / 3], cs[b % 3]))
                                    .collect();
                                return Some(PositiveC6 { rows: rs, cols: cs, cycle });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Two rows sharing two 1-columns, i.e. a 4-cycle: `([r1, r2], [c1, c2])`.
pub fn c4_witness(m: &ZeroOneMatrix) -> Option<([usize; 2], [usize; 2])> {
    let sets = m.row_sets();
    // Each column pair may be claimed by one row only.
    let mut owner = std::collections::HashMap::new();
    for (r, s) in sets.iter().enumerate() {
        for (i, &c1) in s.iter().enumerate() {
            for &c2 in &s[i + 1..] {
                if let Some(&r0) = owner.get(&(c1, c2)) {
                    return Some(([r0, r], [c1, c2]));
                }
                owner.insert((c1, c2), r);
            }
        }
    }
    None
}

/// Red curves as rows and blue curves as columns, each sorted by the height
/// of its base point on the strip boundary.
pub fn ordered_adjacency_matrix(g: &DrawnBipartiteGraph) -> Result<ZeroOneMatrix, PatternError> {
    if g.base_choice != BaseChoice::Grounded {
        return Err(PatternError::NotGrounded);
    }
    let rank = |color: Color| -> Result<Vec<Option<usize>>, PatternError> {
        let mut vs: Vec<usize> = (0..g.vertices.len()).filter(|&v| g.vertices[v].color == color).collect();
        vs.sort_by(|&a, &b| g.vertices[a].base.y.cmp(&g.vertices[b].base.y));
        for w in vs.windows(2) {
            if g.vertices[w[0]].base.y == g.vertices[w[1]].base.y {
                return Err(PatternError::TiedBase(g.vertices[w[0]].curve, g.vertices[w[1]].curve));
            }
        }
        let mut out = vec![None; g.vertices.len()];
        for (i, &v) in vs.iter().enumerate() {
            out[v] = Some(i);
        }
        Ok(out)
    };
    let rows = rank(Color::Red)?;
    let cols = rank(Color::Blue)?;
    let n_rows = rows.iter().flatten().count();
    let n_cols = cols.iter().flatten().count();
    let ones = g
        .edges
        .iter()
        .map(|e| (rows[e.red].expect("red vertex"), cols[e.blue].expect("blue vertex")));
    ZeroOneMatrix::new(n_rows, n_cols, ones)
}
