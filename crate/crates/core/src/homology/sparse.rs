//! Sparse integer matrices and elementary divisors by unit-pivot elimination.

use crate::abgrp::matrix::smith_normal_form;
use crate::abgrp::{AbgrpError, IntMatrix};
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

/// Row-sparse matrix; each row holds `(column, value)` pairs sorted by column
/// with no zero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Adds `v` at `(r, c)`, keeping the row sorted and dropping zeros.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        debug_assert!(r < self.rows && c < self.cols);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => {
                row[i].1 += v;
                if row[i].1 == 0 {
                    row.remove(i);
                }
            }
            Err(i) => {
                if v != 0 {
                    row.insert(i, (c as u32, v));
                }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(u32, i64)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c as usize, v);
            }
        }
        m
    }

    /// `self * other` (rows of `self` combine rows of `other`).
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, AbgrpError> {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMatrix::new(self.rows, other.cols);
        let mut acc = vec![0i128; other.cols];
        let mut touched = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in &other.data[k as usize] {
                    if acc[c as usize] == 0 {
                        touched.push(c);
                    }
                    acc[c as usize] += (a as i128) * (b as i128);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &c in &touched {
                let v = std::mem::take(&mut acc[c as usize]);
                if v != 0 {
                    out.data[r].push((c, i64::try_from(v).map_err(|_| AbgrpError::Overflow)?));
                }
            }
            touched.clear();
        }
        Ok(out)
    }
}

/// Elementary divisors (nonzero SNF diagonal entries, in divisibility order)
/// of a sparse matrix.
///
/// Unit entries are eliminated first, each contributing a divisor 1: after
/// clearing the pivot column by row operations the pivot row is cleared by
/// column operations that touch no other row, so the matrix splits as
/// `[±1] ⊕ rest`. The remaining core is handed to the dense Smith form.
pub fn elementary_divisors(m: &SparseMatrix) -> Result<Vec<u64>, AbgrpError> {
    let mut rows: Vec<Vec<(u32, i64)>> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].insert(i as u32);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut units = 0usize;
    let mut scratch = Vec::new();
    loop {
        // cheapest unit pivot by Markowitz cost
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for &(c, v) in r {
                if v == 1 || v == -1 {
                    let cost = (r.len() - 1) * (col_rows[c as usize].len() - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, i, c));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, p, c)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[p]);
        alive[p] = false;
        for &(cc, _) in &pivot_row {
            col_rows[cc as usize].remove(&(p as u32));
        }
        let pv = pivot_row
            .iter()
            .find(|e| e.0 == c)
            .expect("pivot present")
            .1;
        let targets: Vec<u32> = col_rows[c as usize].iter().copied().collect();
        for t in targets {
            let t = t as usize;
            let a = rows[t]
                .iter()
                .find(|e| e.0 == c)
                .expect("column index is consistent")
                .1;
            // row_t -= (a / pv) * pivot_row, with a / pv = a * pv for units
            let q = a.checked_mul(pv).ok_or(AbgrpError::Overflow)?;
            scratch.clear();
            merge_sub(&rows[t], &pivot_row, q, &mut scratch)?;
            for &(cc, _) in &rows[t] {
                col_rows[cc as usize].remove(&(t as u32));
            }
            std::mem::swap(&mut rows[t], &mut scratch);
            for &(cc, _) in &rows[t] {
                col_rows[cc as usize].insert(t as u32);
            }
            if rows[t].is_empty() {
                alive[t] = false;
            }
        }
        units += 1;
    }
    let core: Vec<Vec<i64>> = rows
        .iter()
        .zip(&alive)
        .filter(|(r, &a)| a && !r.is_empty())
        .map(|(r, _)| {
            let mut d = vec![0; m.cols];
            for &(c, v) in r {
                d[c as usize] = v;
            }
            d
        })
        .collect();
    // drop columns that are zero in the core
    let used: Vec<usize> = (0..m.cols).filter(|&c| core.iter().any(|r| r[c] != 0)).collect();
    let narrowed: Vec<Vec<i64>> = core.iter().map(|r| used.iter().map(|&c| r[c]).collect()).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(used.len(), &narrowed), false)?;
    let mut out = vec![1u64; units];
    for d in snf.diagonal {
        let d = d.to_u64().ok_or(AbgrpError::Overflow)?;
        if d != 0 {
            out.push(d);
        }
    }
    Ok(out)
}

/// `out = a - q * b` for sorted sparse rows.
fn merge_sub(
    a: &[(u32, i64)],
    b: &[(u32, i64)],
    q: i64,
    out: &mut Vec<(u32, i64)>,
) -> Result<(), AbgrpError> {
    let (mut i, mut j) = (0, 0);
    let sub = |x: i64, y: i64| -> Result<i64, AbgrpError> {
        y.checked_mul(q)
            .and_then(|p| x.checked_sub(p))
            .ok_or(AbgrpError::Overflow)
    };
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = sub(0, b[j].1)?;
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = sub(a[i].1, b[j].1)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[Vec<i64>], cols: usize) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, v);
            }
        }
        m
    }

    #[test]
    fn matches_dense_smith_form() {
        let cases = vec![
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![0, 0, 0], vec![0, 3, 0]],
            vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![-1, 0, 1, 0], vec![2, 0, 0, 2]],
        ];
        for rows in cases {
            let cols = rows[0].len();
            let s = from_dense(&rows, cols);
            let got = elementary_divisors(&s).unwrap();
            let dense = smith_normal_form(&IntMatrix::from_rows(cols, &rows), false).unwrap();
            let want: Vec<u64> = dense
                .diagonal
                .iter()
                .map(|d| d.to_u64().unwrap())
                .filter(|&d| d != 0)
                .collect();
            assert_eq!(got, want, "{rows:?}");
        }
    }

    #[test]
    fn sparse_product() {
        let a = from_dense(&[vec![1, 2], vec![0, 1]], 2);
        let b = from_dense(&[vec![1, -2], vec![0, 1]], 2);
        assert_eq!(a.mul(&b).unwrap(), from_dense(&[vec![1, 0], vec![0, 1]], 2));
    }
}
