//! Dense integer matrices and the unimodular eliminations built on them.
//!
//! Vectors are rows throughout: a matrix `m` with `r` rows and `c` columns
//! acts on the right, `x -> x * m`, sending `Z^r` to `Z^c`.

use super::ring::{Overflow, RResult, Ring};
use super::AbgrpError;
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn diagonal(entries: &[i64], cols: usize) -> Self {
        let mut m = Self::zeros(entries.len(), cols);
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, AbgrpError> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = vec_mul(self.row(r), other)?;
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&row);
        }
        Ok(out)
    }
}

/// `x * m` with overflow detection. Zero entries of `x` are skipped, so
/// sparse vectors are cheap.
pub fn vec_mul(x: &[i64], m: &IntMatrix) -> Result<Vec<i64>, AbgrpError> {
    assert_eq!(x.len(), m.rows, "dimension mismatch in vector product");
    let mut acc = vec![0i128; m.cols];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        let xi = xi as i128;
        for (a, &v) in acc.iter_mut().zip(m.row(i)) {
            if v != 0 {
                *a = a
                    .checked_add(xi * v as i128)
                    .ok_or(AbgrpError::Overflow)?;
            }
        }
    }
    acc.into_iter()
        .map(|v| i64::try_from(v).map_err(|_| AbgrpError::Overflow))
        .collect()
}

fn to_ring<R: Ring>(m: &IntMatrix) -> Vec<Vec<R>> {
    (0..m.rows)
        .map(|r| m.row(r).iter().map(|&v| R::from_i64(v)).collect())
        .collect()
}

fn from_ring<R: Ring>(rows: &[Vec<R>], cols: usize) -> Result<IntMatrix, AbgrpError> {
    let mut out = IntMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            out.set(r, c, v.to_i64().ok_or(AbgrpError::Overflow)?);
        }
    }
    Ok(out)
}

/// Runs `f` on checked `i64`, retrying on `BigInt` if it overflows.
macro_rules! with_fallback {
    ($f:ident ( $($arg:expr),* )) => {
        match $f::<i64>($($arg),*) {
            Ok(v) => Ok(v),
            Err(Overflow) => $f::<BigInt>($($arg),*).map_err(|_| AbgrpError::Overflow),
        }
    };
}

// ---------------------------------------------------------------------------
// Smith normal form

/// Smith normal form `U * A * V = D` with the column transform tracked.
///
/// `diagonal` has one entry per column of `A`: the invariant factors in
/// divisibility order followed by zeros (columns beyond the rank). Row
/// transforms are not recorded; callers only ever need `V` and `V^-1`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

pub fn smith_normal_form(a: &IntMatrix, track: bool) -> Result<Snf, AbgrpError> {
    // zero rows carry no relation
    let nonzero: Vec<Vec<i64>> = (0..a.rows)
        .filter(|&r| a.row(r).iter().any(|&v| v != 0))
        .map(|r| a.row(r).to_vec())
        .collect();
    let reduced = IntMatrix::from_rows(a.cols, &nonzero);
    with_fallback!(snf_impl(&reduced, track))
}

struct SnfState<R> {
    a: Vec<Vec<R>>,
    v: Vec<Vec<R>>,
    v_inv: Vec<Vec<R>>,
    track: bool,
}

impl<R: Ring> SnfState<R> {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// col_j -= q * col_t, rows from `from` onward (rows above are zero in col_t).
    fn col_axpy(&mut self, j: usize, q: &R, t: usize, from: usize) -> RResult<()> {
        for row in self.a[from..].iter_mut() {
            if !row[t].is_zero() {
                row[j] = row[j].sub_mul(q, &row[t])?;
            }
        }
        if self.track {
            for row in self.v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].sub_mul(q, &row[t])?;
                }
            }
            // V^-1: row_t += q * row_j
            let (rt, rj) = two_rows(&mut self.v_inv, t, j);
            for (x, y) in rt.iter_mut().zip(rj.iter()) {
                if !y.is_zero() {
                    *x = x.add(&q.mul(y)?)?;
                }
            }
        }
        Ok(())
    }

    /// row_i -= q * row_t, columns from `from` onward.
    fn row_axpy(&mut self, i: usize, q: &R, t: usize, from: usize) -> RResult<()> {
        let (ri, rt) = two_rows(&mut self.a, i, t);
        for (x, y) in ri[from..].iter_mut().zip(rt[from..].iter()) {
            if !y.is_zero() {
                *x = x.sub_mul(q, y)?;
            }
        }
        Ok(())
    }
}

fn two_rows<T>(rows: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &mut Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = rows.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

fn snf_impl<R: Ring>(a: &IntMatrix, track: bool) -> RResult<Snf> {
    let m = a.rows;
    let n = a.cols;
    let ident = |k: usize| -> Vec<Vec<R>> {
        (0..k)
            .map(|i| (0..k).map(|j| R::from_i64((i == j) as i64)).collect())
            .collect()
    };
    let mut st = SnfState {
        a: to_ring::<R>(a),
        v: if track { ident(n) } else { Vec::new() },
        v_inv: if track { ident(n) } else { Vec::new() },
        track,
    };
    let mut diag: Vec<R> = Vec::with_capacity(n);

    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        // smallest |entry| in the trailing block, row-major ties to lowest index
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..m {
            for j in t..n {
                let v = &st.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if v.abs_lt(&st.a[bi][bj]) {
                            best = Some((i, j));
                        }
                    }
                }
                if v.is_unit() {
                    best = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.a.swap(t, pi);
        st.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if st.a[i][t].is_zero() {
                    continue;
                }
                let q = st.a[i][t].quot(&st.a[t][t])?;
                st.row_axpy(i, &q, t, t)?;
                if !st.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if st.a[t][j].is_zero() {
                    continue;
                }
                let q = st.a[t][j].quot(&st.a[t][t])?;
                st.col_axpy(j, &q, t, t)?;
                if !st.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // bring the smallest remainder in row t / column t to the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..m {
                    let v = &st.a[i][t];
                    if !v.is_zero() && v.abs_lt(&st.a[bi][bj]) {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..n {
                    let v = &st.a[t][j];
                    if !v.is_zero() && v.abs_lt(&st.a[bi][bj]) {
                        bi = t;
                        bj = j;
                    }
                }
                st.a.swap(t, bi);
                st.swap_cols(t, bj);
                continue;
            }
            if st.a[t][t].is_unit() {
                break;
            }
            // enforce the divisibility chain
            let piv = st.a[t][t].clone();
            let bad = (t + 1..m).find(|&i| st.a[i][t + 1..].iter().any(|v| !piv.divides(v)));
            match bad {
                Some(i) => {
                    let (rt, ri) = two_rows(&mut st.a, t, i);
                    for (x, y) in rt[t..].iter_mut().zip(ri[t..].iter()) {
                        *x = x.add(y)?;
                    }
                }
                None => break,
            }
        }
        let p = st.a[t][t].clone();
        diag.push(if p.is_negative() { p.neg()? } else { p });
        t += 1;
    }
    while diag.len() < n {
        diag.push(R::zero());
    }

    let diagonal = diag.iter().map(R::to_bigint).collect();
    let (v, v_inv) = if track {
        (
            Some(from_ring(&st.v, n).map_err(|_| Overflow)?),
            Some(from_ring(&st.v_inv, n).map_err(|_| Overflow)?),
        )
    } else {
        (None, None)
    };
    Ok(Snf { diagonal, v, v_inv })
}

// ---------------------------------------------------------------------------
// Row echelon form with transform

/// `U * A = H` with `U` unimodular and `H` in row echelon form.
/// The first `rank` rows of `H` are nonzero with strictly increasing pivot
/// columns and positive pivots; the remaining rows of `U` span the left
/// kernel of `A`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows of `U` annihilating `A`: a basis of the left kernel.
    pub fn left_kernel(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.u.rows()).map(|r| self.u.row(r).to_vec()).collect()
    }
}

pub fn row_echelon(a: &IntMatrix) -> Result<Echelon, AbgrpError> {
    with_fallback!(echelon_impl(a))
}

fn echelon_impl<R: Ring>(a: &IntMatrix) -> RResult<Echelon> {
    let m = a.rows;
    let n = a.cols;
    let mut h = to_ring::<R>(a);
    let mut u: Vec<Vec<R>> = (0..m)
        .map(|i| (0..m).map(|j| R::from_i64((i == j) as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero in column c at or below row r
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[i][c].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[i][c].abs_lt(&h[b][c])) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].quot(&h[r][c])?;
                let (hi, hr) = two_rows(&mut h, i, r);
                for (x, y) in hi[c..].iter_mut().zip(hr[c..].iter()) {
                    if !y.is_zero() {
                        *x = x.sub_mul(&q, y)?;
                    }
                }
                let (ui, ur) = two_rows(&mut u, i, r);
                for (x, y) in ui.iter_mut().zip(ur.iter()) {
                    if !y.is_zero() {
                        *x = x.sub_mul(&q, y)?;
                    }
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                if h[r][c].is_negative() {
                    for x in h[r].iter_mut() {
                        *x = x.neg()?;
                    }
                    for x in u[r].iter_mut() {
                        *x = x.neg()?;
                    }
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    Ok(Echelon {
        h: from_ring(&h, n).map_err(|_| Overflow)?,
        u: from_ring(&u, m).map_err(|_| Overflow)?,
        pivots,
    })
}

/// Solves `x * A = b` over the integers; `None` when no integral solution exists.
pub fn solve_left(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>, AbgrpError> {
    let ech = row_echelon(a)?;
    solve_with_echelon(&ech, b)
}

/// Back-substitution against a precomputed echelon form of `A`.
pub fn solve_with_echelon(ech: &Echelon, b: &[i64]) -> Result<Option<Vec<i64>>, AbgrpError> {
    assert_eq!(b.len(), ech.h.cols());
    let mut residual: Vec<i128> = b.iter().map(|&v| v as i128).collect();
    let mut y = vec![0i64; ech.rank()];
    for (k, &p) in ech.pivots.iter().enumerate() {
        let piv = ech.h.get(k, p) as i128;
        let val = residual[p];
        if val % piv != 0 {
            return Ok(None);
        }
        let coef = val / piv;
        if coef == 0 {
            continue;
        }
        y[k] = i64::try_from(coef).map_err(|_| AbgrpError::Overflow)?;
        for (c, res) in residual.iter_mut().enumerate().skip(p) {
            let h = ech.h.get(k, c);
            if h != 0 {
                *res = res
                    .checked_sub(coef.checked_mul(h as i128).ok_or(AbgrpError::Overflow)?)
                    .ok_or(AbgrpError::Overflow)?;
            }
        }
    }
    if residual.iter().any(|&v| v != 0) {
        return Ok(None);
    }
    // x = y * U restricted to the first `rank` rows
    let mut x = vec![0i128; ech.u.cols()];
    for (k, &yk) in y.iter().enumerate() {
        if yk == 0 {
            continue;
        }
        for (c, xc) in x.iter_mut().enumerate() {
            let uv = ech.u.get(k, c);
            if uv != 0 {
                *xc = xc
                    .checked_add((yk as i128).checked_mul(uv as i128).ok_or(AbgrpError::Overflow)?)
                    .ok_or(AbgrpError::Overflow)?;
            }
        }
    }
    x.into_iter()
        .map(|v| i64::try_from(v).map_err(|_| AbgrpError::Overflow))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// A basis (rows in echelon form) of the lattice spanned by `rows`.
pub fn lattice_basis(cols: usize, rows: &[Vec<i64>]) -> Result<IntMatrix, AbgrpError> {
    let m = IntMatrix::from_rows(cols, rows);
    let ech = row_echelon(&m)?;
    let kept: Vec<Vec<i64>> = (0..ech.rank()).map(|r| ech.h.row(r).to_vec()).collect();
    Ok(IntMatrix::from_rows(cols, &kept))
}
