//! Sparse exact linear algebra: incremental fully reduced row echelon bases.

use crate::scalar::Scalar;

/// Sparse vector: strictly increasing column indices, no zero entries.
pub type SparseVec<F> = Vec<(u32, F)>;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest column index; yields the classical reduced echelon form.
    Leftmost,
    /// Prefer small entries in sparse columns to limit fill-in.
    Sparse,
}

/// Row space kept in fully reduced form: every row has a pivot entry `1`, and
/// pivot columns are zero in every other row.
#[derive(Clone, Debug)]
pub struct RowBasis<F> {
    ncols: usize,
    rule: PivotRule,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<u32>,
    pivot_row: Vec<u32>,
    // rows that may hold a nonzero entry in each column; entries can be stale
    col_rows: Vec<Vec<u32>>,
}

/// Merges `a + s * b`.
fn axpy<F: Scalar>(a: &[(u32, F)], s: &F, b: &[(u32, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s.mul_ref(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add_ref(&s.mul_ref(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts and combines entries with equal columns, dropping zeros.
pub fn compact<F: Scalar>(mut v: Vec<(u32, F)>) -> SparseVec<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.add_ref(&x),
            _ => {
                if let Some(last) = out.last() {
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                out.push((c, x));
            }
        }
    }
    if out.last().is_some_and(|e| e.1.is_zero()) {
        out.pop();
    }
    out
}

impl<F: Scalar> RowBasis<F> {
    pub fn new(ncols: usize) -> Self {
        Self::with_rule(ncols, PivotRule::Sparse)
    }

    pub fn with_rule(ncols: usize, rule: PivotRule) -> Self {
        RowBasis {
            ncols,
            rule,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NONE; ncols],
            col_rows: vec![Vec::new(); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NONE
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> Vec<&SparseVec<F>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| &self.rows[i]).collect()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Remainder of `v` modulo the row space, together with the pivot
    /// columns whose rows were used.
    pub fn reduce_traced(&self, v: &[(u32, F)]) -> (SparseVec<F>, Vec<u32>) {
        let mut acc = Vec::with_capacity(v.len() * 4);
        let mut used = Vec::new();
        for (c, a) in v {
            assert!((*c as usize) < self.ncols, "column {c} out of range");
            let r = self.pivot_row[*c as usize];
            if r == NONE {
                acc.push((*c, a.clone()));
            } else {
                used.push(*c);
                for (c2, x) in &self.rows[r as usize] {
                    if c2 != c {
                        acc.push((*c2, a.mul_ref(x).neg_ref()));
                    }
                }
            }
        }
        (compact(acc), used)
    }

    pub fn reduce(&self, v: &[(u32, F)]) -> SparseVec<F> {
        self.reduce_traced(v).0
    }

    pub fn contains(&self, v: &[(u32, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    fn choose_pivot(&self, r: &SparseVec<F>) -> usize {
        match self.rule {
            PivotRule::Leftmost => 0,
            PivotRule::Sparse => (0..r.len())
                .min_by_key(|&i| (r[i].1.weight(), self.col_rows[r[i].0 as usize].len(), r[i].0))
                .unwrap(),
        }
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, F)]) -> bool {
        let red = self.reduce(v);
        self.insert_reduced(red)
    }

    /// Adds an already reduced vector.
    pub fn insert_reduced(&mut self, red: SparseVec<F>) -> bool {
        if red.is_empty() {
            return false;
        }
        let k = self.choose_pivot(&red);
        let p = red[k].0;
        let inv = red[k].1.inv();
        let row: SparseVec<F> = red
            .into_iter()
            .map(|(c, x)| if c == p { (c, F::one()) } else { (c, x.mul_ref(&inv)) })
            .collect();
        let idx = self.rows.len() as u32;
        let touched = std::mem::take(&mut self.col_rows[p as usize]);
        let mut seen = Vec::with_capacity(touched.len());
        for r in touched {
            if seen.contains(&r) {
                continue;
            }
            seen.push(r);
            let old = &self.rows[r as usize];
            let Ok(pos) = old.binary_search_by_key(&p, |e| e.0) else { continue };
            let s = old[pos].1.neg_ref();
            let new = axpy(old, &s, &row);
            for (c, _) in &row {
                if *c != p && old.binary_search_by_key(c, |e| e.0).is_err() {
                    self.col_rows[*c as usize].push(r);
                }
            }
            self.rows[r as usize] = new;
        }
        for (c, _) in &row {
            if *c != p {
                self.col_rows[*c as usize].push(idx);
            }
        }
        self.pivot_row[p as usize] = idx;
        self.pivots.push(p);
        self.rows.push(row);
        true
    }

    /// A basis of `{x : row · x = 0 for every row}`, one vector per free
    /// column `f` with entry `1` at `f`.
    pub fn nullspace_vectors(&self) -> Vec<SparseVec<F>> {
        let mut per_free: Vec<Vec<(u32, F)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (c, x) in row {
                if *c != p {
                    per_free[*c as usize].push((p, x.neg_ref()));
                }
            }
        }
        let mut out = Vec::with_capacity(self.ncols - self.rows.len());
        for (f, mut v) in per_free.into_iter().enumerate() {
            if self.is_pivot(f as u32) {
                continue;
            }
            v.push((f as u32, F::one()));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }

    pub fn nullspace(&self) -> RowBasis<F> {
        let mut b = RowBasis::with_rule(self.ncols, self.rule);
        for v in self.nullspace_vectors() {
            b.insert(&v);
        }
        b
    }
}

/// Sparse vector from a dense row.
pub fn sparse_from_dense<F: Scalar>(row: &[F]) -> SparseVec<F> {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Scalar>(v: &[(u32, F)], ncols: usize) -> Vec<F> {
    let mut out = vec![F::zero(); ncols];
    for (c, x) in v {
        out[*c as usize] = x.clone();
    }
    out
}

/// Rank of a list of dense rows.
pub fn rank<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut b = RowBasis::new(ncols);
    for r in rows {
        b.insert(&sparse_from_dense(r));
    }
    b.rank()
}

/// Classical reduced row echelon form of dense rows.
pub fn rref<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut b = RowBasis::with_rule(ncols, PivotRule::Leftmost);
    for r in rows {
        b.insert(&sparse_from_dense(r));
    }
    b.rows().into_iter().map(|r| dense_from_sparse(r, ncols)).collect()
}

/// Nullspace basis of dense rows, as dense vectors.
pub fn nullspace<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut b = RowBasis::with_rule(ncols, PivotRule::Leftmost);
    for r in rows {
        b.insert(&sparse_from_dense(r));
    }
    b.nullspace_vectors().iter().map(|v| dense_from_sparse(v, ncols)).collect()
}
