//! Dense matrices over the rationals and exact reduced row echelon form.

use std::fmt;

use num_traits::{One, Zero};

use super::rat::Rat;

/// Row-major matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Result of reduced row echelon form: the reduced matrix, the pivot
/// columns in strictly increasing order, and the rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        QMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from explicit rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row);
        }
        QMatrix::new(nrows, ncols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// A copy with `row` appended.
    pub fn with_row(&self, row: &[Rat]) -> QMatrix {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(row);
        QMatrix::new(self.rows + 1, self.cols, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form by exact Gauss-Jordan elimination. Pivot
    /// entries are 1, pivot columns are cleared above and below, and pivot
    /// columns come out strictly increasing.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &factor * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots, rank: r }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of `self`, assuming `self` is already reduced; used
    /// to store canonical equation systems without trailing zero rows.
    pub fn nonzero_rows(&self) -> QMatrix {
        let rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| self.row(r).to_vec())
            .filter(|row| row.iter().any(|v| !v.is_zero()))
            .collect();
        if rows.is_empty() {
            QMatrix::zeros(0, self.cols)
        } else {
            QMatrix::from_rows(rows)
        }
    }
}

impl Rref {
    /// Treating the reduced matrix as an augmented system `[A | b]`, return a
    /// particular solution with all free variables zero, or `None` if the
    /// system is inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<Rat>> {
        let m = &self.matrix;
        let unknowns = m.cols.checked_sub(1).expect("augmented matrix");
        let mut x = vec![Rat::zero(); unknowns];
        for (i, &p) in self.pivots.iter().enumerate() {
            if p == unknowns {
                return None; // pivot in the constant column: inconsistent
            }
            x[p] = m.at(i, unknowns).clone();
        }
        Some(x)
    }

    /// Basis of the kernel of the (non-augmented) reduced matrix, one vector
    /// per free column, in increasing column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rat>> {
        let m = &self.matrix;
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if self.pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = -m.at(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat::{rat, rat_int};

    fn mat_i64(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_is_its_own_rref() {
        let m = QMatrix::identity(3);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn proportional_rows_collapse() {
        let m = mat_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, mat_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rational_pivots_normalize_to_one() {
        let m = QMatrix::from_rows(vec![vec![rat(2, 3), rat_int(1)], vec![rat_int(0), rat(5, 7)]]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, QMatrix::identity(2));
    }

    #[test]
    fn particular_solution_and_consistency() {
        // x + 2z = 3, y - z = 1
        let m = mat_i64(&[&[1, 0, 2, 3], &[0, 1, -1, 1]]);
        let r = m.rref();
        let sol = r.particular_solution().unwrap();
        assert_eq!(sol, vec![rat_int(3), rat_int(1), rat_int(0)]);

        let bad = mat_i64(&[&[1, 1, 0], &[1, 1, 1]]);
        assert!(bad.rref().particular_solution().is_none());
    }

    #[test]
    fn nullspace_basis_spans_kernel() {
        let m = mat_i64(&[&[1, 2, 3]]);
        let r = m.rref();
        let basis = r.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in basis {
            let dot: Rat = (0..3).map(|j| m.at(0, j) * &v[j]).sum();
            assert!(dot.is_zero());
        }
    }

    // Brute-force rank oracle: the largest size of a square submatrix with a
    // nonvanishing determinant, determinants by Laplace expansion.
    fn det_laplace(m: &QMatrix) -> Rat {
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return rat_int(1);
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = Rat::zero();
        for c in 0..n {
            if m.at(0, c).is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<Rat>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&j| j != c)
                        .map(|j| m.at(r, j).clone())
                        .collect()
                })
                .collect();
            let minor = det_laplace(&QMatrix::from_rows(minor_rows));
            let term = m.at(0, c) * &minor;
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn rank_by_minors(m: &QMatrix) -> usize {
        let max = m.rows().min(m.cols());
        for k in (1..=max).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub = QMatrix::from_rows(
                        rs.iter()
                            .map(|&r| cs.iter().map(|&c| m.at(r, c).clone()).collect())
                            .collect(),
                    );
                    if !det_laplace(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_matches_brute_force_minor_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let rows: Vec<Vec<Rat>> = (0..3)
                .map(|_| {
                    (0..5)
                        .map(|_| rat(rng.random_range(-3..=3), rng.random_range(1..=3)))
                        .collect()
                })
                .collect();
            let m = QMatrix::from_rows(rows);
            assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }
}
