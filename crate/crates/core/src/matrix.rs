//! Dense exact matrices over the rationals.
//!
//! Everything is Gauss–Jordan elimination with pivot normalization; at the
//! dimensions this crate works with (a few dozen at most) simplicity beats
//! asymptotics.  Rank, kernel and solve results are exact.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// One exact solution of `A x = b` together with a basis of `ker A`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(MatrixQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::Malformed("ragged matrix columns".into()));
        }
        let mut m = MatrixQ::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn int_rows(rows: &[&[i64]]) -> Self {
        MatrixQ::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = MatrixQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(&self[(i, k)] * &rhs[(k, j)]);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum::<Scalar>()
            })
            .collect())
    }

    pub fn add(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> MatrixQ {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].recip().expect("pivot nonzero");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = &f * &m[(row, c)];
                    m[(r, c)] = &m[(r, c)] - &sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b` exactly, returning one solution and a kernel basis.
    pub fn solve(&self, b: &[Scalar]) -> Result<LinearSolution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = MatrixQ::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::InconsistentSystem);
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            particular[col] = r[(row, self.cols)].clone();
        }
        Ok(LinearSolution {
            particular,
            kernel: self.kernel_basis(),
        })
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            det = &det * &m[(col, col)];
            let inv = m[(col, col)].recip().expect("pivot nonzero");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] * &inv;
                for c in col..n {
                    let sub = &f * &m[(col, c)];
                    m[(r, c)] = &m[(r, c)] - &sub;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<MatrixQ> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = MatrixQ::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return Err(Error::Singular);
        }
        let mut inv = MatrixQ::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Exact `exp(M)` for a nilpotent matrix: the series terminates once a
    /// power vanishes.
    pub fn exp_nilpotent(&self) -> Result<MatrixQ> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let mut acc = MatrixQ::identity(self.rows);
        let mut power = MatrixQ::identity(self.rows);
        for k in 1..=self.rows + 1 {
            power = power.mul(self)?;
            if power.is_zero() {
                return Ok(acc);
            }
            if k > self.rows {
                return Err(Error::contradiction(
                    "matrix exponential",
                    "matrix is not nilpotent",
                ));
            }
            acc = acc.add(&power.scale(&factorial(k as u32).recip().expect("positive")))?;
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for MatrixQ {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

impl Serialize for MatrixQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MatrixQ {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        MatrixQ::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// True iff the column spans of `u` and `v` coincide, decided by comparing
/// reduced echelon forms of the row spaces of the transposes.  Inputs with
/// dependent columns are rejected.
pub fn subspace_equal(u: &MatrixQ, v: &MatrixQ) -> Result<bool> {
    if u.rows() != v.rows() {
        return Err(Error::DimensionMismatch {
            expected: u.rows(),
            got: v.rows(),
        });
    }
    if u.rank() != u.cols() || v.rank() != v.cols() {
        return Err(Error::DependentColumns);
    }
    if u.cols() != v.cols() {
        return Ok(false);
    }
    let (ru, _) = u.transpose().rref();
    let (rv, _) = v.transpose().rref();
    Ok(ru == rv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sc(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    #[test]
    fn solve_identity() {
        let a = MatrixQ::identity(2);
        let b = vec![sc(1, 2), Scalar::from_int(-3)];
        let sol = a.solve(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_rank_one() {
        let a = MatrixQ::int_rows(&[&[1, 1], &[2, 2]]);
        let b = vec![Scalar::from_int(1), Scalar::from_int(2)];
        let sol = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
        assert_eq!(sol.kernel.len(), 1);
        // kernel spans (1, -1)
        let k = &sol.kernel[0];
        assert_eq!(&k[0] + &k[1], Scalar::zero());
        assert!(!k[0].is_zero());
    }

    #[test]
    fn solve_inconsistent() {
        let a = MatrixQ::int_rows(&[&[1, 1], &[2, 2]]);
        let b = vec![Scalar::from_int(1), Scalar::from_int(3)];
        assert!(matches!(a.solve(&b), Err(Error::InconsistentSystem)));
    }

    #[test]
    fn solve_random_six_by_six_round_trip() {
        // fixed full-rank matrix; the oracle is re-multiplication
        let a = MatrixQ::int_rows(&[
            &[2, 1, 0, 3, -1, 4],
            &[0, 1, 5, -2, 2, 1],
            &[1, 0, 1, 1, 1, 0],
            &[3, -2, 0, 1, 0, 2],
            &[0, 4, 1, 0, 2, -3],
            &[1, 1, 1, 1, 1, 1],
        ]);
        assert!(!a.det().unwrap().is_zero());
        let b: Vec<Scalar> = (0..6).map(|i| sc(2 * i as i64 - 5, i as i64 + 1)).collect();
        let sol = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = MatrixQ::int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        for k in a.kernel_basis() {
            assert!(a.mul_vec(&k).unwrap().iter().all(Scalar::is_zero));
        }
        assert_eq!(a.kernel_basis().len(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let a = MatrixQ::int_rows(&[&[1, 2], &[3, 5]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatrixQ::identity(2));
        assert_eq!(a.det().unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn singular_inverse_rejected() {
        let a = MatrixQ::int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::Singular)));
        assert!(a.det().unwrap().is_zero());
    }

    #[test]
    fn subspace_equal_examples() {
        // scaling
        let u = MatrixQ::int_rows(&[&[1], &[0]]);
        let v = MatrixQ::int_rows(&[&[2], &[0]]);
        assert!(subspace_equal(&u, &v).unwrap());
        // different axes
        let w = MatrixQ::int_rows(&[&[0], &[1]]);
        assert!(!subspace_equal(&u, &w).unwrap());
        // 2-dim spans in Q^3 that agree only after row reduction
        let u = MatrixQ::int_rows(&[&[1, 0], &[1, 0], &[0, 1]]);
        let v = MatrixQ::int_rows(&[&[1, 2], &[1, 2], &[1, -1]]);
        assert!(subspace_equal(&u, &v).unwrap());
    }

    #[test]
    fn subspace_rejects_dependent_columns() {
        let u = MatrixQ::int_rows(&[&[1, 2], &[2, 4]]);
        let v = MatrixQ::int_rows(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            subspace_equal(&u, &v),
            Err(Error::DependentColumns)
        ));
    }

    #[test]
    fn exp_nilpotent_jordan_block() {
        let m = MatrixQ::int_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.exp_nilpotent().unwrap(), MatrixQ::int_rows(&[&[1, 1], &[0, 1]]));
        let bad = MatrixQ::identity(2);
        assert!(bad.exp_nilpotent().is_err());
    }

    fn arb_plane() -> impl Strategy<Value = MatrixQ> {
        // a 2-dim subspace of Q^4 given by two independent columns
        proptest::collection::vec(-5i64..6, 8).prop_filter_map("independent", |v| {
            let m = MatrixQ::from_columns(vec![
                v[0..4].iter().map(|&x| Scalar::from_int(x)).collect(),
                v[4..8].iter().map(|&x| Scalar::from_int(x)).collect(),
            ])
            .unwrap();
            (m.rank() == 2).then_some(m)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn subspace_equal_is_equivalence(a in arb_plane(), b in arb_plane(), c in arb_plane()) {
            // reflexivity, symmetry, transitivity on sampled triples
            prop_assert!(subspace_equal(&a, &a).unwrap());
            prop_assert_eq!(subspace_equal(&a, &b).unwrap(), subspace_equal(&b, &a).unwrap());
            if subspace_equal(&a, &b).unwrap() && subspace_equal(&b, &c).unwrap() {
                prop_assert!(subspace_equal(&a, &c).unwrap());
            }
        }

        #[test]
        fn solve_round_trips_when_solvable(entries in proptest::collection::vec(-6i64..7, 12),
                                           rhs in proptest::collection::vec(-6i64..7, 3)) {
            let a = MatrixQ::from_rows(
                entries.chunks(4).map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
            ).unwrap();
            let b: Vec<Scalar> = rhs.into_iter().map(Scalar::from_int).collect();
            if let Ok(sol) = a.solve(&b) {
                prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
                for k in &sol.kernel {
                    prop_assert!(a.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
                }
            }
        }
    }
}
