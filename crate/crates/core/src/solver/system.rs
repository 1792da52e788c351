use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{min_all, Degree};

/// Dense row-major matrix of degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Degree>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Degree>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "ragged matrix: row of length {} in a matrix with {} columns",
                bad.len(),
                cols
            )));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: Degree) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Degree {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Degree) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Degree] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Smallest entry of row `i`; the row value never drops below it.
    pub fn row_floor(&self, i: usize) -> Degree {
        min_all(self.row(i).iter().copied())
    }

    pub(crate) fn check_row(&self, i: usize) -> Result<()> {
        if i < self.rows {
            Ok(())
        } else {
            Err(Error::Dimension(format!("row {} of a {}-row matrix", i, self.rows)))
        }
    }

    pub(crate) fn check_vector(&self, v: &[Degree]) -> Result<()> {
        if v.len() == self.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )))
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|d| format!("{:>5}", d.to_string())).collect();
            writeln!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Row `k` of the min-max product: `min_j max(M_kj, v_j)`.
pub fn eval_row(m: &Matrix, k: usize, v: &[Degree]) -> Degree {
    min_all(m.row(k).iter().zip(v).map(|(a, x)| (*a).max(*x)))
}

/// Min-max product `b_i = min_j max(M_ij, v_j)`.
pub fn eval_minmax(m: &Matrix, v: &[Degree]) -> Result<Vec<Degree>> {
    m.check_vector(v)?;
    Ok((0..m.rows).map(|k| eval_row(m, k, v)).collect())
}

/// Pairs of unknowns `(j, j')` constrained by `max(v_j, v_j') = 1`.
pub type Coupling = Vec<(usize, usize)>;

pub fn satisfies_coupling(v: &[Degree], coupling: &[(usize, usize)]) -> bool {
    coupling.iter().all(|&(a, b)| v[a].max(v[b]).is_one())
}

/// A min-max relational system `b = M ■ v` with optional coupling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinMaxSystem {
    pub matrix: Matrix,
    pub observed: Option<Vec<Degree>>,
    pub coupling: Coupling,
}

impl MinMaxSystem {
    pub fn new(matrix: Matrix) -> Self {
        MinMaxSystem {
            matrix,
            observed: None,
            coupling: Vec::new(),
        }
    }

    #[must_use]
    pub fn observing(mut self, b: Vec<Degree>) -> Self {
        self.observed = Some(b);
        self
    }

    /// Adds coupling pairs. Pairs must be disjoint and in range.
    pub fn coupled(mut self, coupling: Coupling) -> Result<Self> {
        let mut seen = vec![false; self.matrix.cols()];
        for &(a, b) in &coupling {
            for j in [a, b] {
                if j >= seen.len() || seen[j] {
                    return Err(Error::Dimension(format!("coupling column {} is out of range or reused", j)));
                }
                seen[j] = true;
            }
        }
        self.coupling = coupling;
        Ok(self)
    }

    pub fn eval(&self, v: &[Degree]) -> Result<Vec<Degree>> {
        eval_minmax(&self.matrix, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::deg;
    use proptest::prelude::*;

    fn d(v: &[f64]) -> Vec<Degree> {
        v.iter().map(|x| deg(*x)).collect()
    }

    /// Business man / lawyer / doctor row of the professions example with
    /// s1 = 1, r2 = 0.4, r3 = 0.3.
    fn business_row() -> Matrix {
        Matrix::from_rows(vec![d(&[1.0, 1.0, 1.0, 0.4, 1.0, 0.3])]).unwrap()
    }

    #[test]
    fn all_ones_matrix_absorbs_input() {
        let m = Matrix::filled(3, 4, Degree::ONE);
        assert_eq!(eval_minmax(&m, &d(&[0.0, 0.2, 0.9, 0.0])).unwrap(), vec![Degree::ONE; 3]);
    }

    #[test]
    fn business_row_at_peter_profile() {
        let v = d(&[1.0, 0.5, 0.2, 1.0, 1.0, 0.6]);
        assert_eq!(eval_minmax(&business_row(), &v).unwrap(), d(&[0.6]));
    }

    #[test]
    fn zero_rows_with_zero_input() {
        let m = Matrix::from_rows(vec![d(&[0.0, 1.0]), d(&[0.5, 0.0])]).unwrap();
        assert_eq!(eval_minmax(&m, &d(&[0.0, 0.0])).unwrap(), d(&[0.0, 0.0]));
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(eval_minmax(&business_row(), &d(&[1.0])), Err(Error::Dimension(_))));
        assert!(Matrix::from_rows(vec![d(&[1.0]), d(&[1.0, 0.0])]).is_err());
        let sys = MinMaxSystem::new(business_row());
        assert!(sys.clone().coupled(vec![(0, 1), (1, 2)]).is_err());
        assert!(sys.coupled(vec![(0, 9)]).is_err());
    }

    fn degree() -> impl Strategy<Value = Degree> {
        (0u16..=1000).prop_map(|t| Degree::from_thousandths(t).unwrap())
    }

    proptest! {
        #[test]
        fn eval_is_monotone(
            m in proptest::collection::vec(degree(), 12),
            v in proptest::collection::vec(degree(), 4),
            bump in proptest::collection::vec(degree(), 4),
        ) {
            let m = Matrix::from_rows(m.chunks(4).map(<[Degree]>::to_vec).collect()).unwrap();
            let w: Vec<Degree> = v.iter().zip(&bump).map(|(a, b)| (*a).max(*b)).collect();
            let b = eval_minmax(&m, &v).unwrap();
            let b2 = eval_minmax(&m, &w).unwrap();
            prop_assert!(b.iter().zip(&b2).all(|(x, y)| x <= y));
        }

        #[test]
        fn row_value_never_below_floor(
            m in proptest::collection::vec(degree(), 12),
            v in proptest::collection::vec(degree(), 4),
        ) {
            let m = Matrix::from_rows(m.chunks(4).map(<[Degree]>::to_vec).collect()).unwrap();
            let b = eval_minmax(&m, &v).unwrap();
            for (k, bk) in b.iter().enumerate() {
                prop_assert!(*bk >= m.row_floor(k));
            }
        }
    }
}
