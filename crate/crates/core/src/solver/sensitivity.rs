use serde::{Deserialize, Serialize};

use super::system::Matrix;
use crate::error::{Error, Result};
use crate::fuzzy::{min_all, Degree};

/// Output `b_row` as a function of the single input `v_column`, all other
/// inputs held fixed: `f(x) = min(max(floor, x), cap)`.
///
/// `floor` is the matrix entry of the column and `cap` the min-max value of
/// the rest of the row, so `f` is nondecreasing, constant below `floor` and
/// above `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityCurve {
    pub row: usize,
    pub column: usize,
    pub floor: Degree,
    pub cap: Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Segment {
    Constant { from: Degree, to: Degree, value: Degree },
    /// `f(x) = x` on the interval.
    Identity { from: Degree, to: Degree },
}

impl SensitivityCurve {
    pub fn eval(&self, x: Degree) -> Degree {
        self.floor.max(x).min(self.cap)
    }

    /// True when no value of the input changes the output.
    pub fn is_constant(&self) -> bool {
        self.floor >= self.cap
    }

    /// Interior points of `(0, 1)` where the slope changes.
    pub fn breakpoints(&self) -> Vec<Degree> {
        if self.is_constant() {
            return Vec::new();
        }
        [self.floor, self.cap]
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }

    /// Piecewise description over `[0, 1]`, skipping empty pieces.
    pub fn segments(&self) -> Vec<Segment> {
        if self.is_constant() {
            return vec![Segment::Constant {
                from: Degree::ZERO,
                to: Degree::ONE,
                value: self.cap,
            }];
        }
        let mut out = Vec::new();
        if !self.floor.is_zero() {
            out.push(Segment::Constant {
                from: Degree::ZERO,
                to: self.floor,
                value: self.floor,
            });
        }
        out.push(Segment::Identity {
            from: self.floor,
            to: self.cap,
        });
        if !self.cap.is_one() {
            out.push(Segment::Constant {
                from: self.cap,
                to: Degree::ONE,
                value: self.cap,
            });
        }
        out
    }
}

pub fn sensitivity_curve(m: &Matrix, v: &[Degree], row: usize, column: usize) -> Result<SensitivityCurve> {
    m.check_row(row)?;
    m.check_vector(v)?;
    if column >= m.cols() {
        return Err(Error::Dimension(format!("column {} of a {}-column matrix", column, m.cols())));
    }
    let cap = min_all(
        m.row(row)
            .iter()
            .zip(v)
            .enumerate()
            .filter(|(j, _)| *j != column)
            .map(|(_, (a, x))| (*a).max(*x)),
    );
    Ok(SensitivityCurve {
        row,
        column,
        floor: m.get(row, column),
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::deg;
    use crate::solver::system::eval_row;
    use proptest::prelude::*;

    fn d(v: &[f64]) -> Vec<Degree> {
        v.iter().map(|x| deg(*x)).collect()
    }

    fn peter() -> Vec<Degree> {
        d(&[1.0, 0.5, 0.2, 1.0, 1.0, 0.6])
    }

    #[test]
    fn entry_of_one_makes_input_irrelevant() {
        let m = Matrix::from_rows(vec![d(&[1.0, 0.3, 0.2, 1.0, 1.0, 1.0])]).unwrap();
        let c = sensitivity_curve(&m, &peter(), 0, 0).unwrap();
        assert!(c.is_constant());
        assert_eq!(c.eval(Degree::ZERO), c.eval(Degree::ONE));
        assert!(c.breakpoints().is_empty());
    }

    #[test]
    fn professor_against_creation_doubt() {
        // Professor row: max(rho_2, 0.4).
        let m = Matrix::from_rows(vec![d(&[1.0, 1.0, 1.0, 0.4, 1.0, 1.0])]).unwrap();
        let c = sensitivity_curve(&m, &peter(), 0, 3).unwrap();
        assert_eq!(c.floor, deg(0.4));
        assert_eq!(c.cap, Degree::ONE);
        assert_eq!(c.breakpoints(), vec![deg(0.4)]);
        assert_eq!(c.eval(deg(0.1)), deg(0.4));
        assert_eq!(c.eval(deg(0.7)), deg(0.7));
    }

    #[test]
    fn researcher_against_creation() {
        let m = Matrix::from_rows(vec![d(&[1.0, 0.3, 0.2, 1.0, 1.0, 1.0])]).unwrap();
        let c = sensitivity_curve(&m, &peter(), 0, 2).unwrap();
        assert_eq!(c.cap, deg(0.5));
        assert_eq!(c.breakpoints(), vec![deg(0.2), deg(0.5)]);
        assert_eq!(
            c.segments(),
            vec![
                Segment::Constant { from: Degree::ZERO, to: deg(0.2), value: deg(0.2) },
                Segment::Identity { from: deg(0.2), to: deg(0.5) },
                Segment::Constant { from: deg(0.5), to: Degree::ONE, value: deg(0.5) },
            ]
        );
    }

    fn degree() -> impl Strategy<Value = Degree> {
        (0u16..=1000).prop_map(|t| Degree::from_thousandths(t).unwrap())
    }

    proptest! {
        #[test]
        fn curve_matches_direct_evaluation(
            row in proptest::collection::vec(degree(), 4),
            v in proptest::collection::vec(degree(), 4),
            j in 0usize..4,
            x in degree(),
        ) {
            let m = Matrix::from_rows(vec![row]).unwrap();
            let c = sensitivity_curve(&m, &v, 0, j).unwrap();
            let mut w = v.clone();
            w[j] = x;
            prop_assert_eq!(c.eval(x), eval_row(&m, 0, &w));
        }
    }
}
