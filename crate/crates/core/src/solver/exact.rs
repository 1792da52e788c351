//! Exact solution of `b = M ■ v` over min-max algebra.
//!
//! For each row `i`, `min_j max(M_ij, v_j) = b_i` splits into two parts:
//!
//! * `>= b_i` holds iff `v_j >= b_i` for every `j` with `M_ij < b_i`. Taking
//!   the largest such requirement per column gives the lower bound `v̌`, and
//!   `M ■ v >= b` iff `v >= v̌`.
//! * `<= b_i` holds iff some column `j` has `M_ij <= b_i` and `v_j <= b_i`.
//!
//! So the uncoupled system is solvable iff `M ■ v̌ = b`, and `v̌` is then the
//! least solution. The solution set is the box above `v̌` cut by one
//! disjunction per row, which [`SolutionSpace`] records losslessly. Maximal
//! solutions are obtained by picking one column per row and capping it.
//!
//! Coupling pairs `max(v_j, v_j') = 1` force a choice of which side is 1, so
//! the coupled system may have several minimal solutions.

use serde::{Deserialize, Serialize};

use super::system::{eval_minmax, satisfies_coupling, Matrix, MinMaxSystem};
use crate::error::{Error, Result};
use crate::fuzzy::Degree;

/// One alternative of a row's `<=` disjunction: `v_column <= cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cap {
    pub column: usize,
    pub cap: Degree,
}

/// The full solution set: `v >= lower`, every row has one capped column, and
/// the coupling holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSpace {
    pub lower: Vec<Degree>,
    pub rows: Vec<Vec<Cap>>,
    pub coupling: Vec<(usize, usize)>,
}

impl SolutionSpace {
    pub fn contains(&self, v: &[Degree]) -> bool {
        v.len() == self.lower.len()
            && v.iter().zip(&self.lower).all(|(x, lo)| x >= lo)
            && self.rows.iter().all(|alts| alts.iter().any(|c| v[c.column] <= c.cap))
            && satisfies_coupling(v, &self.coupling)
    }

    /// Enumerates the maximal solutions, examining at most `limit` column
    /// choices. Returns `None` if the limit was hit.
    pub fn maximal_solutions(&self, limit: usize) -> Option<Vec<Vec<Degree>>> {
        if self.rows.iter().any(Vec::is_empty) {
            return Some(Vec::new());
        }
        let n = self.lower.len();
        let mut found: Vec<Vec<Degree>> = Vec::new();
        let mut choice = vec![0usize; self.rows.len()];
        let mut examined = 0usize;
        loop {
            examined += 1;
            if examined > limit {
                return None;
            }
            let mut v = vec![Degree::ONE; n];
            for (row, &c) in self.rows.iter().zip(&choice) {
                let cap = row[c];
                v[cap.column] = v[cap.column].min(cap.cap);
            }
            if satisfies_coupling(&v, &self.coupling) && !found.contains(&v) {
                found.push(v);
            }
            // Odometer over the per-row alternatives.
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Some(keep_maximal(found));
                }
                choice[pos] += 1;
                if choice[pos] < self.rows[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Outcome of [`solve_exact`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub solvable: bool,
    /// The pointwise-least solution respecting coupling, when one exists.
    pub least: Option<Vec<Degree>>,
    /// All minimal solutions respecting coupling.
    pub minimal: Vec<Vec<Degree>>,
    pub space: SolutionSpace,
}

fn le(a: &[Degree], b: &[Degree]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn keep_minimal(mut vs: Vec<Vec<Degree>>) -> Vec<Vec<Degree>> {
    vs.sort();
    vs.dedup();
    let keep: Vec<bool> = vs
        .iter()
        .map(|v| !vs.iter().any(|w| w != v && le(w, v)))
        .collect();
    vs.into_iter().zip(keep).filter_map(|(v, k)| k.then_some(v)).collect()
}

fn keep_maximal(mut vs: Vec<Vec<Degree>>) -> Vec<Vec<Degree>> {
    vs.sort();
    vs.dedup();
    let keep: Vec<bool> = vs
        .iter()
        .map(|v| !vs.iter().any(|w| w != v && le(v, w)))
        .collect();
    vs.into_iter().zip(keep).filter_map(|(v, k)| k.then_some(v)).collect()
}

/// Lower bound `v̌_j = max { b_i : M_ij < b_i }`.
pub fn lower_bound(m: &Matrix, b: &[Degree]) -> Vec<Degree> {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| m.get(i, j) < b[i])
                .map(|i| b[i])
                .max()
                .unwrap_or(Degree::ZERO)
        })
        .collect()
}

/// Solves `b = M ■ v` exactly. An unsolvable system is a normal result.
pub fn solve_exact(system: &MinMaxSystem) -> Result<Solution> {
    let m = &system.matrix;
    let b = system
        .observed
        .as_deref()
        .ok_or_else(|| Error::Dimension("system has no observed output".into()))?;
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "observed output of length {} against {} rows",
            b.len(),
            m.rows()
        )));
    }
    let lower = lower_bound(m, b);
    let rows: Vec<Vec<Cap>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| m.get(i, j) <= b[i] && lower[j] <= b[i])
                .map(|j| Cap { column: j, cap: b[i] })
                .collect()
        })
        .collect();
    let space = SolutionSpace {
        lower: lower.clone(),
        rows,
        coupling: system.coupling.clone(),
    };

    // Minimal coupled solutions: raise one side of each unsatisfied pair to 1.
    let open: Vec<(usize, usize)> = system
        .coupling
        .iter()
        .copied()
        .filter(|&(a, c)| !lower[a].max(lower[c]).is_one())
        .collect();
    let mut candidates = Vec::new();
    for mask in 0u64..(1u64 << open.len()) {
        let mut v = lower.clone();
        for (bit, &(a, c)) in open.iter().enumerate() {
            let j = if mask >> bit & 1 == 0 { a } else { c };
            v[j] = Degree::ONE;
        }
        if eval_minmax(m, &v)? == b {
            candidates.push(v);
        }
    }
    let minimal = keep_minimal(candidates);
    let least = match minimal.as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    };
    Ok(Solution {
        solvable: !minimal.is_empty(),
        least,
        minimal,
        space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::deg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d(v: &[f64]) -> Vec<Degree> {
        v.iter().map(|x| deg(*x)).collect()
    }

    fn grid(level: u16) -> Degree {
        Degree::from_thousandths(level * 100).unwrap()
    }

    /// Every vector over the 11-level grid.
    fn all_grid_vectors(n: usize) -> Vec<Vec<Degree>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=10).map(move |l| {
                        let mut w = v.clone();
                        w.push(grid(l));
                        w
                    })
                })
                .collect();
        }
        out
    }

    struct Oracle {
        solutions: Vec<Vec<Degree>>,
    }

    impl Oracle {
        fn search(sys: &MinMaxSystem) -> Self {
            let b = sys.observed.clone().unwrap();
            let solutions = all_grid_vectors(sys.matrix.cols())
                .into_iter()
                .filter(|v| satisfies_coupling(v, &sys.coupling))
                .filter(|v| eval_minmax(&sys.matrix, v).unwrap() == b)
                .collect();
            Oracle { solutions }
        }

        fn least(&self) -> Option<Vec<Degree>> {
            let first = self.solutions.first()?;
            let meet: Vec<Degree> = (0..first.len())
                .map(|j| self.solutions.iter().map(|v| v[j]).min().unwrap())
                .collect();
            self.solutions.contains(&meet).then_some(meet)
        }
    }

    fn random_system(rng: &mut ChaCha8Rng, coupled: bool) -> MinMaxSystem {
        let rows = (0..3).map(|_| (0..4).map(|_| grid(rng.gen_range(0..=10))).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let b = if rng.gen_bool(0.5) {
            let v: Vec<Degree> = (0..4).map(|_| grid(rng.gen_range(0..=10))).collect();
            eval_minmax(&m, &v).unwrap()
        } else {
            (0..3).map(|_| grid(rng.gen_range(0..=10))).collect()
        };
        let sys = MinMaxSystem::new(m).observing(b);
        if coupled {
            sys.coupled(vec![(0, 1), (2, 3)]).unwrap()
        } else {
            sys
        }
    }

    #[test]
    fn image_is_always_solvable() {
        let m = Matrix::from_rows(vec![d(&[0.3, 1.0, 0.5]), d(&[0.9, 0.1, 0.0])]).unwrap();
        let v = d(&[0.2, 0.7, 0.4]);
        let b = eval_minmax(&m, &v).unwrap();
        let sol = solve_exact(&MinMaxSystem::new(m.clone()).observing(b.clone())).unwrap();
        assert!(sol.solvable);
        assert_eq!(eval_minmax(&m, sol.least.as_ref().unwrap()).unwrap(), b);
        assert!(le(sol.least.as_ref().unwrap(), &v));
    }

    #[test]
    fn identity_like_system_copies_output() {
        // Zero diagonal, ones elsewhere: b_i = v_i.
        let m = Matrix::from_rows(vec![
            d(&[0.0, 1.0, 1.0]),
            d(&[1.0, 0.0, 1.0]),
            d(&[1.0, 1.0, 0.0]),
        ])
        .unwrap();
        let b = d(&[0.2, 0.9, 0.5]);
        let sol = solve_exact(&MinMaxSystem::new(m).observing(b.clone())).unwrap();
        assert_eq!(sol.least.as_ref(), Some(&b));
        assert_eq!(sol.space.maximal_solutions(1000).unwrap(), vec![b]);
    }

    #[test]
    fn output_below_floor_is_unsolvable() {
        let m = Matrix::from_rows(vec![d(&[0.4, 0.3])]).unwrap();
        let sol = solve_exact(&MinMaxSystem::new(m).observing(d(&[0.2]))).unwrap();
        assert!(!sol.solvable);
        assert_eq!(sol.least, None);
        assert!(sol.space.maximal_solutions(10).unwrap().is_empty());
    }

    #[test]
    fn coupling_can_split_the_least_solution() {
        // b = min(max(0, v0), max(0, v1)) = 0.5, with max(v0, v1) = 1:
        // (0.5, 1) and (1, 0.5) are both minimal.
        let m = Matrix::from_rows(vec![d(&[0.0, 0.0])]).unwrap();
        let sys = MinMaxSystem::new(m).observing(d(&[0.5])).coupled(vec![(0, 1)]).unwrap();
        let sol = solve_exact(&sys).unwrap();
        assert!(sol.solvable);
        assert_eq!(sol.least, None);
        assert_eq!(sol.minimal, vec![d(&[0.5, 1.0]), d(&[1.0, 0.5])]);
    }

    #[test]
    fn missing_observation_is_an_error() {
        let m = Matrix::filled(1, 1, Degree::ONE);
        assert!(solve_exact(&MinMaxSystem::new(m)).is_err());
    }

    #[test]
    fn agrees_with_grid_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..60 {
            let sys = random_system(&mut rng, round % 2 == 1);
            let oracle = Oracle::search(&sys);
            let sol = solve_exact(&sys).unwrap();
            assert_eq!(sol.solvable, !oracle.solutions.is_empty(), "round {round}");
            assert_eq!(sol.least, oracle.least(), "round {round}");
            for v in &oracle.solutions {
                assert!(sol.space.contains(v), "round {round}: {v:?}");
            }
            let oracle_max = keep_maximal(oracle.solutions.clone());
            assert_eq!(sol.space.maximal_solutions(100_000).unwrap(), oracle_max, "round {round}");
            let oracle_min = keep_minimal(oracle.solutions.clone());
            assert_eq!(sol.minimal, oracle_min, "round {round}");
        }
    }
}
