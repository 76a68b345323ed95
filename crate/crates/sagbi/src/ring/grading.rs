//! Gradings defined by integer weight matrices.

use crate::error::{Error, Result};
use crate::ring::term::Term;

/// A (multi)grading on a polynomial ring, given by an m x nvars weight matrix.
/// The degree of a term is the matrix-vector product with its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    rows: Vec<Vec<i64>>,
}

impl Grading {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::BadGradingShape("weight matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadGradingShape(
                "weight matrix rows must be nonempty and of equal length".into(),
            ));
        }
        Ok(Grading { rows })
    }

    pub fn single_row(row: Vec<i64>) -> Result<Self> {
        Grading::new(vec![row])
    }

    /// The standard grading deg(x_i) = 1.
    pub fn standard(nvars: usize) -> Self {
        Grading { rows: vec![vec![1; nvars]] }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.rows[0].len()
    }

    /// W * exponents(t).
    pub fn degree(&self, t: &Term) -> Vec<i64> {
        self.rows.iter().map(|r| dot(r, t.exponents())).collect()
    }

    /// Degree under a single row of the matrix.
    pub fn degree_row(&self, t: &Term, row: usize) -> i64 {
        dot(&self.rows[row], t.exponents())
    }

    /// Positive grading: no column is zero and the first nonzero entry of
    /// each column (from the top) is positive.
    pub fn is_positive(&self) -> bool {
        (0..self.nvars()).all(|j| {
            self.rows
                .iter()
                .map(|r| r[j])
                .find(|&w| w != 0)
                .is_some_and(|w| w > 0)
        })
    }

    /// Grading induced on k new variables mapping to the given terms:
    /// deg(x_i) = deg_W(t_i), columns of the original grading dropped.
    pub fn induced(&self, terms: &[Term]) -> Grading {
        let rows = self
            .rows
            .iter()
            .map(|r| terms.iter().map(|t| dot(r, t.exponents())).collect())
            .collect();
        Grading { rows }
    }
}

pub(crate) fn dot(w: &[i64], exps: &[u32]) -> i64 {
    debug_assert_eq!(w.len(), exps.len());
    w.iter().zip(exps).map(|(a, &e)| a * e as i64).sum()
}
