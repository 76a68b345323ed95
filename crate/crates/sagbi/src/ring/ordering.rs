//! Matrix term orderings.
//!
//! A term ordering is a nonsingular integer matrix M; terms compare by the
//! lexicographic order of M applied to their exponent vectors. Validity
//! (1 minimal) is guaranteed by requiring the first nonzero entry of every
//! column to be positive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::grading::Grading;
use crate::ring::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrdering {
    rows: Vec<Vec<i64>>,
}

/// Incremental row-echelon basis over the rationals, used to pick
/// rank-increasing candidate rows at construction time.
struct Echelon {
    rows: Vec<Vec<BigRational>>, // reduced echelon rows
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, row: &[i64]) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = row
            .iter()
            .map(|&x| BigRational::from(BigInt::from(x)))
            .collect();
        for r in &self.rows {
            let pivot = r.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let c = &v[pivot] / &r[pivot];
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi -= &c * ri;
                }
            }
        }
        v
    }

    fn contains(&self, row: &[i64]) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }

    /// Inserts if independent; returns whether the rank grew.
    fn try_insert(&mut self, row: &[i64]) -> bool {
        let v = self.reduce(row);
        if v.iter().all(|x| x.is_zero()) {
            false
        } else {
            self.rows.push(v);
            true
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

impl TermOrdering {
    /// Builds an ordering from explicit matrix rows, validating that the
    /// matrix is square, nonsingular, and has positive first nonzero entries
    /// in every column.
    pub fn from_matrix(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::NotTermOrdering("empty matrix".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotTermOrdering("ragged matrix".into()));
        }
        if rows.len() != n {
            return Err(Error::NotTermOrdering(format!(
                "matrix must be square ({} rows for {} variables)",
                rows.len(),
                n
            )));
        }
        let mut ech = Echelon::new();
        for r in &rows {
            if !ech.try_insert(r) {
                return Err(Error::NotTermOrdering("matrix is singular".into()));
            }
        }
        let ord = TermOrdering { rows };
        ord.check_columns()?;
        Ok(ord)
    }

    fn check_columns(&self) -> Result<()> {
        for j in 0..self.nvars() {
            match self.rows.iter().map(|r| r[j]).find(|&w| w != 0) {
                Some(w) if w > 0 => {}
                _ => {
                    return Err(Error::NotTermOrdering(format!(
                        "column {j}: first nonzero entry must be positive"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Assembles a square matrix from candidate rows, keeping only the
    /// rank-increasing ones.
    fn from_candidates(n: usize, candidates: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut ech = Echelon::new();
        let mut rows = Vec::new();
        for c in candidates {
            if ech.rank() == n {
                break;
            }
            if ech.try_insert(&c) {
                rows.push(c);
            }
        }
        if rows.len() != n {
            return Err(Error::NotTermOrdering(
                "candidate rows do not span a full ordering".into(),
            ));
        }
        let ord = TermOrdering { rows };
        ord.check_columns()?;
        Ok(ord)
    }

    /// Standard degree-reverse-lexicographic ordering.
    pub fn degrevlex(n: usize) -> Self {
        let mut cands = vec![vec![1i64; n]];
        for j in (0..n).rev() {
            let mut r = vec![0i64; n];
            r[j] = -1;
            cands.push(r);
        }
        Self::from_candidates(n, cands).expect("degrevlex is always valid")
    }

    /// Degree-lexicographic ordering with earlier variables larger.
    pub fn deglex(n: usize) -> Self {
        let mut cands = vec![vec![1i64; n]];
        for j in 0..n {
            let mut r = vec![0i64; n];
            r[j] = 1;
            cands.push(r);
        }
        Self::from_candidates(n, cands).expect("deglex is always valid")
    }

    /// Ordering compatible with a positive grading W in which, among terms of
    /// equal W-degree, a smaller exponent of the first variable wins. Built by
    /// stacking W, the row (-1,0,...,0), and reverse-lexicographic completion
    /// rows from the rightmost variable.
    pub fn a0_degrev(w: &Grading) -> Result<Self> {
        if !w.is_positive() {
            return Err(Error::NotPositiveGrading);
        }
        let n = w.nvars();
        let mut cands: Vec<Vec<i64>> = w.rows().to_vec();
        let mut neg_first = vec![0i64; n];
        neg_first[0] = -1;
        cands.push(neg_first);
        for j in (1..n).rev() {
            let mut r = vec![0i64; n];
            r[j] = -1;
            cands.push(r);
        }
        let mut r0 = vec![0i64; n];
        r0[0] = -1;
        cands.push(r0);
        Self::from_candidates(n, cands)
    }

    /// Elimination ordering: terms containing a variable of `elim` always
    /// exceed terms in the remaining variables. Optional leading degree rows
    /// (for homogeneous inputs) come first; within the eliminated and kept
    /// blocks the comparison is degree-reverse-lexicographic.
    pub fn elimination(n: usize, elim: &[usize], degree_rows: &[Vec<i64>]) -> Result<Self> {
        let is_elim = {
            let mut v = vec![false; n];
            for &j in elim {
                v[j] = true;
            }
            v
        };
        let mut cands: Vec<Vec<i64>> = degree_rows.to_vec();
        // block indicator: total degree in the eliminated variables
        cands.push((0..n).map(|j| if is_elim[j] { 1 } else { 0 }).collect());
        for j in (0..n).rev() {
            if is_elim[j] {
                let mut r = vec![0i64; n];
                r[j] = -1;
                cands.push(r);
            }
        }
        cands.push((0..n).map(|j| if is_elim[j] { 0 } else { 1 }).collect());
        for j in (0..n).rev() {
            if !is_elim[j] {
                let mut r = vec![0i64; n];
                r[j] = -1;
                cands.push(r);
            }
        }
        // fall back to plain reverse-lex rows in case degree rows zeroed a block
        for j in (0..n).rev() {
            let mut r = vec![0i64; n];
            r[j] = -1;
            cands.push(r);
        }
        Self::from_candidates(n, cands)
    }

    pub fn nvars(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn compare(&self, a: &Term, b: &Term) -> Ordering {
        let ea = a.exponents();
        let eb = b.exponents();
        debug_assert_eq!(ea.len(), self.nvars());
        debug_assert_eq!(eb.len(), self.nvars());
        for row in &self.rows {
            let mut s: i64 = 0;
            for (w, (&x, &y)) in row.iter().zip(ea.iter().zip(eb)) {
                s += w * (x as i64 - y as i64);
            }
            match s.cmp(&0) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Image M * log(t), usable as a self-contained sort key.
    pub fn key(&self, t: &Term) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| crate::ring::grading::dot(r, t.exponents()))
            .collect()
    }

    /// Structural check that this ordering refines the grading W (its rows
    /// appear as a prefix, dependent rows skipped) and orders equal-degree
    /// terms by ascending first-variable exponent.
    pub fn is_a0_degrev_for(&self, w: &Grading) -> bool {
        if w.nvars() != self.nvars() {
            return false;
        }
        let mut ech = Echelon::new();
        let mut idx = 0;
        for wrow in w.rows() {
            if ech.contains(wrow) {
                continue;
            }
            if idx < self.rows.len() && self.rows[idx] == *wrow {
                ech.try_insert(wrow);
                idx += 1;
            } else {
                return false;
            }
        }
        let mut e0 = vec![0i64; self.nvars()];
        e0[0] = 1;
        if ech.contains(&e0) {
            return true;
        }
        let neg: Vec<i64> = e0.iter().map(|x| -x).collect();
        idx < self.rows.len() && self.rows[idx] == neg
    }
}
