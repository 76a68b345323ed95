//! Power products stored as dense exponent vectors.

use std::fmt;

/// A power product in a fixed polynomial ring; `exps[i]` is the exponent of
/// variable `i`. The length always equals the ambient ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: Vec<u32>,
}

impl Term {
    pub fn one(nvars: usize) -> Self {
        Term { exps: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Term { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Term { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.nvars(), other.nvars());
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Term {
        Term {
            exps: self.exps.iter().map(|a| a * k).collect(),
        }
    }

    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when exact.
    pub fn checked_div(&self, other: &Term) -> Option<Term> {
        if self.divides(other) {
            Some(Term {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(b, a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Term) -> Term {
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders with the given variable names, e.g. `a0^2*a1`.
    pub fn format(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vars[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars[i], e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_and_lcm() {
        let a = Term::from_exponents(vec![2, 1, 0]);
        let b = Term::from_exponents(vec![1, 1, 0]);
        assert!(b.divides(&a));
        assert_eq!(b.checked_div(&a).unwrap(), Term::from_exponents(vec![1, 0, 0]));
        assert_eq!(a.lcm(&b), a);
        assert!(!a.divides(&b));
        assert!(a.checked_div(&b).is_none());
    }
}
