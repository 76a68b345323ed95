//! Toric ideals of monomial maps and the membership test for monomial
//! subalgebras.
//!
//! The kernel of x_i -> t_i is computed by eliminating the original ring
//! variables from <x_i - t_i>. Each binomial x^a - x^b of the result encodes
//! a multiplicative relation among the t_i.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::groebner::{buchberger, elimination_ideal, truncated_buchberger};
use crate::ring::{Grading, PolyRing, Polynomial, Term, TermOrdering};

/// Pure-binomial generators of a toric ideal in its own ring of x-variables,
/// together with the grading induced by the degrees of the mapped terms.
#[derive(Debug, Clone)]
pub struct BinomialIdeal {
    pub ring: Arc<PolyRing>,
    pub binomials: Vec<Polynomial>,
    pub grading: Grading,
}

impl BinomialIdeal {
    pub fn is_zero(&self) -> bool {
        self.binomials.is_empty()
    }
}

/// Builds the combined ring K[x_1..x_s, a_0..a_n] with a degree-refined
/// elimination ordering for the a-block, plus the x-only ring the relations
/// live in. `w_row` grades the base variables; terms are always homogeneous
/// for it via the induced x-degrees.
fn toric_rings(
    base: &Arc<PolyRing>,
    terms: &[Term],
    w_row: &[i64],
) -> Result<(Arc<PolyRing>, Arc<PolyRing>, Grading)> {
    let s = terms.len();
    let n = base.nvars();
    let x_degrees: Vec<i64> = terms
        .iter()
        .map(|t| crate::ring::grading::dot(w_row, t.exponents()))
        .collect();

    let mut q_vars: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
    q_vars.extend(base.vars().iter().cloned());
    let mut deg_row = x_degrees.clone();
    deg_row.extend_from_slice(w_row);
    let elim: Vec<usize> = (s..s + n).collect();
    let q_ord = TermOrdering::elimination(s + n, &elim, &[deg_row.clone()])?;
    let q_grading = Grading::new(vec![deg_row])?;
    let q_ring = PolyRing::new(q_vars, base.field(), q_ord, Some(q_grading))?;

    let x_vars: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
    let x_grading = Grading::new(vec![x_degrees.clone()])?;
    let mut x_cands = vec![x_degrees.clone()];
    x_cands.push(vec![1; s]);
    for j in (0..s).rev() {
        let mut r = vec![0i64; s];
        r[j] = -1;
        x_cands.push(r);
    }
    let x_ord = ordering_from_candidates(s, x_cands)?;
    let x_ring = PolyRing::new(x_vars, base.field(), x_ord, Some(x_grading.clone()))?;
    Ok((q_ring, x_ring, x_grading))
}

fn ordering_from_candidates(n: usize, cands: Vec<Vec<i64>>) -> Result<TermOrdering> {
    // delegated through the public constructor by trial insertion
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for c in cands {
        if rows.len() == n {
            break;
        }
        let mut attempt = rows.clone();
        attempt.push(c);
        // keep the candidate if the stack is still extendable to a valid matrix
        if rank(&attempt) == attempt.len() {
            rows = attempt;
        }
    }
    TermOrdering::from_matrix(rows)
}

fn rank(rows: &[Vec<i64>]) -> usize {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let nc = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let prow = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn generator_binomials(
    base: &Arc<PolyRing>,
    terms: &[Term],
    w_row: &[i64],
    degree_bound: Option<i64>,
) -> Result<BinomialIdeal> {
    for t in terms {
        assert_eq!(t.nvars(), base.nvars());
    }
    let s = terms.len();
    let n = base.nvars();
    let (q_ring, x_ring, x_grading) = toric_rings(base, terms, w_row)?;
    let one = base.field().one();
    let gens: Vec<Polynomial> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let xi = Polynomial::variable(&q_ring, i);
            let mut exps = vec![0u32; s + n];
            exps[s..].copy_from_slice(t.exponents());
            let ti = Polynomial::monomial(&q_ring, Term::from_exponents(exps), one.clone());
            xi.sub(&ti)
        })
        .collect();
    let gb = match degree_bound {
        None => buchberger(&q_ring, &gens),
        Some(d) => truncated_buchberger(&q_ring, &gens, q_ring.grading().unwrap(), d)?,
    };
    let keep: Vec<bool> = (0..s + n).map(|i| i < s).collect();
    let elim = elimination_ideal(&gb, &keep)?;
    let var_map: Vec<usize> = (0..s).chain(std::iter::repeat(0).take(n)).collect();
    let mut binomials: Vec<Polynomial> = elim
        .into_iter()
        .map(|p| p.map_vars(&x_ring, &var_map).make_monic())
        .collect();
    for b in &binomials {
        debug_assert!(b.support_size() <= 2, "toric basis element is not binomial");
    }
    crate::groebner::sort_by_leading(&mut binomials);
    Ok(BinomialIdeal {
        ring: x_ring,
        binomials,
        grading: x_grading,
    })
}

/// Binomial generating set of the kernel of x_i -> terms[i].
pub fn toric_ideal(base: &Arc<PolyRing>, terms: &[Term]) -> Result<BinomialIdeal> {
    let ones = vec![1i64; base.nvars()];
    generator_binomials(base, terms, &ones, None)
}

/// Binomial generators of degree at most `d` under the first row of `w`
/// (transported to the x-variables through the term degrees).
pub fn toric_generators_up_to(
    base: &Arc<PolyRing>,
    terms: &[Term],
    w: &Grading,
    d: i64,
) -> Result<BinomialIdeal> {
    generator_binomials(base, terms, &w.rows()[0], Some(d))
}

/// Membership of t0 in the monomial algebra K[terms], by the binomial-kernel
/// criterion: t0 is a product of the terms iff some kernel binomial of
/// (t0, terms) is x0 - tau. Divisor prefiltering shrinks the kernel
/// computation. Returns the exponents of one representation.
pub fn monomial_membership(
    base: &Arc<PolyRing>,
    t0: &Term,
    terms: &[Term],
) -> Result<Option<Vec<u32>>> {
    if t0.is_one() {
        return Ok(Some(vec![0; terms.len()]));
    }
    // only sub-multiples of t0 can participate in a representation
    let filtered: Vec<(usize, &Term)> = terms
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_one() && t.divides(t0))
        .collect();
    if filtered.is_empty() {
        return Ok(None);
    }
    let mut kernel_terms: Vec<Term> = vec![t0.clone()];
    kernel_terms.extend(filtered.iter().map(|(_, t)| (*t).clone()));
    let rel = toric_ideal(base, &kernel_terms)?;

    let x0 = Term::variable(kernel_terms.len(), 0);
    let mut best: Option<Term> = None;
    for b in &rel.binomials {
        if b.support_size() != 2 {
            continue;
        }
        for (idx, (t, _)) in b.terms().iter().enumerate() {
            if *t == x0 {
                let other = &b.terms()[1 - idx].0;
                if other.exponents()[0] == 0 {
                    let better = match &best {
                        None => true,
                        Some(cur) => {
                            rel.ring.ordering().compare(other, cur) == std::cmp::Ordering::Less
                        }
                    };
                    if better {
                        best = Some(other.clone());
                    }
                }
            }
        }
    }
    let Some(tau) = best else {
        return Ok(None);
    };
    let mut alpha = vec![0u32; terms.len()];
    for (k, &e) in tau.exponents().iter().enumerate().skip(1) {
        alpha[filtered[k - 1].0] = e;
    }
    // exactness check of the representation
    let mut prod = Term::one(base.nvars());
    for (i, &e) in alpha.iter().enumerate() {
        if e > 0 {
            prod = prod.mul(&terms[i].pow(e));
        }
    }
    debug_assert_eq!(&prod, t0, "kernel binomial does not reproduce t0");
    Ok(Some(alpha))
}

/// Memoized membership queries against a fixed term list; used by the
/// subalgebra reduction loops where the same leading terms recur.
pub struct LtAlgebra {
    base: Arc<PolyRing>,
    terms: Vec<Term>,
    cache: HashMap<Term, Option<Vec<u32>>>,
}

impl LtAlgebra {
    pub fn new(base: Arc<PolyRing>, terms: Vec<Term>) -> Self {
        LtAlgebra {
            base,
            terms,
            cache: HashMap::new(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn membership(&mut self, t0: &Term) -> Result<Option<Vec<u32>>> {
        if let Some(hit) = self.cache.get(t0) {
            return Ok(hit.clone());
        }
        let res = monomial_membership(&self.base, t0, &self.terms)?;
        self.cache.insert(t0.clone(), res.clone());
        Ok(res)
    }
}

/// Evaluates a binomial relation at polynomial images of its variables.
pub fn evaluate_binomial(b: &Polynomial, images: &[Polynomial]) -> Polynomial {
    b.evaluate(images)
}

/// Checks that a binomial vanishes under x_i -> terms[i].
pub fn vanishes_on(b: &Polynomial, base: &Arc<PolyRing>, terms: &[Term]) -> bool {
    let one = base.field().one();
    let images: Vec<Polynomial> = terms
        .iter()
        .map(|t| Polynomial::monomial(base, t.clone(), one.clone()))
        .collect();
    b.evaluate(&images).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::groebner::same_ideal;
    use crate::problem::parse_polynomial;

    fn base3() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["a0".into(), "a1".into(), "a2".into()],
            Field::Rational,
            TermOrdering::degrevlex(3),
            None,
        )
        .unwrap()
    }

    fn t(exps: &[u32]) -> Term {
        Term::from_exponents(exps.to_vec())
    }

    #[test]
    fn independent_terms_zero_ideal() {
        let b = base3();
        let rel = toric_ideal(&b, &[t(&[1, 0, 0]), t(&[0, 1, 0]), t(&[0, 0, 1])]).unwrap();
        assert!(rel.is_zero());
    }

    #[test]
    fn power_relation() {
        let b = base3();
        // terms a1^2, a1^3 with relation x2^2 - x1^3
        let rel = toric_ideal(&b, &[t(&[0, 2, 0]), t(&[0, 3, 0])]).unwrap();
        assert_eq!(rel.binomials.len(), 1);
        let expect = parse_polynomial(&rel.ring, "x1^3 - x2^2").unwrap();
        let got = &rel.binomials[0];
        assert!(got == &expect || got == &expect.neg().make_monic());
        assert!(vanishes_on(got, &b, &[t(&[0, 2, 0]), t(&[0, 3, 0])]));
    }

    #[test]
    fn quadric_relation_ideal() {
        let b = base3();
        // a0, a1, a1a2, a1a2^2: single relation x2*x4 - x3^2, x1 absent
        let terms = [t(&[1, 0, 0]), t(&[0, 1, 0]), t(&[0, 1, 1]), t(&[0, 1, 2])];
        let rel = toric_ideal(&b, &terms).unwrap();
        for bi in &rel.binomials {
            assert!(vanishes_on(bi, &b, &terms));
            assert!(bi.is_homogeneous(&rel.grading));
            assert!(!bi
                .terms()
                .iter()
                .any(|(tm, _)| tm.exponents()[0] > 0), "x1 must not appear");
        }
        let gb1 = crate::groebner::buchberger(&rel.ring, &rel.binomials);
        let expect = parse_polynomial(&rel.ring, "x2*x4 - x3^2").unwrap();
        let gb2 = crate::groebner::buchberger(&rel.ring, &[expect]);
        assert!(same_ideal(&gb1, &gb2));
    }

    /// Brute-force integer-kernel oracle: enumerate exponent vectors in a box
    /// and collect all pairs with equal image; check every such binomial
    /// reduces to zero against the computed ideal.
    fn kernel_box_oracle(base: &Arc<PolyRing>, terms: &[Term], bound: u32) {
        let rel = toric_ideal(base, terms).unwrap();
        let gb = crate::groebner::buchberger(&rel.ring, &rel.binomials);
        let s = terms.len();
        let mut stack = vec![vec![]];
        let mut images: HashMap<Vec<u32>, Vec<Vec<u32>>> = HashMap::new();
        while let Some(v) = stack.pop() {
            if v.len() == s {
                let mut img = Term::one(base.nvars());
                for (i, &e) in v.iter().enumerate() {
                    img = img.mul(&terms[i].pow(e));
                }
                images.entry(img.exponents().to_vec()).or_default().push(v);
                continue;
            }
            for e in 0..=bound {
                let mut v2 = v.clone();
                v2.push(e);
                stack.push(v2);
            }
        }
        let one = base.field().one();
        for group in images.values() {
            for a in group {
                for b2 in group {
                    if a >= b2 {
                        continue;
                    }
                    let pa = Polynomial::monomial(
                        &rel.ring,
                        Term::from_exponents(a.clone()),
                        one.clone(),
                    );
                    let pb = Polynomial::monomial(
                        &rel.ring,
                        Term::from_exponents(b2.clone()),
                        one.clone(),
                    );
                    let binom = pa.sub(&pb);
                    assert!(
                        gb.contains(&binom),
                        "kernel vector not generated: {binom}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_oracle_small() {
        let b = base3();
        kernel_box_oracle(&b, &[t(&[1, 0, 0]), t(&[0, 1, 0]), t(&[0, 1, 1]), t(&[0, 1, 2])], 3);
        kernel_box_oracle(&b, &[t(&[0, 2, 0]), t(&[0, 3, 0])], 3);
        kernel_box_oracle(&b, &[t(&[1, 1, 0]), t(&[0, 1, 1]), t(&[1, 0, 1])], 3);
    }

    #[test]
    fn membership_examples() {
        let b = base3();
        // LT(h) = LT(g3)^2 LT(g4) in the running reduction example
        let terms = [t(&[1, 0, 0]), t(&[0, 1, 1]), t(&[0, 0, 2]), t(&[0, 1, 2])];
        let alpha = monomial_membership(&b, &t(&[0, 1, 6]), &terms).unwrap().unwrap();
        assert_eq!(alpha, vec![0, 0, 2, 1]);
        let alpha2 = monomial_membership(&b, &t(&[5, 1, 1]), &terms).unwrap().unwrap();
        assert_eq!(alpha2, vec![5, 1, 0, 0]);
        // degree parity obstruction
        let none = monomial_membership(&b, &t(&[0, 1, 0]), &[t(&[0, 2, 0])]).unwrap();
        assert!(none.is_none());
    }

    /// Enumeration oracle for membership with bounded exponents.
    fn membership_enumeration(t0: &Term, terms: &[Term], bound: u32) -> bool {
        let s = terms.len();
        let mut stack = vec![vec![]];
        while let Some(v) = stack.pop() {
            if v.len() == s {
                let mut img = Term::one(t0.nvars());
                for (i, &e) in v.iter().enumerate() {
                    img = img.mul(&terms[i].pow(e));
                }
                if &img == t0 {
                    return true;
                }
                continue;
            }
            for e in 0..=bound {
                let mut v2 = v.clone();
                v2.push(e);
                // prune: partial product must divide t0
                let mut img = Term::one(t0.nvars());
                for (i, &ee) in v2.iter().enumerate() {
                    img = img.mul(&terms[i].pow(ee));
                }
                if img.divides(t0) {
                    stack.push(v2);
                }
            }
        }
        false
    }

    #[test]
    fn membership_matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let b = base3();
        for _ in 0..60 {
            let nterms = rng.gen_range(1..=4);
            let terms: Vec<Term> = (0..nterms)
                .map(|_| {
                    loop {
                        let tm = t(&[
                            rng.gen_range(0..3),
                            rng.gen_range(0..3),
                            rng.gen_range(0..3),
                        ]);
                        if !tm.is_one() {
                            return tm;
                        }
                    }
                })
                .collect();
            let t0 = t(&[rng.gen_range(0..6), rng.gen_range(0..6), rng.gen_range(0..6)]);
            let via_toric = monomial_membership(&b, &t0, &terms).unwrap().is_some();
            let via_enum = membership_enumeration(&t0, &terms, 8);
            assert_eq!(via_toric, via_enum, "t0={t0} terms={terms:?}");
        }
    }

    #[test]
    fn truncated_generators() {
        let b = base3();
        let w = Grading::new(vec![vec![0, 1, 1], vec![1, 1, 0]]).unwrap();
        // relation x2*x4 - x3^2 among a1, a1a2, a1a2^2 has W1-degree 4
        let terms = [t(&[1, 0, 0]), t(&[0, 1, 0]), t(&[0, 1, 1]), t(&[0, 1, 2])];
        let below = toric_generators_up_to(&b, &terms, &w, 3).unwrap();
        assert!(below.is_zero());
        let at = toric_generators_up_to(&b, &terms, &w, 4).unwrap();
        assert_eq!(at.binomials.len(), 1);
        let full = toric_ideal(&b, &terms).unwrap();
        let big = toric_generators_up_to(&b, &terms, &w, 50).unwrap();
        let gb1 = crate::groebner::buchberger(&full.ring, &full.binomials);
        let gb2 = crate::groebner::buchberger(&big.ring, &big.binomials);
        assert!(same_ideal(&gb1, &gb2));
    }
}
