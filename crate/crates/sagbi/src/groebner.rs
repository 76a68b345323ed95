//! Buchberger engine for matrix orderings: normal forms, reduced Groebner
//! bases, degree-truncated bases for homogeneous input, and elimination
//! ideals.

use std::collections::BinaryHeap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Grading, PolyRing, Polynomial, Term};

/// A Groebner basis with its ambient ring; `reduced` marks the unique
/// monic interreduced basis of the ideal for the ring's ordering.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, &self.elements).is_zero()
    }
}

/// Fully reduced remainder of `f` modulo the list `basis`: no term of the
/// result is divisible by any leading term of the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut work = f.clone();
    let mut out: Vec<(Term, crate::coeff::FieldElement)> = Vec::new();
    'outer: while !work.is_zero() {
        let (t, c) = {
            let (t, c) = work.leading().unwrap();
            (t.clone(), c.clone())
        };
        for b in basis {
            if b.is_zero() {
                continue;
            }
            let (bt, bc) = b.leading().unwrap();
            if let Some(q) = bt.checked_div(&t) {
                let qc = &c / bc;
                work = work.sub(&b.mul_monomial(&q, &qc));
                continue 'outer;
            }
        }
        out.push((t.clone(), c.clone()));
        work = work.sub(&Polynomial::monomial(&ring, t, c));
    }
    // peeled in strictly descending order, so `out` is already normalized
    Polynomial::from_terms(&ring, out)
}

/// S-polynomial with both inputs made monic.
fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (ft, fc) = f.leading().unwrap();
    let (gt, gc) = g.leading().unwrap();
    let l = ft.lcm(gt);
    let uf = ft.checked_div(&l).unwrap();
    let ug = gt.checked_div(&l).unwrap();
    let one = f.ring().field().one();
    let cf = &one / fc;
    let cg = &one / gc;
    f.mul_monomial(&uf, &cf).sub(&g.mul_monomial(&ug, &cg))
}

#[derive(PartialEq, Eq)]
struct Pair {
    key: Vec<i64>, // ordering image of the lcm, for the normal strategy
    i: usize,
    j: usize,
    lcm: Term,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; reverse for smallest-lcm-first
        other
            .key
            .cmp(&self.key)
            .then_with(|| (other.i, other.j).cmp(&(self.i, self.j)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct BuchbergerRun<'a> {
    ring: Arc<PolyRing>,
    degree_bound: Option<(&'a [i64], i64)>,
}

impl<'a> BuchbergerRun<'a> {
    fn run(&self, gens: &[Polynomial]) -> Vec<Polynomial> {
        let mut basis: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !g.is_zero() {
                basis.push(g.make_monic());
            }
        }
        // light pre-interreduction keeps the pair set small
        basis = interreduce(&basis);

        let ord = self.ring.ordering().clone();
        let mut pairs = BinaryHeap::new();
        let mut push_pairs = |pairs: &mut BinaryHeap<Pair>, basis: &[Polynomial], k: usize| {
            let ltk = basis[k].leading_term().unwrap().clone();
            for i in 0..k {
                let lti = basis[i].leading_term().unwrap();
                let lcm = lti.lcm(&ltk);
                if let Some((w, d)) = self.degree_bound {
                    if crate::ring::grading::dot(w, lcm.exponents()) > d {
                        continue;
                    }
                }
                pairs.push(Pair {
                    key: ord.key(&lcm),
                    i,
                    j: k,
                    lcm,
                });
            }
        };
        for k in 0..basis.len() {
            push_pairs(&mut pairs, &basis, k);
        }

        let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        while let Some(Pair { i, j, lcm, .. }) = pairs.pop() {
            done.insert((i, j));
            let lti = basis[i].leading_term().unwrap();
            let ltj = basis[j].leading_term().unwrap();
            // product criterion
            if lti.is_coprime(ltj) {
                continue;
            }
            // chain criterion: some k with LT(k) | lcm(i,j) and both
            // subordinate pairs already handled
            let chain = (0..basis.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let ltk = basis[k].leading_term().unwrap();
                if !ltk.divides(&lcm) {
                    return false;
                }
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                done.contains(&p1) && done.contains(&p2)
            });
            if chain {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j]);
            let r = normal_form(&s, &basis);
            if !r.is_zero() {
                basis.push(r.make_monic());
                let k = basis.len() - 1;
                push_pairs(&mut pairs, &basis, k);
            }
        }
        reduce_basis(basis)
    }
}

/// Removes elements with leading term divisible by another element's leading
/// term and fully tail-reduces the survivors; output sorted ascending.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.retain(|p| !p.is_zero());
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lti = basis[i].leading_term().unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let ltj = basis[j].leading_term().unwrap();
            if ltj.divides(&lti) && (!lti.divides(ltj) || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let survivors: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    let mut out = Vec::with_capacity(survivors.len());
    for i in 0..survivors.len() {
        let others: Vec<Polynomial> = survivors
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != i).then(|| p.clone()))
            .collect();
        let r = normal_form(&survivors[i], &others).make_monic();
        if !r.is_zero() {
            out.push(r);
        }
    }
    sort_by_leading(&mut out);
    out
}

fn interreduce(basis: &[Polynomial]) -> Vec<Polynomial> {
    let mut cur: Vec<Polynomial> = basis.to_vec();
    loop {
        let mut changed = false;
        let mut next: Vec<Polynomial> = Vec::with_capacity(cur.len());
        for i in 0..cur.len() {
            let others: Vec<Polynomial> = cur
                .iter()
                .enumerate()
                .filter_map(|(j, p)| (j != i && !p.is_zero()).then(|| p.clone()))
                .collect();
            let r = normal_form(&cur[i], &others);
            if r != cur[i] {
                changed = true;
            }
            if !r.is_zero() {
                next.push(r.make_monic());
            }
        }
        cur = next;
        if !changed {
            break;
        }
    }
    cur
}

pub(crate) fn sort_by_leading(polys: &mut [Polynomial]) {
    polys.sort_by(|a, b| {
        let ord = a.ring().ordering();
        ord.compare(
            a.leading_term().unwrap(),
            b.leading_term().unwrap(),
        )
    });
}

/// Reduced Groebner basis of the ideal generated by `gens` under the ring's
/// ordering.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> GroebnerBasis {
    let run = BuchbergerRun {
        ring: ring.clone(),
        degree_bound: None,
    };
    GroebnerBasis {
        ring: ring.clone(),
        elements: run.run(gens),
        reduced: true,
    }
}

/// Degree-truncated basis for homogeneous input: S-pairs whose lcm exceeds
/// degree `d` under the first row of `w` are skipped, and elements of degree
/// greater than `d` are omitted from the output. The result is a Groebner
/// basis "up to degree d".
pub fn truncated_buchberger(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    w: &Grading,
    d: i64,
) -> Result<GroebnerBasis> {
    let row = &w.rows()[0];
    for g in gens {
        if !g.is_homogeneous(&Grading::single_row(row.clone())?) {
            return Err(Error::NotHomogeneous);
        }
    }
    let run = BuchbergerRun {
        ring: ring.clone(),
        degree_bound: Some((row.as_slice(), d)),
    };
    let mut elements = run.run(gens);
    elements.retain(|p| {
        crate::ring::grading::dot(row, p.leading_term().unwrap().exponents()) <= d
    });
    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements,
        reduced: true,
    })
}

/// Generators of the elimination ideal `<B> ∩ K[keep]`: exactly the basis
/// elements supported on `keep`. Requires that every basis element whose
/// leading term avoids the eliminated variables is itself supported on
/// `keep`; this is what a correct elimination (or degree-refined elimination
/// on homogeneous input) ordering guarantees.
pub fn elimination_ideal(basis: &GroebnerBasis, keep: &[bool]) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for b in basis.elements() {
        let lt = b.leading_term()?;
        let lt_in_keep = lt
            .exponents()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || keep[i]);
        if lt_in_keep {
            if !b.supported_on(keep) {
                return Err(Error::OrderingNotEliminating);
            }
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// Ideal equality test via mutual normal-form reduction.
pub fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.elements().iter().all(|p| b.contains(p)) && b.elements().iter().all(|p| a.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::problem::parse_polynomial;
    use crate::ring::TermOrdering;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            Field::Rational,
            TermOrdering::degrevlex(vars.len()),
            None,
        )
        .unwrap()
    }

    fn polys(r: &Arc<PolyRing>, srcs: &[&str]) -> Vec<Polynomial> {
        srcs.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    #[test]
    fn single_monomial() {
        let r = ring(&["x1", "x2"]);
        let gb = buchberger(&r, &polys(&r, &["x1"]));
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.elements()[0], parse_polynomial(&r, "x1").unwrap());
    }

    #[test]
    fn redundant_generator() {
        let r = ring(&["x1", "x2"]);
        let f = parse_polynomial(&r, "x1^2 + x2").unwrap();
        let h = parse_polynomial(&r, "x2^3 + x1").unwrap();
        let gb1 = buchberger(&r, &[f.clone()]);
        let gb2 = buchberger(&r, &[f.clone(), f.mul(&h)]);
        assert_eq!(gb1.elements(), gb2.elements());
    }

    #[test]
    fn normal_form_zero() {
        let r = ring(&["x1", "x2"]);
        let gb = buchberger(&r, &polys(&r, &["x1^2 - x2"]));
        assert!(normal_form(&Polynomial::zero(&r), gb.elements()).is_zero());
    }

    #[test]
    fn nf_self_consistency() {
        let r = ring(&["x1", "x2", "x3"]);
        let gens = polys(&r, &["x1^2 - x2*x3", "x1*x2 - x3^2"]);
        let gb = buchberger(&r, &gens);
        let f = parse_polynomial(&r, "x1^3*x2 - 2*x2*x3 + 5").unwrap();
        let nf = normal_form(&f, gb.elements());
        assert!(gb.contains(&f.sub(&nf)));
        // no term of nf divisible by a basis leading term
        for (t, _) in nf.terms() {
            for b in gb.elements() {
                assert!(!b.leading_term().unwrap().divides(t));
            }
        }
    }

    #[test]
    fn generator_order_invariance() {
        let r = ring(&["x1", "x2", "x3"]);
        let gens = polys(
            &r,
            &["x1^2 - x2", "x2^2 - x3", "x1*x3 - x2*x3 + x1"],
        );
        let gb1 = buchberger(&r, &gens);
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![2, 1, 0],
            vec![1, 2, 0],
        ];
        for p in perms {
            let permuted: Vec<Polynomial> = p.iter().map(|&i| gens[i].clone()).collect();
            let gb2 = buchberger(&r, &permuted);
            assert_eq!(gb1.elements(), gb2.elements());
        }
    }

    /// Brute-force membership oracle: f in <gens> iff f = sum h_i g_i with
    /// deg h_i bounded, solved by linear algebra over the rationals.
    fn member_linear_algebra(
        f: &Polynomial,
        gens: &[Polynomial],
        hdeg: u64,
    ) -> bool {
        use crate::coeff::FieldElement;
        use num_rational::BigRational;
        use num_traits::Zero;
        let r = f.ring().clone();
        let n = r.nvars();
        // enumerate multiplier terms up to total degree hdeg
        let mut cols: Vec<Polynomial> = Vec::new();
        let mut terms = vec![Term::one(n)];
        let mut frontier = vec![Term::one(n)];
        for _ in 0..hdeg {
            let mut next = Vec::new();
            for t in &frontier {
                for v in 0..n {
                    let nt = t.mul(&Term::variable(n, v));
                    if !terms.contains(&nt) {
                        terms.push(nt.clone());
                        next.push(nt);
                    }
                }
            }
            frontier = next;
        }
        for g in gens {
            for t in &terms {
                cols.push(g.mul_monomial(t, &r.field().one()));
            }
        }
        // collect the support of everything
        let mut support: Vec<Term> = Vec::new();
        for p in cols.iter().chain(std::iter::once(f)) {
            for (t, _) in p.terms() {
                if !support.contains(t) {
                    support.push(t.clone());
                }
            }
        }
        let get = |p: &Polynomial, t: &Term| -> BigRational {
            for (s, c) in p.terms() {
                if s == t {
                    match c {
                        FieldElement::Rational(q) => return q.clone(),
                        _ => unreachable!(),
                    }
                }
            }
            BigRational::zero()
        };
        // Gaussian elimination on [cols | f]
        let rows = support.len();
        let ncols = cols.len();
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    cols.iter().map(|c| get(c, &support[i])).collect();
                row.push(get(f, &support[i]));
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..ncols {
            if pivot_row >= rows {
                break;
            }
            let Some(pr) = (pivot_row..rows).find(|&ri| !m[ri][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, pr);
            let inv = m[pivot_row][col].clone();
            for x in m[pivot_row].iter_mut() {
                *x /= inv.clone();
            }
            for ri in 0..rows {
                if ri != pivot_row && !m[ri][col].is_zero() {
                    let c = m[ri][col].clone();
                    let pivot = m[pivot_row].clone();
                    for (x, p) in m[ri].iter_mut().zip(&pivot) {
                        *x -= &c * p;
                    }
                }
            }
            pivot_row += 1;
        }
        // consistent iff no row 0 = nonzero
        !(0..rows).any(|ri| {
            m[ri][..ncols].iter().all(|x| x.is_zero()) && !m[ri][ncols].is_zero()
        })
    }

    #[test]
    fn membership_oracle_agreement() {
        let r = ring(&["x1", "x2"]);
        let gens = polys(&r, &["x1^2 - x2", "x1*x2 - x1"]);
        let gb = buchberger(&r, &gens);
        let cases = [
            ("x1^3 - x1", true, 2u64),
            ("x1^2*x2 - x2^2", true, 2),
            ("x1", false, 3),
            ("x2 - 1", false, 3),
            ("x1^4 - 2*x1^2*x2 + x2^2", true, 2),
        ];
        for (src, _, hdeg) in cases {
            let f = parse_polynomial(&r, src).unwrap();
            let via_nf = gb.contains(&f);
            let via_la = member_linear_algebra(&f, &gens, hdeg);
            assert_eq!(via_nf, via_la, "disagreement on {src}");
        }
    }

    #[test]
    fn truncated_matches_full_when_vacuous() {
        let r = ring(&["x1", "x2", "x3"]);
        let gens = polys(&r, &["x1*x2 - x3^2", "x1^2 - x2*x3"]);
        let w = Grading::standard(3);
        let full = buchberger(&r, &gens);
        let max_deg = full
            .elements()
            .iter()
            .map(|p| p.leading_term().unwrap().total_degree() as i64)
            .max()
            .unwrap();
        let trunc = truncated_buchberger(&r, &gens, &w, max_deg + 2).unwrap();
        assert_eq!(full.elements(), trunc.elements());
    }

    #[test]
    fn truncated_degree_zero() {
        let r = ring(&["x1", "x2"]);
        let gens = polys(&r, &["x1 - x2"]);
        let w = Grading::standard(2);
        let trunc = truncated_buchberger(&r, &gens, &w, 0).unwrap();
        assert!(trunc.elements().is_empty());
    }

    #[test]
    fn truncated_rejects_inhomogeneous() {
        let r = ring(&["x1", "x2"]);
        let gens = polys(&r, &["x1 - x2^2"]);
        let w = Grading::standard(2);
        assert!(matches!(
            truncated_buchberger(&r, &gens, &w, 3),
            Err(Error::NotHomogeneous)
        ));
    }
}
