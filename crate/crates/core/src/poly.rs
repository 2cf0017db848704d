//! Sparse multivariate polynomials over the integers in the variables
//! `Q = q^{1/2}`, `T = t^{1/2}`, `k`, `u`, `w`.
//!
//! Exponents are packed into a `u64`, twelve bits per variable, so that
//! monomial multiplication is integer addition and the natural integer
//! order is a lexicographic monomial order with `w` most significant.

use crate::int::Int;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

pub const NVARS: usize = 5;
const BITS: u32 = 12;
const FIELD: u64 = (1 << BITS) - 1;
/// Largest exponent a single variable may carry.
pub const MAX_EXP: u32 = FIELD as u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(e: [u32; NVARS]) -> Mono {
        let mut m = 0u64;
        for (i, &x) in e.iter().enumerate() {
            assert!(x <= MAX_EXP, "exponent {x} out of range");
            m |= (x as u64) << (BITS * i as u32);
        }
        Mono(m)
    }

    pub fn var(v: usize, e: u32) -> Mono {
        let mut x = [0; NVARS];
        x[v] = e;
        Mono::from_exps(x)
    }

    #[inline]
    pub fn exp(self, v: usize) -> u32 {
        ((self.0 >> (BITS * v as u32)) & FIELD) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        let mut e = [0; NVARS];
        for (v, x) in e.iter_mut().enumerate() {
            *x = self.exp(v);
        }
        e
    }

    pub fn degree(self) -> u32 {
        (0..NVARS).map(|v| self.exp(v)).sum()
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        debug_assert!((0..NVARS).all(|v| self.exp(v) + o.exp(v) <= MAX_EXP));
        Mono(self.0 + o.0)
    }

    pub fn checked_mul(self, o: Mono) -> Mono {
        for v in 0..NVARS {
            assert!(self.exp(v) + o.exp(v) <= MAX_EXP, "exponent overflow");
        }
        Mono(self.0 + o.0)
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        (0..NVARS).all(|v| self.exp(v) <= o.exp(v))
    }

    #[inline]
    pub fn div(self, d: Mono) -> Mono {
        debug_assert!(d.divides(self));
        Mono(self.0 - d.0)
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (v, x) in e.iter_mut().enumerate() {
            *x = self.exp(v).min(o.exp(v));
        }
        Mono::from_exps(e)
    }

    pub fn lcm(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (v, x) in e.iter_mut().enumerate() {
            *x = self.exp(v).max(o.exp(v));
        }
        Mono::from_exps(e)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Graded order with ties broken lexicographically, `w` most significant.
    pub fn grlex_cmp(self, o: Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.0.cmp(&o.0))
    }

    pub fn var_mask(self) -> u8 {
        let mut m = 0;
        for v in 0..NVARS {
            if self.exp(v) > 0 {
                m |= 1 << v;
            }
        }
        m
    }
}

/// Terms sorted by ascending monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, Int)>,
}

fn merge(a: &[(Mono, Int)], b: &[(Mono, Int)], negate_b: bool) -> Vec<(Mono, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn monomial(m: Mono, c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(mut t: Vec<(Mono, Int)>) -> Poly {
        t.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += &c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|x| !x.1.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Int> {
        if self.terms.is_empty() {
            Some(Int::ZERO)
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(Mono, Int) {
        self.terms.last().expect("lead of zero polynomial")
    }

    /// Leading term under the graded order.
    pub fn grlex_lead(&self) -> &(Mono, Int) {
        self.terms
            .iter()
            .max_by(|a, b| a.0.grlex_cmp(b.0))
            .expect("lead of zero polynomial")
    }

    pub fn var_mask(&self) -> u8 {
        self.terms.iter().fold(0, |m, t| m | t.0.var_mask())
    }

    pub fn max_exps(&self) -> [u32; NVARS] {
        let mut e = [0; NVARS];
        for (m, _) in &self.terms {
            for (v, x) in e.iter_mut().enumerate() {
                *x = (*x).max(m.exp(v));
            }
        }
        e
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Mono::ONE,
        };
        it.fold(first, |g, t| g.gcd(t.0))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly {
            terms: merge(&self.terms, &o.terms, false),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        Poly {
            terms: merge(&self.terms, &o.terms, true),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn div_int(&self, c: &Int) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.div_exact(c))).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.checked_mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn div_mono(&self, m: Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(x, c)| (x.div(m), c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: Mono, c: &Int) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(x, y)| (x.checked_mul(m), y * c))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.len() <= o.len() {
            (self, o)
        } else {
            (o, self)
        };
        if a.len() == 1 {
            return b.mul_term(a.terms[0].0, &a.terms[0].1);
        }
        let ea = a.max_exps();
        let eb = b.max_exps();
        for v in 0..NVARS {
            assert!(ea[v] + eb[v] <= MAX_EXP, "exponent overflow in product");
        }
        // Each row is sorted; merge rows pairwise.
        let mut rows: Vec<Vec<(Mono, Int)>> = a
            .terms
            .iter()
            .map(|(m, c)| b.terms.iter().map(|(x, y)| (x.mul(*m), y * c)).collect())
            .collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len() / 2 + 1);
            let mut it = rows.into_iter();
            while let Some(r1) = it.next() {
                match it.next() {
                    Some(r2) => next.push(merge(&r1, &r2, false)),
                    None => next.push(r1),
                }
            }
            rows = next;
        }
        Poly {
            terms: rows.pop().unwrap(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.len());
            for (x, y) in &self.terms {
                if !m.divides(*x) || !c.divides(y) {
                    return None;
                }
                out.push((x.div(*m), y.div_exact(c)));
            }
            return Some(Poly { terms: out });
        }
        // Heap division in descending monomial order.
        let (lm, lc) = d.lead().clone();
        let dn = d.terms.len();
        // d terms in descending order, excluding the leading one.
        let drest: Vec<&(Mono, Int)> = d.terms.iter().rev().skip(1).collect();
        let mut quot: Vec<(Mono, Int)> = Vec::new();
        let mut heap: BinaryHeap<(Mono, usize, usize)> = BinaryHeap::new();
        let mut ai = self.terms.len();
        loop {
            let next_a = if ai > 0 { Some(self.terms[ai - 1].0) } else { None };
            let next_h = heap.peek().map(|e| e.0);
            let cur = match (next_a, next_h) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(h)) => h,
                (Some(a), Some(h)) => a.max(h),
            };
            let mut coef = Int::ZERO;
            if next_a == Some(cur) {
                coef = self.terms[ai - 1].1.clone();
                ai -= 1;
            }
            while let Some(&(m, qi, dj)) = heap.peek() {
                if m != cur {
                    break;
                }
                heap.pop();
                let prod = &quot[qi].1 * &drest[dj].1;
                coef -= &prod;
                if dj + 1 < dn - 1 {
                    heap.push((quot[qi].0.mul(drest[dj + 1].0), qi, dj + 1));
                }
            }
            if coef.is_zero() {
                continue;
            }
            if !lm.divides(cur) || !lc.divides(&coef) {
                return None;
            }
            let qm = cur.div(lm);
            let qc = coef.div_exact(&lc);
            quot.push((qm, qc));
            let qi = quot.len() - 1;
            heap.push((qm.mul(drest[0].0), qi, 0));
        }
        quot.reverse();
        Some(Poly { terms: quot })
    }

    /// Coefficients with respect to variable `v`: `(exponent, coefficient)`.
    pub fn coeffs_in(&self, v: usize) -> Vec<(u32, Poly)> {
        let mut groups: std::collections::BTreeMap<u32, Vec<(Mono, Int)>> = Default::default();
        let shift = Mono::var(v, 1);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = Mono(m.0 - shift.0 * e as u64);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, t)| (e, Poly::from_terms(t)))
            .collect()
    }

    /// Evaluates all variables at the given residues modulo `p`.
    pub fn eval_mod(&self, point: &[u64; NVARS], p: u64) -> u64 {
        let mut tables: Vec<Vec<u64>> = Vec::with_capacity(NVARS);
        let maxe = self.max_exps();
        for v in 0..NVARS {
            let mut t = Vec::with_capacity(maxe[v] as usize + 1);
            let mut x = 1u64;
            for _ in 0..=maxe[v] {
                t.push(x);
                x = crate::modp::mul(x, point[v], p);
            }
            tables.push(t);
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut x = c.mod_u64(p);
            for (v, tv) in tables.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    x = crate::modp::mul(x, tv[e as usize], p);
                }
            }
            acc = crate::modp::add(acc, x, p);
        }
        acc
    }

    /// Dense image in variable `v` after evaluating the others at `point`.
    pub fn univariate_image(&self, v: usize, point: &[u64; NVARS], p: u64) -> Vec<u64> {
        let maxe = self.max_exps();
        let mut tables: Vec<Vec<u64>> = Vec::with_capacity(NVARS);
        for w in 0..NVARS {
            let n = if w == v { 1 } else { maxe[w] as usize + 1 };
            let mut t = Vec::with_capacity(n);
            let mut x = 1u64;
            for _ in 0..n {
                t.push(x);
                x = crate::modp::mul(x, point[w], p);
            }
            tables.push(t);
        }
        let mut out = vec![0u64; maxe[v] as usize + 1];
        for (m, c) in &self.terms {
            let mut x = c.mod_u64(p);
            for (w, tw) in tables.iter().enumerate() {
                if w == v {
                    continue;
                }
                let e = m.exp(w);
                if e > 0 {
                    x = crate::modp::mul(x, tw[e as usize], p);
                }
            }
            let e = m.exp(v) as usize;
            out[e] = crate::modp::add(out[e], x, p);
        }
        crate::modp::trim(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize, e: u32) -> Poly {
        Poly::monomial(Mono::var(v, e), Int::ONE)
    }

    #[test]
    fn product_and_quotient() {
        let a = x(0, 1).add(&x(1, 2)).add(&Poly::constant(Int::from(3)));
        let b = x(0, 2).sub(&x(2, 1).mul(&x(1, 1)));
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        let c = b.add(&Poly::one());
        assert_eq!(ab.div_exact(&c), None);
    }

    #[test]
    fn coefficient_split() {
        let a = x(0, 2).mul(&x(1, 1)).add(&x(1, 3)).add(&x(0, 2));
        let cs = a.coeffs_in(0);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].0, 2);
        assert_eq!(cs[1].1, x(1, 1).add(&Poly::one()));
    }
}
