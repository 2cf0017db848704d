//! Global registry of denominator factors.
//!
//! Every active factor is primitive, has no monomial content and a positive
//! leading coefficient in graded order. Active factors are pairwise coprime,
//! so a denominator is determined by the exponents it assigns to them.
//! Factors known to be irreducible are tested by trial division; the rest
//! are handled with gcds and split further when a common part turns up.

use crate::gcd::gcd;
use crate::int::Int;
use crate::modp::{self, PRIMES};
use crate::poly::{Mono, Poly, NVARS};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use std::collections::HashMap;
use std::sync::Arc;

pub type FactorId = u32;
/// Factor exponents sorted by id.
pub type FactorList = Vec<(FactorId, u32)>;

pub(crate) const PRETEST_P: u64 = PRIMES[1];

pub(crate) static POINT: Lazy<[u64; NVARS]> = Lazy::new(|| {
    let mut rng = SmallRng::seed_from_u64(0x5eed_cafe);
    let mut pt = [0u64; NVARS];
    for x in pt.iter_mut() {
        *x = rng.gen_range(2..PRETEST_P);
    }
    pt
});

#[derive(Debug)]
pub struct Factor {
    pub poly: Poly,
    pub irreducible: bool,
    /// Variable used for the modular divisibility pretest.
    pub var: usize,
    /// Image in `var` at the fixed point, when its degree is preserved.
    pub image: Option<Vec<u64>>,
}

impl Factor {
    fn new(poly: Poly, irreducible: bool) -> Factor {
        let d = poly.max_exps();
        let var = (0..NVARS)
            .filter(|&v| d[v] > 0)
            .min_by_key(|&v| d[v])
            .expect("nonconstant factor");
        let img = poly.univariate_image(var, &POINT, PRETEST_P);
        let image = (img.len() as u32 == d[var] + 1).then_some(img);
        Factor {
            poly,
            irreducible,
            var,
            image,
        }
    }
}

#[derive(Default)]
struct Registry {
    factors: Vec<Arc<Factor>>,
    /// Refinement of factors that turned out to be composite.
    split: HashMap<FactorId, FactorList>,
    /// Memoized factorizations of normalized polynomials.
    memo: HashMap<Poly, FactorList>,
    cyclo: HashMap<u32, Poly>,
}

static REGISTRY: Lazy<RwLock<Registry>> = Lazy::new(|| RwLock::new(Registry::default()));

pub fn factor(id: FactorId) -> Arc<Factor> {
    REGISTRY.read().factors[id as usize].clone()
}

pub fn factors(ids: &[(FactorId, u32)]) -> Vec<Arc<Factor>> {
    let r = REGISTRY.read();
    ids.iter().map(|&(i, _)| r.factors[i as usize].clone()).collect()
}

pub fn merge(a: &[(FactorId, u32)], b: &[(FactorId, u32)]) -> FactorList {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn scale_list(a: &[(FactorId, u32)], e: u32) -> FactorList {
    a.iter().map(|&(i, x)| (i, x * e)).collect()
}

impl Registry {
    fn expand(&self, list: &[(FactorId, u32)]) -> FactorList {
        if list.iter().all(|(i, _)| !self.split.contains_key(i)) {
            return list.to_vec();
        }
        let mut out = Vec::new();
        for &(i, e) in list {
            match self.split.get(&i) {
                Some(s) => out = merge(&out, &scale_list(&self.expand(s), e)),
                None => out = merge(&out, &[(i, e)]),
            }
        }
        out
    }

    fn cyclotomic(&mut self, d: u32) -> Poly {
        if let Some(p) = self.cyclo.get(&d) {
            return p.clone();
        }
        let x = |e: u32| Poly::monomial(Mono::var(0, e), Int::ONE);
        let mut p = x(d).sub(&Poly::one());
        for e in 1..d {
            if d % e == 0 {
                let c = self.cyclotomic(e);
                p = p.div_exact(&c).expect("cyclotomic division");
            }
        }
        self.cyclo.insert(d, p.clone());
        p
    }

    /// Upgrades a factor first met through the general path.
    fn mark_irreducible(&mut self, id: FactorId) {
        let f = &self.factors[id as usize];
        if f.irreducible {
            return;
        }
        let poly = f.poly.clone();
        self.factors[id as usize] = Arc::new(Factor::new(poly, true));
    }

    fn add_factor(&mut self, poly: Poly, irreducible: bool) -> FactorId {
        let id = self.factors.len() as FactorId;
        self.factors.push(Arc::new(Factor::new(poly.clone(), irreducible)));
        self.memo.insert(poly.clone(), vec![(id, 1)]);
        if irreducible {
            // An older general factor may contain the new one.
            let general: Vec<FactorId> = (0..id)
                .filter(|i| !self.split.contains_key(i) && !self.factors[*i as usize].irreducible)
                .collect();
            for g in general {
                let gp = self.factors[g as usize].poly.clone();
                if let Some(q) = divide_repeatedly(&gp, &poly) {
                    let (rest, e) = q;
                    self.split.insert(g, Vec::new());
                    let mut list = vec![(id, e)];
                    list = merge(&list, &self.factor_normalized(rest));
                    self.split.insert(g, list);
                }
            }
        }
        id
    }

    /// Factors a primitive polynomial with positive graded leading
    /// coefficient and no monomial content.
    fn factor_normalized(&mut self, f: Poly) -> FactorList {
        if f.is_constant() {
            return Vec::new();
        }
        if let Some(l) = self.memo.get(&f) {
            return self.expand(l);
        }
        let res = if f.len() == 2 && f.terms.iter().all(|t| t.1.abs().is_one()) {
            self.binomial(&f)
        } else {
            self.general(f.clone())
        };
        let res = self.expand(&res);
        self.memo.insert(f, res.clone());
        res
    }

    fn binomial(&mut self, f: &Poly) -> FactorList {
        let (m1, c1) = f.terms[0].clone();
        let (m2, c2) = f.terms[1].clone();
        let plus = c1 == c2;
        let mut pos = [0u32; NVARS];
        let mut neg = [0u32; NVARS];
        let mut g = 0u32;
        for v in 0..NVARS {
            let d = m2.exp(v) as i64 - m1.exp(v) as i64;
            if d > 0 {
                pos[v] = d as u32;
            } else {
                neg[v] = (-d) as u32;
            }
            g = num_integer::gcd(g, d.unsigned_abs() as u32);
        }
        for v in 0..NVARS {
            pos[v] /= g;
            neg[v] /= g;
        }
        let zp = Mono::from_exps(pos);
        let zn = Mono::from_exps(neg);
        let ds: Vec<u32> = if plus {
            (1..=2 * g).filter(|d| (2 * g) % d == 0 && g % d != 0).collect()
        } else {
            (1..=g).filter(|d| g % d == 0).collect()
        };
        let mut out = Vec::new();
        for d in ds {
            let phi = self.cyclotomic(d);
            let deg = phi.degree_in(0);
            let mut terms = Vec::new();
            for (m, c) in &phi.terms {
                let i = m.exp(0);
                let mono = Mono(zp.0 * i as u64 + zn.0 * (deg - i) as u64);
                terms.push((mono, c.clone()));
            }
            let p = normalize_sign(Poly::from_terms(terms));
            let id = match self.memo.get(&p) {
                Some(l) => {
                    let l = self.expand(l);
                    if let [(id, 1)] = l[..] {
                        self.mark_irreducible(id);
                    }
                    out = merge(&out, &l);
                    continue;
                }
                None => self.add_factor(p, true),
            };
            out = merge(&out, &[(id, 1)]);
        }
        out
    }

    fn general(&mut self, f: Poly) -> FactorList {
        let mut rest = f;
        let mut out: FactorList = Vec::new();
        let mask = rest.var_mask();
        let degs = rest.max_exps();
        let mut images: [Option<Vec<u64>>; NVARS] = Default::default();
        let n = self.factors.len();
        for id in 0..n as FactorId {
            if self.split.contains_key(&id) {
                continue;
            }
            let fac = self.factors[id as usize].clone();
            if !fac.irreducible || fac.poly.var_mask() & !mask != 0 {
                continue;
            }
            let fd = fac.poly.max_exps();
            if (0..NVARS).any(|v| fd[v] > degs[v]) {
                continue;
            }
            let mut e = 0;
            loop {
                if rest.is_constant() {
                    break;
                }
                if !pretest(&rest, &fac, &mut images) {
                    break;
                }
                match rest.div_exact(&fac.poly) {
                    Some(q) => {
                        rest = q;
                        images = Default::default();
                        e += 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out = merge(&out, &[(id, e)]);
            }
        }
        if rest.is_constant() {
            return out;
        }
        let rest = normalize_sign(rest);
        if let Some(l) = self.memo.get(&rest) {
            let l = self.expand(l);
            return merge(&out, &l);
        }
        // Coprimality with the general factors.
        for id in 0..self.factors.len() as FactorId {
            if self.split.contains_key(&id) || self.factors[id as usize].irreducible {
                continue;
            }
            let gp = self.factors[id as usize].poly.clone();
            let h = gcd(&rest, &gp);
            if h.is_constant() {
                continue;
            }
            let h = normalize_sign(h);
            if h == gp {
                let (q, e) = divide_repeatedly(&rest, &gp).unwrap();
                out = merge(&out, &[(id, e)]);
                return merge(&out, &self.factor_normalized(normalize_sign(q)));
            }
            let co = gp.div_exact(&h).unwrap();
            self.split.insert(id, Vec::new());
            let mut list = self.factor_normalized(h);
            list = merge(&list, &self.factor_normalized(normalize_sign(co)));
            self.split.insert(id, list);
            return merge(&out, &self.factor_normalized(rest));
        }
        let irr = provably_irreducible(&rest);
        let id = self.add_factor(rest, irr);
        merge(&out, &[(id, 1)])
    }

    fn refine(&mut self, id: FactorId, part: Poly) {
        if self.split.contains_key(&id) {
            return;
        }
        let gp = self.factors[id as usize].poly.clone();
        let part = normalize_sign(part);
        if part.is_constant() || part == gp {
            return;
        }
        let co = gp.div_exact(&part).expect("refinement must divide");
        self.split.insert(id, Vec::new());
        let mut list = self.factor_normalized(part);
        list = merge(&list, &self.factor_normalized(normalize_sign(co)));
        self.split.insert(id, list);
    }
}

/// Divides by `d` as often as possible; `None` if `d` does not divide `f`.
fn divide_repeatedly(f: &Poly, d: &Poly) -> Option<(Poly, u32)> {
    let mut q = f.div_exact(d)?;
    let mut e = 1;
    while let Some(x) = q.div_exact(d) {
        q = x;
        e += 1;
    }
    Some((q, e))
}

/// Degree one in some variable with coprime coefficients.
fn provably_irreducible(f: &Poly) -> bool {
    for v in 0..NVARS {
        if f.degree_in(v) == 1 {
            let cs = f.coeffs_in(v);
            if cs.len() == 2 && gcd(&cs[0].1, &cs[1].1).is_constant() {
                return true;
            }
        }
    }
    false
}

/// Makes the leading coefficient in graded order positive.
pub fn normalize_sign(f: Poly) -> Poly {
    if f.is_zero() || !f.grlex_lead().1.is_negative() {
        f
    } else {
        f.neg()
    }
}

/// Cheap modular necessary condition for `fac` dividing `f`.
pub(crate) fn pretest(f: &Poly, fac: &Factor, images: &mut [Option<Vec<u64>>; NVARS]) -> bool {
    let fi = match &fac.image {
        Some(i) => i,
        None => return true,
    };
    let v = fac.var;
    if images[v].is_none() {
        images[v] = Some(f.univariate_image(v, &POINT, PRETEST_P));
    }
    let img = images[v].as_ref().unwrap();
    if img.is_empty() {
        return true;
    }
    if img.len() < fi.len() {
        return false;
    }
    modp::rem(img, fi, PRETEST_P).is_empty()
}

/// Splits a nonzero polynomial into sign, integer content, monomial content
/// and registered factors.
pub fn factorize(f: &Poly) -> (Int, Mono, FactorList) {
    assert!(!f.is_zero());
    let m = f.mono_content();
    let g = f.div_mono(m);
    let c = g.content();
    let g = g.div_int(&c);
    let (g, c) = if g.is_zero() || !g.grlex_lead().1.is_negative() {
        (g, c)
    } else {
        (g.neg(), -&c)
    };
    if g.is_constant() {
        return (c, m, Vec::new());
    }
    {
        let r = REGISTRY.read();
        if let Some(l) = r.memo.get(&g) {
            return (c, m, r.expand(l));
        }
    }
    let list = REGISTRY.write().factor_normalized(g);
    (c, m, list)
}

/// Replaces composite factors by their refinements.
pub fn expand(list: &[(FactorId, u32)]) -> FactorList {
    REGISTRY.read().expand(list)
}

pub fn is_split(id: FactorId) -> bool {
    REGISTRY.read().split.contains_key(&id)
}

/// Records that `part` is a proper divisor of general factor `id`.
pub fn refine(id: FactorId, part: Poly) {
    REGISTRY.write().refine(id, part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, e: u32) -> Poly {
        Poly::monomial(Mono::var(i, e), Int::ONE)
    }

    #[test]
    fn binomial_splits_cyclotomically() {
        // 1 - Q^6 = (1-Q)(1+Q)(1+Q+Q^2)(1-Q+Q^2)
        let f = Poly::one().sub(&v(0, 6));
        let (c, m, l) = factorize(&f);
        assert_eq!(c, Int::from(-1));
        assert!(m.is_one());
        assert_eq!(l.len(), 4);
        let mut prod = Poly::one();
        for (id, e) in &l {
            prod = prod.mul(&factor(*id).poly.pow(*e));
            assert!(factor(*id).irreducible);
        }
        assert_eq!(prod.neg(), f);
    }

    #[test]
    fn laurent_binomial() {
        // Q^2 - T^4 = (Q - T^2)(Q + T^2)
        let f = v(0, 2).sub(&v(1, 4));
        let (_, _, l) = factorize(&f);
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn general_factors_stay_coprime() {
        let a = v(0, 1).add(&v(1, 1)).add(&v(2, 2));
        let b = v(0, 2).add(&v(2, 1)).add(&Poly::one());
        let (_, _, l1) = factorize(&a.mul(&b));
        let (_, _, l2) = factorize(&a);
        let l1 = expand(&l1);
        assert!(l2.iter().all(|x| l1.contains(x)));
    }
}
