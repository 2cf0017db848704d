//! Multivariate polynomial gcd over the integers.
//!
//! Images modulo word-sized primes are computed with Brown's dense
//! interpolation algorithm and combined by Chinese remaindering. A candidate
//! is accepted only after it divides both inputs exactly over `Z`.

use crate::int::{crt_sym, Int};
use crate::modp::{self, UPoly, PRIMES};
use crate::poly::{Mono, Poly, NVARS};
use num_bigint::BigInt;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

type MP = Vec<(Mono, u64)>;

fn to_mp(a: &Poly, p: u64) -> MP {
    a.terms
        .iter()
        .filter_map(|(m, c)| {
            let r = c.mod_u64(p);
            (r != 0).then_some((*m, r))
        })
        .collect()
}

fn mask(a: &MP) -> u8 {
    a.iter().fold(0, |m, t| m | t.0.var_mask())
}

fn mp_monic(mut a: MP, p: u64) -> MP {
    if let Some(&(_, l)) = a.last() {
        if l != 1 {
            let il = modp::inv(l, p);
            for t in a.iter_mut() {
                t.1 = modp::mul(t.1, il, p);
            }
        }
    }
    a
}

fn strip_var(m: Mono, x: usize) -> (Mono, usize) {
    let e = m.exp(x);
    (Mono(m.0 - Mono::var(x, 1).0 * e as u64), e as usize)
}

fn group_by(a: &MP, x: usize) -> BTreeMap<Mono, UPoly> {
    let mut g: BTreeMap<Mono, UPoly> = BTreeMap::new();
    for &(m, c) in a {
        let (r, e) = strip_var(m, x);
        let u = g.entry(r).or_default();
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = c;
    }
    g
}

fn ungroup(g: &BTreeMap<Mono, UPoly>, x: usize) -> MP {
    let mut out = Vec::new();
    for (r, u) in g {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                out.push((r.mul(Mono::var(x, e as u32)), c));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn eval_var(a: &MP, x: usize, alpha: u64, p: u64) -> MP {
    let mut g: BTreeMap<Mono, u64> = BTreeMap::new();
    for &(m, c) in a {
        let (r, e) = strip_var(m, x);
        let v = modp::mul(c, modp::pow(alpha, e as u64, p), p);
        let s = g.entry(r).or_insert(0);
        *s = modp::add(*s, v, p);
    }
    g.into_iter().filter(|t| t.1 != 0).collect()
}

fn lowest_only_var(a: u8, b: u8) -> Option<usize> {
    (0..NVARS).find(|&v| a & (1 << v) != 0 && b & (1 << v) == 0)
}

/// Monic gcd of two polynomials modulo `p`.
fn pgcd(a: &MP, b: &MP, p: u64, rng: &mut SmallRng) -> MP {
    if a.is_empty() {
        return mp_monic(b.clone(), p);
    }
    if b.is_empty() {
        return mp_monic(a.clone(), p);
    }
    let (va, vb) = (mask(a), mask(b));
    if va == 0 || vb == 0 {
        return vec![(Mono::ONE, 1)];
    }
    if let Some(x) = lowest_only_var(va, vb) {
        return pgcd_split(a, b, x, p, rng);
    }
    if let Some(x) = lowest_only_var(vb, va) {
        return pgcd_split(b, a, x, p, rng);
    }
    let vars: Vec<usize> = (0..NVARS).filter(|&v| va & (1 << v) != 0).collect();
    if vars.len() == 1 {
        let x = vars[0];
        let ua = group_by(a, x).remove(&Mono::ONE).unwrap();
        let ub = group_by(b, x).remove(&Mono::ONE).unwrap();
        let g = modp::gcd(&ua, &ub, p);
        let mut m = BTreeMap::new();
        m.insert(Mono::ONE, g);
        return ungroup(&m, x);
    }
    let x = *vars.last().unwrap();
    let ga = group_by(a, x);
    let gb = group_by(b, x);
    let cont = |g: &BTreeMap<Mono, UPoly>| {
        let mut c: UPoly = Vec::new();
        for u in g.values() {
            c = modp::gcd(&c, u, p);
            if c.len() == 1 {
                break;
            }
        }
        c
    };
    let ca = cont(&ga);
    let cb = cont(&gb);
    let c = modp::gcd(&ca, &cb, p);
    let div_all = |g: BTreeMap<Mono, UPoly>, d: &UPoly| -> BTreeMap<Mono, UPoly> {
        if d.len() == 1 {
            return g;
        }
        g.into_iter()
            .map(|(m, u)| (m, modp::div_exact(&u, d, p).expect("content divides")))
            .collect()
    };
    let ga = div_all(ga, &ca);
    let gb = div_all(gb, &cb);
    let a1 = ungroup(&ga, x);
    let b1 = ungroup(&gb, x);
    let la = ga.iter().next_back().unwrap().1.clone();
    let lb = gb.iter().next_back().unwrap().1.clone();
    let g = modp::gcd(&la, &lb, p);
    let dega = ga.values().map(|u| u.len() - 1).max().unwrap();
    let degb = gb.values().map(|u| u.len() - 1).max().unwrap();
    let bound = dega.min(degb) + g.len() - 1;

    let mut h: BTreeMap<Mono, UPoly> = BTreeMap::new();
    let mut lm = Mono(u64::MAX);
    let mut modulus: UPoly = vec![1];
    let mut npts = 0usize;
    loop {
        let alpha = rng.gen_range(1..p);
        if modp::eval(&la, alpha, p) == 0 || modp::eval(&lb, alpha, p) == 0 {
            continue;
        }
        let ia = eval_var(&a1, x, alpha, p);
        let ib = eval_var(&b1, x, alpha, p);
        let mut hi = pgcd(&ia, &ib, p, rng);
        let him = hi.last().unwrap().0;
        if him.is_one() {
            let mut m = BTreeMap::new();
            m.insert(Mono::ONE, c);
            return mp_monic(ungroup(&m, x), p);
        }
        let s = modp::eval(&g, alpha, p);
        for t in hi.iter_mut() {
            t.1 = modp::mul(t.1, s, p);
        }
        match him.cmp(&lm) {
            std::cmp::Ordering::Greater => continue,
            std::cmp::Ordering::Less => {
                h = hi.iter().map(|&(m, c)| (m, vec![c])).collect();
                lm = him;
                modulus = vec![modp::sub(0, alpha, p), 1];
                npts = 1;
            }
            std::cmp::Ordering::Equal => {
                let w = modp::inv(modp::eval(&modulus, alpha, p), p);
                let mut keys: Vec<Mono> = h.keys().copied().collect();
                keys.extend(hi.iter().map(|t| t.0));
                keys.sort();
                keys.dedup();
                let hm: BTreeMap<Mono, u64> = hi.into_iter().collect();
                for k in keys {
                    let u = h.entry(k).or_default();
                    let old = modp::eval(u, alpha, p);
                    let new = hm.get(&k).copied().unwrap_or(0);
                    let d = modp::mul(modp::sub(new, old, p), w, p);
                    if d != 0 {
                        if u.len() < modulus.len() {
                            u.resize(modulus.len(), 0);
                        }
                        for (i, &mc) in modulus.iter().enumerate() {
                            u[i] = modp::add(u[i], modp::mul(d, mc, p), p);
                        }
                        modp::trim(u);
                    }
                }
                h.retain(|_, u| !u.is_empty());
                modulus = modp::mul_poly(&modulus, &[modp::sub(0, alpha, p), 1], p);
                npts += 1;
            }
        }
        if npts > bound {
            let hc = cont(&h);
            let hp = div_all(h.clone(), &hc);
            let res: BTreeMap<Mono, UPoly> = hp
                .into_iter()
                .map(|(m, u)| (m, modp::mul_poly(&u, &c, p)))
                .collect();
            return mp_monic(ungroup(&res, x), p);
        }
    }
}

/// gcd when `x` occurs in `a` but not in `b`.
fn pgcd_split(a: &MP, b: &MP, x: usize, p: u64, rng: &mut SmallRng) -> MP {
    let mut g = b.clone();
    // Collect the coefficients of `a` with respect to `x`.
    let mut by_exp: BTreeMap<u32, MP> = BTreeMap::new();
    for &(m, c) in a {
        let (r, e) = strip_var(m, x);
        by_exp.entry(e as u32).or_default().push((r, c));
    }
    for (_, mut c) in by_exp {
        c.sort_by(|s, t| s.0.cmp(&t.0));
        g = pgcd(&g, &c, p, rng);
        if g.len() == 1 && g[0].0.is_one() {
            break;
        }
    }
    g
}

fn lift(a: &MP, p: u64) -> BTreeMap<Mono, BigInt> {
    let half = p / 2;
    a.iter()
        .map(|&(m, c)| {
            let v = if c > half {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            };
            (m, v)
        })
        .collect()
}

fn from_big(h: &BTreeMap<Mono, BigInt>) -> Poly {
    Poly {
        terms: h
            .iter()
            .filter(|t| t.1 != &BigInt::from(0))
            .map(|(m, c)| (*m, Int::from(c.clone())))
            .collect(),
    }
}

/// Divides out the integer content and makes the leading coefficient positive.
pub fn primitive(a: &Poly) -> Poly {
    if a.is_zero() {
        return a.clone();
    }
    let c = a.content();
    let c = if a.lead().1.is_negative() { -&c } else { c };
    a.div_int(&c)
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return primitive_sign(b);
    }
    if b.is_zero() {
        return primitive_sign(a);
    }
    let ic = a.content().gcd(&b.content());
    let mc = a.mono_content().gcd(b.mono_content());
    let scale = Poly::monomial(mc, ic);
    let pa = primitive(&a.div_mono(a.mono_content()));
    let pb = primitive(&b.div_mono(b.mono_content()));
    scale.mul(&gcd_primitive(&pa, &pb))
}

fn primitive_sign(a: &Poly) -> Poly {
    if a.lead().1.is_negative() {
        a.neg()
    } else {
        a.clone()
    }
}

/// gcd of primitive polynomials without monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    let (va, vb) = (a.var_mask(), b.var_mask());
    for (x, y, v) in [(a, b, lowest_only_var(va, vb)), (b, a, lowest_only_var(vb, va))] {
        if let Some(v) = v {
            let mut g = y.clone();
            for (_, c) in x.coeffs_in(v) {
                g = gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return primitive(&g.div_mono(g.mono_content()));
        }
    }
    let seed = a.len() as u64 * 1_000_003 + b.len() as u64;
    let mut rng = SmallRng::seed_from_u64(seed);
    if quick_coprime(a, b, &mut rng) {
        return Poly::one();
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    let lca = a.lead().1.clone();
    let lcb = b.lead().1.clone();
    let g = lca.gcd(&lcb);
    let mut h: Option<BTreeMap<Mono, BigInt>> = None;
    let mut modulus = BigInt::from(1);
    let mut lm = Mono(u64::MAX);
    for &p in PRIMES.iter() {
        if lca.mod_u64(p) == 0 || lcb.mod_u64(p) == 0 {
            continue;
        }
        let mut hp = pgcd(&to_mp(a, p), &to_mp(b, p), p, &mut rng);
        let him = hp.last().unwrap().0;
        if him.is_one() {
            return Poly::one();
        }
        let s = g.mod_u64(p);
        for t in hp.iter_mut() {
            t.1 = modp::mul(t.1, s, p);
        }
        if him > lm {
            continue;
        }
        if him < lm || h.is_none() {
            lm = him;
            h = Some(lift(&hp, p));
            modulus = BigInt::from(p);
            continue;
        }
        let old = h.take().unwrap();
        let hm: BTreeMap<Mono, u64> = hp.into_iter().collect();
        let mut keys: Vec<Mono> = old.keys().copied().collect();
        keys.extend(hm.keys().copied());
        keys.sort();
        keys.dedup();
        let zero = BigInt::from(0);
        let mut new = BTreeMap::new();
        for k in keys {
            let x = old.get(&k).unwrap_or(&zero);
            let r = hm.get(&k).copied().unwrap_or(0);
            new.insert(k, crt_sym(x, &modulus, r, p));
        }
        modulus *= BigInt::from(p);
        let stable = new == old;
        h = Some(new);
        if stable {
            let cand = primitive(&from_big(h.as_ref().unwrap()));
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        }
    }
    panic!("modular gcd did not converge");
}

/// True when a univariate image shows the gcd cannot involve any variable.
fn quick_coprime(a: &Poly, b: &Poly, rng: &mut SmallRng) -> bool {
    let p = PRIMES[PRIMES.len() - 1];
    let mut point = [0u64; NVARS];
    for x in point.iter_mut() {
        *x = rng.gen_range(2..p);
    }
    let common = a.var_mask() & b.var_mask();
    for v in 0..NVARS {
        if common & (1 << v) == 0 {
            continue;
        }
        let ia = a.univariate_image(v, &point, p);
        let ib = b.univariate_image(v, &point, p);
        if ia.len() as u32 != a.degree_in(v) + 1 || ib.len() as u32 != b.degree_in(v) + 1 {
            return false;
        }
        if modp::gcd(&ia, &ib, p).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::monomial(Mono::var(i, 1), Int::ONE)
    }

    fn c(x: i64) -> Poly {
        Poly::constant(Int::from(x))
    }

    #[test]
    fn common_factor_recovered() {
        let g = v(0).mul(&v(1)).sub(&c(1)).add(&v(2).mul(&v(2)));
        let a = g.mul(&v(0).add(&c(3)));
        let b = g.mul(&v(1).sub(&v(3).mul(&c(2))));
        assert_eq!(gcd(&a, &b), primitive(&g));
    }

    #[test]
    fn coprime_inputs() {
        let a = v(0).add(&v(1));
        let b = v(0).sub(&v(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn contents_combine() {
        let a = v(0).mul(&c(6)).mul(&v(1).add(&c(1)));
        let b = v(0).mul(&v(0)).mul(&c(4)).mul(&v(1).add(&c(1)));
        assert_eq!(gcd(&a, &b), v(0).mul(&c(2)).mul(&v(1).add(&c(1))));
    }
}
