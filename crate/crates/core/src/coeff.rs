//! Exact elements of `Q(q, t, k, u, w)` with half-integer powers of `q`, `t`.
//!
//! A value is a numerator polynomial over a denominator kept in factored
//! form against the global factor registry. Values are always reduced, so
//! the expanded serialization is canonical.

use crate::error::CoeffError;
use crate::factor::{self, FactorId, FactorList};
use crate::gcd::gcd;
use crate::int::Int;
use crate::poly::{Mono, Poly, NVARS};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The field generators in serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    K,
    U,
    W,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::T, Var::K, Var::U, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["q", "t", "k", "u", "w"][self.index()]
    }

    /// `q` and `t` are stored through their square roots.
    pub fn is_halved(self) -> bool {
        matches!(self, Var::Q | Var::T)
    }
}

impl std::str::FromStr for Var {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Var, CoeffError> {
        match s {
            "q" => Ok(Var::Q),
            "t" => Ok(Var::T),
            "k" => Ok(Var::K),
            "u" => Ok(Var::U),
            "w" => Ok(Var::W),
            _ => Err(CoeffError::Parse(format!("unknown variable {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Den {
    pub int: Int,
    pub mono: Mono,
    pub facs: FactorList,
}

impl Den {
    pub fn one() -> Den {
        Den {
            int: Int::ONE,
            mono: Mono::ONE,
            facs: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.int.is_one() && self.mono.is_one() && self.facs.is_empty()
    }

    pub fn expand(&self) -> Poly {
        let mut p = Poly::monomial(self.mono, self.int.clone());
        for (f, (_, e)) in factor::factors(&self.facs).iter().zip(&self.facs) {
            p = p.mul(&f.poly.pow(*e));
        }
        p
    }

    fn lcm(&self, o: &Den) -> Den {
        let g = self.int.gcd(&o.int);
        let int = (&self.int * &o.int).div_exact(&g);
        let mut facs = Vec::new();
        let (a, b) = (&self.facs, &o.facs);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                facs.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                facs.push(b[j]);
                j += 1;
            } else {
                facs.push((a[i].0, a[i].1.max(b[j].1)));
                i += 1;
                j += 1;
            }
        }
        Den {
            int,
            mono: self.mono.lcm(o.mono),
            facs,
        }
    }

    /// The polynomial `l / self` for a multiple `l` of `self`.
    fn cofactor(&self, l: &Den) -> Poly {
        let mut p = Poly::monomial(l.mono.div(self.mono), l.int.div_exact(&self.int));
        let mut j = 0;
        let fs = factor::factors(&l.facs);
        for (k, &(id, e)) in l.facs.iter().enumerate() {
            while j < self.facs.len() && self.facs[j].0 < id {
                j += 1;
            }
            let have = if j < self.facs.len() && self.facs[j].0 == id {
                self.facs[j].1
            } else {
                0
            };
            if e > have {
                p = p.mul(&fs[k].poly.pow(e - have));
            }
        }
        p
    }

    fn mul(&self, o: &Den) -> Den {
        Den {
            int: &self.int * &o.int,
            mono: self.mono.checked_mul(o.mono),
            facs: factor::merge(&self.facs, &o.facs),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Coeff {
    num: Poly,
    den: Den,
}

impl Default for Coeff {
    fn default() -> Coeff {
        Coeff::zero()
    }
}

/// Removes every common factor of `num` and `den`. When `only` is given,
/// only those registered factors are tested.
fn reduce(mut num: Poly, mut den: Den, only: Option<&[FactorId]>) -> Coeff {
    if num.is_zero() {
        return Coeff::zero();
    }
    den.facs = factor::expand(&den.facs);
    let g = num.content().gcd(&den.int);
    if !g.is_one() {
        num = num.div_int(&g);
        den.int = den.int.div_exact(&g);
    }
    let m = num.mono_content().gcd(den.mono);
    if !m.is_one() {
        num = num.div_mono(m);
        den.mono = den.mono.div(m);
    }
    if den.facs.is_empty() {
        return Coeff { num, den };
    }
    let fs = factor::factors(&den.facs);
    let mut images: [Option<Vec<u64>>; NVARS] = Default::default();
    let mut out: FactorList = Vec::with_capacity(den.facs.len());
    for (k, &(id, mut e)) in den.facs.iter().enumerate() {
        if let Some(o) = only {
            if !o.contains(&id) {
                out.push((id, e));
                continue;
            }
        }
        let f = &fs[k];
        while e > 0 && !num.is_constant() {
            if f.irreducible {
                if !factor::pretest(&num, f, &mut images) {
                    break;
                }
                match num.div_exact(&f.poly) {
                    Some(q) => {
                        num = q;
                        images = Default::default();
                        e -= 1;
                    }
                    None => break,
                }
            } else {
                let h = factor::normalize_sign(gcd(&num, &f.poly));
                if h.is_constant() {
                    break;
                }
                if h == f.poly {
                    num = num.div_exact(&f.poly).unwrap();
                    images = Default::default();
                    e -= 1;
                } else {
                    factor::refine(id, h);
                    out.push((id, e));
                    out.extend_from_slice(&den.facs[k + 1..]);
                    den.facs = factor::expand(&out);
                    return reduce(num, den, None);
                }
            }
        }
        if e > 0 {
            out.push((id, e));
        }
    }
    den.facs = out;
    Coeff { num, den }
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff {
            num: Poly::zero(),
            den: Den::one(),
        }
    }

    pub fn one() -> Coeff {
        Coeff::from_int(1)
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff::from_poly(Poly::constant(Int::from(n)))
    }

    pub fn from_big(n: Int) -> Coeff {
        Coeff::from_poly(Poly::constant(n))
    }

    pub fn from_poly(p: Poly) -> Coeff {
        Coeff {
            num: p,
            den: Den::one(),
        }
    }

    /// `n / d` for integers.
    pub fn rational(n: i64, d: i64) -> Coeff {
        Coeff::from_int(n).div(&Coeff::from_int(d)).expect("nonzero denominator")
    }

    /// `num / den` for polynomials.
    pub fn ratio(num: Poly, den: &Poly) -> Result<Coeff, CoeffError> {
        Coeff::from_poly(num).div(&Coeff::from_poly(den.clone()))
    }

    pub fn var(v: Var) -> Coeff {
        let e = if v.is_halved() { 2 } else { 1 };
        Coeff::from_poly(Poly::monomial(Mono::var(v.index(), e), Int::ONE))
    }

    pub fn q() -> Coeff {
        Coeff::var(Var::Q)
    }
    pub fn t() -> Coeff {
        Coeff::var(Var::T)
    }
    pub fn k() -> Coeff {
        Coeff::var(Var::K)
    }
    pub fn u() -> Coeff {
        Coeff::var(Var::U)
    }
    pub fn w() -> Coeff {
        Coeff::var(Var::W)
    }

    /// Laurent monomial with exponents given in the doubled convention for
    /// `q`, `t` (so `[1, 0, 0, 0, 0]` is `q^{1/2}`).
    pub fn monomial(exps: [i64; NVARS]) -> Coeff {
        Coeff::monomial_scaled(Int::ONE, exps)
    }

    pub fn monomial_scaled(c: Int, exps: [i64; NVARS]) -> Coeff {
        let mut pos = [0u32; NVARS];
        let mut neg = [0u32; NVARS];
        for v in 0..NVARS {
            if exps[v] >= 0 {
                pos[v] = exps[v] as u32;
            } else {
                neg[v] = (-exps[v]) as u32;
            }
        }
        reduce(
            Poly::monomial(Mono::from_exps(pos), c),
            Den {
                int: Int::ONE,
                mono: Mono::from_exps(neg),
                facs: Vec::new(),
            },
            None,
        )
    }

    /// `q^a t^b` with integer exponents.
    pub fn qt(a: i64, b: i64) -> Coeff {
        Coeff::monomial([2 * a, 2 * b, 0, 0, 0])
    }

    /// `(q/t)^{n/2}`.
    pub fn half_power_qt(n: i64) -> Coeff {
        Coeff::monomial([n, -n, 0, 0, 0])
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Den {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Rough size: numerator terms plus denominator factor count.
    pub fn size_hint(&self) -> usize {
        self.num.len() + self.den.facs.iter().map(|&(_, e)| e as usize).sum::<usize>()
    }

    /// The integer value, if this is an integer.
    pub fn as_int(&self) -> Option<Int> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return reduce(self.num.add(&o.num), self.den.clone(), None);
        }
        self.add_general(o, false)
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.neg();
        }
        if self.den == o.den {
            return reduce(self.num.sub(&o.num), self.den.clone(), None);
        }
        self.add_general(o, true)
    }

    fn add_general(&self, o: &Coeff, negate: bool) -> Coeff {
        let (a, b) = (
            Coeff {
                num: self.num.clone(),
                den: Den {
                    facs: factor::expand(&self.den.facs),
                    ..self.den.clone()
                },
            },
            Coeff {
                num: o.num.clone(),
                den: Den {
                    facs: factor::expand(&o.den.facs),
                    ..o.den.clone()
                },
            },
        );
        let l = a.den.lcm(&b.den);
        let x = a.num.mul(&a.den.cofactor(&l));
        let y = b.num.mul(&b.den.cofactor(&l));
        let num = if negate { x.sub(&y) } else { x.add(&y) };
        // Only factors with equal exponents on both sides can cancel.
        let common: Vec<FactorId> = a
            .den
            .facs
            .iter()
            .filter(|f| b.den.facs.contains(f))
            .map(|f| f.0)
            .collect();
        reduce(num, l, Some(&common))
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Coeff::from_poly(self.num.mul(&o.num));
        }
        let x = reduce(self.num.clone(), o.den.clone(), None);
        let y = reduce(o.num.clone(), self.den.clone(), None);
        Coeff {
            num: x.num.mul(&y.num),
            den: x.den.mul(&y.den),
        }
    }

    pub fn inv(&self) -> Result<Coeff, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let (c, m, facs) = factor::factorize(&self.num);
        let mut num = self.den.expand();
        let int = if c.is_negative() {
            num = num.neg();
            c.abs()
        } else {
            c
        };
        Ok(Coeff {
            num,
            den: Den {
                int,
                mono: m,
                facs,
            },
        })
    }

    pub fn div(&self, o: &Coeff) -> Result<Coeff, CoeffError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Coeff, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = Coeff::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(r)
    }

    /// `self^e` for `e >= 0`.
    pub fn powu(&self, e: u32) -> Coeff {
        self.pow(e as i64).expect("nonnegative power")
    }

    pub fn scale_int(&self, c: i64) -> Coeff {
        self.mul(&Coeff::from_int(c))
    }

    /// Largest exponent of `v` (doubled for `q`, `t`) in numerator or denominator.
    pub fn has_half_exponents(&self) -> bool {
        let den = self.den.expand();
        [&self.num, &den].iter().any(|p| {
            p.terms
                .iter()
                .any(|(m, _)| m.exp(0) % 2 == 1 || m.exp(1) % 2 == 1)
        })
    }

    pub fn mentions(&self, v: Var) -> bool {
        let bit = 1u8 << v.index();
        self.num.var_mask() & bit != 0
            || self.den.mono.var_mask() & bit != 0
            || factor::factors(&self.den.facs)
                .iter()
                .any(|f| f.poly.var_mask() & bit != 0)
    }

    /// Simultaneous substitution of field elements for generators.
    pub fn substitute(&self, bindings: &[(Var, Coeff)]) -> Result<Coeff, CoeffError> {
        let mut subs: [Option<Sub>; NVARS] = Default::default();
        for (v, c) in bindings {
            subs[v.index()] = Some(Sub::new(*v, c));
        }
        let num = eval_poly(&self.num, &subs)?;
        let mut den = Coeff::from_big(self.den.int.clone());
        den = den.mul(&eval_poly(&Poly::monomial(self.den.mono, Int::ONE), &subs)?);
        for (f, (_, e)) in factor::factors(&self.den.facs).iter().zip(&self.den.facs) {
            let img = eval_poly(&f.poly, &subs)?;
            den = den.mul(&img.powu(*e));
        }
        if den.is_zero() {
            return Err(CoeffError::VanishingDenominator);
        }
        num.div(&den)
    }

    pub fn to_json(&self) -> CoeffJson {
        CoeffJson {
            num: terms_json(&self.num),
            den: terms_json(&self.den.expand()),
        }
    }

    pub fn from_json(j: &CoeffJson) -> Result<Coeff, CoeffError> {
        let num = laurent_from_json(&j.num)?;
        let den = laurent_from_json(&j.den)?;
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        num.div(&den)
    }
}

/// How a single generator is replaced during substitution.
#[derive(Clone)]
struct Sub {
    var: Var,
    value: Coeff,
    /// A square root of `value` when it is a monomial with even exponents.
    root: Option<Coeff>,
}

impl Sub {
    fn new(var: Var, value: &Coeff) -> Sub {
        let root = if var.is_halved() { monomial_root(value) } else { None };
        Sub {
            var,
            value: value.clone(),
            root,
        }
    }

    /// Image of the stored generator to the power `e`.
    fn power(&self, e: u32) -> Result<Coeff, CoeffError> {
        if !self.var.is_halved() {
            return Ok(self.value.powu(e));
        }
        if let Some(r) = &self.root {
            return Ok(r.powu(e));
        }
        if e % 2 == 0 {
            Ok(self.value.powu(e / 2))
        } else {
            Err(CoeffError::HalfExponent(self.var.name().to_string()))
        }
    }
}

fn monomial_root(c: &Coeff) -> Option<Coeff> {
    if c.num.len() != 1 || !c.den.facs.is_empty() || !c.den.int.is_one() {
        return None;
    }
    let (m, k) = &c.num.terms[0];
    if !k.is_one() {
        return None;
    }
    let mut ex = [0i64; NVARS];
    for (v, x) in ex.iter_mut().enumerate() {
        let e = m.exp(v) as i64 - c.den.mono.exp(v) as i64;
        if e % 2 != 0 {
            return None;
        }
        *x = e / 2;
    }
    Some(Coeff::monomial(ex))
}

fn eval_poly(p: &Poly, subs: &[Option<Sub>; NVARS]) -> Result<Coeff, CoeffError> {
    let monomial_only = subs.iter().flatten().all(|s| {
        s.value.num.len() == 1
            && s.value.den.facs.is_empty()
            && (!s.var.is_halved() || s.root.is_some())
    });
    if monomial_only {
        // Laurent image term by term, then one division by the shift.
        let mut terms: Vec<([i64; NVARS], Int)> = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            let mut ex = [0i64; NVARS];
            let mut coef = c.clone();
            for v in 0..NVARS {
                let e = m.exp(v) as i64;
                if e == 0 {
                    continue;
                }
                match &subs[v] {
                    None => ex[v] += e,
                    Some(s) => {
                        let img = s.root.as_ref().unwrap_or(&s.value);
                        let (im, ic) = &img.num.terms[0];
                        coef = &coef * &ic.pow(e as u32);
                        for (w, x) in ex.iter_mut().enumerate() {
                            *x += e * (im.exp(w) as i64 - img.den.mono.exp(w) as i64);
                        }
                        if !img.den.int.is_one() {
                            return eval_generic(p, subs);
                        }
                    }
                }
            }
            terms.push((ex, coef));
        }
        let mut low = [0i64; NVARS];
        for (ex, _) in &terms {
            for v in 0..NVARS {
                low[v] = low[v].min(ex[v]);
            }
        }
        let poly = Poly::from_terms(
            terms
                .into_iter()
                .map(|(ex, c)| {
                    let mut e = [0u32; NVARS];
                    for v in 0..NVARS {
                        e[v] = (ex[v] - low[v]) as u32;
                    }
                    (Mono::from_exps(e), c)
                })
                .collect(),
        );
        let shift = Coeff::monomial(low);
        return Ok(Coeff::from_poly(poly).mul(&shift));
    }
    eval_generic(p, subs)
}

fn eval_generic(p: &Poly, subs: &[Option<Sub>; NVARS]) -> Result<Coeff, CoeffError> {
    let mut cache: Vec<Vec<Option<Coeff>>> = vec![Vec::new(); NVARS];
    let mut acc = Coeff::zero();
    for (m, c) in &p.terms {
        let mut term = Coeff::from_big(c.clone());
        let mut free = [0u32; NVARS];
        for v in 0..NVARS {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            match &subs[v] {
                None => free[v] = e,
                Some(s) => {
                    let cv = &mut cache[v];
                    if cv.len() <= e as usize {
                        cv.resize(e as usize + 1, None);
                    }
                    if cv[e as usize].is_none() {
                        cv[e as usize] = Some(s.power(e)?);
                    }
                    term = term.mul(cv[e as usize].as_ref().unwrap());
                }
            }
        }
        let fm = Coeff::from_poly(Poly::monomial(Mono::from_exps(free), Int::ONE));
        acc = acc.add(&term.mul(&fm));
    }
    Ok(acc)
}

impl PartialEq for Coeff {
    fn eq(&self, o: &Coeff) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.sub(o).is_zero()
    }
}

impl Eq for Coeff {}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $f(self, o: &Coeff) -> Coeff {
                Coeff::$m(self, o)
            }
        }
        impl std::ops::$tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $f(self, o: Coeff) -> Coeff {
                Coeff::$m(&self, &o)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::neg(self)
    }
}

impl std::ops::Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::neg(&self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: [i64; NVARS],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}

/// Terms in decreasing graded order.
fn sorted_terms(p: &Poly) -> Vec<&(Mono, Int)> {
    let mut t: Vec<&(Mono, Int)> = p.terms.iter().collect();
    t.sort_by(|a, b| b.0.grlex_cmp(a.0));
    t
}

fn terms_json(p: &Poly) -> Vec<TermJson> {
    sorted_terms(p)
        .into_iter()
        .map(|(m, c)| {
            let ex = m.exps();
            TermJson {
                c: c.to_string(),
                e: [
                    ex[0] as i64,
                    ex[1] as i64,
                    ex[2] as i64,
                    ex[3] as i64,
                    ex[4] as i64,
                ],
            }
        })
        .collect()
}

fn laurent_from_json(ts: &[TermJson]) -> Result<Coeff, CoeffError> {
    let mut acc = Coeff::zero();
    for t in ts {
        let c: Int = t
            .c
            .parse()
            .map_err(|_| CoeffError::Parse(format!("bad integer {:?}", t.c)))?;
        for (v, &e) in t.e.iter().enumerate() {
            if v >= 2 && e < 0 {
                return Err(CoeffError::Parse("negative exponent on k, u or w".into()));
            }
            if e.abs() > crate::poly::MAX_EXP as i64 {
                return Err(CoeffError::Parse("exponent out of range".into()));
            }
        }
        acc = acc.add(&Coeff::monomial_scaled(c, t.e));
    }
    Ok(acc)
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Coeff, D::Error> {
        let j = CoeffJson::deserialize(d)?;
        Coeff::from_json(&j).map_err(serde::de::Error::custom)
    }
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m.exp(v.index());
        if e == 0 {
            continue;
        }
        let s = if v.is_halved() {
            if e % 2 == 0 {
                if e == 2 {
                    v.name().to_string()
                } else {
                    format!("{}^{}", v.name(), e / 2)
                }
            } else {
                format!("{}^({}/2)", v.name(), e)
            }
        } else if e == 1 {
            v.name().to_string()
        } else {
            format!("{}^{}", v.name(), e)
        };
        parts.push(s);
    }
    parts.join("*")
}

pub fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in sorted_terms(p).into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let ms = fmt_mono(*m);
        if ms.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&ms);
        } else {
            s.push_str(&format!("{a}*{ms}"));
        }
    }
    s
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_poly(&self.num);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = fmt_poly(&self.den.expand());
        let wrap = |s: String, p: &Poly| {
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den.expand()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coeff {
        Coeff::from_int(n)
    }

    #[test]
    fn cancels_common_factor() {
        let q = Coeff::q();
        let a = (c(1) - q.powu(2)).div(&(c(1) - q.clone())).unwrap();
        assert_eq!(a.num().len(), 2);
        assert!(a.den().is_one());
        assert_eq!(a, c(1) + q);
    }

    #[test]
    fn common_denominator() {
        let (q, t) = (Coeff::q(), Coeff::t());
        let a = c(1).div(&(c(1) - q.clone())).unwrap();
        let b = c(1).div(&(c(1) - t.clone())).unwrap();
        let s = &a + &b;
        let expect = (c(2) - q.clone() - t.clone())
            .div(&((c(1) - q) * (c(1) - t)))
            .unwrap();
        assert_eq!(s, expect);
        assert_eq!(s.to_json(), expect.to_json());
    }

    #[test]
    fn half_powers() {
        let h = Coeff::half_power_qt(1);
        assert_eq!(h.powu(2), Coeff::q().div(&Coeff::t()).unwrap());
        assert!(Coeff::half_power_qt(0).is_one());
        assert!(h.has_half_exponents());
    }

    #[test]
    fn json_round_trip() {
        let (q, t, k) = (Coeff::q(), Coeff::t(), Coeff::k());
        let x = k
            .div(&((c(1) - k.powu(2) * q.clone() / t.clone()) * (c(1) - q)))
            .unwrap();
        let j = serde_json::to_string(&x).unwrap();
        let y: Coeff = serde_json::from_str(&j).unwrap();
        assert_eq!(serde_json::to_string(&y).unwrap(), j);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(c(1).div(&c(0)), Err(CoeffError::DivisionByZero)));
    }
}

impl std::ops::Div<Coeff> for Coeff {
    type Output = Coeff;
    /// Panics on division by zero; use [`Coeff::div`] for the checked form.
    fn div(self, o: Coeff) -> Coeff {
        Coeff::div(&self, &o).expect("division by zero")
    }
}

impl std::ops::Div<&Coeff> for &Coeff {
    type Output = Coeff;
    fn div(self, o: &Coeff) -> Coeff {
        Coeff::div(self, o).expect("division by zero")
    }
}
