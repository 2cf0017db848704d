//! Symmetric functions in the power-sum basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Var};
use crate::error::{CoeffError, Result};
use crate::int::Int;
use crate::partition::{partitions, Partition};

/// `Σ c_λ p_λ` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, Coeff>,
}

impl SymFunc {
    pub fn zero() -> SymFunc {
        SymFunc::default()
    }

    pub fn one() -> SymFunc {
        SymFunc::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> SymFunc {
        SymFunc::term(Partition::empty(), c)
    }

    pub fn term(lam: Partition, c: Coeff) -> SymFunc {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lam, c);
        }
        SymFunc { terms }
    }

    /// `p_λ`.
    pub fn p(lam: Partition) -> SymFunc {
        SymFunc::term(lam, Coeff::one())
    }

    /// `p_n`.
    pub fn p_n(n: usize) -> SymFunc {
        SymFunc::p(Partition::row(n))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Coeff)>>(it: I) -> SymFunc {
        let mut f = SymFunc::zero();
        for (l, c) in it {
            f.add_term(l, &c);
        }
        f
    }

    pub fn add_term(&mut self, lam: Partition, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&lam) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&lam);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(lam, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> Coeff {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Partition, Coeff> {
        self.terms
    }

    /// Highest degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    /// Degree-`n` component.
    pub fn graded(&self, n: usize) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|l| l.size() == n)
    }

    pub fn add(&self, o: &SymFunc) -> SymFunc {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &SymFunc) -> SymFunc {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), &c.neg());
        }
        r
    }

    pub fn neg(&self) -> SymFunc {
        self.map_coeffs(Coeff::neg)
    }

    pub fn scale(&self, c: &Coeff) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> SymFunc {
        let mut r = SymFunc::zero();
        for (l, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                r.terms.insert(l.clone(), v);
            }
        }
        r
    }

    pub fn try_map_coeffs<F: Fn(&Coeff) -> std::result::Result<Coeff, CoeffError>>(
        &self,
        f: F,
    ) -> std::result::Result<SymFunc, CoeffError> {
        let mut r = SymFunc::zero();
        for (l, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                r.terms.insert(l.clone(), v);
            }
        }
        Ok(r)
    }

    pub fn mul(&self, o: &SymFunc) -> SymFunc {
        let mut r = SymFunc::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(union(a, b), &(x * y));
            }
        }
        r
    }

    /// Multiplication by `p_n`.
    pub fn mul_p(&self, n: usize) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (union(l, &Partition::row(n)), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂p_n`.
    pub fn d_p(&self, n: usize) -> SymFunc {
        let mut r = SymFunc::zero();
        for (l, c) in &self.terms {
            let m = l.parts().iter().filter(|&&x| x == n).count();
            if m == 0 {
                continue;
            }
            let mut v = l.parts().to_vec();
            let pos = v.iter().position(|&x| x == n).unwrap();
            v.remove(pos);
            r.add_term(Partition::from_unsorted(v), &c.scale_int(m as i64));
        }
        r
    }

    /// Algebra endomorphism `p_n ↦ φ(n) p_n`.
    pub fn pleth_diag<F: Fn(usize) -> Coeff>(&self, phi: F) -> SymFunc {
        let mut cache: HashMap<usize, Coeff> = HashMap::new();
        let mut r = SymFunc::zero();
        for (l, c) in &self.terms {
            let mut v = c.clone();
            for &x in l.parts() {
                let f = cache.entry(x).or_insert_with(|| phi(x));
                v = &v * f;
            }
            r.add_term(l.clone(), &v);
        }
        r
    }

    /// `f[X; q, t] ↦ f[X; 1/t, 1/q]`, leaving `k, u, w` alone.
    pub fn iota_swap(&self) -> std::result::Result<SymFunc, CoeffError> {
        let b = iota_bindings();
        self.try_map_coeffs(|c| c.substitute(&b))
    }

    pub fn substitute(&self, b: &[(Var, Coeff)]) -> std::result::Result<SymFunc, CoeffError> {
        self.try_map_coeffs(|c| c.substitute(b))
    }

    /// Ring homomorphism determined by the values of the `p_n`.
    pub fn eval_p<F: Fn(usize) -> Coeff>(&self, pn: F) -> Coeff {
        let mut cache: HashMap<usize, Coeff> = HashMap::new();
        let mut s = Coeff::zero();
        for (l, c) in &self.terms {
            let mut v = c.clone();
            for &x in l.parts() {
                let f = cache.entry(x).or_insert_with(|| pn(x));
                v = &v * f;
            }
            s = &s + &v;
        }
        s
    }

    /// `ε_{u,t}: p_r ↦ (1 - u^r)/(1 - t^r)`.
    pub fn specialize_eps(&self, u: &Coeff) -> Coeff {
        let one = Coeff::one();
        self.eval_p(|r| &(&one - &u.powu(r as u32)) / &(&one - &Coeff::t().powu(r as u32)))
    }

    /// Plethystic evaluation on a finite alphabet.
    pub fn eval_on_alphabet(&self, a: &[Coeff]) -> Coeff {
        self.eval_p(|n| power_sum(a, n))
    }

    pub fn to_json(&self) -> SymFuncJson {
        SymFuncJson {
            basis: "p".into(),
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    partition: l.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SymFuncJson) -> Result<SymFunc> {
        if j.basis != "p" {
            return Err(crate::error::Error::Invalid(format!("unsupported basis {:?}", j.basis)));
        }
        Ok(SymFunc::from_terms(j.terms.iter().map(|t| (t.partition.clone(), t.coeff.clone()))))
    }
}

pub fn iota_bindings() -> Vec<(Var, Coeff)> {
    vec![(Var::Q, Coeff::qt(0, -1)), (Var::T, Coeff::qt(-1, 0))]
}

fn union(a: &Partition, b: &Partition) -> Partition {
    let mut v = Vec::with_capacity(a.len() + b.len());
    let (x, y) = (a.parts(), b.parts());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i] >= y[j]) {
            v.push(x[i]);
            i += 1;
        } else {
            v.push(y[j]);
            j += 1;
        }
    }
    Partition::new(v).expect("merge of partitions")
}

pub fn power_sum(a: &[Coeff], n: usize) -> Coeff {
    let mut s = Coeff::zero();
    for x in a {
        s = &s + &x.powu(n as u32);
    }
    s
}

macro_rules! sf_binop {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr<&SymFunc> for &SymFunc {
            type Output = SymFunc;
            fn $f(self, o: &SymFunc) -> SymFunc {
                SymFunc::$f(self, o)
            }
        }
    };
}
sf_binop!(Add, add);
sf_binop!(Sub, sub);
sf_binop!(Mul, mul);

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (l, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*p{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub partition: Partition,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SymFuncJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SymFunc, D::Error> {
        let j = SymFuncJson::deserialize(d)?;
        SymFunc::from_json(&j).map_err(serde::de::Error::custom)
    }
}

fn z_coeff(l: &Partition) -> Coeff {
    Coeff::from_big(l.z_stat())
}

/// `h_n = Σ p_ρ / z_ρ`.
pub fn complete(n: usize) -> SymFunc {
    SymFunc::from_terms(partitions(n).into_iter().map(|l| {
        let c = Coeff::one().div(&z_coeff(&l)).unwrap();
        (l, c)
    }))
}

/// `e_n = Σ (-1)^{n-ℓ(ρ)} p_ρ / z_ρ`.
pub fn elementary(n: usize) -> SymFunc {
    SymFunc::from_terms(partitions(n).into_iter().map(|l| {
        let sign = if (n - l.len()) % 2 == 0 { 1 } else { -1 };
        let c = Coeff::from_int(sign).div(&z_coeff(&l)).unwrap();
        (l, c)
    }))
}

/// Jacobi–Trudi, using whichever of `λ`, `λ'` is shorter.
pub fn schur(lam: &Partition) -> SymFunc {
    let conj = lam.conjugate();
    let (shape, gen): (&Partition, fn(usize) -> SymFunc) = if conj.len() < lam.len() {
        (&conj, elementary)
    } else {
        (lam, complete)
    };
    let n = shape.len();
    if n == 0 {
        return SymFunc::one();
    }
    let parts = shape.parts();
    let mut cache: HashMap<usize, SymFunc> = HashMap::new();
    let mut entry = |i: usize, j: usize| -> Option<SymFunc> {
        let k = parts[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            return None;
        }
        Some(cache.entry(k as usize).or_insert_with(|| gen(k as usize)).clone())
    };
    // Laplace expansion along rows with column bitmask
    let mut memo: HashMap<(usize, u32), SymFunc> = HashMap::new();
    fn det(
        row: usize,
        used: u32,
        n: usize,
        entry: &mut dyn FnMut(usize, usize) -> Option<SymFunc>,
        memo: &mut HashMap<(usize, u32), SymFunc>,
    ) -> SymFunc {
        if row == n {
            return SymFunc::one();
        }
        if let Some(v) = memo.get(&(row, used)) {
            return v.clone();
        }
        let mut acc = SymFunc::zero();
        let mut sign = 1i64;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            if let Some(e) = entry(row, col) {
                let minor = det(row + 1, used | (1 << col), n, entry, memo);
                let term = e.mul(&minor);
                acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            sign = -sign;
        }
        memo.insert((row, used), acc.clone());
        acc
    }
    det(0, 0, n, &mut entry, &mut memo)
}

/// Integer matrix `M[λ][μ]` = coefficient of `m_μ` in `p_λ`, rows and columns in
/// [`partitions`] order.
pub fn p_to_m_matrix(d: usize) -> Vec<Vec<Int>> {
    let parts = partitions(d);
    parts
        .iter()
        .map(|lam| parts.iter().map(|mu| Int::from(p_in_m(lam, mu) as i64)).collect())
        .collect()
}

/// Number of ways to distribute the parts of `lam` into the slots of `mu` so that
/// slot `j` sums to `mu_j`.
fn p_in_m(lam: &Partition, mu: &Partition) -> u64 {
    fn rec(parts: &[usize], slots: &mut Vec<usize>) -> u64 {
        match parts.split_first() {
            None => slots.iter().all(|&s| s == 0) as u64,
            Some((&x, rest)) => {
                let mut n = 0;
                for j in 0..slots.len() {
                    if slots[j] >= x {
                        slots[j] -= x;
                        n += rec(rest, slots);
                        slots[j] += x;
                    }
                }
                n
            }
        }
    }
    rec(lam.parts(), &mut mu.parts().to_vec())
}

static M_BASIS: Lazy<RwLock<HashMap<usize, Arc<Vec<SymFunc>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Monomial symmetric functions of degree `d` in the p-basis, in [`partitions`] order.
pub fn monomial_basis(d: usize) -> Arc<Vec<SymFunc>> {
    if let Some(v) = M_BASIS.read().get(&d) {
        return v.clone();
    }
    let parts = partitions(d);
    let n = parts.len();
    let m = p_to_m_matrix(d);
    // invert M (p = M m) by Gauss–Jordan over ℚ
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.big())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("p_to_m is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &s;
            inv[col][j] = &inv[col][j] / &s;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &y;
                }
            }
        }
    }
    // m = M^{-1} p, i.e. m_μ = Σ_λ inv[μ][λ] p_λ
    let basis: Vec<SymFunc> = (0..n)
        .map(|mu| {
            SymFunc::from_terms((0..n).map(|l| (parts[l].clone(), rat_coeff(&inv[mu][l]))))
        })
        .collect();
    let v = Arc::new(basis);
    M_BASIS.write().insert(d, v.clone());
    v
}

fn rat_coeff(r: &BigRational) -> Coeff {
    let n = Coeff::from_big(Int::from(r.numer().clone()));
    let d = Coeff::from_big(Int::from(r.denom().clone()));
    n.div(&d).unwrap()
}

/// `m_λ` in the p-basis.
pub fn monomial(lam: &Partition) -> SymFunc {
    let d = lam.size();
    let idx = partitions(d).iter().position(|x| x == lam).unwrap();
    monomial_basis(d)[idx].clone()
}

/// `⟨p_λ, p_λ⟩_{q,t} = z_λ Π (1-q^{λ_i})/(1-t^{λ_i})`.
pub fn p_norm(lam: &Partition) -> Coeff {
    let one = Coeff::one();
    let mut v = z_coeff(lam);
    for &x in lam.parts() {
        let r = &(&one - &Coeff::qt(x as i64, 0)) / &(&one - &Coeff::qt(0, x as i64));
        v = &v * &r;
    }
    v
}

static P_NORMS: Lazy<RwLock<HashMap<Partition, Coeff>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn p_norm_cached(lam: &Partition) -> Coeff {
    if let Some(v) = P_NORMS.read().get(lam) {
        return v.clone();
    }
    let v = p_norm(lam);
    P_NORMS.write().insert(lam.clone(), v.clone());
    v
}

/// Macdonald `(q,t)` inner product.
pub fn inner_product_qt(f: &SymFunc, g: &SymFunc) -> Coeff {
    let mut s = Coeff::zero();
    let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    for (l, c) in small.terms() {
        if let Some(d) = big.terms.get(l) {
            s = &s + &(&(c * d) * &p_norm_cached(l));
        }
    }
    s
}

/// `e_r[Y - X]`: coefficient of `u^r` in `Π(1 + u y)/Π(1 + u x)`.
pub fn eval_e_on_difference(r: usize, plus: &[Coeff], minus: &[Coeff]) -> Coeff {
    elementary(r).eval_p(|n| &power_sum(plus, n) - &power_sum(minus, n))
}

/// `h_r[Y - X]`.
pub fn eval_h_on_difference(r: usize, plus: &[Coeff], minus: &[Coeff]) -> Coeff {
    complete(r).eval_p(|n| &power_sum(plus, n) - &power_sum(minus, n))
}

/// Coefficients `[u^0..u^order]` of `Π_i 1/(1 - u a_i)`.
pub fn h_series(a: &[Coeff], order: usize) -> Vec<Coeff> {
    let mut s = vec![Coeff::zero(); order + 1];
    s[0] = Coeff::one();
    for x in a {
        for r in 1..=order {
            let add = &s[r - 1] * x;
            s[r] = &s[r] + &add;
        }
    }
    s
}

/// `[h_0, ..., h_order]` of the virtual alphabet with the given power sums,
/// from `r h_r = Σ_{n=1}^r p_n h_{r-n}`.
pub fn h_series_from_p<F: Fn(usize) -> Coeff>(pn: F, order: usize) -> Vec<Coeff> {
    let p: Vec<Coeff> = (0..=order).map(|n| if n == 0 { Coeff::zero() } else { pn(n) }).collect();
    let mut h = vec![Coeff::one()];
    for r in 1..=order {
        let mut s = Coeff::zero();
        for n in 1..=r {
            s = &s + &(&p[n] * &h[r - n]);
        }
        h.push(&s / &Coeff::from_int(r as i64));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn newton_low_degree() {
        let half = Coeff::rational(1, 2);
        let p11 = SymFunc::p(pp(&[1, 1]));
        let p2 = SymFunc::p_n(2);
        assert_eq!(elementary(2), p11.sub(&p2).scale(&half));
        assert_eq!(complete(2), p11.add(&p2).scale(&half));
        assert_eq!(schur(&pp(&[1, 1, 1])), elementary(3));
        assert_eq!(schur(&pp(&[3])), complete(3));
    }

    #[test]
    fn p_to_m_degree_two() {
        let m = p_to_m_matrix(2);
        // rows: p2, p11; columns: m2, m11
        assert_eq!(m[0], vec![Int::from(1), Int::from(0)]);
        assert_eq!(m[1], vec![Int::from(1), Int::from(2)]);
    }

    #[test]
    fn monomials_expand_back() {
        for d in 1..=4 {
            let parts = partitions(d);
            let mb = monomial_basis(d);
            let m = p_to_m_matrix(d);
            for (i, lam) in parts.iter().enumerate() {
                let mut acc = SymFunc::zero();
                for (j, _) in parts.iter().enumerate() {
                    acc = acc.add(&mb[j].scale(&Coeff::from_big(m[i][j].clone())));
                }
                assert_eq!(acc, SymFunc::p(lam.clone()));
            }
        }
    }

    #[test]
    fn inner_products() {
        let one = Coeff::one();
        let q = Coeff::q();
        let t = Coeff::t();
        let p1 = SymFunc::p_n(1);
        assert_eq!(inner_product_qt(&p1, &p1), &(&one - &q) / &(&one - &t));
        let p2 = SymFunc::p_n(2);
        assert!(inner_product_qt(&p2, &SymFunc::p(pp(&[1, 1]))).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = complete(3).scale(&Coeff::q());
        let s = serde_json::to_string(&f).unwrap();
        let g: SymFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(serde_json::to_string(&g).unwrap(), s);
    }
}
