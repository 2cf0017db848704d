//! Macdonald symmetric functions and operators diagonal in the `J` basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::{Mutex, RwLock};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::params;
use crate::partition::{e_r_s_alphabet, partitions, Cell, Partition};
use crate::report::{Outcome, Report};
use crate::symfunc::{
    complete, elementary, h_series_from_p, inner_product_qt, monomial, monomial_basis, power_sum,
    SymFunc,
};

/// Persistent storage for computed Macdonald data. `kind` is one of `P`, `Q`, `J`, `H`.
pub trait MacStore: Send + Sync {
    fn load(&self, kind: &str, lam: &Partition) -> Option<SymFunc>;
    fn save(&self, kind: &str, lam: &Partition, value: &SymFunc);
}

struct Basis {
    p: RwLock<HashMap<Partition, Arc<SymFunc>>>,
    j: RwLock<HashMap<Partition, Arc<SymFunc>>>,
    h: RwLock<HashMap<Partition, Arc<SymFunc>>>,
    building: Mutex<()>,
    store: RwLock<Option<Arc<dyn MacStore>>>,
}

static BASIS: Lazy<Basis> = Lazy::new(|| Basis {
    p: RwLock::new(HashMap::new()),
    j: RwLock::new(HashMap::new()),
    h: RwLock::new(HashMap::new()),
    building: Mutex::new(()),
    store: RwLock::new(None),
});

/// Routes future `P`/`J`/`H` lookups through `store` before computing.
pub fn attach_store(store: Arc<dyn MacStore>) {
    *BASIS.store.write() = Some(store);
}

pub fn detach_store() {
    *BASIS.store.write() = None;
}

/// Drops the in-memory tables (the attached store is kept).
pub fn clear_memory_cache() {
    BASIS.p.write().clear();
    BASIS.j.write().clear();
    BASIS.h.write().clear();
}

fn store() -> Option<Arc<dyn MacStore>> {
    BASIS.store.read().clone()
}

/// `P_λ(q,t)`.
pub fn macdonald_p(lam: &Partition) -> Arc<SymFunc> {
    if let Some(v) = BASIS.p.read().get(lam) {
        return v.clone();
    }
    build_degree(lam.size());
    BASIS.p.read().get(lam).cloned().expect("degree built")
}

fn build_degree(d: usize) {
    let _g = BASIS.building.lock();
    let parts = partitions(d);
    if parts.iter().all(|l| BASIS.p.read().contains_key(l)) {
        return;
    }
    let st = store();
    if let Some(s) = &st {
        let loaded: Vec<Option<SymFunc>> = parts.iter().map(|l| s.load("P", l)).collect();
        if loaded.iter().all(Option::is_some) {
            let mut w = BASIS.p.write();
            for (l, v) in parts.iter().zip(loaded) {
                w.insert(l.clone(), Arc::new(v.unwrap()));
            }
            return;
        }
    }
    let mb = monomial_basis(d);
    let mut done: Vec<(Partition, SymFunc, Coeff)> = Vec::new();
    for (idx, lam) in parts.iter().enumerate().rev() {
        let m = &mb[idx];
        let mut v = m.clone();
        for (nu, pnu, norm) in &done {
            if nu.dominance_less(lam).unwrap() {
                let x = &inner_product_qt(m, pnu) / norm;
                v = v.sub(&pnu.scale(&x));
            }
        }
        let norm = inner_product_qt(&v, &v);
        done.push((lam.clone(), v, norm));
    }
    let mut w = BASIS.p.write();
    for (l, v, _) in done {
        if let Some(s) = &st {
            s.save("P", &l, &v);
        }
        w.insert(l, Arc::new(v));
    }
}

/// `J_λ = c_λ P_λ`.
pub fn macdonald_j(lam: &Partition) -> Arc<SymFunc> {
    if let Some(v) = BASIS.j.read().get(lam) {
        return v.clone();
    }
    let j = Arc::new(macdonald_p(lam).scale(&c_factor(lam)));
    BASIS.j.write().insert(lam.clone(), j.clone());
    j
}

/// `Q_λ = J_λ / c'_λ`.
pub fn macdonald_q(lam: &Partition) -> SymFunc {
    macdonald_j(lam).scale(&(&Coeff::one() / &cprime_factor(lam)))
}

fn one_minus(c: &Coeff) -> Coeff {
    &Coeff::one() - c
}

/// `Π_s (1 - q^{a(s)} t^{l(s)+1})` at arbitrary `q`, `t`.
pub fn c_factor_at(lam: &Partition, q: &Coeff, t: &Coeff) -> Coeff {
    let mut r = Coeff::one();
    for (_, a, l) in lam.arms_legs() {
        r = &r * &one_minus(&(&q.powu(a as u32) * &t.powu(l as u32 + 1)));
    }
    r
}

/// `Π_s (1 - q^{a(s)+1} t^{l(s)})` at arbitrary `q`, `t`.
pub fn cprime_factor_at(lam: &Partition, q: &Coeff, t: &Coeff) -> Coeff {
    let mut r = Coeff::one();
    for (_, a, l) in lam.arms_legs() {
        r = &r * &one_minus(&(&q.powu(a as u32 + 1) * &t.powu(l as u32)));
    }
    r
}

pub fn c_factor(lam: &Partition) -> Coeff {
    c_factor_at(lam, &Coeff::q(), &Coeff::t())
}

pub fn cprime_factor(lam: &Partition) -> Coeff {
    cprime_factor_at(lam, &Coeff::q(), &Coeff::t())
}

/// `⟨J_λ, J_λ⟩ = c_λ c'_λ`.
pub fn j_norm(lam: &Partition) -> Coeff {
    &c_factor(lam) * &cprime_factor(lam)
}

fn box_b(lam: &Partition, s: Cell) -> Coeff {
    let a = lam.part(s.i) - s.j;
    let l = lam.conjugate().part(s.j) - s.i;
    let q = Coeff::q();
    let t = Coeff::t();
    let c = one_minus(&(&q.powu(a as u32) * &t.powu(l as u32 + 1)));
    let cp = one_minus(&(&q.powu(a as u32 + 1) * &t.powu(l as u32)));
    &c / &cp
}

fn strip_cells(lam: &Partition, mu: &Partition) -> Result<Vec<Cell>> {
    if !lam.contains_partition(mu) {
        return Err(Error::NotAdjacent(lam.to_string(), mu.to_string()));
    }
    let cells: Vec<Cell> = lam.boxes().into_iter().filter(|s| !mu.contains(*s)).collect();
    let mut rows: Vec<usize> = cells.iter().map(|s| s.i).collect();
    rows.sort_unstable();
    rows.dedup();
    if rows.len() != cells.len() {
        return Err(Error::NotAdjacent(lam.to_string(), mu.to_string()));
    }
    Ok(cells)
}

/// `ψ'_{λ/μ}` for a vertical strip `λ/μ`.
pub fn psi_prime(lam: &Partition, mu: &Partition) -> Result<Coeff> {
    let cells = strip_cells(lam, mu)?;
    let cols: Vec<usize> = cells.iter().map(|s| s.j).collect();
    let rows: Vec<usize> = cells.iter().map(|s| s.i).collect();
    let mut r = Coeff::one();
    for s in lam.boxes() {
        if cols.contains(&s.j) && !rows.contains(&s.i) {
            r = &r * &(&box_b(lam, s) / &box_b(mu, s));
        }
    }
    Ok(r)
}

fn check_one_box(lam: &Partition, mu: &Partition) -> Result<()> {
    if lam.size() != mu.size() + 1 {
        return Err(Error::NotAdjacent(lam.to_string(), mu.to_string()));
    }
    Ok(())
}

/// `d_{λ/μ}` in `p_1 J_μ = Σ_λ J_λ d_{λ/μ}`, for a vertical strip of any size.
pub fn pieri_d_strip(lam: &Partition, mu: &Partition) -> Result<Coeff> {
    Ok(&(&psi_prime(lam, mu)? * &c_factor(mu)) / &c_factor(lam))
}

pub fn pieri_d(lam: &Partition, mu: &Partition) -> Result<Coeff> {
    check_one_box(lam, mu)?;
    pieri_d_strip(lam, mu)
}

/// `c_{λ/μ}` in `∂_{p_1} J_λ = Σ_μ J_μ c_{λ/μ}`.
pub fn pieri_c(lam: &Partition, mu: &Partition) -> Result<Coeff> {
    check_one_box(lam, mu)?;
    let r = &(&psi_prime(lam, mu)? * &cprime_factor(lam)) / &cprime_factor(mu);
    Ok(&r * &(&one_minus(&Coeff::t()) / &one_minus(&Coeff::q())))
}

/// Coordinates of `g` in the `J` basis.
pub fn expand_in_j(g: &SymFunc) -> BTreeMap<Partition, Coeff> {
    let mut out = BTreeMap::new();
    let Some(top) = g.max_degree() else {
        return out;
    };
    for n in 0..=top {
        let gn = g.graded(n);
        if gn.is_zero() {
            continue;
        }
        for lam in partitions(n) {
            let x = &inner_product_qt(&gn, &macdonald_j(&lam)) / &j_norm(&lam);
            if !x.is_zero() {
                out.insert(lam, x);
            }
        }
    }
    out
}

/// `Σ x_λ J_λ`.
pub fn from_j(x: &BTreeMap<Partition, Coeff>) -> SymFunc {
    let mut r = SymFunc::zero();
    for (l, c) in x {
        r = r.add(&macdonald_j(l).scale(c));
    }
    r
}

/// Operator diagonal in the `J` basis with the given eigenvalues.
pub fn delta_f<F: Fn(&Partition) -> Coeff>(eigen: F, g: &SymFunc) -> SymFunc {
    let x = expand_in_j(g);
    let y = x.into_iter().map(|(l, c)| {
        let e = eigen(&l);
        (l, &c * &e)
    });
    from_j(&y.collect())
}

/// `Δ_f J_λ = J_λ f[B_λ]`.
pub fn delta_sym(f: &SymFunc, g: &SymFunc) -> SymFunc {
    delta_f(|l| f.eval_on_alphabet(&l.b_alphabet()), g)
}

/// `Δ_{h_r}` from the eigenvalue `h_r[B_λ]`; zero for `r < 0`.
pub fn delta_h(r: i64, g: &SymFunc) -> SymFunc {
    if r < 0 {
        return SymFunc::zero();
    }
    let h = complete(r as usize);
    delta_sym(&h, g)
}

/// `q^{n(λ')} t^{-n(λ)}`.
pub fn nabla_eigen(lam: &Partition) -> Coeff {
    Coeff::qt(lam.conjugate().n_stat() as i64, -(lam.n_stat() as i64))
}

pub fn nabla(g: &SymFunc) -> SymFunc {
    delta_f(nabla_eigen, g)
}

pub fn nabla_inv(g: &SymFunc) -> SymFunc {
    delta_f(|l| &Coeff::one() / &nabla_eigen(l), g)
}

/// `Ê_r J_λ = J_λ e_r[s^λ]`.
pub fn e_hat_eigen(r: usize, g: &SymFunc) -> SymFunc {
    delta_f(|l| e_r_s_alphabet(l, r), g)
}

/// `h_n[B_∞]` with `B_∞ = {q^i t^{-j} : i, j ≥ 0}`.
pub fn theta(n: usize) -> Coeff {
    complete(n).eval_p(|m| {
        let d = &one_minus(&Coeff::qt(m as i64, 0)) * &one_minus(&Coeff::qt(0, -(m as i64)));
        &Coeff::one() / &d
    })
}

/// `m_ν[1/(1-q)] = Σ` over rearrangements of `ν` into weak compositions of `q^{Σ(i-1) r_i}`.
fn delta_weight(nu: &Partition) -> Coeff {
    monomial(nu).eval_p(|n| &Coeff::one() / &one_minus(&Coeff::qt(n as i64, 0)))
}

/// Coefficients `δ_ν` of `Δ_{h_r} = Σ_{|ν| ≤ r} δ_ν Ê_ν`.
pub fn delta_coeffs(r: usize) -> Vec<(Partition, Coeff)> {
    let mt = Coeff::from_int(-1) * Coeff::t();
    let mut out = Vec::new();
    for k in 0..=r {
        let th = theta(r - k);
        for nu in partitions(k) {
            let c = &(&mt.powu(k as u32) * &th) * &delta_weight(&nu);
            out.push((nu, c));
        }
    }
    out
}

/// `h_r[B_λ]` through the alphabet `s^λ`.
pub fn h_r_of_b_via_s(lam: &Partition, r: usize) -> Coeff {
    let mut s = Coeff::zero();
    for (nu, c) in delta_coeffs(r) {
        let mut e = c;
        for &x in nu.parts() {
            e = &e * &e_r_s_alphabet(lam, x);
        }
        s = &s + &e;
    }
    s
}

/// `Δ_{h_r}` as the composition series in the `Ê` operators.
pub fn delta_h_via_ehat(r: usize, g: &SymFunc) -> SymFunc {
    let mut acc = SymFunc::zero();
    for (nu, c) in delta_coeffs(r) {
        let mut v = g.clone();
        for &x in nu.parts().iter().rev() {
            v = e_hat_eigen(x, &v);
        }
        acc = acc.add(&v.scale(&c));
    }
    acc
}

/// `H̃_λ = t^{n(λ)} J_λ[X/(1-t^{-1}); q, t^{-1}]`.
pub fn modified_h(lam: &Partition) -> Arc<SymFunc> {
    if let Some(v) = BASIS.h.read().get(lam) {
        return v.clone();
    }
    let st = store();
    if let Some(v) = st.as_ref().and_then(|s| s.load("H", lam)) {
        let v = Arc::new(v);
        BASIS.h.write().insert(lam.clone(), v.clone());
        return v;
    }
    let tinv = vec![(crate::coeff::Var::T, Coeff::qt(0, -1))];
    let j = macdonald_j(lam).substitute(&tinv).expect("t -> 1/t is monomial");
    let h = j
        .pleth_diag(|n| &Coeff::one() / &one_minus(&Coeff::qt(0, -(n as i64))))
        .scale(&Coeff::qt(0, lam.n_stat() as i64));
    if let Some(s) = &st {
        s.save("H", lam, &h);
    }
    let h = Arc::new(h);
    BASIS.h.write().insert(lam.clone(), h.clone());
    h
}

/// Values of `p_n` on `(1-q)(1-t^{-1})B_λ - 1`.
fn pv_shifted(lam: &Partition, n: usize) -> Coeff {
    let b = lam.b_alphabet();
    let f = &one_minus(&Coeff::qt(n as i64, 0)) * &one_minus(&Coeff::qt(0, -(n as i64)));
    &(&f * &power_sum(&b, n)) - &Coeff::one()
}

/// `Ẽ_μ[x] = 1/(1-x) Π_{b ∈ B_μ} (1-xb)(1-xbq/t)/((1-xbq)(1-xb/t))`.
pub fn e_tilde(mu: &Partition, x: &Coeff) -> Coeff {
    let q = Coeff::q();
    let t = Coeff::t();
    let qt = &q / &t;
    let mut r = &Coeff::one() / &one_minus(x);
    for b in mu.b_alphabet() {
        let xb = x * &b;
        let num = &one_minus(&xb) * &one_minus(&(&xb * &qt));
        let den = &one_minus(&(&xb * &q)) * &one_minus(&(&xb / &t));
        r = &r * &(&num / &den);
    }
    r
}

/// Checks the Pieri-sum identities attached to `μ`: the `r`-th moment of the
/// `d`-coefficients, the `c`-coefficient moments, and the vertical-strip
/// generating function for strips of up to `dmax` boxes.
pub fn verify_pieri_sums(mu: &Partition, r: usize, dmax: usize, order: usize) -> Report {
    let mut rep = Report::new();
    let q = Coeff::q();
    let t = Coeff::t();
    let one = Coeff::one();
    let adds = mu.add_boxes();
    for rr in 0..=r {
        rep.check("pieri_d_moment", params! {"mu" => mu, "r" => rr}, || {
            let mut lhs = Coeff::zero();
            for (lam, s) in &adds {
                let (a, b) = s.weight_exps();
                let term = &pieri_d(lam, mu)? * &Coeff::qt(a + rr as i64 * a, b * rr as i64);
                lhs = &lhs + &term;
            }
            lhs = &lhs * &one_minus(&t);
            let e = elementary(rr).eval_p(|n| pv_shifted(mu, n));
            let rhs = if rr % 2 == 0 { e } else { e.neg() };
            Ok(Outcome::coeff_eq(&lhs, &rhs))
        });
    }
    // the fixed partition in the c-sum identities is `mu` itself
    let lam = mu;
    let removes = lam.remove_boxes();
    let c_sum = |k: i64| -> Result<Coeff> {
        let mut s = Coeff::zero();
        for (nu, cell) in &removes {
            let (a, b) = cell.weight_exps();
            let w = &Coeff::qt(0, 1 - cell.i as i64) * &Coeff::qt(a * k, b * k);
            s = &s + &(&pieri_c(lam, nu)? * &w);
        }
        Ok(s)
    };
    for k in 1..=r.max(1) {
        rep.check("pieri_c_moment", params! {"lambda" => lam, "k" => k}, || {
            let lhs = &one_minus(&q) * &c_sum(k as i64)?;
            let tq = &t / &q;
            let h = complete(k + 1).eval_p(|n| &tq.powu(n as u32) * &pv_shifted(lam, n));
            let rhs = (&q * &h).neg();
            Ok(Outcome::coeff_eq(&lhs, &rhs))
        });
    }
    rep.check("pieri_c_moment_inverse", params! {"lambda" => lam, "k" => -1}, || {
        let inv: Vec<Coeff> = lam.b_alphabet().iter().map(|b| &one / b).collect();
        let rhs = &one_minus(&t) * &power_sum(&inv, 1);
        Ok(Outcome::coeff_eq(&c_sum(-1)?, &rhs))
    });
    rep.check("pieri_c_moment_zero", params! {"lambda" => lam, "k" => 0}, || {
        let rhs = &one_minus(&t) * &power_sum(&lam.b_alphabet(), 1);
        Ok(Outcome::coeff_eq(&c_sum(0)?, &rhs))
    });
    for d in 1..=dmax {
        rep.check("vertical_strip_generating_function", params! {"mu" => mu, "d" => d, "order" => order}, || {
            verify_strip_identity(mu, d, order)
        });
    }
    rep
}

fn n_conj(l: &Partition) -> i64 {
    l.conjugate().n_stat() as i64
}

/// Strip identity both as rational functions of `u` and coefficientwise up to `u^order`.
fn verify_strip_identity(mu: &Partition, d: usize, order: usize) -> Result<Outcome> {
    let u = Coeff::u();
    let t = Coeff::t();
    let strips = mu.vertical_strips(d);
    let mut weights = Vec::new();
    for (lam, cells) in &strips {
        let w = &Coeff::qt(n_conj(lam) - n_conj(mu), 0) * &pieri_d_strip(lam, mu)?;
        let b: Vec<Coeff> = cells.iter().map(|c| c.weight()).collect();
        weights.push((w, b));
    }
    // exact rational form
    let mut lhs = Coeff::zero();
    for (w, b) in &weights {
        let mut den = Coeff::one();
        for x in b {
            den = &den * &one_minus(&(&u * x));
        }
        lhs = &lhs + &(w / &den);
    }
    let mut rhs = Coeff::one();
    for k in 0..d {
        let x = &u / &t.powu(k as u32);
        rhs = &rhs * &(&e_tilde(mu, &x) / &one_minus(&t.powu(k as u32 + 1)));
    }
    if lhs != rhs {
        return Ok(Outcome::Fail(Some(&lhs - &rhs)));
    }
    // series in u
    let mut ls = vec![Coeff::zero(); order + 1];
    for (w, b) in &weights {
        for (r, h) in crate::symfunc::h_series(b, order).into_iter().enumerate() {
            ls[r] = &ls[r] + &(w * &h);
        }
    }
    let base = h_series_from_p(|n| pv_shifted(mu, n).neg(), order);
    let mut rs = vec![Coeff::zero(); order + 1];
    rs[0] = Coeff::one();
    for k in 0..d {
        let s = t.powu(k as u32);
        let f: Vec<Coeff> = base
            .iter()
            .enumerate()
            .map(|(r, h)| h / &s.powu(r as u32))
            .collect();
        rs = series_mul(&rs, &f, order);
        let c = &Coeff::one() / &one_minus(&t.powu(k as u32 + 1));
        rs = rs.iter().map(|x| x * &c).collect();
    }
    for r in 0..=order {
        if ls[r] != rs[r] {
            return Ok(Outcome::Fail(Some(&ls[r] - &rs[r])));
        }
    }
    Ok(Outcome::Pass)
}

fn series_mul(a: &[Coeff], b: &[Coeff], order: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); order + 1];
    for i in 0..=order {
        for j in 0..=order - i {
            if a[i].is_zero() || b[j].is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// Checks `ε_{u,t} J_λ = Π_s (t^{i-1} - q^{j-1} u)`.
pub fn verify_specialization(lam: &Partition) -> Outcome {
    let u = Coeff::u();
    let lhs = macdonald_j(lam).specialize_eps(&u);
    let mut rhs = Coeff::one();
    for s in lam.boxes() {
        rhs = &rhs * &(&Coeff::qt(0, s.i as i64 - 1) - &(&Coeff::qt(s.j as i64 - 1, 0) * &u));
    }
    Outcome::coeff_eq(&lhs, &rhs)
}

/// Orthogonality, norms, the two Pieri rules and the `ε_{u,t}` specialization
/// for every partition of size ≤ `n`.
pub fn verify_macdonald_core(n: usize) -> Report {
    let mut rep = Report::new();
    for d in 0..=n {
        rep.check("P_Q_orthonormal", params! {"degree" => d}, || {
            let parts = partitions(d);
            let qs: Vec<SymFunc> = parts.iter().map(macdonald_q).collect();
            let mut outs = Vec::new();
            for (i, l) in parts.iter().enumerate() {
                let p = macdonald_p(l);
                for (j, q) in qs.iter().enumerate() {
                    let x = inner_product_qt(&p, q);
                    let expect = if i == j { Coeff::one() } else { Coeff::zero() };
                    outs.push(Outcome::coeff_eq(&x, &expect));
                }
            }
            Ok(Outcome::all(outs))
        });
    }
    for lam in crate::partition::partitions_upto(n) {
        rep.check("J_norm", params! {"lambda" => lam}, || {
            let j = macdonald_j(&lam);
            Ok(Outcome::coeff_eq(&inner_product_qt(&j, &j), &j_norm(&lam)))
        });
        rep.check("specialization", params! {"lambda" => lam}, || Ok(verify_specialization(&lam)));
        if lam.size() < n {
            rep.check("pieri_p1", params! {"mu" => lam}, || {
                let mut rhs = SymFunc::zero();
                for (l, _) in lam.add_boxes() {
                    rhs = rhs.add(&macdonald_j(&l).scale(&pieri_d(&l, &lam)?));
                }
                Ok(Outcome::sf_eq(&macdonald_j(&lam).mul_p(1), &rhs))
            });
        }
        rep.check("pieri_dp1", params! {"lambda" => lam}, || {
            let mut rhs = SymFunc::zero();
            for (m, _) in lam.remove_boxes() {
                rhs = rhs.add(&macdonald_j(&m).scale(&pieri_c(&lam, &m)?));
            }
            Ok(Outcome::sf_eq(&macdonald_j(&lam).d_p(1), &rhs))
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_p() {
        let q = Coeff::q();
        let t = Coeff::t();
        assert_eq!(*macdonald_p(&part(&[1])), SymFunc::p(part(&[1])));
        // P_(2) = m_2 + (1+q)(1-t)/(1-qt) m_11
        let c = &(&(&Coeff::one() + &q) * &one_minus(&t)) / &one_minus(&(&q * &t));
        let expect = monomial(&part(&[2])).add(&monomial(&part(&[1, 1])).scale(&c));
        assert_eq!(*macdonald_p(&part(&[2])), expect);
    }

    #[test]
    fn core_degree_three() {
        let rep = verify_macdonald_core(3);
        assert!(rep.passed(), "{}", rep.to_markdown());
    }

    #[test]
    fn theta_zero_is_one() {
        assert!(theta(0).is_one());
    }
}
