//! Whittaker vectors of the deformed Virasoro algebra in the Fock module.

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Var};
use crate::error::{Error, Result};
use crate::fock::{apply_mode, dmode, eta, t_scaled, v0_series_coeff, vinf_series_coeff, Current, ModeOp};
use crate::macdonald::{delta_h, delta_h_via_ehat, j_norm, macdonald_j, macdonald_p, nabla_inv};
use crate::params;
use crate::partition::{partitions, Partition};
use crate::report::{Outcome, Report};
use crate::symfunc::{h_series, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Gamma,
    J,
    UClosed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhittakerVector {
    pub degree: usize,
    pub form: Form,
    pub payload: SymFunc,
}

impl WhittakerVector {
    pub fn gamma_form(n: usize) -> WhittakerVector {
        WhittakerVector { degree: n, form: Form::Gamma, payload: v_g(n) }
    }

    pub fn j_form(n: usize) -> WhittakerVector {
        let k = Coeff::k();
        let payload = v_u(n)
            .substitute(&[(Var::U, &k.powu(2) * &Coeff::qt(1, -1))])
            .expect("u substitution")
            .scale(&k.powu(n as u32));
        WhittakerVector { degree: n, form: Form::J, payload }
    }

    pub fn u_closed_form(n: usize) -> WhittakerVector {
        WhittakerVector { degree: n, form: Form::UClosed, payload: v_u(n) }
    }
}

fn one_minus(c: &Coeff) -> Coeff {
    &Coeff::one() - c
}

/// `γ_λ = Π_s k/(1 - k² q^j t^{-i}) · q^a/(1 - q^{a+1} t^l)`.
pub fn gamma(lam: &Partition) -> Coeff {
    let k = Coeff::k();
    let k2 = k.powu(2);
    let mut g = Coeff::one();
    for (s, a, l) in lam.arms_legs() {
        let d1 = one_minus(&(&k2 * &Coeff::qt(s.j as i64, -(s.i as i64))));
        let d2 = one_minus(&Coeff::qt(a as i64 + 1, l as i64));
        g = &g * &(&(&k * &Coeff::qt(a as i64, 0)) / &(&d1 * &d2));
    }
    g
}

/// `v_{G,n} = Σ_{λ ⊢ n} γ_λ P_λ`.
pub fn v_g(n: usize) -> SymFunc {
    let mut v = SymFunc::zero();
    for lam in partitions(n) {
        v = v.add(&macdonald_p(&lam).scale(&gamma(&lam)));
    }
    v
}

fn j_sum<F: Fn(&Partition) -> Coeff>(n: usize, w: F) -> SymFunc {
    let mut v = SymFunc::zero();
    for lam in partitions(n) {
        let c = &w(&lam) / &j_norm(&lam);
        v = v.add(&macdonald_j(&lam).scale(&c));
    }
    v
}

fn q_n_conj(lam: &Partition) -> Coeff {
    Coeff::qt(lam.conjugate().n_stat() as i64, 0)
}

/// `v_n^{(r)} = Σ_{λ ⊢ n} J_λ q^{n(λ')} h_r[B_λ] / ⟨J_λ, J_λ⟩`.
pub fn v_r(n: usize, r: usize) -> SymFunc {
    j_sum(n, |lam| &q_n_conj(lam) * &h_series(&lam.b_alphabet(), r)[r])
}

/// `v_n(u) = Σ_r u^r v_n^{(r)}` with the closed coefficient `1/Π_s (1 - u B_s)`.
pub fn v_u(n: usize) -> SymFunc {
    let u = Coeff::u();
    j_sum(n, |lam| {
        let d = lam.b_alphabet().iter().fold(Coeff::one(), |acc, b| &acc * &one_minus(&(&u * b)));
        &q_n_conj(lam) / &d
    })
}

pub fn v0(n: usize) -> SymFunc {
    v_r(n, 0)
}

/// `(-1)^n` times the `w^n` part of `exp(-Σ p_m w^m / (m(1-q^m)))`.
pub fn v0_closed(n: usize) -> SymFunc {
    let v = v0_series_coeff(n);
    if n % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// `v_n^{(∞)} = Σ_{λ ⊢ n} J_λ t^{n(λ)} / ⟨J_λ, J_λ⟩`.
pub fn vinf(n: usize) -> SymFunc {
    j_sum(n, |lam| Coeff::qt(0, lam.n_stat() as i64))
}

/// The `w^n` part of `exp(Σ p_m w^m / (m(1-q^m)))`.
pub fn vinf_closed(n: usize) -> SymFunc {
    vinf_series_coeff(n)
}

/// Exact solve of `A x = b`. Returns the unique solution and the rank, or an
/// error when the system is inconsistent or underdetermined.
pub fn solve_exact(mut a: Vec<Vec<Coeff>>, mut b: Vec<Coeff>) -> Result<(Vec<Coeff>, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].size_hint()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = &Coeff::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let s = &f * &a[r][j];
                a[i][j] = &a[i][j] - &s;
            }
            let s = &f * &b[r];
            b[i] = &b[i] - &s;
        }
        piv.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Inconsistent);
    }
    if r < cols {
        return Err(Error::RankDeficient { rank: r, expected: cols });
    }
    let mut x = vec![Coeff::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Ok((x, r))
}

/// Solves `T_1 v = (q/t)^{-1/2} v_{n-1}`, `T_d v = 0` (`2 ≤ d ≤ n`) in the
/// `p`-basis of degree `n`, starting from `v_0 = 1` and feeding each solution
/// into the next degree. Rows are scaled by `k (q/t)^{d/2}` so that only
/// integer exponents occur. Returns the solution and the rank of the system.
pub fn oracle_solve_with_rank(n: usize) -> Result<(SymFunc, usize)> {
    if n == 0 {
        return Ok((SymFunc::one(), 0));
    }
    let (prev, _) = oracle_solve_with_rank(n - 1)?;
    let basis = partitions(n);
    let images: Vec<Vec<SymFunc>> = basis
        .iter()
        .map(|mu| (1..=n as i64).map(|d| t_scaled(d, &SymFunc::p(mu.clone()))).collect())
        .collect();
    let k = Coeff::k();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for d in 1..=n {
        for nu in partitions(n - d) {
            a.push(images.iter().map(|im| im[d - 1].coeff(&nu)).collect());
            b.push(if d == 1 { &k * &prev.coeff(&nu) } else { Coeff::zero() });
        }
    }
    let (x, rank) = solve_exact(a, b)?;
    let v = SymFunc::from_terms(basis.into_iter().zip(x));
    Ok((v, rank))
}

pub fn oracle_solve(n: usize) -> Result<SymFunc> {
    oracle_solve_with_rank(n).map(|(v, _)| v)
}

/// The eigenvalue of `T_1` relating consecutive graded pieces: `(q/t)^{-1/2}`.
pub fn t1_scale() -> Coeff {
    Coeff::half_power_qt(-1)
}

/// Parts (a) to (e) of the Whittaker conditions for `n ≤ nmax`, `r ≤ rmax`.
pub fn verify_whittaker(nmax: usize, rmax: usize) -> Report {
    let mut rep = Report::new();
    let tmode = |d: i64, f: &SymFunc| apply_mode(ModeOp::new(Current::T, d), f);
    for n in 0..nmax {
        rep.check("T1_vG", params! {"n" => n}, || {
            let lhs = tmode(1, &v_g(n + 1));
            Ok(Outcome::sf_eq(&lhs, &v_g(n).scale(&t1_scale())))
        });
    }
    for n in 2..=nmax {
        rep.check("Td_vG_zero", params! {"n" => n}, || {
            let v = v_g(n);
            Ok(Outcome::all((2..=n as i64).map(|d| Outcome::sf_zero(&tmode(d, &v)))))
        });
    }
    for n in 0..nmax {
        rep.check("u_eta1_plus_D1_vu", params! {"n" => n}, || {
            let v = v_u(n + 1);
            let lhs = eta(1, &v).scale(&Coeff::u()).add(&dmode(1, &v));
            Ok(Outcome::sf_eq(&lhs, &v_u(n)))
        });
    }
    for n in 0..=nmax {
        rep.check("j_form_equals_gamma_form", params! {"n" => n}, || {
            Ok(Outcome::sf_eq(&WhittakerVector::j_form(n).payload, &v_g(n)))
        });
        rep.check("v0_closed_form", params! {"n" => n}, || Ok(Outcome::sf_eq(&v0(n), &v0_closed(n))));
    }
    for n in 0..=nmax {
        rep.check("integer_exponents", params! {"n" => n}, || {
            let whole = |f: &SymFunc| Outcome::from_bool(f.terms().all(|(_, c)| !c.has_half_exponents()));
            let v = v0(n);
            let mut outs = vec![whole(&v_g(n)), whole(&v), whole(&vinf(n)), whole(&v_u(n))];
            outs.extend((0..=rmax as i64).map(|r| whole(&delta_h(r, &v))));
            Ok(Outcome::all(outs))
        });
    }
    for n in 0..nmax {
        rep.check("D1_v0", params! {"n" => n}, || Ok(Outcome::sf_eq(&dmode(1, &v0(n + 1)), &v0(n))));
    }
    for n in 2..=nmax {
        rep.check("Dd_v0_zero", params! {"n" => n}, || {
            let v = v0(n);
            Ok(Outcome::all((2..=n as i64).map(|d| Outcome::sf_zero(&dmode(d, &v)))))
        });
    }
    for n in 2..=nmax {
        let v = v0(n);
        for r in 0..=rmax {
            rep.check("main_relation_delta_eigen", params! {"n" => n, "r" => r}, || {
                let lo = delta_h(r as i64 - 1, &v);
                let hi = delta_h(r as i64, &v);
                Ok(Outcome::all((2..=n as i64).map(|d| {
                    let x = eta(d, &lo).scale(&Coeff::qt(d - 1, 1 - d)).add(&dmode(d, &hi));
                    Outcome::sf_zero(&x)
                })))
            });
            rep.check("main_relation_delta_ehat", params! {"n" => n, "r" => r}, || {
                let lo = if r == 0 { SymFunc::zero() } else { delta_h_via_ehat(r - 1, &v) };
                let hi = delta_h_via_ehat(r, &v);
                let same = Outcome::sf_eq(&hi, &delta_h(r as i64, &v));
                if !same.passed() {
                    return Ok(same);
                }
                Ok(Outcome::all((2..=n as i64).map(|d| {
                    let x = eta(d, &lo).scale(&Coeff::qt(d - 1, 1 - d)).add(&dmode(d, &hi));
                    Outcome::sf_zero(&x)
                })))
            });
        }
    }
    for n in 0..=nmax {
        rep.check("vinf_closed_and_nabla", params! {"n" => n}, || {
            let v = vinf(n);
            Ok(Outcome::all([
                Outcome::sf_eq(&v, &vinf_closed(n)),
                Outcome::sf_eq(&v, &nabla_inv(&v0(n))),
            ]))
        });
    }
    for n in 0..nmax {
        rep.check("eta_vinf", params! {"n" => n}, || {
            let v = vinf(n + 1);
            let mut outs = vec![Outcome::sf_eq(&eta(1, &v), &vinf(n).neg())];
            for d in 2..=(n + 1) as i64 {
                outs.push(Outcome::sf_zero(&eta(d, &v)));
            }
            Ok(Outcome::all(outs))
        });
    }
    rep
}

/// `oracle_solve(n) = v_G(n)` with full rank, for `1 ≤ n ≤ nmax`.
pub fn verify_oracle(nmax: usize) -> Report {
    let mut rep = Report::new();
    for n in 1..=nmax {
        rep.check("oracle_solve_matches_vG", params! {"n" => n}, || {
            let (v, rank) = oracle_solve_with_rank(n)?;
            let expected = partitions(n).len();
            if rank != expected {
                return Err(Error::RankDeficient { rank, expected });
            }
            Ok(Outcome::sf_eq(&v, &v_g(n)))
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
    fn gamma_small() {
        let k = Coeff::k();
        let q = Coeff::q();
        assert!(gamma(&Partition::empty()).is_one());
        let g1 = &k / &(&one_minus(&(&k.powu(2) * &Coeff::qt(1, -1))) * &one_minus(&q));
        assert_eq!(gamma(&part(&[1])), g1);
        let extra = &k / &(&one_minus(&(&k.powu(2) * &Coeff::qt(1, -2))) * &one_minus(&Coeff::qt(1, 1)));
        assert_eq!(gamma(&part(&[1, 1])), &g1 * &extra);
    }

    #[test]
    fn low_degree_vectors() {
        let p1 = SymFunc::p(part(&[1]));
        let q = Coeff::q();
        assert_eq!(v_g(0), SymFunc::one());
        assert_eq!(v_g(1), p1.scale(&gamma(&part(&[1]))));
        assert_eq!(v0(1), p1.scale(&(&Coeff::one() / &one_minus(&q))));
        assert_eq!(v0_closed(1), v0(1));
        assert_eq!(v_r(0, 1), SymFunc::zero());
    }

    #[test]
    fn oracle_rank_three() {
        let (v, rank) = oracle_solve_with_rank(3).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(v, v_g(3));
    }
}
