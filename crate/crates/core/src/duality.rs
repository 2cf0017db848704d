//! The `↓` duality, the `τ_λ` coefficients and the top modes `Λ^±_{|λ|} J_λ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Var};
use crate::error::Result;
use crate::fock::{apply_mode, Current, ModeOp};
use crate::macdonald::{
    c_factor, cprime_factor, expand_in_j, macdonald_j, macdonald_p, macdonald_q, psi_prime,
};
use crate::params;
use crate::partition::{partitions, partitions_upto, Partition};
use crate::report::{Outcome, Report};
use crate::symfunc::SymFunc;
use crate::whittaker::{gamma, v_g};

fn one_minus(c: &Coeff) -> Coeff {
    &Coeff::one() - c
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ω_{q,t}: p_n ↦ (-1)^{n-1} (1-q^n)/(1-t^n) p_n`.
pub fn omega_qt(f: &SymFunc) -> SymFunc {
    f.pleth_diag(|n| {
        let n = n as i64;
        (&one_minus(&Coeff::qt(n, 0)) / &one_minus(&Coeff::qt(0, n))).scale_int(-sign(n as usize))
    })
}

/// `ω_{t,q}`, the inverse of [`omega_qt`].
pub fn omega_tq(f: &SymFunc) -> SymFunc {
    f.pleth_diag(|n| {
        let n = n as i64;
        (&one_minus(&Coeff::qt(0, n)) / &one_minus(&Coeff::qt(n, 0))).scale_int(-sign(n as usize))
    })
}

/// `↓ = ι_{q,t} ∘ ω_{q,t}`.
pub fn down(f: &SymFunc) -> SymFunc {
    omega_qt(f).iota_swap().expect("monomial substitution")
}

/// `f[cX]` for a scalar `c`, i.e. `p_n ↦ c^n p_n`.
pub fn scale_alphabet(f: &SymFunc, c: &Coeff) -> SymFunc {
    f.pleth_diag(|n| c.powu(n as u32))
}

fn qt_swap(f: &SymFunc) -> SymFunc {
    f.substitute(&[(Var::Q, Coeff::t()), (Var::T, Coeff::q())]).expect("monomial substitution")
}

/// `↓ J_λ = (-1)^{|λ|} q^{-n(λ)} t^{-|λ|-n(λ')} J_{λ'}`.
pub fn down_j_factor(lam: &Partition) -> Coeff {
    let n = lam.size() as i64;
    Coeff::qt(-(lam.n_stat() as i64), -n - lam.conjugate().n_stat() as i64).scale_int(sign(lam.size()))
}

/// Checks of `↓` on Macdonald functions and Whittaker vectors for degree ≤ `nmax`.
pub fn verify_v_down(nmax: usize) -> Report {
    let mut rep = Report::new();
    for lam in partitions_upto(nmax) {
        rep.check("omega_P_is_Q_conjugate", params! {"lambda" => lam}, || {
            let lhs = omega_qt(&macdonald_p(&lam));
            Ok(Outcome::sf_eq(&lhs, &qt_swap(&macdonald_q(&lam.conjugate()))))
        });
        rep.check("down_J", params! {"lambda" => lam}, || {
            let lhs = down(&macdonald_j(&lam));
            Ok(Outcome::sf_eq(&lhs, &macdonald_j(&lam.conjugate()).scale(&down_j_factor(&lam))))
        });
        rep.check("down_vG_lambda", params! {"lambda" => lam}, || {
            let v = |l: &Partition| macdonald_p(l).scale(&gamma(l));
            let c = Coeff::qt(lam.size() as i64, 0).scale_int(sign(lam.size()));
            Ok(Outcome::sf_eq(&down(&v(&lam)), &v(&lam.conjugate()).scale(&c)))
        });
    }
    for n in 0..=nmax {
        rep.check("down_vG", params! {"n" => n}, || {
            let v = v_g(n);
            let c = Coeff::qt(n as i64, 0).scale_int(sign(n));
            Ok(Outcome::sf_eq(&down(&v), &v.scale(&c)))
        });
        rep.check("down_squared", params! {"n" => n}, || {
            let mut outs = Vec::new();
            for lam in partitions(n) {
                let f = SymFunc::p(lam.clone()).scale(&Coeff::qt(1, 2).add(&Coeff::k()));
                let lhs = down(&down(&f));
                outs.push(Outcome::sf_eq(&lhs, &scale_alphabet(&f, &Coeff::qt(1, -1))));
                outs.push(Outcome::sf_eq(&omega_tq(&omega_qt(&f)), &f));
            }
            Ok(Outcome::all(outs))
        });
    }
    rep
}

fn lambda_mode(plus: bool, d: i64, f: &SymFunc) -> SymFunc {
    let c = if plus { Current::LambdaPlus } else { Current::LambdaMinus };
    apply_mode(ModeOp::new(c, d), f)
}

/// Mode form of the `Λ^±` conjugation:
/// `↓ Λ^±_d ↓ f = (-q)^{-d} Λ^±_d f[(q/t)X]`, and
/// `↓ Λ^±_d v_n = (-q)^{n-d} Λ^±_d v_n`.
pub fn verify_lambda_conjugation(dmax: usize, nmax: usize) -> Report {
    let mut rep = Report::new();
    let qt = Coeff::qt(1, -1);
    for plus in [true, false] {
        let which = if plus { "+" } else { "-" };
        rep.check("Lambda_conjugation", params! {"sign" => which, "dmax" => dmax, "nmax" => nmax}, || {
            let mut outs = Vec::new();
            for lam in partitions_upto(nmax) {
                let f = SymFunc::p(lam.clone());
                for d in 0..=dmax.min(lam.size()) as i64 {
                    let lhs = down(&lambda_mode(plus, d, &down(&f)));
                    let rhs = lambda_mode(plus, d, &scale_alphabet(&f, &qt)).scale(&conj_factor(d));
                    outs.push(Outcome::sf_eq(&lhs, &rhs));
                }
            }
            Ok(Outcome::all(outs))
        });
        for n in 0..=nmax {
            rep.check("Lambda_on_vG_down", params! {"sign" => which, "n" => n}, || {
                let v = v_g(n);
                let mut outs = Vec::new();
                for d in 0..=dmax.min(n) {
                    let x = lambda_mode(plus, d as i64, &v);
                    let c = Coeff::qt((n - d) as i64, 0).scale_int(sign(n - d));
                    outs.push(Outcome::sf_eq(&down(&x), &x.scale(&c)));
                }
                Ok(Outcome::all(outs))
            });
        }
    }
    rep
}

/// `(-q)^{-d}`, the scalar relating `↓Λ^±_d↓` to `Λ^±_d` on `f[(q/t)X]`.
pub fn conj_factor(d: i64) -> Coeff {
    Coeff::qt(-d, 0).scale_int(sign(d.unsigned_abs() as usize))
}

fn e1(b: &[Coeff]) -> Coeff {
    b.iter().fold(Coeff::zero(), |s, x| &s + x)
}

fn e_minus1(b: &[Coeff]) -> Coeff {
    b.iter().fold(Coeff::zero(), |s, x| &s + &(&Coeff::one() / x))
}

/// `Π_{s ≠ (1,1)} (1 - B_s)`.
fn tail_product(lam: &Partition) -> Coeff {
    lam.b_alphabet().iter().skip(1).fold(Coeff::one(), |s, b| &s * &one_minus(b))
}

/// `τ_λ = (1-q)(t-1) t^{|λ|-1+n(λ)} e_1[B_λ] Π_{s≠(1,1)} (1-B_s) / c'_λ`.
pub fn tau_closed(lam: &Partition) -> Coeff {
    let n = lam.size() as i64;
    let pre = &one_minus(&Coeff::q()) * &(&Coeff::t() - &Coeff::one());
    let x = &(&pre * &Coeff::qt(0, n - 1 + lam.n_stat() as i64)) * &e1(&lam.b_alphabet());
    &(&x * &tail_product(lam)) / &cprime_factor(lam)
}

/// `τ_λ = Σ_{r=1}^{n-1} (-1)^{r-1} t^r Σ_{μ ⊢ n-r} τ_μ ψ'_{λ/μ} + δ_{λ,(1^n)} (-1)^{n-1} (t^n - 1)`.
pub fn tau_recursive(lam: &Partition) -> Result<Coeff> {
    let mut memo = BTreeMap::new();
    tau_rec(lam, &mut memo)
}

fn tau_rec(lam: &Partition, memo: &mut BTreeMap<Partition, Coeff>) -> Result<Coeff> {
    if let Some(v) = memo.get(lam) {
        return Ok(v.clone());
    }
    let n = lam.size();
    let mut acc = Coeff::zero();
    for r in 1..n {
        let mut inner = Coeff::zero();
        for mu in partitions(n - r) {
            if !lam.contains_partition(&mu) || !is_vertical_strip(lam, &mu) {
                continue;
            }
            inner = &inner + &(&tau_rec(&mu, memo)? * &psi_prime(lam, &mu)?);
        }
        acc = &acc + &(&inner * &Coeff::qt(0, r as i64)).scale_int(sign(r - 1));
    }
    if *lam == Partition::column(n) {
        acc = &acc + &(&Coeff::qt(0, n as i64) - &Coeff::one()).scale_int(sign(n - 1));
    }
    memo.insert(lam.clone(), acc.clone());
    Ok(acc)
}

fn is_vertical_strip(lam: &Partition, mu: &Partition) -> bool {
    (1..=lam.len()).all(|i| lam.part(i) >= mu.part(i) && lam.part(i) - mu.part(i) <= 1)
}

/// `P`-coefficients of the degree-`n` part of `exp(-Σ (1-t^m) p_m / m)`.
pub fn tau_from_series(n: usize) -> BTreeMap<Partition, Coeff> {
    let mut f = SymFunc::zero();
    for rho in partitions(n) {
        let mut c = &Coeff::one() / &Coeff::from_big(rho.z_stat());
        for &m in rho.parts() {
            c = (&c * &one_minus(&Coeff::qt(0, m as i64))).neg();
        }
        f.add_term(rho, &c);
    }
    expand_in_j(&f)
        .into_iter()
        .map(|(lam, c)| {
            let x = &c * &c_factor(&lam);
            (lam, x)
        })
        .collect()
}

/// Which normalization of the `Λ^±` modes the top-mode formulas refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `T_d = k (q/t)^{d/2} Λ^+_d + k^{-1} (q/t)^{-d/2} Λ^-_d`.
    Bosonization,
    /// `T_d = k (q/t)^{d/2+1} Λ^+_d + k^{-1} (q/t)^{-d/2-1} Λ^-_d`.
    Shifted,
}

impl Normalization {
    pub const ALL: [Normalization; 2] = [Normalization::Bosonization, Normalization::Shifted];

    /// The scalar multiplying `Λ^±_d` inside `T_d`.
    pub fn prefactor(self, plus: bool, d: i64) -> Coeff {
        let k = Coeff::k();
        let shift = match self {
            Normalization::Bosonization => 0,
            Normalization::Shifted => 2,
        };
        if plus {
            &k * &Coeff::half_power_qt(d + shift)
        } else {
            &(&Coeff::one() / &k) * &Coeff::half_power_qt(-d - shift)
        }
    }
}

/// Closed form of the `T`-component `k (q/t)^{n/2} Λ^+_n J_λ`, `n = |λ|`.
pub fn lambda_top_plus(lam: &Partition) -> Coeff {
    let n = lam.size() as i64;
    let pre = &(&Coeff::k() * &Coeff::half_power_qt(n)) * &(&one_minus(&Coeff::q()) * &(&Coeff::t() - &Coeff::one()));
    let x = &(&pre * &Coeff::qt(0, n - 1 + lam.n_stat() as i64)) * &e1(&lam.b_alphabet());
    &x * &tail_product(lam)
}

/// Closed form of the `T`-component `k^{-1} (q/t)^{-n/2} Λ^-_n J_λ`.
pub fn lambda_top_minus(lam: &Partition) -> Coeff {
    let n = lam.size() as i64;
    let pre = &(&(&Coeff::one() / &Coeff::k()) * &Coeff::half_power_qt(-n))
        * &(&one_minus(&Coeff::q()) * &one_minus(&Coeff::t()));
    let x = &(&pre * &Coeff::qt(n - 1, lam.n_stat() as i64)) * &e_minus1(&lam.b_alphabet());
    &x * &tail_product(lam)
}

/// Compares the closed top-mode forms with `prefactor · Λ^±_{|λ|} J_λ` under
/// each normalization, and records which setting matches.
pub fn verify_top_modes(nmax: usize) -> Report {
    let mut rep = Report::new();
    let mut matches: BTreeMap<&'static str, bool> = BTreeMap::new();
    for norm in Normalization::ALL {
        let key = match norm {
            Normalization::Bosonization => "bosonization",
            Normalization::Shifted => "shifted",
        };
        let mut all = true;
        for lam in partitions_upto(nmax).into_iter().filter(|l| !l.is_empty()) {
            let n = lam.size() as i64;
            let j = macdonald_j(&lam);
            for plus in [true, false] {
                let direct = lambda_mode(plus, n, &j).scale(&norm.prefactor(plus, n));
                let closed = if plus { lambda_top_plus(&lam) } else { lambda_top_minus(&lam) };
                all &= direct == SymFunc::constant(closed);
            }
        }
        matches.insert(key, all);
    }
    let matching: Vec<&str> = matches.iter().filter(|(_, &v)| v).map(|(k, _)| *k).collect();
    rep.check("top_modes_normalization", params! {"nmax" => nmax}, || {
        let note = format!("matching normalization: {}", if matching.is_empty() { "none".into() } else { matching.join(", ") });
        Ok(Outcome::Note(!matching.is_empty(), note))
    });
    for lam in partitions_upto(nmax).into_iter().filter(|l| !l.is_empty()) {
        rep.check("top_modes_bosonization", params! {"lambda" => lam}, || {
            let n = lam.size() as i64;
            let j = macdonald_j(&lam);
            let norm = Normalization::Bosonization;
            let p = lambda_mode(true, n, &j).scale(&norm.prefactor(true, n));
            let m = lambda_mode(false, n, &j).scale(&norm.prefactor(false, n));
            Ok(Outcome::all([
                Outcome::sf_eq(&p, &SymFunc::constant(lambda_top_plus(&lam))),
                Outcome::sf_eq(&m, &SymFunc::constant(lambda_top_minus(&lam))),
            ]))
        });
    }
    rep
}

/// `τ_λ` three ways for `|λ| ≤ nmax`.
pub fn verify_tau(nmax: usize) -> Report {
    let mut rep = Report::new();
    for n in 1..=nmax {
        let series = tau_from_series(n);
        for lam in partitions(n) {
            let s = series.get(&lam).cloned().unwrap_or_else(Coeff::zero);
            rep.check("tau_triple", params! {"lambda" => lam}, || {
                let c = tau_closed(&lam);
                let r = tau_recursive(&lam)?;
                Ok(Outcome::all([Outcome::coeff_eq(&c, &r), Outcome::coeff_eq(&c, &s)]))
            });
        }
    }
    rep
}

/// `Σ_{λ ⊢ n} q^{n(λ')} t^{n(λ)} Π_{s≠(1,1)}(1-B_s) / (c_λ c'_λ) · (u e_1[B_λ] - e_{-1}[B_λ]) / Π_s (1 - u B_s)`.
pub fn final_cauchy_sum(n: usize) -> Coeff {
    let u = Coeff::u();
    let mut acc = Coeff::zero();
    for lam in partitions(n) {
        let b = lam.b_alphabet();
        let w = Coeff::qt(lam.conjugate().n_stat() as i64, lam.n_stat() as i64);
        let num = &(&w * &tail_product(&lam)) * &(&(&u * &e1(&b)) - &e_minus1(&b));
        let den = b.iter().fold(&c_factor(&lam) * &cprime_factor(&lam), |s, x| &s * &one_minus(&(&u * x)));
        acc = &acc + &(&num / &den);
    }
    acc
}

/// The sum vanishes for `n ≥ 2`; at `n = 1` it equals `-1/((1-q)(1-t))`.
pub fn verify_final_cauchy(nmax: usize) -> Report {
    let mut rep = Report::new();
    for n in 1..=nmax {
        rep.check("final_cauchy", params! {"n" => n}, || {
            let s = final_cauchy_sum(n);
            if n == 1 {
                let expect = (&Coeff::one() / &(&one_minus(&Coeff::q()) * &one_minus(&Coeff::t()))).neg();
                let ok = s == expect;
                return Ok(Outcome::Note(ok, "n = 1: value -1/((1-q)(1-t)), the T_1 case".into()));
            }
            Ok(Outcome::coeff_zero(&s))
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
    fn tau_rows() {
        let t = Coeff::t();
        assert_eq!(tau_closed(&part(&[1])), &t - &Coeff::one());
        for n in 1..=4 {
            let expect = &Coeff::qt(0, n as i64 - 1) * &(&t - &Coeff::one());
            assert_eq!(tau_closed(&Partition::row(n)), expect);
            assert_eq!(tau_recursive(&Partition::row(n)).unwrap(), expect);
        }
    }

    #[test]
    fn down_fixes_one() {
        assert_eq!(down(&SymFunc::one()), SymFunc::one());
    }

    #[test]
    fn e_minus_one_of_row() {
        let b = part(&[2]).b_alphabet();
        assert_eq!(e_minus1(&b), &Coeff::one() + &Coeff::qt(-1, 0));
    }
}
