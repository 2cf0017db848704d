//! Torus characters at the fixed points of the Hilbert scheme of points in
//! the plane, and the identities they satisfy on the symmetric-function side.

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Var};
use crate::macdonald::{c_factor, c_factor_at, cprime_factor, cprime_factor_at, delta_sym, macdonald_j, modified_h, nabla};
use crate::params;
use crate::partition::{partitions, partitions_upto, Partition};
use crate::report::{Outcome, Report};
use crate::symfunc::{elementary, h_series, schur, SymFunc};
use crate::whittaker::v0_closed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointChar {
    pub partition: Partition,
    pub tautological: Coeff,
    pub cotangent_alt: Coeff,
}

impl FixedPointChar {
    pub fn new(lam: &Partition) -> FixedPointChar {
        FixedPointChar {
            partition: lam.clone(),
            tautological: ch_tautological(lam),
            cotangent_alt: ch_cotangent_alt(lam),
        }
    }
}

fn one_minus(c: &Coeff) -> Coeff {
    &Coeff::one() - c
}

fn t_inv() -> Vec<(Var, Coeff)> {
    vec![(Var::T, Coeff::qt(0, -1))]
}

/// `Σ_s q^{j-1} t^{i-1}`.
pub fn ch_tautological(lam: &Partition) -> Coeff {
    lam.boxes()
        .iter()
        .fold(Coeff::zero(), |s, b| &s + &Coeff::qt(b.j as i64 - 1, b.i as i64 - 1))
}

/// `Π_s (1 - t^{-l} q^{a+1})(1 - t^{l+1} q^{-a})`.
pub fn ch_cotangent_alt(lam: &Partition) -> Coeff {
    let mut r = Coeff::one();
    for (_, a, l) in lam.arms_legs() {
        let (a, l) = (a as i64, l as i64);
        r = &r * &(&one_minus(&Coeff::qt(a + 1, -l)) * &one_minus(&Coeff::qt(-a, l + 1)));
    }
    r
}

/// `c_λ(q^{-1}, t) c'_λ(q, t^{-1})`.
pub fn cotangent_via_c(lam: &Partition) -> Coeff {
    let q = Coeff::q();
    let t = Coeff::t();
    let qi = Coeff::qt(-1, 0);
    let ti = Coeff::qt(0, -1);
    &c_factor_at(lam, &qi, &t) * &cprime_factor_at(lam, &q, &ti)
}

/// `t → t^{-1}` in the coefficients, then `p_r ↦ p_r / (1 - t^{-r})`.
pub fn bold_transform(f: &SymFunc) -> SymFunc {
    f.substitute(&t_inv())
        .expect("monomial substitution")
        .pleth_diag(|r| &Coeff::one() / &one_minus(&Coeff::qt(0, -(r as i64))))
}

/// The `w^n` part of `exp(Σ p_m w^m / (m (1-q^m)(1-t^m)))`.
pub fn bold_v0_closed(n: usize) -> SymFunc {
    let mut out = SymFunc::zero();
    for rho in partitions(n) {
        let mut c = &Coeff::one() / &Coeff::from_big(rho.z_stat());
        for &m in rho.parts() {
            let m = m as i64;
            c = &c / &(&one_minus(&Coeff::qt(m, 0)) * &one_minus(&Coeff::qt(0, m)));
        }
        out.add_term(rho, &c);
    }
    out
}

/// `Σ_{λ ⊢ n} H̃_λ / (c_λ(q^{-1},t) c'_λ(q,t^{-1}))`.
pub fn v0_geometric(n: usize) -> SymFunc {
    let mut out = SymFunc::zero();
    for lam in partitions(n) {
        out = out.add(&modified_h(&lam).scale(&(&Coeff::one() / &cotangent_via_c(&lam))));
    }
    out
}

/// Hall inner product against `s_ν`, i.e. the Schur coefficient of `f`.
pub fn schur_coeff(f: &SymFunc, nu: &Partition) -> Coeff {
    let s = schur(nu);
    let mut acc = Coeff::zero();
    for (lam, c) in f.terms() {
        let d = s.coeff(lam);
        if !d.is_zero() {
            acc = &acc + &(&(c * &d) * &Coeff::from_big(lam.z_stat()));
        }
    }
    acc
}

pub fn verify_characters(n: usize) -> Report {
    let mut rep = Report::new();
    for lam in partitions_upto(n) {
        rep.check("tautological_character", params! {"lambda" => lam}, || {
            let ch = ch_tautological(&lam);
            let via_b: Coeff = lam
                .b_alphabet()
                .iter()
                .map(|b| b.substitute(&t_inv()))
                .collect::<std::result::Result<Vec<_>, _>>()?
                .iter()
                .fold(Coeff::zero(), |s, b| &s + b);
            let monomials = ch.num().len();
            Ok(Outcome::all([
                Outcome::coeff_eq(&ch, &via_b),
                Outcome::from_bool(monomials == lam.size() || lam.is_empty() && ch.is_zero()),
            ]))
        });
        rep.check("cotangent_character", params! {"lambda" => lam}, || {
            let ch = ch_cotangent_alt(&lam);
            let c = c_factor(&lam).substitute(&[(Var::Q, Coeff::qt(-1, 0))])?;
            let cp = cprime_factor(&lam).substitute(&t_inv())?;
            Ok(Outcome::all([
                Outcome::coeff_eq(&ch, &cotangent_via_c(&lam)),
                Outcome::coeff_eq(&ch, &(&c * &cp)),
            ]))
        });
    }
    rep
}

/// `Σ_{λ ⊢ n} H̃_λ / (c_λ(q^{-1},t) c'_λ(q,t^{-1}))` against the closed
/// exponential, and the bold image of `v_n^{(0)}`, which carries `(-t)^n`.
pub fn verify_v0_geometry(n: usize) -> Report {
    let mut rep = Report::new();
    rep.check("H_tilde_expansion_of_bold_v0", params! {"n" => n}, || {
        Ok(Outcome::sf_eq(&v0_geometric(n), &bold_v0_closed(n)))
    });
    rep.check("bold_transform_of_v0", params! {"n" => n}, || {
        let sign = Coeff::qt(0, n as i64).scale_int(if n % 2 == 0 { 1 } else { -1 });
        Ok(Outcome::sf_eq(&bold_transform(&v0_closed(n)), &bold_v0_closed(n).scale(&sign)))
    });
    rep
}

/// `Π_s B_s(q,t^{-1}) = q^{n(λ')} t^{n(λ)} = e_n[B_λ(q,t^{-1})]`, and `Δ_{e_n} = ∇` on `J_λ`.
pub fn verify_nabla_linebundle(lam: &Partition) -> Report {
    let mut rep = Report::new();
    let n = lam.size();
    rep.check("determinant_bundle_character", params! {"lambda" => lam}, || {
        let b: Vec<Coeff> = lam
            .b_alphabet()
            .iter()
            .map(|x| x.substitute(&t_inv()))
            .collect::<std::result::Result<_, _>>()?;
        let prod = b.iter().fold(Coeff::one(), |s, x| &s * x);
        let expect = Coeff::qt(lam.conjugate().n_stat() as i64, lam.n_stat() as i64);
        let en = elementary(n).eval_on_alphabet(&b);
        Ok(Outcome::all([Outcome::coeff_eq(&prod, &expect), Outcome::coeff_eq(&en, &expect)]))
    });
    rep.check("delta_en_is_nabla", params! {"lambda" => lam}, || {
        let j = macdonald_j(lam);
        Ok(Outcome::sf_eq(&delta_sym(&elementary(n), &j), &nabla(&j)))
    });
    rep
}

/// `Δ_{s_f} J_μ = s_f[B_μ] J_μ`, with `s_f[B_μ]` from Jacobi-Trudi on the
/// complete functions of `B_μ` and compared to the power-sum evaluation.
pub fn verify_delta_schur(mu: &Partition, f: &Partition) -> Report {
    let mut rep = Report::new();
    rep.check("delta_schur_eigenvalue", params! {"mu" => mu, "f" => f}, || {
        let b = mu.b_alphabet();
        let l = f.len();
        let h = h_series(&b, f.size() + l);
        let hh = |k: i64| if k < 0 { Coeff::zero() } else { h[k as usize].clone() };
        let m: Vec<Vec<Coeff>> = (0..l)
            .map(|i| (0..l).map(|j| hh(f.parts()[i] as i64 - i as i64 + j as i64)).collect())
            .collect();
        let jt = det(m);
        let s = schur(f);
        let direct = s.eval_on_alphabet(&b);
        let j = macdonald_j(mu);
        Ok(Outcome::all([
            Outcome::coeff_eq(&jt, &direct),
            Outcome::sf_eq(&delta_sym(&s, &j), &j.scale(&jt)),
        ]))
    });
    rep
}

fn det(mut m: Vec<Vec<Coeff>>) -> Coeff {
    let n = m.len();
    let mut d = Coeff::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Coeff::zero() };
        if p != c {
            m.swap(p, c);
            d = d.neg();
        }
        d = &d * &m[c][c];
        let inv = &Coeff::one() / &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let s = &f * &m[c][j];
                m[i][j] = &m[i][j] - &s;
            }
        }
    }
    d
}

/// Informational: whether the Schur coefficients of `H̃_λ` are Laurent
/// polynomials with integer coefficients. Always reported as passing.
pub fn h_tilde_integrality(n: usize) -> Report {
    let mut rep = Report::new();
    for lam in partitions_upto(n) {
        rep.check("H_tilde_integrality_smoke", params! {"lambda" => lam}, || {
            let h = modified_h(&lam);
            let bad: Vec<String> = partitions(lam.size())
                .into_iter()
                .filter(|nu| !schur_coeff(&h, nu).den().is_one())
                .map(|nu| nu.to_string())
                .collect();
            let note = if bad.is_empty() {
                "integral".to_string()
            } else {
                format!("non-integral at {}", bad.join(" "))
            };
            Ok(Outcome::Note(true, note))
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
    fn characters() {
        let q = Coeff::q();
        let t = Coeff::t();
        assert!(ch_tautological(&part(&[1])).is_one());
        assert_eq!(ch_tautological(&part(&[2, 1])), &(&Coeff::one() + &q) + &t);
        assert!(ch_tautological(&Partition::empty()).is_zero());
        assert_eq!(ch_cotangent_alt(&part(&[1])), &one_minus(&q) * &one_minus(&t));
        assert!(ch_cotangent_alt(&Partition::empty()).is_one());
    }

    #[test]
    fn bold_examples() {
        let q = Coeff::q();
        let p1 = SymFunc::p(part(&[1]));
        let f = p1.scale(&(&Coeff::one() / &one_minus(&q)));
        let expect = p1.scale(&(&Coeff::one() / &(&one_minus(&q) * &one_minus(&Coeff::qt(0, -1)))));
        assert_eq!(bold_transform(&f), expect);
        assert_eq!(bold_transform(&SymFunc::one()), SymFunc::one());
    }

    #[test]
    fn h_tilde_schur_coefficients() {
        let q = Coeff::q();
        let t = Coeff::t();
        let h2 = modified_h(&part(&[2]));
        assert!(schur_coeff(&h2, &part(&[2])).is_one());
        assert_eq!(schur_coeff(&h2, &part(&[1, 1])), q);
        let h11 = modified_h(&part(&[1, 1]));
        assert_eq!(schur_coeff(&h11, &part(&[1, 1])), t);
    }
}
