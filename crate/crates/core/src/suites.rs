//! Named verification suites, assembled from the per-module checks.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::partition::{partitions_upto, Partition};
use crate::report::Report;
use crate::{duality, fock, geometry, macdonald, whittaker};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Whittaker,
    Macdonald,
    Fock,
    Geometry,
    Appendix,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Macdonald, Suite::Fock, Suite::Whittaker, Suite::Geometry, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Whittaker => "whittaker",
            Suite::Macdonald => "macdonald",
            Suite::Fock => "fock",
            Suite::Geometry => "geometry",
            Suite::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Suite, String> {
        [Suite::All]
            .into_iter()
            .chain(Suite::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub nmax: usize,
    pub rmax: usize,
    /// Mode range for the commutation checks.
    pub trunc: usize,
    /// Enumeration budget for the constant-term realization of `Ê_r`.
    pub ct_budget: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { nmax: 4, rmax: 3, trunc: 4, ct_budget: 5_000_000 }
    }
}

type Job = Box<dyn Fn() -> Report + Send + Sync>;

fn nonempty_upto(n: usize) -> Vec<Partition> {
    partitions_upto(n).into_iter().filter(|l| !l.is_empty()).collect()
}

fn jobs(suite: Suite, c: SuiteConfig) -> Vec<Job> {
    let n = c.nmax;
    let r = c.rmax;
    let mut v: Vec<Job> = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::PARTS {
                v.extend(jobs(s, c));
            }
        }
        Suite::Macdonald => {
            v.push(Box::new(move || macdonald::verify_macdonald_core(n)));
            for mu in partitions_upto(n) {
                let order = 2 * mu.size() + 4;
                v.push(Box::new(move || macdonald::verify_pieri_sums(&mu, r, 3, order)));
            }
        }
        Suite::Fock => {
            v.push(Box::new(move || fock::verify_degree_homogeneity(n)));
            v.push(Box::new(move || fock::verify_heisenberg(n)));
            v.push(Box::new(move || fock::verify_t_from_lambda(n)));
            v.push(Box::new(move || fock::verify_commutations(n.min(3), c.trunc)));
            v.push(Box::new(move || fock::verify_psi_t_relation(n)));
            v.push(Box::new(move || fock::verify_eta0(n)));
            v.push(Box::new(move || fock::verify_eta1(n)));
            v.push(Box::new(move || fock::verify_e_hat(r.min(2), n, c.ct_budget)));
        }
        Suite::Whittaker => {
            v.push(Box::new(move || whittaker::verify_whittaker(n, r)));
            v.push(Box::new(move || whittaker::verify_oracle(n)));
        }
        Suite::Geometry => {
            v.push(Box::new(move || geometry::verify_characters(n)));
            for k in 0..=n {
                v.push(Box::new(move || geometry::verify_v0_geometry(k)));
            }
            for lam in nonempty_upto(n) {
                v.push(Box::new(move || geometry::verify_nabla_linebundle(&lam)));
            }
            let small = n.min(3);
            for mu in nonempty_upto(small) {
                for f in nonempty_upto(small) {
                    let mu = mu.clone();
                    v.push(Box::new(move || geometry::verify_delta_schur(&mu, &f)));
                }
            }
            v.push(Box::new(move || geometry::h_tilde_integrality(n)));
        }
        Suite::Appendix => {
            v.push(Box::new(move || duality::verify_v_down(n)));
            v.push(Box::new(move || duality::verify_lambda_conjugation(n, n)));
            v.push(Box::new(move || duality::verify_tau(n)));
            v.push(Box::new(move || duality::verify_top_modes(n)));
            v.push(Box::new(move || duality::verify_final_cauchy(n)));
        }
    }
    v
}

/// Runs a suite on the current rayon pool. Entry order depends only on the
/// suite and the configuration.
pub fn run_suite(suite: Suite, cfg: SuiteConfig) -> Report {
    let parts: Vec<Report> = jobs(suite, cfg).par_iter().map(|j| j()).collect();
    let mut out = Report::new();
    for p in parts {
        out.extend(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in [Suite::All].into_iter().chain(Suite::PARTS) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn vacuous_run() {
        let cfg = SuiteConfig { nmax: 0, ..SuiteConfig::default() };
        assert!(run_suite(Suite::All, cfg).passed());
    }
}
