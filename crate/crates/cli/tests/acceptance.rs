//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines show up in ordinary `cargo test` output.

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use qvir::macdonald::{verify_macdonald_core, verify_pieri_sums};
use qvir::report::{Report, Status};
use qvir::symfunc::SymFuncJson;
use qvir::whittaker::{t1_scale, verify_oracle, verify_whittaker};
use qvir::{duality, fock, geometry, partitions_upto, Partition, SymFunc};
use serde_json::Value;

fn merge(parts: impl IntoIterator<Item = Report>) -> Report {
    let mut r = Report::new();
    for p in parts {
        r.extend(p);
    }
    r
}

fn only(rep: &Report, keep: impl Fn(&str) -> bool) -> Report {
    let mut r = rep.clone();
    r.entries.retain(|e| keep(&e.identity));
    r
}

fn nonempty_upto(n: usize) -> impl Iterator<Item = Partition> {
    partitions_upto(n).into_iter().filter(|l| !l.is_empty())
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(rep: &Report, note: &str) -> Outcome {
    let fails: Vec<String> = rep
        .failures()
        .take(5)
        .map(|e| format!("{} {}", e.identity, serde_json::to_string(&e.params).unwrap()))
        .collect();
    let mut detail = format!("{} checks", rep.len());
    if !note.is_empty() {
        detail.push_str("; ");
        detail.push_str(note);
    }
    if !fails.is_empty() {
        detail.push_str(&format!("; failing: {}", fails.join(", ")));
    }
    Outcome { ok: !rep.is_empty() && rep.passed(), detail }
}

fn criterion_1() -> Outcome {
    from_report(&verify_oracle(5), "solved system has full rank p(n) for n <= 5")
}

fn criterion_2_3() -> (Outcome, Outcome) {
    let rep = verify_whittaker(5, 3);
    let cond = |id: &str| id == "T1_vG" || id == "Td_vG_zero";
    let two = only(&rep, cond);
    let note = format!("T_1 v_G(n+1) = c v_G(n) with c = {} fixed by the bosonization", t1_scale());
    (from_report(&two, &note), from_report(&only(&rep, |id| !cond(id)), "n <= 5, r <= 3"))
}

fn criterion_4() -> Outcome {
    let rep = merge([verify_macdonald_core(6), fock::verify_eta0(6)]);
    from_report(&rep, "degree <= 6")
}

fn criterion_5() -> Outcome {
    let rep = merge(nonempty_upto(5).chain([Partition::empty()]).map(|mu| {
        let order = 2 * mu.size() + 4;
        verify_pieri_sums(&mu, 3, 3, order)
    }));
    from_report(&rep, "|mu| <= 5, r <= 3")
}

fn criterion_6() -> Outcome {
    let rep = merge([fock::verify_commutations(3, 4), fock::verify_psi_t_relation(4)]);
    from_report(&rep, "degree <= 3, series order <= 4; psi-T degree <= 4")
}

fn criterion_7() -> Outcome {
    from_report(&fock::verify_e_hat(2, 4, 5_000_000), "r <= 2, degree <= 4")
}

fn criterion_8() -> Outcome {
    let special = only(&verify_macdonald_core(6), |id| id == "specialization");
    let cauchy = duality::verify_final_cauchy(4);
    let nonzero_at_one = cauchy.entries.iter().any(|e| e.note.is_some());
    let rep = merge([special, duality::verify_tau(5), cauchy, duality::verify_v_down(5)]);
    let note = if nonzero_at_one {
        "Cauchy sum vanishes for 2 <= n <= 4; at n = 1 it equals the T_1 value -1/((1-q)(1-t)), checked exactly"
    } else {
        ""
    };
    from_report(&rep, note)
}

fn criterion_9() -> Outcome {
    let mut parts = vec![geometry::verify_characters(6)];
    parts.extend((0..=4).map(geometry::verify_v0_geometry));
    parts.extend(nonempty_upto(6).map(|l| geometry::verify_nabla_linebundle(&l)));
    from_report(&merge(parts), "characters |lambda| <= 6, v0 n <= 4, nabla |lambda| <= 6")
}

fn qvir(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qvir"));
    cmd.args(args).env_remove("QVIR_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    cmd.output().expect("running qvir")
}

/// Parsed `verify` output with timings removed.
fn untimed(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("verify prints JSON");
    for e in v["entries"].as_array_mut().expect("entries") {
        e.as_object_mut().unwrap().remove("millis");
    }
    v
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    let plain = qvir(&["verify"], None);
    if plain.status.code() != Some(0) {
        bad.push(format!("verify exited {:?}", plain.status.code()));
    }
    let again = qvir(&["verify"], None);
    if untimed(&plain) != untimed(&again) {
        bad.push("two runs differ".to_string());
    }
    let dir = tempfile::tempdir().unwrap();
    let cold = qvir(&["verify"], Some(dir.path()));
    let records = std::fs::read_dir(dir.path()).unwrap().count();
    let warm = qvir(&["verify"], Some(dir.path()));
    if records == 0 {
        bad.push("cold run wrote no cache records".to_string());
    }
    if untimed(&cold) != untimed(&plain) || untimed(&warm) != untimed(&plain) {
        bad.push("cold and warm cache runs differ".to_string());
    }
    if cold.status.code() != Some(0) || warm.status.code() != Some(0) {
        bad.push("cached verify failed".to_string());
    }

    let mut round_trips = 0;
    for lam in ["3,1", "2,2,1", "4"] {
        for kind in ["P", "J", "H"] {
            let out = qvir(&["compute", kind, "--partition", lam], None);
            let text = String::from_utf8(out.stdout).unwrap();
            let j: SymFuncJson = serde_json::from_str(&text).unwrap();
            let back = SymFunc::from_json(&j).unwrap().to_json();
            if format!("{}\n", serde_json::to_string(&back).unwrap()) != text {
                bad.push(format!("{kind} {lam} JSON not bit-exact"));
            }
            qvir(&["cache", "put", "--kind", kind, "--partition", lam], Some(dir.path()));
            let cached = qvir(&["cache", "get", "--kind", kind, "--partition", lam], Some(dir.path()));
            if cached.stdout != text.as_bytes() {
                bad.push(format!("cached {kind} {lam} differs from computed"));
            }
            round_trips += 1;
        }
    }
    let raw: Value = serde_json::from_slice(&plain.stdout).unwrap();
    match serde_json::from_value::<Report>(serde_json::json!({ "entries": raw["entries"] })) {
        Ok(rep) => {
            if serde_json::to_value(&rep).unwrap()["entries"] != raw["entries"] {
                bad.push("report JSON does not round-trip".to_string());
            }
            if rep.entries.iter().any(|e| e.status != Status::Pass) {
                bad.push("report has failing entries".to_string());
            }
        }
        Err(e) => bad.push(format!("report JSON does not parse: {e}")),
    }
    let ok = bad.is_empty();
    let detail = if ok {
        format!("verify all exits 0, repeat and cold/warm cache runs identical, {round_trips} JSON round-trips bit-exact")
    } else {
        bad.join("; ")
    };
    Outcome { ok, detail }
}

fn main() {
    let start = Instant::now();
    let (c2, c3) = criterion_2_3();
    let results = [
        (1, "oracle solve equals v_G and the solution is unique", criterion_1()),
        (2, "Whittaker conditions on v_G", c2),
        (3, "equivalent forms of the Whittaker conditions", c3),
        (4, "Macdonald core identities", criterion_4()),
        (5, "Pieri moment and generating-function identities", criterion_5()),
        (6, "current commutation relations and psi-T relation", criterion_6()),
        (7, "constant-term realization of E_r", criterion_7()),
        (8, "specialization, tau, final Cauchy sum, duality on v_G", criterion_8()),
        (9, "fixed-point characters, modified expansion of v0, nabla eigenvalues", criterion_9()),
        (10, "engineering: determinism, cache, JSON", criterion_10()),
    ];
    let mut all = true;
    for (n, what, o) in &results {
        all &= o.ok;
        println!("criterion {n:>2}: {} {what} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} in {:.1?}", if all { "all criteria pass" } else { "FAILURES" }, start.elapsed());
    if !all {
        std::process::exit(1);
    }
}
