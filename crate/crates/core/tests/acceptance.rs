//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::process::Command;
use std::time::Instant;

use weylpq::cli::payload_section;
use weylpq::verify::{self, IdentityReport, VerifyConfig};
use weylpq::{BiPoly, Context, Weight};

type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;

struct Verdict {
    passed: bool,
    detail: String,
}

fn summarize(reports: &[IdentityReport]) -> Verdict {
    let mut detail = Vec::new();
    for r in reports {
        let mut line = format!("{}: {}/{} failed", r.name, r.failed, r.checked);
        if let Some(f) = r.failures.first() {
            line += &format!(" (e.g. {} levi={:?} {} {})", f.system, f.levi, f.point, f.detail);
        }
        detail.push(line);
    }
    Verdict {
        passed: reports.iter().all(IdentityReport::passed),
        detail: detail.join("; "),
    }
}

fn pick(reports: Vec<IdentityReport>, names: &[&str]) -> Vec<IdentityReport> {
    let out: Vec<IdentityReport> = reports.into_iter().filter(|r| names.contains(&r.name.as_str())).collect();
    assert_eq!(out.len(), names.len(), "missing identity among {names:?}");
    out
}

fn poly(s: &str) -> BiPoly {
    s.parse().unwrap()
}

fn a2_adjoint_example() -> Verdict {
    let nu = Weight(vec![1, 1]);
    let mu = Weight(vec![0, 0]);
    let mut problems = Vec::new();
    for levi in [vec![], vec![0], vec![1], vec![0, 1]] {
        let ctx = Context::new("A2".parse().unwrap(), &levi).unwrap();
        let k = ctx.kpq(&nu, &mu).unwrap();
        if k.collapse_p_into_q() != poly("q + q^2") {
            problems.push(format!("levi {levi:?}: K(q,q) = {}", k.collapse_p_into_q()));
        }
        let shifted = k.shift_vars().collapse_p_into_q();
        if shifted != poly("2 + 3*q + q^2") {
            problems.push(format!("levi {levi:?}: K(q+1,q+1) = {shifted}"));
        }
        let mults = weylpq::charge::freudenthal(&ctx.rs, &nu).unwrap();
        if mults.get(&mu) != Some(&2) {
            problems.push("zero weight multiplicity is not 2".into());
        }
        let expected = [
            (vec![0, 0], "1"),
            (vec![2, -1], "q"),
            (vec![-1, 2], "q"),
            (vec![1, 1], "q + q^2"),
        ];
        let mut total = BiPoly::zero();
        for (wt, m) in &mults {
            let chi = ctx.chi(wt, &mu).collapse_p_into_q();
            let want = expected.iter().find(|(w, _)| *w == wt.0).map(|(_, c)| poly(c)).unwrap_or_default();
            if chi != want {
                problems.push(format!("levi {levi:?}: chi({wt}) = {chi}"));
            }
            total.add_scaled(&chi, &(*m).into());
        }
        if total != poly("2 + 3*q + q^2") {
            problems.push(format!("levi {levi:?}: chi sum = {total}"));
        }
    }
    Verdict {
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            "K(q,q) = q + q^2, K(q+1,q+1) = 2 + 3q + q^2 = 1 + 1 + q + q + (q^2 + q)".into()
        } else {
            problems.join("; ")
        },
    }
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_weylpq");
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let run = |extra: &[&str]| {
        let out = Command::new(bin)
            .arg("verify")
            .args(extra)
            .env_remove("WEYLPQ_CACHE")
            .output()
            .expect("binary runs");
        let stdout = String::from_utf8(out.stdout).unwrap();
        (out.status.code(), payload_section(&stdout).unwrap_or_default(), stdout)
    };
    let cache_arg = cache.to_str().unwrap();
    let first = run(&["--no-cache"]);
    let second = run(&["--cache", cache_arg]);
    let third = run(&["--cache", cache_arg]);
    let hit = third.2.contains("\"cached\":true");
    let same = !first.1.is_empty() && first.1 == second.1 && second.1 == third.1;
    let codes = first.0 == second.0 && second.0 == third.0 && matches!(first.0, Some(0 | 1));
    Verdict {
        passed: same && hit && codes,
        detail: format!(
            "payload {} bytes, identical across uncached/cold/warm runs: {same}, warm run served from cache: {hit}, exit codes {:?}/{:?}/{:?}",
            first.1.len(),
            first.0,
            second.0,
            third.0
        ),
    }
}

fn main() {
    let cfg = VerifyConfig::default();
    let ctxs = verify::contexts(&cfg.systems).unwrap();
    let criteria: Vec<(&str, Check)> = vec![
        ("A2 adjoint example", Box::new(a2_adjoint_example)),
        ("decomposition", Box::new(|| summarize(&verify::decomposition_sweep(&ctxs, &cfg)))),
        (
            "specializations",
            Box::new(|| {
                let all = verify::specialization_sweep(&ctxs, &cfg);
                let mut v = summarize(&pick(all.clone(), &[verify::K0Q_DIAMOND, "K(p,0) = b(p)", "K(q,q) = K(q)"]));
                let coset = pick(all, &[verify::K0Q_COSET]);
                v.detail += &format!("; restricted to the Levi root coset: {}/{} failed", coset[0].failed, coset[0].checked);
                v
            }),
        ),
        ("positivity", Box::new(|| summarize(&verify::positivity_sweep(&ctxs, &cfg)))),
        (
            "colored-root triangle",
            Box::new(|| {
                let mut r = verify::colored_sweep(&ctxs, &cfg);
                r.extend(pick(verify::shifted_sweep(&ctxs, &cfg), &["dec(q+1)"]));
                summarize(&r)
            }),
        ),
        ("stabilization", Box::new(|| summarize(&verify::stabilization_sweep(&cfg).unwrap()))),
        ("infrastructure identities", Box::new(|| summarize(&verify::infrastructure_sweep(&ctxs, &cfg).unwrap()))),
        ("oracle agreement", Box::new(|| summarize(&verify::oracle_sweep(&ctxs, &cfg).unwrap()))),
        ("Hall-Littlewood", Box::new(|| summarize(&verify::hall_sweep(&["A2", "C2", "C3"], 2).unwrap()))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        if !v.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<27} {} [{:.1}s] {}",
            i + 1,
            name,
            if v.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
