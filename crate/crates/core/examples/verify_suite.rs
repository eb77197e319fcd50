//! A reduced run of the identity sweeps.
//!
//! ```text
//! cargo run --release --example verify_suite -- A2,B2,G2 2 4
//! ```

use weylpq::verify::{run_all, VerifyConfig};

fn main() -> weylpq::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut cfg = VerifyConfig::default();
    if let Some(s) = args.first() {
        cfg.systems = s.split(',').map(str::to_string).collect();
    }
    if let Some(l) = args.get(1) {
        cfg.level = l.parse().expect("level");
    }
    if let Some(b) = args.get(2) {
        cfg.mu_box = b.parse().expect("box");
    }
    let report = run_all(&cfg)?;
    for r in &report.identities {
        println!("{} {:<48} {:>6} checked {:>6} failed", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.checked, r.failed);
        if let Some(f) = r.failures.first() {
            println!("     first: {} levi {:?} {} {}", f.system, f.levi, f.point, f.detail);
        }
    }
    Ok(())
}
