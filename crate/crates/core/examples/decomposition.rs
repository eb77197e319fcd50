//! Splits `K_{ν,μ}(p,q)` into branching coefficients times parabolic
//! analogues over the intermediate Levi-dominant weights.

use weylpq::{BiPoly, Context, Weight};

fn main() -> weylpq::Result<()> {
    let ctx = Context::parse("C3", "1,2")?;
    let nu = Weight::parse("0,2,0")?;
    let mu = Weight::parse("0,0,0")?;

    let mut total = BiPoly::zero();
    for kappa in ctx.enumerate_levi_highest_weights(&nu, &mu)? {
        let b = ctx.branching_poly(&nu, &kappa)?;
        let kbar = ctx.parabolic_lusztig(&kappa, &mu)?;
        if b.is_zero() || kbar.is_zero() {
            continue;
        }
        println!("kappa = {kappa:<10} b = {b:<20} Kbar = {kbar}");
        total += &(&b * &kbar);
    }
    let k = ctx.kpq(&nu, &mu)?;
    println!("sum = {total}");
    println!("K   = {k}");
    assert_eq!(total, k);

    let scan = ctx.conjecture_scan(&weylpq::verify::dominant_grid(3, 2), 4)?;
    println!(
        "branching positivity: {} dominant targets ({} negative), {} other targets ({} negative)",
        scan.dominant_targets,
        scan.dominant_violations.len(),
        scan.other_targets,
        scan.other_negative.len()
    );
    Ok(())
}
