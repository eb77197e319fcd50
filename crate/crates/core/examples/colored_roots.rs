//! Colored-root statistics and the crystal-style sum for `K(p+1,q+1)`.

use weylpq::charge::freudenthal;
use weylpq::kostant::simplex_box;
use weylpq::{Context, Weight};

fn main() -> weylpq::Result<()> {
    let ctx = Context::parse("A2", "1")?;
    println!("beta     N(p,q)                      R(p,q)");
    for beta in simplex_box(2, 2) {
        println!("{:<8} {:<27} {}", beta.to_string(), ctx.n_pq(&beta).to_string(), ctx.r_pq(&beta));
    }

    let nu = Weight::parse("1,1")?;
    let mu = Weight::parse("0,0")?;
    println!("\nweights of V({nu}) above {mu}:");
    for (wt, m) in &freudenthal(&ctx.rs, &nu)? {
        let chi = ctx.chi(wt, &mu);
        if !chi.is_zero() {
            println!("  {wt:<8} mult {m}  chi = {chi}");
        }
    }
    println!("sum        = {}", ctx.crystal_sum(&nu, &mu)?);
    println!("K(p+1,q+1) = {}", ctx.kpq(&nu, &mu)?.shift_vars());
    Ok(())
}
