//! Translating by multiples of `ρ◇` until `K_{ν+kρ◇, μ+kρ◇}` settles, and the
//! `p`-power factorization of the stable branching coefficients.

use weylpq::stable::{delta_stab, DEFAULT_STAB_CAP};
use weylpq::{Context, Weight};

fn main() -> weylpq::Result<()> {
    for (system, levi, nu, mu) in [("C2", "1", "1,1", "1,-1"), ("C3", "1,2", "1,0,1", "0,0,0"), ("D4", "1,2,3", "0,1,0,0", "0,0,0,0")] {
        let ctx = Context::parse(system, levi)?;
        let (nu, mu) = (Weight::parse(nu)?, Weight::parse(mu)?);
        let r = ctx.kpq_stab(&nu, &mu, DEFAULT_STAB_CAP)?;
        println!("{system} Levi {{{levi}}}: stable after k = {}, c = {:?}", r.k_stable, r.hypothesis_c.map(|c| c.to_string()));
        println!("  K^stab = {}", r.value);
        if ctx.par.is_levi_dominant(&mu) && r.hypothesis_c.is_some() {
            println!("  factorization holds: {}", ctx.factorization_check(&nu, &mu)?);
        }
    }

    let rs = "B3".parse()?;
    let d = delta_stab(&rs, &Weight::parse("1,0,0")?, &Weight::parse("1,0,0")?, &Weight::parse("0,0,0")?, DEFAULT_STAB_CAP)?;
    println!("B3 along delta = (1,0,0): Levi {:?}, K^stab = {}", d.levi, d.result.value);
    Ok(())
}
