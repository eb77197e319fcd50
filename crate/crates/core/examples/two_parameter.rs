//! The two-parameter analogue `K_{ν,μ}(p,q)` and its specializations.
//!
//! ```text
//! cargo run --example two_parameter -- C3 1,2 1,0,1 0,0,0
//! ```

use weylpq::{Context, Weight};

fn main() -> weylpq::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let ctx = Context::parse(&arg(0, "A2"), &arg(1, "1"))?;
    let nu = Weight::parse(&arg(2, "1,1"))?;
    let mu = Weight::parse(&arg(3, "0,0"))?;

    let k = ctx.kpq(&nu, &mu)?;
    println!("K(p,q)     = {k}");
    println!("K(q,q)     = {}", k.collapse_p_into_q());
    println!("K(1,q)     = {}", k.specialize(Some(1), None));
    println!("K(p,0)     = {}", k.specialize(None, Some(0)));
    println!("K(1,1)     = {}", k.specialize(Some(1), Some(1)));
    println!("K(p+1,q+1) = {}", k.shift_vars());
    Ok(())
}
