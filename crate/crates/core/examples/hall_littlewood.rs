//! The transition matrix between the two-parameter Hall–Littlewood basis and
//! Weyl characters, printed as CSV, and its exact inverse.

use weylpq::hall::close_downward;
use weylpq::verify::dominant_grid;
use weylpq::Context;

fn main() -> weylpq::Result<()> {
    let ctx = Context::parse("C2", "1")?;
    let set = close_downward(&ctx.rs, &dominant_grid(2, 2))?;
    let m = ctx.transition_matrix(&set)?;
    print!("{}", m.to_csv()?);
    let inv = m.inverse();
    println!("\ninverse:");
    print!("{}", inv.to_csv()?);
    assert!(m.mul(&inv).is_identity());
    Ok(())
}
