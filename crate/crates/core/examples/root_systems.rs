//! Cartan data, positive roots and parabolic splittings for a few systems.
//!
//! ```text
//! cargo run --example root_systems
//! ```

use weylpq::rootsys::parse_levi;
use weylpq::RootSystem;

fn main() -> weylpq::Result<()> {
    for name in ["A3", "B3", "C3", "D4", "G2"] {
        let rs: RootSystem = name.parse()?;
        println!("{rs}: |W| = {}, {} positive roots, rho = {}", rs.weyl_order, rs.num_positive_roots(), rs.rho);
        for row in &rs.cartan {
            println!("    {row:?}");
        }
    }

    let rs: RootSystem = "C3".parse()?;
    let levi = parse_levi("1,2", rs.rank)?;
    let par = rs.parabolic(&levi)?;
    println!("\nC3 with Levi {{1,2}}:");
    println!("  Levi roots:       {:?}", par.levi_positive_roots.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  complement roots: {:?}", par.complement_roots.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  rho_bar = {}, rho_diamond = {}", par.rho_bar, par.rho_diamond);
    Ok(())
}
