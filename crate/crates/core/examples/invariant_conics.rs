//! Conics preserved by a group, and which small orbits lie on them.

use planar_rigidity::catalog::build;
use planar_rigidity::orbits::{invariant_conics, small_orbits};
use planar_rigidity::projgroup::{closure, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    for id in ["A4_MONO", "S4_MONO", "A5_I"] {
        let g = closure(&build(id)?.generators, DEFAULT_GROUP_CAP)?;
        let conics = invariant_conics(&g)?;
        println!("{id}: {} invariant conic(s)", conics.len());
        for c in &conics {
            let coeffs: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            println!("  coefficients on (x², y², z², xy, xz, yz): [{}]", coeffs.join(", "));
        }
        let report = small_orbits(&g, 8)?;
        for f in &report.families {
            println!("  family members on conics: {}", f.conic_orbits().count());
        }
    }
    Ok(())
}
