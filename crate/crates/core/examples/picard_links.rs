//! The Picard lattice of a blowup: (−1)-classes, their orbits under the
//! group, and the elementary links they produce.

use planar_rigidity::catalog::build;
use planar_rigidity::orbits::{general_position, small_orbits};
use planar_rigidity::picard::{class_orbits, invariant_rank, links_from_orbit, neg_one_classes, PermAction};
use planar_rigidity::projgroup::{closure, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    for n in 1..=8 {
        println!("blowup of {n} point(s): {} (−1)-classes", neg_one_classes(n)?.len());
    }

    // A seven-point orbit of C7:C3 gives the Bertini involution.
    let g = closure(&build("T_2_7")?.generators, DEFAULT_GROUP_CAP)?;
    let report = small_orbits(&g, 8)?;
    let seven = report.sporadic.iter().find(|o| o.size() == 7).expect("T_2_7 has seven-point orbits");
    let ok = general_position(seven.points())?.ok;
    let action = PermAction::from_group(&g, seven.points())?;
    println!("invariant rank after blowing up 7 points: {}", invariant_rank(&action));
    let orbits = class_orbits(&action, &neg_one_classes(7)?)?;
    println!("(−1)-class orbit sizes: {:?}", orbits.iter().map(Vec::len).collect::<Vec<_>>());
    for link in links_from_orbit(7, &action, ok)? {
        println!("{link}");
    }
    Ok(())
}
