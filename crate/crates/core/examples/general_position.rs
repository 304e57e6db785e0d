//! General position of orbits: no three points on a line, no six on a conic,
//! no eight on a cubic singular at one of them.

use planar_rigidity::catalog::{build, fixtures};
use planar_rigidity::orbits::{general_position, orbit};
use planar_rigidity::projgroup::{closure, ProjPoint, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    let s4 = closure(&build("S4_MONO")?.generators, DEFAULT_GROUP_CAP)?;
    for v in [[1, 1, 1], [0, 1, 1]] {
        let p = ProjPoint::from_ints(v)?;
        let o = orbit(&s4, &p, 8)?;
        println!("S4 orbit of {p}: {} points, {}", o.size(), general_position(o.points())?);
    }
    // (0:1:1), (1:-1:0) and (1:0:-1) all lie on x + y + z = 0.

    for (i, o) in fixtures().hessian_orbits.iter().enumerate() {
        println!("E108 orbit {}: {}", i + 1, general_position(o)?);
    }
    Ok(())
}
