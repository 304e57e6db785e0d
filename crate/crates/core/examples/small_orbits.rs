//! All orbits with at most eight points, including one-parameter families,
//! for the monomial A4 group.

use planar_rigidity::catalog::build;
use planar_rigidity::orbits::{small_orbits, ExceptionalReason};
use planar_rigidity::projgroup::{closure, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    let g = closure(&build("A4_MONO")?.generators, DEFAULT_GROUP_CAP)?;
    let report = small_orbits(&g, 8)?;
    println!("sporadic orbit sizes: {:?}", report.sporadic_sizes());
    for o in &report.sporadic {
        let pts: Vec<String> = o.points().iter().map(|p| p.to_string()).collect();
        println!("  {}", pts.join("  "));
    }
    for f in &report.families {
        println!("family of generic size {} on {}", f.generic_orbit_size, f.line);
        println!("  generic point {}", f.generic_point(&g)?);
        for e in &f.exceptional {
            let why = match &e.reason {
                ExceptionalReason::LargerStabilizer => "larger stabilizer".to_string(),
                ExceptionalReason::OnInvariantConic(c) => {
                    let c: Vec<String> = c.iter().map(|a| a.to_string()).collect();
                    format!("on the invariant conic [{}]", c.join(", "))
                }
            };
            println!("  exceptional orbit of size {} ({why})", e.orbit.size());
        }
    }
    Ok(())
}
