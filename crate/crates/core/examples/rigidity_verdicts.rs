//! Rigidity verdicts for every built-in group, with the witnessing link
//! when the plane is not rigid.

use planar_rigidity::catalog::{build, IDS};
use planar_rigidity::projgroup::{closure, DEFAULT_GROUP_CAP};
use planar_rigidity::rigidity::rigidity_verdict;

fn main() -> planar_rigidity::Result<()> {
    for id in IDS {
        let g = closure(&build(id)?.generators, DEFAULT_GROUP_CAP)?;
        let v = rigidity_verdict(&g)?;
        match &v.witness {
            None => println!("{id:<20} rigid ({} links checked)", v.candidates.iter().map(|c| c.links.len()).sum::<usize>()),
            Some(w) => println!("{id:<20} not rigid: {}", w.link),
        }
    }
    Ok(())
}
