//! Every built-in group with its conductor, orders and action type.

use planar_rigidity::catalog::{build, IDS};
use planar_rigidity::projgroup::{closure, DEFAULT_GROUP_CAP};
use planar_rigidity::rigidity::classify_action;

fn main() -> planar_rigidity::Result<()> {
    for id in IDS {
        let e = build(id)?;
        let g = closure(&e.generators, DEFAULT_GROUP_CAP)?;
        println!(
            "{id:<20} conductor {:>3}  SL {:>5}  PGL {:>4}  {:<12}  {}",
            e.conductor,
            e.sl_order,
            g.proj_order(),
            classify_action(&g)?.name(),
            e.description
        );
    }
    Ok(())
}
