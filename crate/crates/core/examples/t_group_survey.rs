//! Orbit profiles of the groups generated by τ and diag(ζ_k, ζ_k^a, ζ_k^-(a+1))
//! for k up to 24. Only four pairs (a, k) give orbits of size 7.

use planar_rigidity::catalog::{survey_t_groups, SurveyCell};

fn main() -> planar_rigidity::Result<()> {
    let rows = survey_t_groups(24, 8)?;
    println!("{} cells", rows.len());
    for r in &rows {
        if let SurveyCell::Profile { proj_order, sporadic, families } = &r.cell {
            if sporadic.iter().any(|&s| s > 3) || !families.is_empty() {
                println!("(a, k) = ({}, {}): order {proj_order}, sporadic {sporadic:?}, families {families:?}", r.a, r.k);
            }
        }
    }
    let seven: Vec<(u32, u32)> = rows.iter().filter(|r| r.has_sporadic(7)).map(|r| (r.a, r.k)).collect();
    println!("seven-point orbits at {seven:?}");
    Ok(())
}
