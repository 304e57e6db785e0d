//! Running one named verification check and printing it as JSON.

use planar_rigidity::rigidity::{verify_paper_check, CHECK_NAMES};

fn main() -> planar_rigidity::Result<()> {
    println!("available checks: {}", CHECK_NAMES.join(", "));
    let report = verify_paper_check("hessian_f216_merge")?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    Ok(())
}
