//! Writing a group to the text format and reading it back.

use planar_rigidity::catalog::build;
use planar_rigidity::cli::groupfile::{parse_group_file, write_group_file};
use planar_rigidity::projgroup::{closure, groups_projectively_equal, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    let e = build("T_2_7")?;
    let text = write_group_file(e.conductor, &e.generators)?;
    print!("{text}");
    let parsed = parse_group_file(&text)?;
    let a = closure(&e.generators, DEFAULT_GROUP_CAP)?;
    let b = closure(&parsed.generators, DEFAULT_GROUP_CAP)?;
    println!("round trip gives the same group: {}", groups_projectively_equal(&a, &b)?);

    match parse_group_file("conductor: 7\ngenerator:\n  row: 1, 0, 0\n  row: 0, z^, 0\n  row: 0, 0, 1\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("bad file rejected: {e}"),
    }
    Ok(())
}
