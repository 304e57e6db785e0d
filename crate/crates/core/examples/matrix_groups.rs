//! Closing a set of matrices into a finite group and reading off its
//! projective order, element orders and the size of its lift to SL(3,C).

use planar_rigidity::catalog::{build, tau};
use planar_rigidity::linalg::Mat3;
use planar_rigidity::projgroup::{closure, element_order_histogram, sl_closure_order, DEFAULT_GROUP_CAP};

fn main() -> planar_rigidity::Result<()> {
    let t = tau();
    println!("τ =\n{t}");
    println!("order of τ: {}", t.order(100)?);
    println!("characteristic polynomial coefficients of τ: {:?}", t.char_poly());

    // Sign changes together with τ give A4.
    let gens = vec![
        Mat3::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])?,
        Mat3::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])?,
        t,
    ];
    let g = closure(&gens, DEFAULT_GROUP_CAP)?;
    println!("A4: projective order {}, element orders {:?}", g.proj_order(), element_order_histogram(&g));

    // The Hessian group of order 648 has a projective image of order 216,
    // because it contains the scalar ζ_3·I.
    let h = build("H648")?;
    let hg = closure(&h.generators, DEFAULT_GROUP_CAP)?;
    println!(
        "H648: {} matrices in SL(3,C), {} projective transformations",
        sl_closure_order(&h.generators, DEFAULT_GROUP_CAP)?,
        hg.proj_order()
    );
    Ok(())
}
