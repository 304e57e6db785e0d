//! Exact arithmetic in cyclotomic fields: parsing, field operations,
//! Galois conjugation and recognising roots of unity.

use planar_rigidity::cyclo::{cyclotomic_polynomial, parse_expr, CycloNum};

fn main() -> planar_rigidity::Result<()> {
    // z is ζ_12 here.
    let a = parse_expr("1/2*z^4 - z^2 + 3", 12)?;
    let b = parse_expr("z^3", 12)?;
    println!("a = {a}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("a / b = {}", a.div(&b)?);
    println!("a * a^-1 = {}", &a * &a.inv()?);

    // ζ_12^3 is a primitive fourth root of unity, so it lives in Q(ζ_4).
    println!("z^3 over its smallest field: {:?}", b.minimized());

    // √-3 = ζ_3 − ζ_3², and conjugating ζ ↦ ζ² flips its sign.
    let s = &CycloNum::zeta(3)? - &CycloNum::zeta_pow(3, 2)?;
    println!("s = {s}, s^2 = {}, galois(s) = {}", &s * &s, s.galois(2)?);

    if let Some((r, k)) = parse_expr("-z^5", 12)?.as_scaled_root_of_unity() {
        println!("-z^5 = {r} * ζ_12^{k}");
    }
    println!("Φ_12(x) = {}", cyclotomic_polynomial(12)?);
    Ok(())
}
