//! Randomized properties of the arithmetic, the matrices and the parsers.

use num_integer::gcd;
use planar_rigidity::catalog::{build, IDS};
use planar_rigidity::cli::groupfile::{parse_group_file, write_group_file};
use planar_rigidity::cyclo::{parse_expr, CycloNum, Rational};
use planar_rigidity::linalg::Mat3;
use planar_rigidity::orbits::orbit;
use planar_rigidity::projgroup::{closure, ProjPoint, DEFAULT_GROUP_CAP};
use proptest::prelude::*;

const CONDUCTORS: [u32; 10] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 21];

fn num_at(n: u32) -> impl Strategy<Value = CycloNum> {
    let deg = (1..=n).filter(|k| gcd(*k, n) == 1).count();
    prop::collection::vec((-12i64..=12, 1i64..=5), deg).prop_map(move |c| {
        let coeffs: Vec<Rational> = c.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
        CycloNum::from_coeffs(n, &coeffs).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (num_at(n), num_at(n), num_at(n)))
}

fn catalog_id() -> impl Strategy<Value = &'static str> {
    prop::sample::select(IDS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn nonzero_elements_invert((a, b, _) in triple()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&b.div(&a).unwrap() * &a, b);
    }

    #[test]
    fn galois_maps_are_ring_homomorphisms((a, b, _) in triple(), k in 1i64..60) {
        let n = a.conductor() as i64;
        prop_assume!(gcd(k, n) == 1);
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
    }

    #[test]
    fn embedding_preserves_value((a, b, _) in triple(), m in 1u32..4) {
        let big = a.conductor() * m * 2;
        prop_assert_eq!(a.embed(big).unwrap(), a.clone());
        prop_assert_eq!(&a.embed(big).unwrap() * &b, &a * &b);
        prop_assert_eq!(a.embed(big).unwrap().minimized(), a.minimized());
    }

    #[test]
    fn expressions_round_trip((a, _, _) in triple()) {
        let n = a.conductor();
        prop_assert_eq!(parse_expr(&a.to_expr(), n).unwrap(), a);
    }

    #[test]
    fn garbage_never_panics(text in "[-+*/^()z0-9 ,a]{0,24}") {
        // Either a value or an error; a panic fails the property.
        let _ = parse_expr(&text, 12);
        let _ = parse_group_file(&format!("conductor: 12\ngenerator:\nrow: {text}\nrow: 0,1,0\nrow: 0,0,1\n"));
    }

    #[test]
    fn truncated_expressions_are_rejected((a, _, _) in triple(), cut in 0usize..40) {
        let text = a.to_expr();
        let unbalanced = format!("({}", &text[..cut.min(text.len())]);
        prop_assert!(parse_expr(&unbalanced, a.conductor()).is_err());
        let dangling = text.clone() + " +";
        prop_assert!(parse_expr(&dangling, a.conductor()).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_is_multiplicative(id in catalog_id(), i in 0usize..8, j in 0usize..8) {
        let gens = build(id).unwrap().generators;
        let (x, y) = (&gens[i % gens.len()], &gens[j % gens.len()]);
        prop_assert_eq!((x * y).det(), &x.det() * &y.det());
        prop_assert!((x * &x.inv().unwrap()) == Mat3::identity(x.conductor()).unwrap());
    }

    #[test]
    fn orbit_sizes_divide_the_group_order(id in catalog_id(), v in prop::array::uniform3(-4i64..=4)) {
        prop_assume!(v != [0, 0, 0]);
        let g = closure(&build(id).unwrap().generators, DEFAULT_GROUP_CAP).unwrap();
        let p = ProjPoint::from_ints(v).unwrap();
        let o = orbit(&g, &p, g.proj_order()).unwrap();
        prop_assert_eq!(g.proj_order() % o.size(), 0);
        for q in o.points() {
            prop_assert_eq!(orbit(&g, q, g.proj_order()).unwrap(), o.clone());
        }
    }

    #[test]
    fn group_files_round_trip(id in catalog_id()) {
        let e = build(id).unwrap();
        let text = write_group_file(e.conductor, &e.generators).unwrap();
        prop_assert_eq!(parse_group_file(&text).unwrap().generators, e.generators);
    }
}
