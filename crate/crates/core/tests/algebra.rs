use exalg::albert::{AlbertCtx, AlbertElem};
use exalg::brown::{brace, BrownAlgebra, BrownCtx, BrownElem, QuadBrown, TripleSystem, DIM};
use exalg::cayley::Oct;
use exalg::scalar::{QuadField, Rational, RationalField};
use exalg::textio::{format_vector, parse_vector};
use num_traits::Zero;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn oct() -> impl Strategy<Value = Oct<Rational>> {
    prop::collection::vec(small(), 8).prop_map(|v| Oct::from_slice(&v))
}

fn jordan() -> impl Strategy<Value = AlbertElem<Rational>> {
    prop::collection::vec(small(), 27).prop_map(|v| AlbertElem::from_coords(v).unwrap())
}

fn brown() -> impl Strategy<Value = BrownElem<Rational>> {
    prop::collection::vec(small(), DIM).prop_map(|v| BrownElem::from_coords(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn octonion_norm_is_multiplicative(x in oct(), y in oct()) {
        prop_assert_eq!(x.mul(&y).norm().unwrap(), x.norm().unwrap() * y.norm().unwrap());
    }

    #[test]
    fn double_sharp_scales_by_norm(x in jordan()) {
        let a = AlbertCtx::split();
        prop_assert_eq!(a.sharp(&a.sharp(&x)), x.scale(&a.norm(&x).unwrap()));
    }

    #[test]
    fn cross_product_is_symmetric(x in jordan(), y in jordan()) {
        let a = AlbertCtx::split();
        prop_assert_eq!(a.cross(&x, &y), a.cross(&y, &x));
    }

    #[test]
    fn brace_skew_part_is_psi(x in brown(), y in brown(), z in brown()) {
        let c = BrownCtx::split();
        let ts = TripleSystem::new(&c).unwrap();
        let diff = brace(&c, &x, &y, &z).sub(&brace(&c, &z, &y, &x));
        // {x,y,z} - {z,y,x} = psi(x,z) y, and psi(x,z) is a multiple of s0
        let psi = c.mul(&x, &c.bar(&z)).sub(&c.mul(&z, &c.bar(&x)));
        prop_assert_eq!(diff, c.mul(&psi, &y));
        prop_assert!(ts.b(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn brown_coordinates_round_trip_through_text(x in brown()) {
        let text = format_vector(&x.coords());
        prop_assert_eq!(BrownElem::from_coords(&parse_vector(&RationalField, &text, DIM).unwrap()).unwrap(), x);
    }
}

#[test]
fn quadratic_elements_round_trip_through_text() {
    let qb = QuadBrown::split(2).unwrap();
    let field = QuadField::new(2).unwrap();
    let v: Vec<Rational> = (0..DIM as i64).map(|i| Rational::new(i - 20, 1 + i % 3)).collect();
    let x = qb.from_coords(&v).unwrap();
    let back = BrownElem::from_coords(&parse_vector(&field, &format_vector(&x.coords()), DIM).unwrap()).unwrap();
    assert_eq!(qb.coords(&back).unwrap(), v);
}

#[test]
fn quartic_form_of_unit() {
    for z in [1, 2, -3] {
        let c = BrownCtx::new(AlbertCtx::split(), Rational::from_integer(z)).unwrap();
        let ts = TripleSystem::new(&c).unwrap();
        let d = BrownElem::diag(Rational::from_integer(1), Rational::from_integer(1));
        assert_eq!(ts.q(&d, &d, &d, &d).unwrap(), Rational::from_integer(12));
    }
}
