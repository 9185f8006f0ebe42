use elliptope::rational::{
    common_denominator, format_rational, int, parse_rational, rat, scaled_integer, sqrt_exact,
    to_f64,
};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn parse_forms() {
    assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
    assert_eq!(parse_rational(" -6/8 ").unwrap(), rat(-3, 4));
    assert_eq!(parse_rational("7").unwrap(), int(7));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert!(parse_rational("1/2/3").is_err());
}

#[test]
fn format_lowest_terms() {
    assert_eq!(format_rational(&rat(6, 8)), "3/4");
    assert_eq!(format_rational(&rat(8, 4)), "2");
    assert_eq!(format_rational(&rat(-1, 48)), "-1/48");
}

#[test]
fn helpers() {
    assert_eq!(sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
    assert_eq!(sqrt_exact(&rat(2, 1)), None);
    assert_eq!(sqrt_exact(&int(-4)), None);
    let vals = [rat(1, 6), rat(3, 4), int(2)];
    let d = common_denominator(vals.iter());
    assert_eq!(d, BigInt::from(12));
    assert_eq!(scaled_integer(&rat(3, 4), &d), BigInt::from(9));
    assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn format_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}
