//! Worked examples for the circuit, quaternion, number-theory and exact
//! synthesis layers. Expected values come from hand expansion or from the
//! brute-force helpers below, never from the code under test.

use num_bigint::BigInt;

use vfive::exact::{exact_synthesize_quaternion, gate_of_generator, is_exactly_representable, ExactError};
use vfive::numth::{
    enumerate_s4, is_prime_u64, is_probable_prime, is_sum_two_squares_filter, r4_count,
    two_squares_decompose, FilterVerdict, NumthError, DEFAULT_S4_CAP,
};
use vfive::quat::{generator_set, QuatError};
use vfive::{parse_circuit, trace_distance, GateToken, LipschitzQuaternion, ParseCircuitError, UnitVector4};

fn q(a: i64, b: i64, c: i64, d: i64) -> LipschitzQuaternion {
    LipschitzQuaternion::new(a, b, c, d)
}

fn unit(a: f64, b: f64, c: f64, d: f64) -> UnitVector4 {
    UnitVector4::normalized(a, b, c, d).unwrap()
}

/// Hamilton product written out independently of the library.
fn hamilton(p: [i64; 4], r: [i64; 4]) -> [i64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = r;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

#[test]
fn evaluate_examples() {
    assert_eq!(parse_circuit("").unwrap().evaluate(), UnitVector4::identity());
    let v1 = parse_circuit("V1").unwrap().evaluate();
    assert!(trace_distance(&v1, &unit(1.0, 2.0, 0.0, 0.0)) < 1e-15);
    let v1v2 = parse_circuit("V1 V2").unwrap().evaluate();
    let want = hamilton([1, 2, 0, 0], [1, 0, 2, 0]);
    assert_eq!(want, [1, 2, 2, 4]);
    assert!(trace_distance(&v1v2, &unit(1.0, 2.0, 2.0, 4.0)) < 1e-15);
}

#[test]
fn parse_examples() {
    let c = parse_circuit("V1 V2d X").unwrap();
    assert_eq!((c.len(), c.v_count()), (3, 2));
    assert!(parse_circuit("").unwrap().is_empty());
    assert_eq!(
        parse_circuit("V1 V4"),
        Err(ParseCircuitError::UnknownToken {
            position: 1,
            lexeme: "V4".into()
        })
    );
    // Whitespace is normalized by the printer.
    assert_eq!(parse_circuit("  V1\tH \n S ").unwrap().to_string(), "V1 H S");
}

#[test]
fn token_quaternions_match_their_gates() {
    let expect = [
        (GateToken::V1, [1, 2, 0, 0]),
        (GateToken::V1d, [1, -2, 0, 0]),
        (GateToken::V2, [1, 0, 2, 0]),
        (GateToken::V2d, [1, 0, -2, 0]),
        (GateToken::V3, [1, 0, 0, 2]),
        (GateToken::V3d, [1, 0, 0, -2]),
        (GateToken::X, [0, 1, 0, 0]),
        (GateToken::Y, [0, 0, 1, 0]),
        (GateToken::Z, [0, 0, 0, 1]),
    ];
    for (t, v) in expect {
        assert_eq!(t.integer_quaternion(), v, "{t:?}");
    }
    // H is (X + Z)/√2 up to phase; S is diag(1, i) up to phase.
    let h = GateToken::H.unit_quaternion();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!(trace_distance(&unit(h[0], h[1], h[2], h[3]), &unit(0.0, r, 0.0, r)) < 1e-15);
    let s = GateToken::S.unit_quaternion();
    let sd = GateToken::Sd.unit_quaternion();
    let ss = unit(s[0], s[1], s[2], s[3]).mul(&unit(s[0], s[1], s[2], s[3]));
    assert!(trace_distance(&ss, &unit(0.0, 0.0, 0.0, 1.0)) < 1e-15);
    let ssd = unit(s[0], s[1], s[2], s[3]).mul(&unit(sd[0], sd[1], sd[2], sd[3]));
    assert!(trace_distance(&ssd, &UnitVector4::identity()) < 1e-15);
}

#[test]
fn quaternion_examples() {
    assert_eq!(q(1, 2, 0, 0).multiply(&q(1, 0, 2, 0)), q(1, 2, 2, 4));
    assert_eq!(q(3, -1, 4, 1).multiply(&q(1, 0, 0, 0)), q(3, -1, 4, 1));
    assert_eq!(q(0, 1, 0, 0).multiply(&q(0, 0, 1, 0)), q(0, 0, 0, 1));
    assert_eq!(q(1, 2, 0, 0).conjugate(), q(1, -2, 0, 0));
    assert_eq!(q(1, 2, 0, 0).norm(), BigInt::from(5));
    assert_eq!(q(1, 2, 2, 4).norm(), BigInt::from(25));
}

#[test]
fn right_division_examples() {
    assert_eq!(q(1, 2, 2, 4).try_right_divide(&q(1, 0, 2, 0)), Ok(q(1, 2, 0, 0)));
    assert_eq!(q(1, 2, 0, 0).try_right_divide(&q(1, 2, 0, 0)), Ok(q(1, 0, 0, 0)));
    // (1+2i)(1-2j) = 1 + 2i - 2j - 4k: not all components divisible by 5.
    assert_eq!(hamilton([1, 2, 0, 0], [1, 0, -2, 0]), [1, 2, -2, -4]);
    assert_eq!(
        q(1, 2, 0, 0).try_right_divide(&q(1, 0, 2, 0)),
        Err(QuatError::NotDivisible)
    );
}

#[test]
fn generator_set_has_fourteen_members() {
    let g = generator_set();
    assert_eq!(g.len(), 14);
    let norms: Vec<i64> = g.iter().map(|x| i64::try_from(x.norm()).unwrap()).collect();
    assert_eq!(norms.iter().filter(|&&n| n == 5).count(), 6);
    assert_eq!(norms.iter().filter(|&&n| n == 1).count(), 8);
}

#[test]
fn primality_examples() {
    assert!(is_probable_prime(&BigInt::from(5), 20));
    assert!(!is_probable_prime(&BigInt::from(25), 20));
    let n = 5u64.pow(13) - 4 - 16;
    assert_eq!(n, 1_220_703_105);
    assert_eq!(n % 5, 0);
    assert!(!is_prime_u64(n));
}

#[test]
fn two_squares_examples() {
    let t = two_squares_decompose(&BigInt::from(2)).unwrap();
    assert_eq!((t.x.clone() * &t.x, t.y.clone() * &t.y), (BigInt::from(1), BigInt::from(1)));
    let t = two_squares_decompose(&BigInt::from(13)).unwrap();
    let mut xy = [t.x.clone(), t.y.clone()].map(|v| i64::try_from(v).unwrap().abs());
    xy.sort();
    assert_eq!(xy, [2, 3]);
    assert_eq!(two_squares_decompose(&BigInt::from(21)), Err(NumthError::NotRepresentable));
}

#[test]
fn filter_examples() {
    assert_eq!(is_sum_two_squares_filter(&BigInt::from(3), 1000), FilterVerdict::No);
    assert_eq!(is_sum_two_squares_filter(&BigInt::from(25), 1000), FilterVerdict::Yes);
    // 1009 · 1013 (both 1 mod 4 and past the trial bound) and 1019 · 1031
    // (both 3 mod 4): neither can be settled by bounded trial division.
    assert_eq!(
        is_sum_two_squares_filter(&BigInt::from(1009u64 * 1013), 1000),
        FilterVerdict::Unknown
    );
    assert_eq!(
        is_sum_two_squares_filter(&BigInt::from(1019u64 * 1031), 1000),
        FilterVerdict::Unknown
    );
}

#[test]
fn four_square_examples() {
    assert_eq!(r4_count(5), 48);
    assert_eq!(r4_count(1), 8);
    assert_eq!(r4_count(25), 248);
    assert_eq!(r4_count(25), 2 * (125 - 1));
    for (n, want) in [(1u64, 8usize), (5, 48), (25, 248)] {
        let pts = enumerate_s4(n, DEFAULT_S4_CAP).unwrap();
        assert_eq!(pts.len(), want);
        assert!(pts.iter().all(|p| p.iter().map(|x| x * x).sum::<i64>() == n as i64));
    }
}

#[test]
fn exact_synthesis_examples() {
    assert_eq!(exact_synthesize_quaternion(&q(1, 0, 0, 0)).unwrap().to_string(), "");
    assert_eq!(exact_synthesize_quaternion(&q(1, 2, 0, 0)).unwrap().to_string(), "V1");
    let c = exact_synthesize_quaternion(&q(1, 2, 2, 4)).unwrap();
    assert_eq!(c.to_string(), "V1 V2");
    assert!(trace_distance(&c.evaluate(), &unit(1.0, 2.0, 2.0, 4.0)) < 1e-15);
    assert!(matches!(
        exact_synthesize_quaternion(&q(1, 1, 0, 0)),
        Err(ExactError::NotRepresentable(n)) if n == BigInt::from(2)
    ));
}

#[test]
fn representability_examples() {
    assert_eq!(is_exactly_representable(&q(3, 4, 0, 0)), Some(2));
    assert_eq!(is_exactly_representable(&q(1, 3, 0, 0)), None);
    assert_eq!(is_exactly_representable(&q(0, 0, 1, 0)), Some(0));
}

#[test]
fn generator_table() {
    assert_eq!(gate_of_generator(&q(1, 2, 0, 0)), Ok(GateToken::V1));
    assert_eq!(gate_of_generator(&q(1, 0, 0, -2)), Ok(GateToken::V3d));
    assert_eq!(gate_of_generator(&q(0, 1, 0, 0)), Ok(GateToken::X));
    assert_eq!(gate_of_generator(&q(0, -1, 0, 0)), Ok(GateToken::X));
    assert_eq!(gate_of_generator(&q(2, 1, 0, 0)), Err(ExactError::NotAGenerator));
}
