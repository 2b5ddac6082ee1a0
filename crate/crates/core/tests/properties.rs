use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use vfive::exact::{exact_synthesize_quaternion, is_exactly_representable};
use vfive::numth::{is_sum_two_squares_filter, two_squares_decompose, FilterVerdict};
use vfive::quat::{lipschitz_units, norm_five_generators};
use vfive::{parse_circuit, trace_distance, Circuit, GateToken, LipschitzQuaternion, UnitVector4};

fn unit_vector() -> impl Strategy<Value = UnitVector4> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
        .prop_map(|v| UnitVector4::normalized(v[0], v[1], v[2], v[3]).unwrap())
}

fn circuit(max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(prop::sample::select(GateToken::ALL.to_vec()), 0..=max_len)
        .prop_map(Circuit::from_tokens)
}

fn quaternion() -> impl Strategy<Value = LipschitzQuaternion> {
    prop::array::uniform4(any::<i64>()).prop_map(|[a, b, c, d]| LipschitzQuaternion::new(a, b, c, d))
}

fn product_of_generators(max_len: usize) -> impl Strategy<Value = LipschitzQuaternion> {
    let gens: Vec<[i64; 4]> = GateToken::ALL[..9].iter().map(|t| t.integer_quaternion()).collect();
    prop::collection::vec(prop::sample::select(gens), 0..=max_len).prop_map(|fs| {
        fs.iter().fold(LipschitzQuaternion::one(), |acc, &[a, b, c, d]| {
            acc.multiply(&LipschitzQuaternion::new(a, b, c, d))
        })
    })
}

fn psu_close(u: &UnitVector4, v: &UnitVector4, tol: f64) -> bool {
    trace_distance(u, v) < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distance_triangle_inequality(u in unit_vector(), v in unit_vector(), w in unit_vector()) {
        let (uv, vw, uw) = (trace_distance(&u, &v), trace_distance(&v, &w), trace_distance(&u, &w));
        prop_assert!(uw <= uv + vw + 1e-9);
    }

    #[test]
    fn distance_symmetric_and_sign_blind(u in unit_vector(), v in unit_vector()) {
        let d = trace_distance(&u, &v);
        prop_assert!((d - trace_distance(&v, &u)).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&d));
        let [a, b, c, e] = v.components();
        let neg = UnitVector4::new(-a, -b, -c, -e).unwrap();
        prop_assert_eq!(neg, v);
        // Against the defining formula.
        let want = (1.0 - u.dot(&v).abs()).max(0.0).sqrt();
        prop_assert!((d - want).abs() < 1e-7);
    }

    #[test]
    fn concatenation_is_a_homomorphism(c1 in circuit(20), c2 in circuit(20)) {
        let joined = c1.concat(&c2);
        let product = c1.evaluate().mul(&c2.evaluate());
        prop_assert!(psu_close(&joined.evaluate(), &product, 1e-7));
        prop_assert_eq!(joined.v_count(), c1.v_count() + c2.v_count());
    }

    #[test]
    fn circuit_text_round_trip(c in circuit(30)) {
        let text = c.to_string();
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        prop_assert_eq!(p.multiply(&q).norm(), p.norm() * q.norm());
    }

    #[test]
    fn times_conjugate_is_norm(q in quaternion()) {
        let n = q.norm();
        prop_assert_eq!(q.multiply(&q.conjugate()), LipschitzQuaternion::new(n, 0, 0, 0));
    }

    #[test]
    fn exact_round_trip(q in product_of_generators(20)) {
        let level = is_exactly_representable(&q).unwrap();
        let c = exact_synthesize_quaternion(&q).unwrap();
        prop_assert!(c.v_count() as u32 <= level);
        let p = c.integer_product();
        // Equal up to sign after removing the common power of 5.
        let (pn, qn) = (p.norm(), q.norm());
        prop_assert!(qn.clone() % pn.clone() == BigInt::zero());
        let ratio = qn / pn;
        let k = num_integer::Roots::sqrt(&ratio);
        prop_assert_eq!(&k * &k, ratio);
        let scaled = LipschitzQuaternion::new(&p.a * &k, &p.b * &k, &p.c * &k, &p.d * &k);
        prop_assert!(scaled == q || -scaled == q);
    }

    #[test]
    fn two_squares_output_is_exact(n in 0u64..1u64 << 62) {
        if let Ok(t) = two_squares_decompose(&BigInt::from(n)) {
            prop_assert_eq!(&t.x * &t.x + &t.y * &t.y, BigInt::from(n));
        }
    }

    #[test]
    fn filter_agrees_with_decomposition(n in 0u64..1u64 << 48) {
        let v = is_sum_two_squares_filter(&BigInt::from(n), 1000);
        let rep = two_squares_decompose(&BigInt::from(n)).is_ok();
        match v {
            FilterVerdict::No => prop_assert!(!rep),
            FilterVerdict::Yes => prop_assert!(rep),
            FilterVerdict::Unknown => {}
        }
    }

    #[test]
    fn json_round_trip(u in unit_vector()) {
        prop_assert_eq!(UnitVector4::from_json(&u.to_json()).unwrap(), u);
    }
}

#[test]
fn norm_five_points_are_generators_up_to_unit() {
    let gens = norm_five_generators();
    let units = lipschitz_units();
    let mut seen = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    if a * a + b * b + c * c + d * d != 5 {
                        continue;
                    }
                    seen += 1;
                    let q = LipschitzQuaternion::new(a, b, c, d);
                    let hit = units.iter().any(|u| {
                        let p = u.multiply(&q);
                        gens.iter().any(|g| *g == p || *g == -p.clone())
                    });
                    assert!(hit, "{a},{b},{c},{d}");
                }
            }
        }
    }
    assert_eq!(seen, 48);
}

#[test]
fn every_norm_power_of_five_has_a_divisor() {
    let gens = norm_five_generators();
    for l in 1..=3u32 {
        let n = 5i64.pow(l);
        let r = (n as f64).sqrt() as i64;
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    let rest = n - a * a - b * b - c * c;
                    if rest < 0 {
                        continue;
                    }
                    let d = (rest as f64).sqrt().round() as i64;
                    for d in [d, -d] {
                        if d * d != rest {
                            continue;
                        }
                        let q = LipschitzQuaternion::new(a, b, c, d);
                        assert!(
                            gens.iter().any(|g| q.try_right_divide(g).is_ok()),
                            "{q} at level {l}"
                        );
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_high_level_points_have_a_divisor(q in product_of_generators(30)) {
        let gens = norm_five_generators();
        if is_exactly_representable(&q).unwrap_or(0) >= 1 && !q.norm().is_one() {
            prop_assert!(gens.iter().any(|g| q.try_right_divide(g).is_ok()));
        }
    }
}
