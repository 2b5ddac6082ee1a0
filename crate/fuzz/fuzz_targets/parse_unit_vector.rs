#![no_main]

use libfuzzer_sys::fuzz_target;
use vfive::UnitVector4;

fn check(u: &UnitVector4) {
    let norm: f64 = u.components().iter().map(|x| x * x).sum();
    assert!((norm - 1.0).abs() < 1e-9, "norm² {norm}");
    assert!(u.alpha() >= 0.0);
    let back = UnitVector4::from_json(&u.to_json()).expect("own JSON parses");
    assert_eq!(&back, u);
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(u) = UnitVector4::from_json(text) {
        check(&u);
    }
    // The comma-separated form accepted by `--target`.
    if let Ok(u) = text.parse::<UnitVector4>() {
        check(&u);
    }
});
