#![no_main]

use libfuzzer_sys::fuzz_target;
use vfive::exact::{exact_synthesize, ExactUnitary};
use vfive::{trace_distance, LipschitzQuaternion};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 200 {
        return;
    }
    let Ok(q) = text.parse::<LipschitzQuaternion>() else {
        return;
    };
    let Ok(u) = ExactUnitary::new(q) else {
        return;
    };
    let c = exact_synthesize(&u);
    assert!(c.v_count() as u32 <= u.level());
    let d = trace_distance(&c.evaluate(), &u.to_unit_vector());
    assert!(d < 1e-6, "distance {d} for {text:?}");
});
