#![no_main]

use libfuzzer_sys::fuzz_target;
use vfive::LipschitzQuaternion;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = text.parse::<LipschitzQuaternion>() {
        let printed = q.to_string();
        let again: LipschitzQuaternion = printed.parse().expect("printed quaternion parses");
        assert_eq!(again, q);
    }
});
