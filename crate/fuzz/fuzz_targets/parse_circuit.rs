#![no_main]

use libfuzzer_sys::fuzz_target;
use vfive::{parse_circuit, trace_distance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(circuit) = parse_circuit(text) else {
        return;
    };
    // Printing and re-parsing is the identity, token for token.
    let printed = circuit.to_string();
    let again = parse_circuit(&printed).expect("printed circuit parses");
    assert_eq!(again, circuit);
    assert_eq!(again.to_string(), printed);
    if circuit.len() <= 256 {
        let u = circuit.evaluate();
        assert!(trace_distance(&u, &again.evaluate()) == 0.0);
    }
});
