#![no_main]
use hpdirichlet::grid::{parse_integer_list, parse_real_list};
use libfuzzer_sys::fuzz_target;

const MAX_LEN: usize = 4096;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(xs) = parse_real_list(text) {
        assert!(!xs.is_empty() && xs.iter().all(|x| x.is_finite()));
    }
    if let Ok(ns) = parse_integer_list(text, MAX_LEN) {
        assert!(!ns.is_empty() && ns.len() <= MAX_LEN);
    }
});
