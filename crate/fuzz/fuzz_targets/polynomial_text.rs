#![no_main]
use hpdirichlet::series::parse_polynomial_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_polynomial_text(text) {
        let again = parse_polynomial_text(&f.to_text()).expect("serialized text parses");
        assert_eq!(f, again);
    }
});
