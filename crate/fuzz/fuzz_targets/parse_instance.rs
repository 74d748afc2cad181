#![no_main]

use libfuzzer_sys::fuzz_target;
use matchfix::parse_instance;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_instance(text) {
        let canonical = inst.to_string();
        let again = parse_instance(&canonical).expect("canonical form parses");
        assert_eq!(again, inst);
        assert_eq!(again.to_string(), canonical);
    }
});
