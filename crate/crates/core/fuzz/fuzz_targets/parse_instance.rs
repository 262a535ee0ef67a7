#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let data = if data.len() > 64 * 1024 {
        &data[..64 * 1024]
    } else {
        data
    };

    if let Ok(text) = std::str::from_utf8(data) {
        let _ = netmate::harness::parse_instance(text);
    }
});
