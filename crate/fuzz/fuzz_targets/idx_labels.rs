#![no_main]

use anyhier::io::idx::encode_idx_labels;
use anyhier::io::parse_idx_labels;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(labels) = parse_idx_labels(data) {
        assert_eq!(encode_idx_labels(&labels), data);
    }
});
