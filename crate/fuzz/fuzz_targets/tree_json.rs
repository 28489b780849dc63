#![no_main]

use anyhier::io::{from_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(tree) = from_json(text) {
        assert_eq!(from_json(&to_json(&tree)).expect("own output parses"), tree);
    }
});
