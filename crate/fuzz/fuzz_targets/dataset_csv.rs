#![no_main]

use anyhier::io::{read_dataset_csv, write_dataset_csv};
use anyhier::Dissimilarity;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for kind in Dissimilarity::ALL {
        if let Ok(ds) = read_dataset_csv(data, kind) {
            let mut out = Vec::new();
            write_dataset_csv(&mut out, &ds).expect("in-memory write");
            assert_eq!(
                read_dataset_csv(out.as_slice(), kind).expect("own output parses"),
                ds
            );
        }
    }
});
