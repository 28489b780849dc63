#![no_main]

use anyhier::io::idx::encode_idx_images;
use anyhier::io::parse_idx_images;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(images) = parse_idx_images(data) {
        if images.rows * images.cols > 0 {
            assert_eq!(encode_idx_images(&images), data);
        }
    }
});
