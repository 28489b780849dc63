#![no_main]

use anyhier::io::newick;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(tree) = newick::parse(text) {
        let again = newick::parse(&newick::write(&tree)).expect("canonical output parses");
        assert_eq!(again, tree);
    }
});
