#![no_main]

use libfuzzer_sys::fuzz_target;

use gsacms::builder::{build_gsa, BuildConfig};
use gsacms::oracle::naive_gsa;
use gsacms::Collection;

// Differential fuzzing: interpret the input as a tiny document collection
// and require the construction to equal the brute-force order exactly.
fuzz_target!(|data: &[u8]| {
    const ALPHABET: &[u8] = b"ACGTN";
    let docs: Vec<Vec<u8>> = data
        .split(|&b| b == 0xFF)
        .take(4)
        .map(|chunk| {
            chunk
                .iter()
                .take(64)
                .map(|&b| ALPHABET[(b % 5) as usize])
                .collect()
        })
        .collect();
    if docs.is_empty() {
        return;
    }
    let contents: Vec<&[u8]> = docs.iter().map(|d| d.as_slice()).collect();
    let coll = Collection::from_contents(&contents).unwrap();
    let (gsa, _) = build_gsa(&coll, None, &BuildConfig::default()).unwrap();
    assert_eq!(gsa, naive_gsa(&coll));
});
