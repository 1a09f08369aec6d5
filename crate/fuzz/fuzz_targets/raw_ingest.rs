#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(docs) = gsacms::ingest::parse_raw(data) {
        let contents: Vec<&[u8]> = docs.iter().map(|d| d.as_slice()).collect();
        let _ = gsacms::Collection::from_contents(&contents).unwrap();
    }
});
