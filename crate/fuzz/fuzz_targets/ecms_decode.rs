#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(store) = gsacms::store::EcmsStore::decode(data, 32) {
        // predecessor queries over a decoded store must stay in bounds
        for d in 1..=store.doc_count() {
            let len = store.doc_len(d);
            for i in [1, len / 2 + 1, len] {
                let _ = store.ihead_pred(d, i).unwrap();
            }
        }
    }
});
