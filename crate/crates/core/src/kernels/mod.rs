//! Suffix-array, LCP and smaller-value kernels over byte and integer texts.
//!
//! All public arrays are in 1-based position space: `sa[k]` (0-based slot
//! `k`, i.e. row `k + 1`) holds a 1-based text position, `isa` and `plcp`
//! are indexed by text position, `lcp` by row.

mod nsv_psv;
mod sais;

pub use nsv_psv::{smaller_value_query, NsvPsvIndex, SmallerDirection};

use crate::error::{Error, Result};
use crate::text::{ByteText, IntText};

pub type SuffixArray = Vec<usize>;
pub type InverseSuffixArray = Vec<usize>;
pub type LcpArray = Vec<usize>;
pub type PlcpArray = Vec<usize>;

fn check_sentinel<T: Ord + Copy + std::fmt::Debug>(symbols: &[T]) -> Result<()> {
    let Some((&last, head)) = symbols.split_last() else {
        return Err(Error::InputFormat("empty text".into()));
    };
    if head.iter().any(|&s| s <= last) {
        return Err(Error::InputFormat(format!(
            "final sentinel {last:?} is not the unique minimal symbol"
        )));
    }
    Ok(())
}

/// Suffix array of a terminated byte text.
pub fn build_suffix_array_bytes(text: &ByteText) -> Result<SuffixArray> {
    check_sentinel(text.bytes())?;
    let symbols: Vec<usize> = text.bytes().iter().map(|&b| b as usize).collect();
    let sa = sais::suffix_array(&symbols, 256);
    Ok(sa.into_iter().map(|p| p + 1).collect())
}

/// Suffix array of an integer sequence under numeric symbol order.
pub fn build_suffix_array_ints(text: &IntText) -> Result<SuffixArray> {
    if let Some(&bad) = text.symbols.iter().find(|&&s| s >= text.alphabet_size) {
        return Err(Error::InputFormat(format!(
            "symbol {bad} is outside alphabet of size {}",
            text.alphabet_size
        )));
    }
    check_sentinel(&text.symbols)?;
    let sa = sais::suffix_array(&text.symbols, text.alphabet_size);
    Ok(sa.into_iter().map(|p| p + 1).collect())
}

/// Inverse of a permutation of `1..=n`.
pub fn invert_permutation(sa: &[usize]) -> Result<InverseSuffixArray> {
    let n = sa.len();
    let mut isa = vec![0usize; n];
    for (row, &pos) in sa.iter().enumerate() {
        if pos == 0 || pos > n {
            return Err(Error::Invariant(format!(
                "value {pos} at row {} is outside 1..={n}",
                row + 1
            )));
        }
        if isa[pos - 1] != 0 {
            return Err(Error::Invariant(format!("value {pos} occurs twice")));
        }
        isa[pos - 1] = row + 1;
    }
    Ok(isa)
}

/// Permuted LCP array via the Phi method: `plcp[i]` is the lcp of suffix `i`
/// with its lexicographic predecessor suffix.
pub fn build_plcp(text: &ByteText, sa: &[usize]) -> Result<PlcpArray> {
    let n = text.len();
    if sa.len() != n {
        return Err(Error::Invariant(format!(
            "suffix array length {} does not match text length {n}",
            sa.len()
        )));
    }
    const NONE: usize = usize::MAX;
    let mut phi = vec![NONE; n];
    for k in 1..n {
        phi[sa[k] - 1] = sa[k - 1];
    }
    let bytes = text.bytes();
    let mut plcp = vec![0usize; n];
    let mut l = 0usize;
    for i in 1..=n {
        let p = phi[i - 1];
        if p == NONE {
            plcp[i - 1] = 0;
            l = 0;
            continue;
        }
        while i + l <= n && p + l <= n && bytes[i + l - 1] == bytes[p + l - 1] {
            l += 1;
        }
        plcp[i - 1] = l;
        l = l.saturating_sub(1);
    }
    Ok(plcp)
}

/// Reorders PLCP values into row order: `lcp[j] = plcp[sa[j]]`.
pub fn plcp_to_lcp(plcp: &[usize], sa: &[usize]) -> LcpArray {
    sa.iter().map(|&p| plcp[p - 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TERM_REF;

    fn ref_text(content: &[u8]) -> ByteText {
        ByteText::reference(content).unwrap()
    }

    fn oracle_sa(bytes: &[u8]) -> Vec<usize> {
        let mut sa: Vec<usize> = (1..=bytes.len()).collect();
        sa.sort_by(|&a, &b| bytes[a - 1..].cmp(&bytes[b - 1..]));
        sa
    }

    fn oracle_lcp(bytes: &[u8], sa: &[usize]) -> Vec<usize> {
        let mut lcp = vec![0usize; sa.len()];
        for k in 1..sa.len() {
            let a = &bytes[sa[k - 1] - 1..];
            let b = &bytes[sa[k] - 1..];
            lcp[k] = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        }
        lcp
    }

    #[test]
    fn bytes_worked_example() {
        let t = ref_text(b"TGATGGCACAGATACT");
        let sa = build_suffix_array_bytes(&t).unwrap();
        assert_eq!(
            sa,
            vec![17, 8, 14, 10, 12, 3, 7, 9, 15, 11, 2, 6, 5, 16, 13, 1, 4]
        );
    }

    #[test]
    fn bytes_tiny_examples() {
        let t = ref_text(b"");
        assert_eq!(build_suffix_array_bytes(&t).unwrap(), vec![1]);
        let t = ref_text(b"ABAB");
        assert_eq!(build_suffix_array_bytes(&t).unwrap(), vec![5, 3, 1, 4, 2]);
    }

    #[test]
    fn bytes_sentinel_validation() {
        // terminator repeated / not minimal
        let bad = ByteText::from_terminated(vec![b'A', TERM_REF]).unwrap();
        assert!(build_suffix_array_bytes(&bad).is_ok());
        let t = IntText::new(vec![2, 0, 3, 0], 4).unwrap();
        assert!(build_suffix_array_ints(&t).is_err());
        let t = IntText::new(vec![2, 3, 1], 4).unwrap();
        assert!(build_suffix_array_ints(&t).is_ok());
        let t = IntText::new(vec![0, 3, 1], 4).unwrap();
        assert!(build_suffix_array_ints(&t).is_err());
    }

    #[test]
    fn ints_examples() {
        let t = IntText::new(vec![2, 3, 2, 3, 0], 4).unwrap();
        assert_eq!(build_suffix_array_ints(&t).unwrap(), vec![5, 3, 1, 4, 2]);
        let t = IntText::new(vec![0], 1).unwrap();
        assert_eq!(build_suffix_array_ints(&t).unwrap(), vec![1]);
        let t = IntText::new(vec![5, 4, 3, 2, 1, 0], 6).unwrap();
        assert_eq!(build_suffix_array_ints(&t).unwrap(), vec![6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert_permutation(&[3, 1, 2]).unwrap(), vec![2, 3, 1]);
        assert_eq!(invert_permutation(&[1]).unwrap(), vec![1]);
        let fig = vec![17, 8, 14, 10, 12, 3, 7, 9, 15, 11, 2, 6, 5, 16, 13, 1, 4];
        let isa = invert_permutation(&fig).unwrap();
        assert_eq!(isa[3 - 1], 6);
        assert_eq!(isa[1 - 1], 16);
        assert!(invert_permutation(&[1, 1]).is_err());
        assert!(invert_permutation(&[0, 2]).is_err());
        assert!(invert_permutation(&[2, 3]).is_err());
    }

    #[test]
    fn plcp_examples() {
        let t = ref_text(b"AAA");
        let sa = build_suffix_array_bytes(&t).unwrap();
        assert_eq!(sa, vec![4, 3, 2, 1]);
        assert_eq!(build_plcp(&t, &sa).unwrap(), vec![2, 1, 0, 0]);

        let t = ref_text(b"");
        let sa = build_suffix_array_bytes(&t).unwrap();
        assert_eq!(build_plcp(&t, &sa).unwrap(), vec![0]);

        let t = ref_text(b"ABAB");
        let sa = build_suffix_array_bytes(&t).unwrap();
        let plcp = build_plcp(&t, &sa).unwrap();
        assert_eq!(plcp[0], 2); // lcp("ABAB#", "AB#")
    }

    #[test]
    fn lcp_examples() {
        let t = ref_text(b"ABAB");
        let sa = build_suffix_array_bytes(&t).unwrap();
        let plcp = build_plcp(&t, &sa).unwrap();
        assert_eq!(plcp_to_lcp(&plcp, &sa), vec![0, 0, 2, 0, 1]);

        let t = ref_text(b"");
        let sa = build_suffix_array_bytes(&t).unwrap();
        let plcp = build_plcp(&t, &sa).unwrap();
        assert_eq!(plcp_to_lcp(&plcp, &sa), vec![0]);

        let t = ref_text(b"AAA");
        let sa = build_suffix_array_bytes(&t).unwrap();
        let plcp = build_plcp(&t, &sa).unwrap();
        assert_eq!(plcp_to_lcp(&plcp, &sa), vec![0, 0, 1, 2]);
    }

    #[test]
    fn random_texts_match_enumerate_and_sort() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for seed in 0..200 {
            let n = 1 + next() % 2000;
            let sigma = [2usize, 4, 8, 26, 120][seed % 5];
            let content: Vec<u8> = (0..n).map(|_| (2 + next() % sigma) as u8).collect();
            let t = ByteText::reference(&content).unwrap();
            let sa = build_suffix_array_bytes(&t).unwrap();
            assert_eq!(sa, oracle_sa(t.bytes()), "seed {seed}");
            let isa = invert_permutation(&sa).unwrap();
            for (row, &pos) in sa.iter().enumerate() {
                assert_eq!(isa[pos - 1], row + 1);
            }
            let plcp = build_plcp(&t, &sa).unwrap();
            assert_eq!(
                plcp_to_lcp(&plcp, &sa),
                oracle_lcp(t.bytes(), &sa),
                "seed {seed}"
            );
        }
    }
}
