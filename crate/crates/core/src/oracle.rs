//! Brute-force reference implementations used for validation.
//!
//! Everything here works by definitional scans over the raw strings and
//! shares no code with the production paths it checks. Costs are quadratic
//! or worse; callers cap input sizes.

use crate::error::Result;
use crate::reference::ReferenceIndex;
use crate::text::{ByteText, Collection};

/// Generalized suffix array by enumerate-and-sort with document tie-break.
pub fn naive_gsa(collection: &Collection) -> Vec<(usize, usize)> {
    let mut entries: Vec<(usize, usize)> = Vec::with_capacity(collection.total_len());
    for d in 1..=collection.doc_count() {
        for j in 1..=collection.doc(d).len() {
            entries.push((d, j));
        }
    }
    entries.sort_by(|&(da, ja), &(db, jb)| {
        collection
            .doc(da)
            .suffix(ja)
            .cmp(collection.doc(db).suffix(jb))
            .then(da.cmp(&db))
    });
    entries
}

fn match_len(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Matching statistics of `s` against `r` by exhaustive substring scan.
///
/// Entry `i` is `(p, l)` where `l` is the length of the longest prefix of
/// `s[i..]` occurring in `r` and `p` is `None` when `l == 0`. Among the
/// occurrences of the matching factor, a fresh factor (one that does not
/// continue the previous entry shortened by one) reports the occurrence
/// whose reference suffix is lexicographically smallest; a continued factor
/// reports the previous occurrence shifted by one.
pub fn naive_ms(r: &ByteText, s: &ByteText) -> Vec<(Option<usize>, usize)> {
    let rb = r.bytes();
    let n = rb.len();
    let mut out: Vec<(Option<usize>, usize)> = Vec::with_capacity(s.len());
    for i in 1..=s.len() {
        let suffix = s.suffix(i);
        let mut best = 0usize;
        for p in 1..=n {
            best = best.max(match_len(suffix, &rb[p - 1..]));
        }
        if best == 0 {
            out.push((None, 0));
            continue;
        }
        let continued = match out.last() {
            Some(&(Some(prev_p), prev_l)) if prev_l >= 1 && best == prev_l - 1 => Some(prev_p + 1),
            _ => None,
        };
        let p = continued.unwrap_or_else(|| {
            (1..=n)
                .filter(|&p| match_len(suffix, &rb[p - 1..]) >= best)
                .min_by(|&a, &b| rb[a - 1..].cmp(&rb[b - 1..]))
                .unwrap()
        });
        out.push((Some(p), best));
    }
    out
}

/// Insert point of `s[i..]` in the reference suffix array, evaluated
/// literally over every row: the largest row whose suffix starts with the
/// matching factor and precedes factor-plus-mismatch, or the smallest row
/// holding the factor otherwise. Returns the row and the side flag
/// (`false` = smaller side S, `true` = larger side L).
pub fn naive_insert_point(
    reference: &ReferenceIndex,
    s: &ByteText,
    i: usize,
) -> Result<(usize, bool)> {
    let r = reference.text();
    let rb = r.bytes();
    let n = rb.len();
    let suffix = s.suffix(i);
    let mut ell = 0usize;
    for p in 1..=n {
        ell = ell.max(match_len(suffix, &rb[p - 1..]));
    }
    if ell == 0 {
        // Empty factor: row 1 holds the reference terminator, which every
        // document symbol exceeds.
        return Ok((1, true));
    }
    let factor_c = &suffix[..ell + 1]; // factor plus mismatch symbol
    let factor = &factor_c[..ell];
    let mut smaller: Option<usize> = None;
    let mut first: Option<usize> = None;
    for row in 1..=n {
        let suf = r.suffix(reference.sa()[row - 1]);
        if suf.len() >= ell && &suf[..ell] == factor {
            if first.is_none() {
                first = Some(row);
            }
            if suf < factor_c {
                smaller = Some(row);
            }
        }
    }
    match smaller {
        Some(row) => Ok((row, true)),
        None => Ok((first.expect("factor occurs in reference"), false)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::build_reference_index;

    fn doc(content: &[u8]) -> ByteText {
        ByteText::document(content).unwrap()
    }

    #[test]
    fn gsa_duplicate_docs() {
        let c = Collection::from_contents(&[b"AB".as_slice(), b"AB"]).unwrap();
        assert_eq!(
            naive_gsa(&c),
            vec![(1, 3), (2, 3), (1, 1), (2, 1), (1, 2), (2, 2)]
        );
    }

    #[test]
    fn gsa_single_terminator() {
        let c = Collection::from_contents(&[b"".as_slice()]).unwrap();
        assert_eq!(naive_gsa(&c), vec![(1, 1)]);
    }

    #[test]
    fn gsa_worked_example() {
        let c = Collection::from_contents(&[b"GATGGCACATTGATGG".as_slice()]).unwrap();
        let expect: Vec<(usize, usize)> =
            [17, 7, 13, 2, 9, 6, 8, 16, 12, 1, 5, 15, 4, 11, 14, 3, 10]
                .iter()
                .map(|&j| (1usize, j))
                .collect();
        assert_eq!(naive_gsa(&c), expect);
    }

    #[test]
    fn ms_worked_example() {
        let r = ByteText::reference(b"TGATGGCACAGATACT").unwrap();
        let s = doc(b"GATGGCACATTGATGG");
        let ms = naive_ms(&r, &s);
        assert_eq!(ms[0], (Some(2), 9));
        assert_eq!(ms[8], (Some(12), 2));
        assert_eq!(ms[16], (None, 0));
        let p_row: Vec<i64> = ms
            .iter()
            .map(|&(p, _)| p.map_or(-1, |v| v as i64))
            .collect();
        let l_row: Vec<usize> = ms.iter().map(|&(_, l)| l).collect();
        assert_eq!(
            p_row,
            vec![2, 3, 4, 5, 6, 7, 8, 9, 12, 13, 1, 2, 3, 4, 5, 6, -1]
        );
        assert_eq!(
            l_row,
            vec![9, 8, 7, 6, 5, 4, 3, 2, 2, 1, 6, 5, 4, 3, 2, 1, 0]
        );
    }

    #[test]
    fn ms_terminator_only() {
        let r = ByteText::reference(b"AC").unwrap();
        let s = doc(b"");
        assert_eq!(naive_ms(&r, &s), vec![(None, 0)]);
    }

    #[test]
    fn ms_absent_factor() {
        let r = ByteText::reference(b"AC").unwrap();
        let s = doc(b"CA");
        assert_eq!(
            naive_ms(&r, &s),
            vec![(Some(2), 1), (Some(1), 1), (None, 0)]
        );
    }

    #[test]
    fn insert_point_worked_example() {
        let r = ByteText::reference(b"TGATGGCACAGATACT").unwrap();
        let coll = Collection::new(vec![doc(b"GATGGCACATTGATGG")]).unwrap();
        let idx = build_reference_index(&r, &coll, 256).unwrap();
        let s = coll.doc(1);
        assert_eq!(naive_insert_point(&idx, s, 9).unwrap(), (6, true));
        assert_eq!(naive_insert_point(&idx, s, 17).unwrap(), (1, true));
        assert_eq!(naive_insert_point(&idx, s, 11).unwrap(), (16, false));
    }
}
