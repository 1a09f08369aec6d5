//! Streaming computation of (enhanced, compressed) matching statistics.
//!
//! A document is scanned left to right. At each position the current
//! matching factor is tracked as the suffix-array interval of its
//! occurrences; the failing right extension yields the insert row, the side
//! flag and the mismatch symbol. Moving to the next position contracts the
//! interval by one leading symbol and extends again. A fast path skips the
//! contraction machinery when the factor provably has a single occurrence.

use crate::error::{Error, Result};
use crate::reference::ReferenceIndex;
use crate::text::ByteText;

/// A maximal suffix-array interval whose rows share the current factor of
/// length `match_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaInterval {
    pub s: usize,
    pub e: usize,
    pub match_len: usize,
}

/// Result of a right extension: the extended interval, or the row where the
/// extended pattern would insert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Nonempty(SaInterval),
    EmptyWithGap(usize),
}

/// Whether factor-plus-mismatch sorts below (`Smaller`) or above (`Larger`)
/// the reference suffix at the insert row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Smaller,
    Larger,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Smaller => "S",
            Side::Larger => "L",
        })
    }
}

/// One stored record of the enhanced compressed matching statistics: an
/// insert-head position together with its enhanced entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadRecord {
    pub doc: usize,
    /// 1-based position in the document.
    pub j: usize,
    /// Insert row in the reference suffix array.
    pub ip: usize,
    /// Reference text position at that row.
    pub q: usize,
    /// Matching factor length.
    pub ell: usize,
    pub side: Side,
    /// Mismatch symbol.
    pub c: u8,
}

/// One record of the plain compressed matching statistics: a head position
/// with an occurrence of its factor. `p` is `None` when the factor is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CmsEntry {
    pub j: usize,
    pub p: Option<usize>,
    pub ell: usize,
}

/// Work counters for one streaming pass.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MsCounters {
    /// Left contractions computed through the LCP / smaller-value machinery.
    pub contractions: u64,
    /// The subset of contractions that expanded the mapped rows via
    /// threshold smaller-value queries.
    pub contractions_expanded: u64,
    /// Positions handled entirely by the singleton fast path.
    pub fast_path_hits: u64,
    /// Fast-path attempts that failed verification and fell back.
    pub fast_path_fallbacks: u64,
    pub right_extensions: u64,
}

impl MsCounters {
    pub fn merge(&mut self, other: &MsCounters) {
        self.contractions += other.contractions;
        self.contractions_expanded += other.contractions_expanded;
        self.fast_path_hits += other.fast_path_hits;
        self.fast_path_fallbacks += other.fast_path_fallbacks;
        self.right_extensions += other.right_extensions;
    }
}

/// Heads, insert-heads and counters for one document.
#[derive(Debug, Clone)]
pub struct MatchingOutput {
    pub heads: Vec<CmsEntry>,
    pub insert_heads: Vec<HeadRecord>,
    pub counters: MsCounters,
}

fn lower_bound(reference: &ReferenceIndex, s: usize, e: usize, off: usize, c: u8) -> usize {
    let (mut lo, mut hi) = (s, e + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reference.row_symbol(mid, off) < c {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

fn upper_bound(reference: &ReferenceIndex, s: usize, e: usize, off: usize, c: u8) -> usize {
    let (mut lo, mut hi) = (s, e + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reference.row_symbol(mid, off) <= c {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo - 1
}

/// Computes the interval of factor-plus-`c` from the factor interval by a
/// pair of binary searches over the symbol at the extension offset. When the
/// extended interval is empty, reports the gap row: rows below it carry
/// suffixes smaller than the extended pattern, rows at or above it larger.
pub fn right_extension(reference: &ReferenceIndex, iv: SaInterval, c: u8) -> ExtensionOutcome {
    let off = iv.match_len;
    let lo = lower_bound(reference, iv.s, iv.e, off, c);
    if lo > iv.e || reference.row_symbol(lo, off) != c {
        ExtensionOutcome::EmptyWithGap(lo)
    } else {
        let hi = upper_bound(reference, lo, iv.e, off, c);
        ExtensionOutcome::Nonempty(SaInterval {
            s: lo,
            e: hi,
            match_len: off + 1,
        })
    }
}

fn contract(
    reference: &ReferenceIndex,
    iv: SaInterval,
    counters: &mut MsCounters,
) -> Result<SaInterval> {
    if iv.match_len == 0 {
        return Err(Error::Contract(
            "cannot left-contract an interval with match length 0".into(),
        ));
    }
    let n = reference.len();
    let target = iv.match_len - 1;
    if target == 0 {
        return Ok(SaInterval {
            s: 1,
            e: n,
            match_len: 0,
        });
    }
    counters.contractions += 1;
    let sa = reference.sa();
    let isa = reference.isa();
    // rows of the one-symbol-shorter occurrences at both interval ends
    let s2 = isa[sa[iv.s - 1]];
    let e2 = isa[sa[iv.e - 1]];
    let lcp = reference.lcp();
    if s2 == e2 && lcp[s2 - 1] < target && (s2 == n || lcp[s2] < target) {
        return Ok(SaInterval {
            s: s2,
            e: s2,
            match_len: target,
        });
    }
    counters.contractions_expanded += 1;
    let idx = reference.nsv_psv();
    let s_new = idx.prev_below(s2, target).unwrap_or(1);
    let e_new = match idx.next_below(e2 + 1, target) {
        Some(b) => b - 1,
        None => n,
    };
    Ok(SaInterval {
        s: s_new,
        e: e_new,
        match_len: target,
    })
}

/// Computes the one-symbol-shorter factor interval from the current one:
/// both interval ends are mapped one text position forward through
/// ISA, then the mapped rows are widened to every row sharing at least the
/// shorter factor length, using threshold smaller-value queries on LCP.
pub fn left_contraction(reference: &ReferenceIndex, iv: SaInterval) -> Result<SaInterval> {
    let mut scratch = MsCounters::default();
    contract(reference, iv, &mut scratch)
}

/// Per-position outcome of the stream.
#[derive(Debug, Clone, Copy)]
struct PosState {
    interval: SaInterval,
    ip: usize,
    side: Side,
    c: u8,
    q: usize,
    /// Occurrence at the interval's left edge (the lexicographically
    /// smallest occurrence of the factor).
    p_left: usize,
}

fn extend_to_mismatch(
    reference: &ReferenceIndex,
    doc: &ByteText,
    i: usize,
    mut iv: SaInterval,
    counters: &mut MsCounters,
) -> PosState {
    loop {
        let c = doc.at(i + iv.match_len);
        counters.right_extensions += 1;
        match right_extension(reference, iv, c) {
            ExtensionOutcome::Nonempty(next) => iv = next,
            ExtensionOutcome::EmptyWithGap(g) => {
                let (ip, side) = if g > iv.s {
                    (g - 1, Side::Larger)
                } else {
                    (iv.s, Side::Smaller)
                };
                return PosState {
                    interval: iv,
                    ip,
                    side,
                    c,
                    q: reference.sa()[ip - 1],
                    p_left: reference.sa()[iv.s - 1],
                };
            }
        }
    }
}

/// Singleton fast path for position `i`. The factor of `i - 1` had the
/// unique occurrence `p_prev`; its contraction is taken to be the single row
/// of `p_prev + 1` and the match is extended by direct text comparison.
/// Commits only after confirming that the final factor really has no other
/// occurrence (cached block maxima first, at most two LCP probes otherwise);
/// returns `None` to make the caller fall back to the exact route.
fn fast_step(
    reference: &ReferenceIndex,
    doc: &ByteText,
    i: usize,
    p_prev: usize,
    prev_len: usize,
    row: usize,
) -> Option<PosState> {
    let r = reference.text();
    let n = reference.len();
    let start = p_prev + 1;
    let mut lambda = prev_len - 1;
    loop {
        debug_assert!(start + lambda <= n);
        if doc.at(i + lambda) == r.at(start + lambda) {
            lambda += 1;
        } else {
            break;
        }
    }
    if lambda == 0 {
        return None;
    }
    let unique = lambda > reference.block_max_around(row) || {
        let lcp = reference.lcp();
        lcp[row - 1] < lambda && (row == n || lcp[row] < lambda)
    };
    if !unique {
        return None;
    }
    let c = doc.at(i + lambda);
    let side = if r.at(start + lambda) < c {
        Side::Larger
    } else {
        Side::Smaller
    };
    Some(PosState {
        interval: SaInterval {
            s: row,
            e: row,
            match_len: lambda,
        },
        ip: row,
        side,
        c,
        q: start,
        p_left: start,
    })
}

/// Streams one document against the reference, returning its heads and
/// insert-head records in increasing position order.
pub fn compute_matching(
    reference: &ReferenceIndex,
    doc: &ByteText,
    doc_id: usize,
    heuristic: bool,
) -> Result<MatchingOutput> {
    for &b in doc.content() {
        if !reference.has_symbol(b) {
            return Err(Error::Augmentation(b));
        }
    }
    let n = reference.len();
    let mut counters = MsCounters::default();
    let mut heads = Vec::new();
    let mut insert_heads = Vec::new();
    let mut prev: Option<PosState> = None;
    let mut prev_ell = 0usize;

    for i in 1..=doc.len() {
        let state = match prev {
            None => extend_to_mismatch(
                reference,
                doc,
                i,
                SaInterval {
                    s: 1,
                    e: n,
                    match_len: 0,
                },
                &mut counters,
            ),
            Some(p) => {
                let mut fast = None;
                if heuristic && p.interval.s == p.interval.e && p.interval.match_len >= 1 {
                    let p_prev = reference.sa()[p.interval.s - 1];
                    let row = reference.isa()[p_prev];
                    if p.interval.match_len > reference.block_min_at(row) {
                        fast = fast_step(reference, doc, i, p_prev, p.interval.match_len, row);
                        if fast.is_some() {
                            counters.fast_path_hits += 1;
                        } else {
                            counters.fast_path_fallbacks += 1;
                        }
                    }
                }
                match fast {
                    Some(state) => state,
                    None => {
                        let iv = contract(reference, p.interval, &mut counters)?;
                        extend_to_mismatch(reference, doc, i, iv, &mut counters)
                    }
                }
            }
        };
        let ell = state.interval.match_len;
        debug_assert!(
            ell > 0 || doc.at(i) < 2,
            "empty factor away from a terminator"
        );
        if prev.is_none() || ell >= prev_ell {
            heads.push(CmsEntry {
                j: i,
                p: (ell > 0).then_some(state.p_left),
                ell,
            });
        }
        let is_insert_head = match prev {
            None => true,
            Some(p) => state.q != p.q + 1,
        };
        if is_insert_head {
            insert_heads.push(HeadRecord {
                doc: doc_id,
                j: i,
                ip: state.ip,
                q: state.q,
                ell,
                side: state.side,
                c: state.c,
            });
        }
        prev_ell = ell;
        prev = Some(state);
    }
    Ok(MatchingOutput {
        heads,
        insert_heads,
        counters,
    })
}

/// Insert-head records of one document (document id 1).
pub fn compute_ecms(
    reference: &ReferenceIndex,
    doc: &ByteText,
    heuristic: bool,
) -> Result<Vec<HeadRecord>> {
    Ok(compute_matching(reference, doc, 1, heuristic)?.insert_heads)
}

/// Expands head records back to one (occurrence, length) pair per position.
pub fn expand_ms(heads: &[CmsEntry], doc_len: usize) -> Vec<(Option<usize>, usize)> {
    let mut out = Vec::with_capacity(doc_len);
    for (idx, h) in heads.iter().enumerate() {
        let end = heads.get(idx + 1).map_or(doc_len, |next| next.j - 1);
        for i in h.j..=end {
            let k = i - h.j;
            let l = h.ell - k;
            out.push(if l == 0 {
                (None, 0)
            } else {
                (Some(h.p.expect("nonempty factor has an occurrence") + k), l)
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_insert_point, naive_ms};
    use crate::reference::build_reference_index;
    use crate::text::Collection;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn worked_example() -> (ReferenceIndex, Collection) {
        let r = ByteText::reference(b"TGATGGCACAGATACT").unwrap();
        let coll = Collection::from_contents(&[b"GATGGCACATTGATGG"]).unwrap();
        let idx = build_reference_index(&r, &coll, 256).unwrap();
        (idx, coll)
    }

    #[test]
    fn right_extension_examples() {
        let (idx, _) = worked_example();
        // A-interval is rows 2..6
        let a = SaInterval {
            s: 2,
            e: 6,
            match_len: 1,
        };
        assert_eq!(
            right_extension(&idx, a, b'T'),
            ExtensionOutcome::Nonempty(SaInterval {
                s: 5,
                e: 6,
                match_len: 2
            })
        );
        let at = SaInterval {
            s: 5,
            e: 6,
            match_len: 2,
        };
        assert_eq!(
            right_extension(&idx, at, b'A'),
            ExtensionOutcome::Nonempty(SaInterval {
                s: 5,
                e: 5,
                match_len: 3
            })
        );
        assert_eq!(
            right_extension(&idx, at, b'T'),
            ExtensionOutcome::EmptyWithGap(7)
        );
    }

    #[test]
    fn left_contraction_examples() {
        let (idx, _) = worked_example();
        // "CA" rows 7..8 -> "A" rows 2..6
        let ca = SaInterval {
            s: 7,
            e: 8,
            match_len: 2,
        };
        assert_eq!(
            left_contraction(&idx, ca).unwrap(),
            SaInterval {
                s: 2,
                e: 6,
                match_len: 1
            }
        );
        // "TGATGG" row 16 -> "GATGG" row 11
        let tgatgg = SaInterval {
            s: 16,
            e: 16,
            match_len: 6,
        };
        assert_eq!(
            left_contraction(&idx, tgatgg).unwrap(),
            SaInterval {
                s: 11,
                e: 11,
                match_len: 5
            }
        );
        // match length 1 -> whole text
        let whole = SaInterval {
            s: 14,
            e: 17,
            match_len: 1,
        };
        assert_eq!(
            left_contraction(&idx, whole).unwrap(),
            SaInterval {
                s: 1,
                e: 17,
                match_len: 0
            }
        );
        let zero = SaInterval {
            s: 1,
            e: 17,
            match_len: 0,
        };
        assert!(left_contraction(&idx, zero).is_err());
    }

    #[test]
    fn ecms_worked_example() {
        let (idx, coll) = worked_example();
        for heuristic in [true, false] {
            let out = compute_matching(&idx, coll.doc(1), 1, heuristic).unwrap();
            let got: Vec<(usize, usize, usize, Side, u8)> = out
                .insert_heads
                .iter()
                .map(|h| (h.j, h.q, h.ell, h.side, h.c))
                .collect();
            assert_eq!(
                got,
                vec![
                    (1, 2, 9, Side::Larger, b'T'),
                    (9, 3, 2, Side::Larger, b'T'),
                    (11, 1, 6, Side::Smaller, crate::text::TERM_DOC),
                    (16, 11, 1, Side::Smaller, crate::text::TERM_DOC),
                    (17, 17, 0, Side::Larger, crate::text::TERM_DOC),
                ],
                "heuristic {heuristic}"
            );
            let heads: Vec<(usize, Option<usize>, usize)> =
                out.heads.iter().map(|h| (h.j, h.p, h.ell)).collect();
            assert_eq!(
                heads,
                vec![(1, Some(2), 9), (9, Some(12), 2), (11, Some(1), 6)]
            );
        }
    }

    #[test]
    fn ecms_terminator_only_document() {
        let (idx, _) = worked_example();
        let doc = ByteText::document(b"").unwrap();
        let records = compute_ecms(&idx, &doc, true).unwrap();
        assert_eq!(records.len(), 1);
        let h = records[0];
        assert_eq!((h.j, h.ip, h.q, h.ell, h.side), (1, 1, 17, 0, Side::Larger));
        assert_eq!(h.c, crate::text::TERM_DOC);
    }

    #[test]
    fn unseen_symbol_is_an_augmentation_error() {
        let (idx, _) = worked_example();
        let doc = ByteText::document(b"GATN").unwrap();
        assert!(matches!(
            compute_ecms(&idx, &doc, true),
            Err(Error::Augmentation(b'N'))
        ));
    }

    #[test]
    fn expansion_matches_worked_rows() {
        let (idx, coll) = worked_example();
        let out = compute_matching(&idx, coll.doc(1), 1, true).unwrap();
        let ms = expand_ms(&out.heads, coll.doc(1).len());
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

    fn mutate(seed: &[u8], rate_permille: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
        const ALPHABET: &[u8] = b"ACGTN";
        seed.iter()
            .map(|&b| {
                if rng.gen_range(0..1000) < rate_permille {
                    ALPHABET[rng.gen_range(0..ALPHABET.len())]
                } else {
                    b
                }
            })
            .collect()
    }

    #[test]
    fn random_pairs_match_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        const ALPHABET: &[u8] = b"ACGT";
        for case in 0..40 {
            let rlen = rng.gen_range(20..400);
            let rcontent: Vec<u8> = (0..rlen)
                .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
                .collect();
            let scontent = if case % 2 == 0 {
                mutate(&rcontent, 30, &mut rng)
            } else {
                (0..rng.gen_range(1..500))
                    .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
                    .collect()
            };
            let r = ByteText::reference(&rcontent).unwrap();
            let coll = Collection::from_contents(&[&scontent]).unwrap();
            let idx = build_reference_index(&r, &coll, 64).unwrap();
            let doc = coll.doc(1);

            let on = compute_matching(&idx, doc, 1, true).unwrap();
            let off = compute_matching(&idx, doc, 1, false).unwrap();
            assert_eq!(on.heads, off.heads, "case {case}");
            assert_eq!(on.insert_heads, off.insert_heads, "case {case}");

            let ms = expand_ms(&on.heads, doc.len());
            assert_eq!(ms, naive_ms(idx.text(), doc), "case {case}");

            // decrement law and head containment
            for w in ms.windows(2) {
                assert!(w[1].1 + 1 >= w[0].1, "case {case}: decrement law");
            }
            let head_set: Vec<usize> = on.heads.iter().map(|h| h.j).collect();
            let ihead_set: Vec<usize> = on.insert_heads.iter().map(|h| h.j).collect();
            for j in &head_set {
                assert!(
                    ihead_set.contains(j),
                    "case {case}: head {j} not an insert-head"
                );
            }

            // insert point, side flag and sandwich inequalities per record
            for h in &on.insert_heads {
                let (ip, larger) = naive_insert_point(&idx, doc, h.j).unwrap();
                assert_eq!(h.ip, ip, "case {case} j {}", h.j);
                assert_eq!(h.side == Side::Larger, larger, "case {case} j {}", h.j);
                assert_eq!(h.q, idx.sa()[h.ip - 1], "case {case} j {}", h.j);
                let suffix = doc.suffix(h.j);
                match h.side {
                    Side::Smaller => {
                        assert!(h.ip > 1);
                        assert!(idx.text().suffix(idx.sa()[h.ip - 2]) < suffix);
                        assert!(suffix < idx.text().suffix(h.q));
                    }
                    Side::Larger => {
                        assert!(idx.text().suffix(h.q) < suffix);
                        if h.ip < idx.len() {
                            assert!(suffix < idx.text().suffix(idx.sa()[h.ip]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_factor_only_at_terminators() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        const ALPHABET: &[u8] = b"ACGTN";
        for _ in 0..20 {
            let rcontent: Vec<u8> = (0..rng.gen_range(5..100))
                .map(|_| ALPHABET[rng.gen_range(0..3)])
                .collect();
            let scontent: Vec<u8> = (0..rng.gen_range(1..200))
                .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
                .collect();
            let r = ByteText::reference(&rcontent).unwrap();
            let coll = Collection::from_contents(&[&scontent]).unwrap();
            let idx = build_reference_index(&r, &coll, 64).unwrap();
            let doc = coll.doc(1);
            let out = compute_matching(&idx, doc, 1, true).unwrap();
            let ms = expand_ms(&out.heads, doc.len());
            for (i, &(_, l)) in ms.iter().enumerate() {
                assert_eq!(l == 0, i + 1 == doc.len(), "position {}", i + 1);
            }
        }
    }
}
