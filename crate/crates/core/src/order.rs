//! Comparing collection suffixes through their enhanced entries: a partial
//! order decided by the entry fields alone, and tie-breaking through the
//! ranks of the insert-heads covering the mismatch symbols.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matching::Side;
use crate::reference::ReferenceIndex;
use crate::store::{EcmsStore, EmsEntry};

/// Linearization of the partial order on enhanced entries: insert row
/// ascending, then side (S before L), then factor length (ascending on the
/// S side, descending on the L side), then mismatch symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialOrderKey {
    pub ip: usize,
    pub side: Side,
    pub ell: usize,
    pub c: u8,
}

impl PartialOrderKey {
    pub fn of(e: &EmsEntry) -> Self {
        PartialOrderKey {
            ip: e.ip,
            side: e.side,
            ell: e.ell,
            c: e.c,
        }
    }

    /// Length component folded so that plain ascending order sorts the
    /// S side ascending and the L side descending.
    #[inline]
    pub(crate) fn ell_order(&self) -> u64 {
        match self.side {
            Side::Smaller => self.ell as u64,
            Side::Larger => u64::MAX - self.ell as u64,
        }
    }
}

impl Ord for PartialOrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ip
            .cmp(&other.ip)
            .then(self.side.cmp(&other.side))
            .then(self.ell_order().cmp(&other.ell_order()))
            .then(self.c.cmp(&other.c))
    }
}

impl PartialOrd for PartialOrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Verdict of the entry-only comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialCmp {
    Less,
    Greater,
    Tie,
}

/// Orders two suffixes by their enhanced entries alone. `Tie` exactly when
/// insert row, length, side and mismatch symbol all coincide.
pub fn partial_compare(a: &EmsEntry, b: &EmsEntry) -> PartialCmp {
    match PartialOrderKey::of(a).cmp(&PartialOrderKey::of(b)) {
        Ordering::Less => PartialCmp::Less,
        Ordering::Greater => PartialCmp::Greater,
        Ordering::Equal => PartialCmp::Tie,
    }
}

/// Lexicographic ranks (1-based, document tie-broken) of every insert-head
/// suffix, indexed by document and head index.
#[derive(Debug, Clone)]
pub struct HeadRanks {
    per_doc: Vec<Vec<usize>>,
}

impl HeadRanks {
    pub fn new(per_doc: Vec<Vec<usize>>) -> Self {
        HeadRanks { per_doc }
    }

    #[inline]
    pub fn rank(&self, d: usize, head_idx: usize) -> usize {
        self.per_doc[d - 1][head_idx]
    }

    pub fn head_count(&self) -> usize {
        self.per_doc.iter().map(|v| v.len()).sum()
    }
}

/// Full comparison: the partial order first, ties resolved by the ranks of
/// the insert-heads covering the two mismatch symbols. A tie whose mismatch
/// symbol is the document terminator means both suffixes are the same
/// factor-plus-terminator string, so the document index decides. When the
/// two covering heads sit at different offsets the reduction is not yet
/// sound; both positions advance by the larger stripped prefix (the window
/// up to the mismatch symbol is identical on both sides) and the comparison
/// repeats. `Equal` only for identical positions.
pub fn compare_with_ranks(
    store: &EcmsStore,
    ranks: &HeadRanks,
    reference: &ReferenceIndex,
    a: (usize, usize),
    b: (usize, usize),
) -> Result<Ordering> {
    let (mut a, mut b) = (a, b);
    loop {
        if a == b {
            return Ok(Ordering::Equal);
        }
        let ea = store.ems_at(reference, a.0, a.1)?;
        let eb = store.ems_at(reference, b.0, b.1)?;
        match partial_compare(&ea, &eb) {
            PartialCmp::Less => return Ok(Ordering::Less),
            PartialCmp::Greater => return Ok(Ordering::Greater),
            PartialCmp::Tie => {
                if ea.c == crate::text::TERM_DOC {
                    debug_assert_ne!(a.0, b.0, "equal same-document suffixes");
                    return Ok(a.0.cmp(&b.0));
                }
                let ia = store.ihead_pred(a.0, a.1 + ea.ell)?;
                let ib = store.ihead_pred(b.0, b.1 + eb.ell)?;
                let ja = store.records(a.0)[ia].j;
                let jb = store.records(b.0)[ib].j;
                if ja <= a.1 || jb <= b.1 {
                    return Err(Error::Invariant(format!(
                        "no insert-head between ({},{}) / ({},{}) and their mismatch symbols",
                        a.0, a.1, b.0, b.1
                    )));
                }
                if ja - a.1 == jb - b.1 {
                    let (ra, rb) = (ranks.rank(a.0, ia), ranks.rank(b.0, ib));
                    if ra == rb {
                        // same covering head for two distinct positions would
                        // force identical positions
                        return Err(Error::Invariant(format!(
                            "distinct suffixes ({},{}) and ({},{}) reduced to one head",
                            a.0, a.1, b.0, b.1
                        )));
                    }
                    return Ok(ra.cmp(&rb));
                }
                let t = (ja - a.1).max(jb - b.1);
                a = (a.0, a.1 + t);
                b = (b.0, b.1 + t);
            }
        }
    }
}

/// Comparison by repeated tie reduction: map both positions to the
/// insert-heads covering their mismatch symbols and compare again. Returns
/// `Equal` when the suffix contents are identical (a tie on a terminator
/// mismatch); the caller applies its own tie-break.
pub fn compare_iterative(
    store: &EcmsStore,
    reference: &ReferenceIndex,
    a: (usize, usize),
    b: (usize, usize),
) -> Result<Ordering> {
    let (mut a, mut b) = (a, b);
    loop {
        if a == b {
            return Ok(Ordering::Equal);
        }
        let ea = store.ems_at(reference, a.0, a.1)?;
        let eb = store.ems_at(reference, b.0, b.1)?;
        match partial_compare(&ea, &eb) {
            PartialCmp::Less => return Ok(Ordering::Less),
            PartialCmp::Greater => return Ok(Ordering::Greater),
            PartialCmp::Tie => {
                if ea.c == crate::text::TERM_DOC {
                    // both suffixes are the factor followed by the terminator
                    return Ok(Ordering::Equal);
                }
                let ja = store.ihead_record(a.0, a.1 + ea.ell)?.j;
                let jb = store.ihead_record(b.0, b.1 + eb.ell)?.j;
                if ja <= a.1 || jb <= b.1 {
                    return Err(Error::Invariant(format!(
                        "no insert-head between ({},{}) / ({},{}) and their mismatch symbols",
                        a.0, a.1, b.0, b.1
                    )));
                }
                let t = (ja - a.1).max(jb - b.1);
                a = (a.0, a.1 + t);
                b = (b.0, b.1 + t);
            }
        }
    }
}
