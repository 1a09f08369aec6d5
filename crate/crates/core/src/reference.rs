//! Reference augmentation and the per-reference index structures.

use crate::error::Result;
use crate::kernels::{
    build_plcp, build_suffix_array_bytes, invert_permutation, plcp_to_lcp, NsvPsvIndex,
};
use crate::text::{ByteText, Collection};

pub const DEFAULT_BLOCK_SIZE: usize = 256;

/// Appends, for every content symbol that occurs in the collection but not
/// in the reference, a run of that symbol as long as its longest run in the
/// collection. Keeps the reference terminator final and unique. Idempotent.
pub fn augment_reference(r: &ByteText, collection: &Collection) -> Result<ByteText> {
    let mut present = [false; 256];
    for &b in r.content() {
        present[b as usize] = true;
    }
    let mut longest_run = [0usize; 256];
    for doc in collection.docs() {
        let content = doc.content();
        let mut i = 0;
        while i < content.len() {
            let c = content[i];
            let mut j = i + 1;
            while j < content.len() && content[j] == c {
                j += 1;
            }
            longest_run[c as usize] = longest_run[c as usize].max(j - i);
            i = j;
        }
    }
    let mut out = r.content().to_vec();
    for c in 2usize..256 {
        if !present[c] && longest_run[c] > 0 {
            out.extend(std::iter::repeat_n(c as u8, longest_run[c]));
        }
    }
    ByteText::reference(&out)
}

/// Everything phase 2 needs about the reference: the augmented text, its
/// suffix/inverse/PLCP/LCP arrays, smaller-value support over LCP, and
/// cached per-block LCP minima and maxima.
#[derive(Debug)]
pub struct ReferenceIndex {
    r_aug: ByteText,
    sa: Vec<usize>,
    isa: Vec<usize>,
    plcp: Vec<usize>,
    nsv_psv: NsvPsvIndex,
    block_size: usize,
    block_min: Vec<usize>,
    block_max: Vec<usize>,
    lcp_max: usize,
    lcp_sum: u64,
    present: [bool; 256],
}

impl ReferenceIndex {
    pub fn text(&self) -> &ByteText {
        &self.r_aug
    }

    pub fn len(&self) -> usize {
        self.r_aug.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_aug.is_empty()
    }

    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    pub fn isa(&self) -> &[usize] {
        &self.isa
    }

    pub fn plcp(&self) -> &[usize] {
        &self.plcp
    }

    pub fn lcp(&self) -> &[usize] {
        self.nsv_psv.values()
    }

    pub fn nsv_psv(&self) -> &NsvPsvIndex {
        &self.nsv_psv
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_min(&self) -> &[usize] {
        &self.block_min
    }

    pub fn lcp_max(&self) -> usize {
        self.lcp_max
    }

    pub fn lcp_sum(&self) -> u64 {
        self.lcp_sum
    }

    /// Minimum LCP value in the block containing row `i` (1-based).
    #[inline]
    pub fn block_min_at(&self, i: usize) -> usize {
        self.block_min[(i - 1) / self.block_size]
    }

    /// Maximum LCP value over the blocks containing rows `i` and `i + 1`.
    /// An upper bound for both neighbors of a row, used to confirm interval
    /// singletons without touching the LCP array itself.
    #[inline]
    pub fn block_max_around(&self, i: usize) -> usize {
        let k = (i - 1) / self.block_size;
        let m = self.block_max[k];
        if i < self.len() {
            let k2 = i / self.block_size;
            if k2 != k {
                return m.max(self.block_max[k2]);
            }
        }
        m
    }

    /// Symbol at offset `off` of the suffix in row `row` (both 1-based,
    /// `off = 0` is the suffix's first symbol).
    #[inline]
    pub fn row_symbol(&self, row: usize, off: usize) -> u8 {
        self.r_aug.at(self.sa[row - 1] + off)
    }

    /// Whether the symbol occurs anywhere in the augmented reference.
    #[inline]
    pub fn has_symbol(&self, b: u8) -> bool {
        self.present[b as usize]
    }
}

/// Phase 1: augment the reference against `collection` and build all of the
/// reference-side structures.
pub fn build_reference_index(
    r: &ByteText,
    collection: &Collection,
    block_size: usize,
) -> Result<ReferenceIndex> {
    let block_size = block_size.max(1);
    let r_aug = augment_reference(r, collection)?;
    let sa = build_suffix_array_bytes(&r_aug)?;
    let isa = invert_permutation(&sa)?;
    let plcp = build_plcp(&r_aug, &sa)?;
    let lcp = plcp_to_lcp(&plcp, &sa);
    let block_min: Vec<usize> = lcp
        .chunks(block_size)
        .map(|b| b.iter().copied().min().unwrap_or(0))
        .collect();
    let block_max: Vec<usize> = lcp
        .chunks(block_size)
        .map(|b| b.iter().copied().max().unwrap_or(0))
        .collect();
    let lcp_max = lcp.iter().copied().max().unwrap_or(0);
    let lcp_sum = lcp.iter().map(|&v| v as u64).sum();
    let mut present = [false; 256];
    for &b in r_aug.bytes() {
        present[b as usize] = true;
    }
    Ok(ReferenceIndex {
        r_aug,
        sa,
        isa,
        plcp,
        nsv_psv: NsvPsvIndex::new(lcp),
        block_size,
        block_min,
        block_max,
        lcp_max,
        lcp_sum,
        present,
    })
}
