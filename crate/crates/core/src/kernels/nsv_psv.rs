//! Previous/next-smaller-value queries over an integer array.
//!
//! Block-sparse layout: the array is cut into fixed blocks and each block's
//! minimum is cached. A query scans within the current block and skips whole
//! blocks whose minimum cannot contain an answer. Besides the value-relative
//! PSV/NSV queries this also answers threshold queries (first position on
//! either side whose value drops below a given bound), which is what interval
//! expansion on LCP arrays needs.

use crate::error::{Error, Result};

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct NsvPsvIndex {
    values: Vec<usize>,
    block_min: Vec<usize>,
}

/// Query direction for [`smaller_value_query`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallerDirection {
    Psv,
    Nsv,
}

impl NsvPsvIndex {
    pub fn new(values: Vec<usize>) -> Self {
        let block_min = values
            .chunks(BLOCK)
            .map(|b| b.iter().copied().min().unwrap_or(usize::MAX))
            .collect();
        NsvPsvIndex { values, block_min }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.values.len() {
            return Err(Error::Range(format!(
                "index {i} outside 1..={}",
                self.values.len()
            )));
        }
        Ok(())
    }

    /// Largest `i' < i` with `a[i'] < a[i]` (1-based), if any.
    pub fn psv(&self, i: usize) -> Result<Option<usize>> {
        self.check(i)?;
        Ok(self.scan_left(i - 1, self.values[i - 1]))
    }

    /// Smallest `i' > i` with `a[i'] < a[i]` (1-based), if any.
    pub fn nsv(&self, i: usize) -> Result<Option<usize>> {
        self.check(i)?;
        Ok(self.scan_right(i + 1, self.values[i - 1]))
    }

    /// Largest `i' <= i` with `a[i'] < bound`, if any.
    pub fn prev_below(&self, i: usize, bound: usize) -> Option<usize> {
        self.scan_left(i, bound)
    }

    /// Smallest `i' >= i` with `a[i'] < bound`, if any.
    pub fn next_below(&self, i: usize, bound: usize) -> Option<usize> {
        self.scan_right(i, bound)
    }

    fn scan_left(&self, start: usize, bound: usize) -> Option<usize> {
        if start == 0 {
            return None;
        }
        let mut idx = start.min(self.values.len()); // 1-based, inclusive
                                                    // finish the block containing idx
        let mut block = (idx - 1) / BLOCK;
        let block_start = block * BLOCK + 1;
        while idx >= block_start {
            if self.values[idx - 1] < bound {
                return Some(idx);
            }
            idx -= 1;
        }
        // skip whole blocks
        while block > 0 {
            block -= 1;
            if self.block_min[block] < bound {
                let lo = block * BLOCK + 1;
                let mut j = (block + 1) * BLOCK;
                while j >= lo {
                    if self.values[j - 1] < bound {
                        return Some(j);
                    }
                    j -= 1;
                }
            }
        }
        None
    }

    fn scan_right(&self, start: usize, bound: usize) -> Option<usize> {
        let n = self.values.len();
        if start > n {
            return None;
        }
        let mut idx = start.max(1);
        let mut block = (idx - 1) / BLOCK;
        let block_end = ((block + 1) * BLOCK).min(n);
        while idx <= block_end {
            if self.values[idx - 1] < bound {
                return Some(idx);
            }
            idx += 1;
        }
        loop {
            block += 1;
            if block >= self.block_min.len() {
                return None;
            }
            if self.block_min[block] < bound {
                let hi = ((block + 1) * BLOCK).min(n);
                for j in block * BLOCK + 1..=hi {
                    if self.values[j - 1] < bound {
                        return Some(j);
                    }
                }
            }
        }
    }
}

/// Previous/next smaller value relative to the value at `i` (1-based).
pub fn smaller_value_query(
    idx: &NsvPsvIndex,
    i: usize,
    direction: SmallerDirection,
) -> Result<Option<usize>> {
    match direction {
        SmallerDirection::Psv => idx.psv(i),
        SmallerDirection::Nsv => idx.nsv(i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_psv(a: &[usize], i: usize) -> Option<usize> {
        (1..i).rev().find(|&j| a[j - 1] < a[i - 1])
    }

    fn linear_nsv(a: &[usize], i: usize) -> Option<usize> {
        (i + 1..=a.len()).find(|&j| a[j - 1] < a[i - 1])
    }

    #[test]
    fn spec_examples() {
        let idx = NsvPsvIndex::new(vec![0, 2, 1, 3, 1, 0]);
        assert_eq!(
            smaller_value_query(&idx, 4, SmallerDirection::Psv).unwrap(),
            Some(3)
        );
        assert_eq!(
            smaller_value_query(&idx, 4, SmallerDirection::Nsv).unwrap(),
            Some(5)
        );
        let idx = NsvPsvIndex::new(vec![0, 1]);
        assert_eq!(
            smaller_value_query(&idx, 1, SmallerDirection::Psv).unwrap(),
            None
        );
        assert!(smaller_value_query(&idx, 0, SmallerDirection::Psv).is_err());
        assert!(smaller_value_query(&idx, 3, SmallerDirection::Nsv).is_err());
    }

    #[test]
    fn matches_linear_scan_on_random_arrays() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for case in 0..100 {
            let n = 1 + (next() % 300) as usize;
            let vals: Vec<usize> = (0..n).map(|_| (next() % 8) as usize).collect();
            let idx = NsvPsvIndex::new(vals.clone());
            for i in 1..=n {
                assert_eq!(
                    idx.psv(i).unwrap(),
                    linear_psv(&vals, i),
                    "case {case} psv {i}"
                );
                assert_eq!(
                    idx.nsv(i).unwrap(),
                    linear_nsv(&vals, i),
                    "case {case} nsv {i}"
                );
                let bound = (next() % 9) as usize;
                assert_eq!(
                    idx.prev_below(i, bound),
                    (1..=i).rev().find(|&j| vals[j - 1] < bound),
                    "case {case} prev_below {i} {bound}"
                );
                assert_eq!(
                    idx.next_below(i, bound),
                    (i..=n).find(|&j| vals[j - 1] < bound),
                    "case {case} next_below {i} {bound}"
                );
            }
        }
    }
}
