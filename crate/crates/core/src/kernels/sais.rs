//! Induced-sorting suffix array construction over integer alphabets.
//!
//! Classic SAIS: classify suffixes as S or L, sort the LMS substrings by one
//! round of induction, name them, recurse on the reduced string if names
//! collide, then induce the full array from the sorted LMS suffixes.
//! Internal positions are 0-based; the text must end with a unique minimal
//! sentinel symbol.

const EMPTY: usize = usize::MAX;

fn bucket_heads(counts: &[usize]) -> Vec<usize> {
    let mut heads = vec![0usize; counts.len()];
    let mut sum = 0;
    for (h, &c) in heads.iter_mut().zip(counts) {
        *h = sum;
        sum += c;
    }
    heads
}

fn bucket_tails(counts: &[usize]) -> Vec<usize> {
    let mut tails = vec![0usize; counts.len()];
    let mut sum = 0;
    for (t, &c) in tails.iter_mut().zip(counts) {
        sum += c;
        *t = sum;
    }
    tails
}

fn induce(text: &[usize], sa: &mut [usize], counts: &[usize], is_s: &[bool]) {
    let n = text.len();
    let mut heads = bucket_heads(counts);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !is_s[j - 1] {
            let c = text[j - 1];
            sa[heads[c]] = j - 1;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_tails(counts);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && is_s[j - 1] {
            let c = text[j - 1];
            tails[c] -= 1;
            sa[tails[c]] = j - 1;
        }
    }
}

fn lms_equal(
    text: &[usize],
    is_s: &[bool],
    lms: impl Fn(usize) -> bool,
    a: usize,
    b: usize,
) -> bool {
    let _ = is_s;
    if a == b {
        return true;
    }
    let mut k = 0;
    loop {
        let a_end = lms(a + k);
        let b_end = lms(b + k);
        if k > 0 && a_end && b_end {
            return true;
        }
        if a_end != b_end || text[a + k] != text[b + k] {
            return false;
        }
        k += 1;
    }
}

/// Suffix array of `text` (0-based positions). Assumes symbols `< sigma`
/// and a unique minimal final sentinel.
pub(crate) fn suffix_array(text: &[usize], sigma: usize) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }

    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = text[i] < text[i + 1] || (text[i] == text[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut counts = vec![0usize; sigma];
    for &c in text {
        counts[c] += 1;
    }

    // Round 1: seed LMS positions, induce to sort LMS substrings.
    let mut sa = vec![EMPTY; n];
    {
        let mut tails = bucket_tails(&counts);
        for i in (1..n).rev() {
            if is_lms(i) {
                let c = text[i];
                tails[c] -= 1;
                sa[tails[c]] = i;
            }
        }
    }
    induce(text, &mut sa, &counts, &is_s);

    let lms_positions: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    let lms_count = lms_positions.len();
    let sorted_lms: Vec<usize> = sa.iter().copied().filter(|&j| is_lms(j)).collect();
    debug_assert_eq!(sorted_lms.len(), lms_count);

    // Name LMS substrings in sorted order; equal substrings share a name.
    let mut names = vec![EMPTY; n];
    let mut name = 0usize;
    let mut prev = EMPTY;
    for &pos in &sorted_lms {
        if prev != EMPTY && !lms_equal(text, &is_s, is_lms, prev, pos) {
            name += 1;
        }
        names[pos] = name;
        prev = pos;
    }
    let distinct = name + 1;

    let order: Vec<usize> = if distinct < lms_count {
        let reduced: Vec<usize> = lms_positions.iter().map(|&p| names[p]).collect();
        let rsa = suffix_array(&reduced, distinct);
        rsa.iter().map(|&r| lms_positions[r]).collect()
    } else {
        sorted_lms
    };

    // Round 2: seed LMS suffixes in their final relative order, induce.
    sa.fill(EMPTY);
    {
        let mut tails = bucket_tails(&counts);
        for &pos in order.iter().rev() {
            let c = text[pos];
            tails[c] -= 1;
            sa[tails[c]] = pos;
        }
    }
    induce(text, &mut sa, &counts, &is_s);
    sa
}
