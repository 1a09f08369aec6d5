//! The six construction phases: reference indexing, matching statistics,
//! S*-bucketing, insert-head sorting via metacharacters, bucket sorting and
//! induced sorting into the generalized suffix array.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::build_suffix_array_ints;
use crate::matching::{compute_matching, MsCounters};
use crate::order::{compare_with_ranks, HeadRanks, PartialOrderKey};
use crate::reference::{build_reference_index, ReferenceIndex, DEFAULT_BLOCK_SIZE};
use crate::store::{build_store, EcmsStore, DEFAULT_PRED_SAMPLE};
use crate::text::{ByteText, Collection, IntText};

/// Suffix classification; `SStar` is an S position with an L predecessor.
/// The final position of a document is plain `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuffixType {
    L,
    S,
    SStar,
}

pub type TypeArray = Vec<SuffixType>;

/// The generalized suffix array: (document, position) pairs in suffix order
/// with document-index tie-breaking.
pub type Gsa = Vec<(usize, usize)>;

/// S*-positions grouped by insert row, rows ascending, entries in
/// document-then-position order.
pub type SstarBuckets = BTreeMap<usize, Vec<(usize, usize)>>;

/// One back-to-front scan classifying every position of the document.
pub fn compute_type_array(doc: &ByteText) -> TypeArray {
    let n = doc.len();
    let mut types = vec![SuffixType::S; n];
    for i in (1..n).rev() {
        let (a, b) = (doc.at(i), doc.at(i + 1));
        types[i - 1] = if a < b {
            SuffixType::S
        } else if a > b {
            SuffixType::L
        } else {
            types[i]
        };
    }
    for i in 2..n {
        if types[i - 1] == SuffixType::S && types[i - 2] == SuffixType::L {
            types[i - 1] = SuffixType::SStar;
        }
    }
    types
}

/// Phase 3: groups every S*-position by the insert row of its suffix.
/// Terminator positions are left out; induction seeds them directly.
pub fn bucket_sstar(
    store: &EcmsStore,
    reference: &ReferenceIndex,
    collection: &Collection,
    types: &[TypeArray],
) -> Result<SstarBuckets> {
    let mut buckets = SstarBuckets::new();
    for d in 1..=collection.doc_count() {
        let len = collection.doc(d).len();
        for j in 1..len {
            if types[d - 1][j - 1] == SuffixType::SStar {
                let ip = store.ems_at(reference, d, j)?.ip;
                buckets.entry(ip).or_default().push((d, j));
            }
        }
    }
    Ok(buckets)
}

/// The metacharacter string: one dense rank per insert-head in document
/// order, every document followed by its sentinel rank. Sentinel of document
/// `d` is `d - 1`; metacharacter ranks start at the document count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaString {
    pub symbols: Vec<usize>,
    pub alphabet_size: usize,
}

/// Origin of one metastring position: a head (document, head index) or a
/// document sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetaOrigin {
    Head(usize, usize),
    Sentinel(usize),
}

#[derive(Debug, Clone, Copy)]
struct HeadRef {
    doc: usize,
    idx: usize,
    key: PartialOrderKey,
}

fn counting_pass<F: Fn(&HeadRef) -> usize>(items: &mut Vec<HeadRef>, bins: usize, key: F) {
    let mut starts = vec![0usize; bins + 1];
    for it in items.iter() {
        starts[key(it) + 1] += 1;
    }
    for k in 1..=bins {
        starts[k] += starts[k - 1];
    }
    let mut out = items.clone();
    for it in items.iter() {
        let k = key(it);
        out[starts[k]] = *it;
        starts[k] += 1;
    }
    *items = out;
}

/// Stable three-pass radix sort of one insert-point bucket: mismatch symbol,
/// then signed factor length, then side.
fn radix_sort_bucket(bucket: &mut Vec<HeadRef>) {
    if bucket.len() < 2 {
        return;
    }
    counting_pass(bucket, 256, |h| h.key.c as usize);
    bucket.sort_by_key(|h| h.key.ell_order());
    counting_pass(bucket, 2, |h| match h.key.side {
        crate::matching::Side::Smaller => 0,
        crate::matching::Side::Larger => 1,
    });
}

/// Partially sorts all insert-heads (bucketed by insert row, radix inside
/// each bucket) and assigns dense metacharacter ranks: equal
/// (row, length, side, symbol) tuples share one rank. Returns the
/// metastring, the origin of each of its positions, and the head count.
pub fn build_meta_string(store: &EcmsStore) -> (MetaString, Vec<MetaOrigin>) {
    let m = store.doc_count();
    let mut by_ip: BTreeMap<usize, Vec<HeadRef>> = BTreeMap::new();
    for d in 1..=m {
        for (idx, rec) in store.records(d).iter().enumerate() {
            by_ip.entry(rec.ip).or_default().push(HeadRef {
                doc: d,
                idx,
                key: PartialOrderKey {
                    ip: rec.ip,
                    side: rec.side,
                    ell: rec.ell,
                    c: rec.c,
                },
            });
        }
    }
    let mut meta = vec![Vec::new(); m];
    for (d, v) in meta.iter_mut().enumerate() {
        v.resize(store.records(d + 1).len(), 0);
    }
    let mut rank = m; // first metacharacter rank
    let mut prev: Option<PartialOrderKey> = None;
    for (_, mut bucket) in by_ip {
        radix_sort_bucket(&mut bucket);
        for h in bucket {
            if prev.is_some_and(|k| k != h.key) {
                rank += 1;
            }
            prev = Some(h.key);
            meta[h.doc - 1][h.idx] = rank;
        }
    }
    let alphabet_size = if prev.is_some() { rank + 1 } else { m };

    let mut symbols = Vec::with_capacity(store.chi_prime() + m);
    let mut origins = Vec::with_capacity(symbols.capacity());
    for d in 1..=m {
        for (idx, &r) in meta[d - 1].iter().enumerate() {
            symbols.push(r);
            origins.push(MetaOrigin::Head(d, idx));
        }
        symbols.push(d - 1);
        origins.push(MetaOrigin::Sentinel(d));
    }
    (
        MetaString {
            symbols,
            alphabet_size,
        },
        origins,
    )
}

/// Phase 4: global lexicographic ranks of every insert-head suffix. The
/// metastring is suffix-sorted over its integer alphabet (after shifting
/// ranks up by one and appending a global terminator, which the unique
/// per-document sentinels make order-preserving) and rows at head positions
/// are read off in order.
pub fn sort_insert_heads(store: &EcmsStore) -> Result<HeadRanks> {
    let (meta, origins) = build_meta_string(store);
    let shifted: Vec<usize> = meta
        .symbols
        .iter()
        .map(|&s| s + 1)
        .chain(std::iter::once(0))
        .collect();
    let text = IntText::new(shifted, meta.alphabet_size + 1)?;
    let sa = build_suffix_array_ints(&text)?;

    let m = store.doc_count();
    let mut ranks = vec![Vec::new(); m];
    for (d, v) in ranks.iter_mut().enumerate() {
        v.resize(store.records(d + 1).len(), 0);
    }
    let mut next = 0usize;
    for &pos in &sa {
        if pos > origins.len() {
            continue; // appended global terminator
        }
        if let MetaOrigin::Head(d, idx) = origins[pos - 1] {
            next += 1;
            ranks[d - 1][idx] = next;
        }
    }
    Ok(HeadRanks::new(ranks))
}

/// Phase 5: sorts every bucket with the rank-backed comparator and
/// concatenates them in insert-row order, yielding all non-terminator
/// S*-suffixes in lexicographic order with document tie-break.
pub fn sort_sstar_buckets(
    store: &EcmsStore,
    reference: &ReferenceIndex,
    ranks: &HeadRanks,
    buckets: SstarBuckets,
) -> Result<Vec<(usize, usize)>> {
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let mut groups: Vec<Vec<(usize, usize)>> = buckets.into_values().collect();
    groups.par_iter_mut().for_each(|bucket| {
        bucket.sort_by(|&a, &b| {
            compare_with_ranks(store, ranks, reference, a, b).unwrap_or_else(|e| {
                failure.lock().unwrap().get_or_insert(e);
                std::cmp::Ordering::Equal
            })
        });
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(groups.into_iter().flatten().collect())
}

/// Phase 6: induces the full array from the sorted S*-suffixes. Terminator
/// suffixes are seeded in document order, the left-to-right scan places
/// L-predecessors at bucket fronts, the right-to-left scan places
/// S-predecessors at bucket backs.
pub fn induce_gsa(
    collection: &Collection,
    types: &[TypeArray],
    sorted_sstar: &[(usize, usize)],
) -> Result<Gsa> {
    let n_total = collection.total_len();
    let m = collection.doc_count();

    let mut counts = [0usize; 256];
    for doc in collection.docs() {
        for &b in doc.bytes() {
            counts[b as usize] += 1;
        }
    }
    let mut starts = [0usize; 257];
    for c in 0..256 {
        starts[c + 1] = starts[c] + counts[c];
    }

    let mut gsa: Gsa = vec![(0, 0); n_total];
    // terminator suffixes fill the whole terminator bucket, rows 1..=m
    for d in 1..=m {
        gsa[d - 1] = (d, collection.doc(d).len());
    }

    let mut tails: Vec<usize> = (0..256).map(|c| starts[c + 1]).collect();
    for &(d, j) in sorted_sstar.iter().rev() {
        let c = collection.doc(d).at(j) as usize;
        tails[c] -= 1;
        if gsa[tails[c]].0 != 0 {
            return Err(Error::Invariant(format!(
                "slot collision seeding S*-suffix ({d},{j})"
            )));
        }
        gsa[tails[c]] = (d, j);
    }

    let mut heads: Vec<usize> = (0..256).map(|c| starts[c]).collect();
    for r in 0..n_total {
        let (d, j) = gsa[r];
        if d == 0 || j < 2 {
            continue;
        }
        if types[d - 1][j - 2] == SuffixType::L {
            let c = collection.doc(d).at(j - 1) as usize;
            let slot = heads[c];
            if slot >= starts[c + 1] || gsa[slot].0 != 0 {
                return Err(Error::Invariant(format!(
                    "slot collision inducing L-suffix ({d},{})",
                    j - 1
                )));
            }
            gsa[slot] = (d, j - 1);
            heads[c] += 1;
        }
    }

    tails.copy_from_slice(&starts[1..]);
    for r in (0..n_total).rev() {
        let (d, j) = gsa[r];
        if d == 0 {
            return Err(Error::Invariant(format!("row {} left unfilled", r + 1)));
        }
        if j < 2 || types[d - 1][j - 2] == SuffixType::L {
            continue;
        }
        let c = collection.doc(d).at(j - 1) as usize;
        tails[c] -= 1;
        if tails[c] < starts[c] {
            return Err(Error::Invariant(format!(
                "bucket underflow inducing S-suffix ({d},{})",
                j - 1
            )));
        }
        gsa[tails[c]] = (d, j - 1);
    }
    Ok(gsa)
}

/// Knobs for [`build_gsa`].
#[derive(Debug, Clone)]
pub struct BuildConfig {
    /// LCP block size for the cached minima driving the fast path.
    pub block_size: usize,
    /// Predecessor sampling rate of the head store.
    pub pred_sample: usize,
    /// Enables the singleton fast path in phase 2.
    pub heuristic: bool,
    /// Worker threads for phases 2 and 5.
    pub workers: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            pred_sample: DEFAULT_PRED_SAMPLE,
            heuristic: true,
            workers: 1,
        }
    }
}

/// Wall-clock duration of each phase.
#[derive(Debug, Default, Clone, Copy)]
pub struct PhaseTimings {
    pub reference_index: Duration,
    pub matching: Duration,
    pub bucketing: Duration,
    pub head_sort: Duration,
    pub sstar_sort: Duration,
    pub induce: Duration,
}

/// Size and work statistics of one build.
#[derive(Debug, Clone)]
pub struct BuildReport {
    /// Total collection length including terminators.
    pub total_len: usize,
    pub doc_count: usize,
    /// Distinct content symbols in the collection.
    pub sigma: usize,
    /// Head count.
    pub chi: usize,
    /// Insert-head count.
    pub chi_prime: usize,
    /// Bucketed S*-suffixes (terminators excluded).
    pub sstar_count: usize,
    pub reference_len: usize,
    pub lcp_sum_reference: u64,
    pub counters: MsCounters,
    pub timings: PhaseTimings,
}

/// Intermediate products of a build, for callers that need more than the
/// array itself.
pub struct BuildArtifacts {
    pub reference: ReferenceIndex,
    pub store: EcmsStore,
    pub gsa: Gsa,
    pub report: BuildReport,
}

/// Runs all six phases. Without an explicit reference the first document's
/// content serves as one.
pub fn build_gsa(
    collection: &Collection,
    reference: Option<&ByteText>,
    config: &BuildConfig,
) -> Result<(Gsa, BuildReport)> {
    build_gsa_full(collection, reference, config).map(|a| (a.gsa, a.report))
}

pub fn build_gsa_full(
    collection: &Collection,
    reference: Option<&ByteText>,
    config: &BuildConfig,
) -> Result<BuildArtifacts> {
    let m = collection.doc_count();
    let default_ref;
    let reference = match reference {
        Some(r) => r,
        None => {
            default_ref = ByteText::reference(collection.doc(1).content())?;
            &default_ref
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("worker pool: {e}")))?;

    let mut timings = PhaseTimings::default();
    let t = Instant::now();
    let ref_index = build_reference_index(reference, collection, config.block_size)?;
    timings.reference_index = t.elapsed();

    let t = Instant::now();
    let outputs = pool.install(|| {
        (1..=m)
            .into_par_iter()
            .map(|d| compute_matching(&ref_index, collection.doc(d), d, config.heuristic))
            .collect::<Result<Vec<_>>>()
    })?;
    let chi = outputs.iter().map(|o| o.heads.len()).sum();
    let mut counters = MsCounters::default();
    for o in &outputs {
        counters.merge(&o.counters);
    }
    let doc_lens: Vec<usize> = collection.docs().iter().map(|d| d.len()).collect();
    let store = build_store(
        outputs.into_iter().map(|o| o.insert_heads).collect(),
        &doc_lens,
        config.pred_sample,
    )?;
    timings.matching = t.elapsed();

    let t = Instant::now();
    let types: Vec<TypeArray> = collection.docs().iter().map(compute_type_array).collect();
    let buckets = bucket_sstar(&store, &ref_index, collection, &types)?;
    let sstar_count = buckets.values().map(Vec::len).sum();
    timings.bucketing = t.elapsed();

    let t = Instant::now();
    let ranks = sort_insert_heads(&store)?;
    timings.head_sort = t.elapsed();

    let t = Instant::now();
    let sorted_sstar = pool.install(|| sort_sstar_buckets(&store, &ref_index, &ranks, buckets))?;
    timings.sstar_sort = t.elapsed();

    let t = Instant::now();
    let gsa = induce_gsa(collection, &types, &sorted_sstar)?;
    timings.induce = t.elapsed();

    let report = BuildReport {
        total_len: collection.total_len(),
        doc_count: m,
        sigma: collection.content_alphabet().len(),
        chi,
        chi_prime: store.chi_prime(),
        sstar_count,
        reference_len: ref_index.len(),
        lcp_sum_reference: ref_index.lcp_sum(),
        counters,
        timings,
    };
    Ok(BuildArtifacts {
        reference: ref_index,
        store,
        gsa,
        report,
    })
}
