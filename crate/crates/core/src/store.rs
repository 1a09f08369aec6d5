//! The enhanced compressed matching statistics store: per-document
//! insert-head records plus a two-layer predecessor structure (sampled
//! positions over a differential encoding) giving random access to the
//! enhanced entry of any position.

use crate::error::{Error, Result};
use crate::matching::{HeadRecord, Side};
use crate::reference::ReferenceIndex;

pub const DEFAULT_PRED_SAMPLE: usize = 32;

const MAGIC: &[u8; 4] = b"ECMS";
const VERSION: u8 = 1;

/// Enhanced matching statistics of one position: insert-point occurrence,
/// factor length, side flag, mismatch symbol and the insert row itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmsEntry {
    pub q: usize,
    pub ell: usize,
    pub side: Side,
    pub c: u8,
    pub ip: usize,
}

#[derive(Debug, Clone)]
struct DocStore {
    records: Vec<HeadRecord>,
    /// Every `sample_rate`-th head position.
    samples: Vec<usize>,
    /// Gaps between consecutive head positions (32-bit per entry).
    deltas: Vec<u32>,
    doc_len: usize,
}

/// Insert-head records for a whole collection with predecessor search.
#[derive(Debug, Clone)]
pub struct EcmsStore {
    docs: Vec<DocStore>,
    sample_rate: usize,
    chi_prime: usize,
}

impl EcmsStore {
    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    /// Total number of stored insert-head records.
    pub fn chi_prime(&self) -> usize {
        self.chi_prime
    }

    pub fn sample_rate(&self) -> usize {
        self.sample_rate
    }

    pub fn doc_len(&self, d: usize) -> usize {
        self.docs[d - 1].doc_len
    }

    /// Stored records of document `d` in increasing position order.
    pub fn records(&self, d: usize) -> &[HeadRecord] {
        &self.docs[d - 1].records
    }

    fn check_pos(&self, d: usize, i: usize) -> Result<()> {
        if d == 0 || d > self.docs.len() {
            return Err(Error::Range(format!(
                "document {d} outside 1..={}",
                self.docs.len()
            )));
        }
        let len = self.docs[d - 1].doc_len;
        if i == 0 || i > len {
            return Err(Error::Range(format!("position {i} outside 1..={len}")));
        }
        Ok(())
    }

    /// Index (into `records(d)`) of the rightmost insert-head at or before
    /// `i`: binary search over the samples, then a forward scan through the
    /// differential layer.
    pub fn ihead_pred(&self, d: usize, i: usize) -> Result<usize> {
        self.check_pos(d, i)?;
        let doc = &self.docs[d - 1];
        // rightmost sample <= i
        let k = doc.samples.partition_point(|&p| p <= i) - 1;
        let mut idx = k * self.sample_rate;
        let mut pos = doc.samples[k];
        while idx + 1 < doc.records.len() {
            let next = pos + doc.deltas[idx] as usize;
            if next > i {
                break;
            }
            pos = next;
            idx += 1;
        }
        Ok(idx)
    }

    /// Enhanced entry of position `i` of document `d`, expanded from its
    /// covering insert-head: the occurrence advances with the offset, the
    /// length shrinks with it, side and mismatch symbol carry over, and the
    /// insert row is recovered through ISA.
    pub fn ems_at(&self, reference: &ReferenceIndex, d: usize, i: usize) -> Result<EmsEntry> {
        let idx = self.ihead_pred(d, i)?;
        let rec = &self.docs[d - 1].records[idx];
        let k = i - rec.j;
        let q = rec.q + k;
        if q == 0 || q > reference.len() {
            return Err(Error::Range(format!(
                "expanded occurrence {q} outside the reference"
            )));
        }
        Ok(EmsEntry {
            q,
            ell: rec.ell - k,
            side: rec.side,
            c: rec.c,
            ip: reference.isa()[q - 1],
        })
    }

    /// Record position of the insert-head covering `(d, i)`.
    pub fn ihead_record(&self, d: usize, i: usize) -> Result<&HeadRecord> {
        let idx = self.ihead_pred(d, i)?;
        Ok(&self.docs[d - 1].records[idx])
    }
}

/// Builds the store from per-document record lists (document order, each
/// sorted by position with position 1 present).
pub fn build_store(
    records: Vec<Vec<HeadRecord>>,
    doc_lens: &[usize],
    sample_rate: usize,
) -> Result<EcmsStore> {
    if records.len() != doc_lens.len() {
        return Err(Error::Invariant(
            "record lists and document lengths differ in count".into(),
        ));
    }
    let sample_rate = sample_rate.max(1);
    let mut docs = Vec::with_capacity(records.len());
    let mut chi_prime = 0usize;
    for (d0, recs) in records.into_iter().enumerate() {
        if recs.first().map(|r| r.j) != Some(1) {
            return Err(Error::Invariant(format!(
                "document {}: first insert-head must be position 1",
                d0 + 1
            )));
        }
        let mut samples = Vec::with_capacity(recs.len() / sample_rate + 1);
        let mut deltas = Vec::with_capacity(recs.len().saturating_sub(1));
        for (idx, w) in recs.iter().enumerate() {
            if idx % sample_rate == 0 {
                samples.push(w.j);
            }
            if idx > 0 {
                let prev = &recs[idx - 1];
                if w.j <= prev.j {
                    return Err(Error::Invariant(format!(
                        "document {}: unsorted insert-head positions {} -> {}",
                        d0 + 1,
                        prev.j,
                        w.j
                    )));
                }
                let gap = w.j - prev.j;
                // a decrement run covers at most the factor plus its
                // mismatch symbol; a larger gap would make expansion at
                // in-between positions undefined
                if gap > prev.ell + 1 {
                    return Err(Error::Invariant(format!(
                        "document {}: gap {} after position {} exceeds its run",
                        d0 + 1,
                        gap,
                        prev.j
                    )));
                }
                if gap > u32::MAX as usize {
                    return Err(Error::Invariant("head gap exceeds 32 bits".into()));
                }
                deltas.push(gap as u32);
            }
        }
        if let Some(last) = recs.last() {
            if last.j > doc_lens[d0] || doc_lens[d0] - last.j > last.ell {
                return Err(Error::Invariant(format!(
                    "document {}: last run does not cover the document end",
                    d0 + 1
                )));
            }
        }
        chi_prime += recs.len();
        docs.push(DocStore {
            records: recs,
            samples,
            deltas,
            doc_len: doc_lens[d0],
        });
    }
    Ok(EcmsStore {
        docs,
        sample_rate,
        chi_prime,
    })
}

impl EcmsStore {
    /// Binary dump: magic, version byte, document count, then per document
    /// its length, record count and little-endian records
    /// `(j, ip, q, ell: u64, side, c: u8)`.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.docs.len() as u64).to_le_bytes());
        for doc in &self.docs {
            out.extend_from_slice(&(doc.doc_len as u64).to_le_bytes());
            out.extend_from_slice(&(doc.records.len() as u64).to_le_bytes());
            for r in &doc.records {
                out.extend_from_slice(&(r.j as u64).to_le_bytes());
                out.extend_from_slice(&(r.ip as u64).to_le_bytes());
                out.extend_from_slice(&(r.q as u64).to_le_bytes());
                out.extend_from_slice(&(r.ell as u64).to_le_bytes());
                out.push(match r.side {
                    Side::Smaller => 0,
                    Side::Larger => 1,
                });
                out.push(r.c);
            }
        }
        out
    }

    pub fn decode(bytes: &[u8], sample_rate: usize) -> Result<EcmsStore> {
        let mut cur = Cursor { bytes, at: 0 };
        if cur.take(4)? != MAGIC {
            return Err(Error::Decode("bad magic".into()));
        }
        let version = cur.u8()?;
        if version != VERSION {
            return Err(Error::Decode(format!("unsupported version {version}")));
        }
        let doc_count = cur.u64()? as usize;
        const RECORD_SIZE: usize = 8 * 4 + 2;
        if doc_count > bytes.len() / 16 + 1 {
            return Err(Error::Decode("document count exceeds payload".into()));
        }
        let mut records = Vec::with_capacity(doc_count);
        let mut doc_lens = Vec::with_capacity(doc_count);
        for _ in 0..doc_count {
            let doc_len = cur.u64()? as usize;
            let count = cur.u64()? as usize;
            if count > (bytes.len() - cur.at) / RECORD_SIZE {
                return Err(Error::Decode("record count exceeds payload".into()));
            }
            let mut recs = Vec::with_capacity(count);
            for _ in 0..count {
                let j = cur.u64()? as usize;
                let ip = cur.u64()? as usize;
                let q = cur.u64()? as usize;
                let ell = cur.u64()? as usize;
                let side = match cur.u8()? {
                    0 => Side::Smaller,
                    1 => Side::Larger,
                    v => return Err(Error::Decode(format!("bad side flag {v}"))),
                };
                let c = cur.u8()?;
                recs.push(HeadRecord {
                    doc: doc_lens.len() + 1,
                    j,
                    ip,
                    q,
                    ell,
                    side,
                    c,
                });
            }
            records.push(recs);
            doc_lens.push(doc_len);
        }
        if cur.at != bytes.len() {
            return Err(Error::Decode("trailing bytes after payload".into()));
        }
        build_store(records, &doc_lens, sample_rate)
            .map_err(|e| Error::Decode(format!("inconsistent payload: {e}")))
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.at + n > self.bytes.len() {
            return Err(Error::Decode("truncated payload".into()));
        }
        let out = &self.bytes[self.at..self.at + n];
        self.at += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
