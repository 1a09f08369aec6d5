//! Terminated byte texts and document collections.
//!
//! Symbol codes are raw byte values with two reserved codes: 0 terminates
//! the reference and 1 terminates every document. Code 0 sorts below code 1,
//! which sorts below every content symbol, so reference suffixes always
//! compare below the equally-long document suffixes. All positions in the
//! public API are 1-based; position `len()` is the terminator.

use crate::error::{Error, Result};

/// Reference terminator code (`#` in examples).
pub const TERM_REF: u8 = 0;
/// Document terminator code (`$` in examples).
pub const TERM_DOC: u8 = 1;

/// A byte string whose last symbol is a unique minimal terminator code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteText {
    bytes: Vec<u8>,
}

fn check_content(content: &[u8]) -> Result<()> {
    if let Some(pos) = content.iter().position(|&b| b < 2) {
        return Err(Error::InputFormat(format!(
            "reserved symbol code {} at content offset {}",
            content[pos], pos
        )));
    }
    Ok(())
}

impl ByteText {
    /// Builds a reference text: `content` plus the terminator code 0.
    pub fn reference(content: &[u8]) -> Result<Self> {
        check_content(content)?;
        let mut bytes = content.to_vec();
        bytes.push(TERM_REF);
        Ok(ByteText { bytes })
    }

    /// Builds a document text: `content` plus the terminator code 1.
    pub fn document(content: &[u8]) -> Result<Self> {
        check_content(content)?;
        let mut bytes = content.to_vec();
        bytes.push(TERM_DOC);
        Ok(ByteText { bytes })
    }

    /// Wraps an already-terminated byte sequence. The last byte must be a
    /// reserved terminator code occurring nowhere else.
    pub fn from_terminated(bytes: Vec<u8>) -> Result<Self> {
        let Some((&last, head)) = bytes.split_last() else {
            return Err(Error::InputFormat("empty text".into()));
        };
        if last >= 2 {
            return Err(Error::InputFormat(format!(
                "text does not end with a terminator code (last byte {last})"
            )));
        }
        check_content(head)?;
        Ok(ByteText { bytes })
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        self.bytes[i - 1]
    }

    /// Suffix starting at 1-based position `i` (includes the terminator).
    #[inline]
    pub fn suffix(&self, i: usize) -> &[u8] {
        &self.bytes[i - 1..]
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// The text without its terminator.
    pub fn content(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    pub fn terminator(&self) -> u8 {
        self.bytes[self.bytes.len() - 1]
    }
}

/// An integer-alphabet text for the metacharacter stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntText {
    pub symbols: Vec<usize>,
    pub alphabet_size: usize,
}

impl IntText {
    pub fn new(symbols: Vec<usize>, alphabet_size: usize) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::InputFormat(format!(
                "symbol {bad} is outside alphabet of size {alphabet_size}"
            )));
        }
        Ok(IntText {
            symbols,
            alphabet_size,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// A collection of documents; document ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collection {
    docs: Vec<ByteText>,
}

impl Collection {
    pub fn new(docs: Vec<ByteText>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::Usage("empty collection".into()));
        }
        for (idx, d) in docs.iter().enumerate() {
            if d.terminator() != TERM_DOC {
                return Err(Error::InputFormat(format!(
                    "document {} does not end with the document terminator",
                    idx + 1
                )));
            }
        }
        Ok(Collection { docs })
    }

    pub fn from_contents<T: AsRef<[u8]>>(contents: &[T]) -> Result<Self> {
        let docs = contents
            .iter()
            .map(|c| ByteText::document(c.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Collection::new(docs)
    }

    /// Number of documents.
    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    /// Document by 1-based id.
    #[inline]
    pub fn doc(&self, d: usize) -> &ByteText {
        &self.docs[d - 1]
    }

    pub fn docs(&self) -> &[ByteText] {
        &self.docs
    }

    /// Total length of all documents, terminators included.
    pub fn total_len(&self) -> usize {
        self.docs.iter().map(|d| d.len()).sum()
    }

    /// Distinct content symbol codes used across the collection.
    pub fn content_alphabet(&self) -> Vec<u8> {
        let mut seen = [false; 256];
        for d in &self.docs {
            for &b in d.content() {
                seen[b as usize] = true;
            }
        }
        (0u16..256)
            .filter(|&c| seen[c as usize])
            .map(|c| c as u8)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_appends_terminator() {
        let t = ByteText::reference(b"AC").unwrap();
        assert_eq!(t.bytes(), &[b'A', b'C', TERM_REF]);
        assert_eq!(t.at(3), TERM_REF);
        assert_eq!(t.suffix(2), &[b'C', TERM_REF]);
    }

    #[test]
    fn reserved_codes_rejected() {
        assert!(ByteText::document(&[65, 0, 66]).is_err());
        assert!(ByteText::document(&[1]).is_err());
        assert!(ByteText::reference(&[0]).is_err());
    }

    #[test]
    fn empty_document_is_just_terminator() {
        let t = ByteText::document(b"").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.at(1), TERM_DOC);
    }

    #[test]
    fn int_text_alphabet_checked() {
        assert!(IntText::new(vec![2, 3, 0], 4).is_ok());
        assert!(IntText::new(vec![4], 4).is_err());
    }

    #[test]
    fn collection_basics() {
        let c = Collection::from_contents(&[b"AB".as_slice(), b"BA"]).unwrap();
        assert_eq!(c.doc_count(), 2);
        assert_eq!(c.total_len(), 6);
        assert_eq!(c.content_alphabet(), vec![b'A', b'B']);
        assert!(Collection::new(vec![]).is_err());
    }
}
