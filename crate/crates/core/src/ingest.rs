//! Parsing document collections from FASTA or raw newline-separated input.

use crate::error::{Error, Result};
use crate::text::{ByteText, Collection};

/// Input layout of a collection file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Fasta,
    Raw,
}

fn ingest_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Ingest {
        line,
        msg: msg.into(),
    }
}

fn check_byte(b: u8, line: usize) -> Result<u8> {
    if b < 2 {
        return Err(ingest_err(
            line,
            format!("reserved byte {b} in sequence data"),
        ));
    }
    Ok(b.to_ascii_uppercase())
}

/// Parses FASTA data: each record body, uppercased with line breaks
/// stripped, becomes one document.
pub fn parse_fasta(data: &[u8]) -> Result<Vec<Vec<u8>>> {
    let mut docs: Vec<Vec<u8>> = Vec::new();
    let mut current: Option<(usize, Vec<u8>)> = None; // header line, body
    let mut line_no = 0usize;
    for line in data.split(|&b| b == b'\n') {
        line_no += 1;
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if line.first() == Some(&b'>') {
            if let Some((header_line, body)) = current.take() {
                if body.is_empty() {
                    return Err(ingest_err(header_line, "empty record"));
                }
                docs.push(body);
            }
            current = Some((line_no, Vec::new()));
        } else if line.is_empty() {
            continue;
        } else {
            let Some((_, body)) = current.as_mut() else {
                return Err(ingest_err(
                    line_no,
                    "sequence data before any record header",
                ));
            };
            for &b in line {
                body.push(check_byte(b, line_no)?);
            }
        }
    }
    if let Some((header_line, body)) = current.take() {
        if body.is_empty() {
            return Err(ingest_err(header_line, "empty record"));
        }
        docs.push(body);
    }
    if docs.is_empty() {
        return Err(ingest_err(1, "no records"));
    }
    Ok(docs)
}

/// Parses raw input: one document per line, bytes taken verbatim.
pub fn parse_raw(data: &[u8]) -> Result<Vec<Vec<u8>>> {
    let mut docs = Vec::new();
    let mut lines: Vec<&[u8]> = data.split(|&b| b == b'\n').collect();
    if lines.last() == Some(&&b""[..]) {
        lines.pop();
    }
    for (idx, line) in lines.iter().enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if line.is_empty() {
            return Err(ingest_err(idx + 1, "empty document line"));
        }
        if let Some(&b) = line.iter().find(|&&b| b < 2) {
            return Err(ingest_err(
                idx + 1,
                format!("reserved byte {b} in sequence data"),
            ));
        }
        docs.push(line.to_vec());
    }
    if docs.is_empty() {
        return Err(ingest_err(1, "no documents"));
    }
    Ok(docs)
}

/// Guesses the layout: data whose first non-whitespace byte is `>` is FASTA.
pub fn sniff_format(data: &[u8]) -> InputFormat {
    match data.iter().find(|&&b| !b.is_ascii_whitespace()) {
        Some(b'>') => InputFormat::Fasta,
        _ => InputFormat::Raw,
    }
}

/// Parses one input file into document contents.
pub fn parse_documents(data: &[u8], format: InputFormat) -> Result<Vec<Vec<u8>>> {
    match format {
        InputFormat::Fasta => parse_fasta(data),
        InputFormat::Raw => parse_raw(data),
    }
}

/// Builds a collection from several input payloads, ids assigned across
/// files in argument order.
pub fn ingest(payloads: &[(Vec<u8>, InputFormat)]) -> Result<Collection> {
    let mut docs = Vec::new();
    for (data, format) in payloads {
        for content in parse_documents(data, *format)? {
            docs.push(ByteText::document(&content)?);
        }
    }
    Collection::new(docs)
}

/// Parses a reference string: the first FASTA record, or the first line of
/// raw input.
pub fn parse_reference(data: &[u8], format: InputFormat) -> Result<ByteText> {
    let docs = parse_documents(data, format)?;
    ByteText::reference(&docs[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fasta_joins_lines_and_uppercases() {
        let docs = parse_fasta(b">a\nACGT\n>b\nac\nGT\n").unwrap();
        assert_eq!(docs, vec![b"ACGT".to_vec(), b"ACGT".to_vec()]);
    }

    #[test]
    fn fasta_errors() {
        assert!(matches!(
            parse_fasta(b"ACGT\n"),
            Err(Error::Ingest { line: 1, .. })
        ));
        assert!(matches!(
            parse_fasta(b">a\n>b\nACGT\n"),
            Err(Error::Ingest { line: 1, .. })
        ));
        assert!(matches!(
            parse_fasta(b">a\nAC\x00GT\n"),
            Err(Error::Ingest { line: 2, .. })
        ));
        assert!(parse_fasta(b"").is_err());
        assert!(parse_fasta(b">only-header\n").is_err());
    }

    #[test]
    fn raw_examples() {
        assert_eq!(
            parse_raw(b"AB\nBA\n").unwrap(),
            vec![b"AB".to_vec(), b"BA".to_vec()]
        );
        assert_eq!(parse_raw(b"AB").unwrap(), vec![b"AB".to_vec()]);
        assert!(matches!(
            parse_raw(b"AB\n\nBA\n"),
            Err(Error::Ingest { line: 2, .. })
        ));
        assert!(parse_raw(b"A\x01B\n").is_err());
        assert!(parse_raw(b"").is_err());
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff_format(b"  \n>rec\nAC\n"), InputFormat::Fasta);
        assert_eq!(sniff_format(b"ACGT\n"), InputFormat::Raw);
        assert_eq!(sniff_format(b""), InputFormat::Raw);
    }

    #[test]
    fn multi_payload_ids() {
        let c = ingest(&[
            (b">a\nAC\n".to_vec(), InputFormat::Fasta),
            (b"GT\nTT\n".to_vec(), InputFormat::Raw),
        ])
        .unwrap();
        assert_eq!(c.doc_count(), 3);
        assert_eq!(c.doc(2).content(), b"GT");
    }

    #[test]
    fn reference_takes_first_record() {
        let r = parse_reference(b">a\nAC\n>b\nGG\n", InputFormat::Fasta).unwrap();
        assert_eq!(r.content(), b"AC");
        assert_eq!(r.terminator(), crate::text::TERM_REF);
    }
}
