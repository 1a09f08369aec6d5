//! Writing and reading the array itself: a minimal streamable binary format
//! and a TSV form.

use std::io::{self, Read, Write};

use crate::builder::Gsa;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"GSA1";

/// Output encoding of the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Binary,
    Tsv,
}

/// Binary layout: magic, one byte field width (4 or 8), entry count as
/// u64, then interleaved little-endian (doc, pos) pairs. The width is the
/// smallest that fits every value.
pub fn write_gsa_binary(gsa: &Gsa, mut w: impl Write) -> io::Result<()> {
    let max = gsa.iter().map(|&(d, j)| d.max(j)).max().unwrap_or(0);
    let width: u8 = if max <= u32::MAX as usize { 4 } else { 8 };
    w.write_all(MAGIC)?;
    w.write_all(&[width])?;
    w.write_all(&(gsa.len() as u64).to_le_bytes())?;
    for &(d, j) in gsa {
        if width == 4 {
            w.write_all(&(d as u32).to_le_bytes())?;
            w.write_all(&(j as u32).to_le_bytes())?;
        } else {
            w.write_all(&(d as u64).to_le_bytes())?;
            w.write_all(&(j as u64).to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_gsa_binary(bytes: &[u8]) -> Result<Gsa> {
    if bytes.len() < 13 || &bytes[..4] != MAGIC {
        return Err(Error::Decode("bad magic".into()));
    }
    let width = bytes[4] as usize;
    if width != 4 && width != 8 {
        return Err(Error::Decode(format!("bad field width {width}")));
    }
    let count = u64::from_le_bytes(bytes[5..13].try_into().unwrap()) as usize;
    let body = &bytes[13..];
    if count.checked_mul(2 * width) != Some(body.len()) {
        return Err(Error::Decode("entry count does not match payload".into()));
    }
    let mut gsa = Vec::with_capacity(count);
    let mut at = 0;
    let field = |buf: &[u8]| -> usize {
        if width == 4 {
            u32::from_le_bytes(buf.try_into().unwrap()) as usize
        } else {
            u64::from_le_bytes(buf.try_into().unwrap()) as usize
        }
    };
    for _ in 0..count {
        let d = field(&body[at..at + width]);
        let j = field(&body[at + width..at + 2 * width]);
        at += 2 * width;
        gsa.push((d, j));
    }
    Ok(gsa)
}

/// One `doc<TAB>pos` line per entry.
pub fn write_gsa_tsv(gsa: &Gsa, mut w: impl Write) -> io::Result<()> {
    for &(d, j) in gsa {
        writeln!(w, "{d}\t{j}")?;
    }
    Ok(())
}

pub fn read_gsa_tsv(bytes: &[u8]) -> Result<Gsa> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode(format!("not utf-8: {e}")))?;
    let mut gsa = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let parse = |s: Option<&str>| -> Result<usize> {
            s.ok_or_else(|| Error::Decode(format!("line {}: missing field", idx + 1)))?
                .parse()
                .map_err(|e| Error::Decode(format!("line {}: {e}", idx + 1)))
        };
        let d = parse(fields.next())?;
        let j = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Decode(format!("line {}: trailing field", idx + 1)));
        }
        gsa.push((d, j));
    }
    Ok(gsa)
}

pub fn write_gsa(gsa: &Gsa, format: OutputFormat, w: impl Write) -> io::Result<()> {
    match format {
        OutputFormat::Binary => write_gsa_binary(gsa, w),
        OutputFormat::Tsv => write_gsa_tsv(gsa, w),
    }
}

/// Reads either format, deciding by the magic bytes.
pub fn read_gsa(mut r: impl Read) -> Result<Gsa> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.starts_with(MAGIC) {
        read_gsa_binary(&bytes)
    } else {
        read_gsa_tsv(&bytes)
    }
}
