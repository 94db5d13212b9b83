//! Edge stream wire formats.
//!
//! Text: a header line `n <N>` or `n <N> weighted`, then one edge per line
//! as `u v` or `u v w`. Blank lines and anything after `#` are ignored.
//!
//! Binary: the magic `SGS1`, `n` as a little-endian `u32`, a flags byte
//! (bit 0: weighted), then fixed-width records of two little-endian `u32`
//! endpoints and, for weighted streams, a little-endian `u64` weight.
//!
//! Readers check syntax and vertex ranges; loops are passed through so the
//! engine can decide what to do with them.

use std::io::{self, BufRead, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VertexId;

pub const MAGIC: &[u8; 4] = b"SGS1";
const FLAG_WEIGHTED: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamHeader {
    pub n: usize,
    pub weighted: bool,
}

/// One edge as it appears on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Option<u64>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Text { line: usize, reason: String },
    #[error("binary header: {0}")]
    BinaryHeader(String),
    #[error("record {record}: {reason}")]
    Binary { record: u64, reason: String },
    #[error("empty input: no header")]
    MissingHeader,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Text,
    Binary,
}

/// Sniffs the encoding from the first bytes without consuming them.
pub fn detect_encoding<R: BufRead>(reader: &mut R) -> io::Result<Encoding> {
    let head = reader.fill_buf()?;
    Ok(if head.starts_with(MAGIC) {
        Encoding::Binary
    } else {
        Encoding::Text
    })
}

/// Parses a nonnegative decimal with at most `decimals` fractional digits
/// into the integer `value · 10^decimals`.
pub fn parse_scaled(token: &str, decimals: u32) -> Result<u64, String> {
    if token.starts_with('-') {
        return Err(format!("negative weight `{token}`"));
    }
    let (whole, frac) = match token.split_once('.') {
        Some((w, f)) => (w, f),
        None => (token, ""),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if whole.is_empty() && frac.is_empty() || !digits(whole) || !digits(frac) {
        return Err(format!("bad weight `{token}`"));
    }
    if frac.len() > decimals as usize {
        return Err(format!("weight `{token}` has more than {decimals} decimal places"));
    }
    let overflow = || format!("weight `{token}` does not fit in 64 bits");
    let scale = 10u64.checked_pow(decimals).ok_or_else(overflow)?;
    let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| overflow())? };
    let mut frac_value: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| overflow())? };
    for _ in frac.len()..decimals as usize {
        frac_value = frac_value.checked_mul(10).ok_or_else(overflow)?;
    }
    whole
        .checked_mul(scale)
        .and_then(|x| x.checked_add(frac_value))
        .ok_or_else(overflow)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// Line-oriented text reader. Weights are integers unless `decimals` is
/// set, in which case decimal text is scaled by `10^decimals`.
pub struct TextReader<R> {
    inner: R,
    line: usize,
    buf: String,
    header: StreamHeader,
    decimals: u32,
}

impl<R: BufRead> TextReader<R> {
    pub fn new(mut inner: R, decimals: u32) -> Result<Self, FormatError> {
        let mut buf = String::new();
        let mut line = 0;
        loop {
            buf.clear();
            if inner.read_line(&mut buf)? == 0 {
                return Err(FormatError::MissingHeader);
            }
            line += 1;
            let body = strip_comment(&buf);
            if body.is_empty() {
                continue;
            }
            let header = parse_header(body).map_err(|reason| FormatError::Text { line, reason })?;
            return Ok(Self {
                inner,
                line,
                buf,
                header,
                decimals,
            });
        }
    }

    pub fn header(&self) -> StreamHeader {
        self.header
    }

    fn parse_record(&self, body: &str) -> Result<Record, String> {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let expected = if self.header.weighted { 3 } else { 2 };
        if tokens.len() != expected {
            return Err(if self.header.weighted {
                format!("expected `u v w`, got {} fields", tokens.len())
            } else {
                format!("expected `u v`, got {} fields (weights need a `weighted` header)", tokens.len())
            });
        }
        let u = parse_vertex(tokens[0], self.header.n)?;
        let v = parse_vertex(tokens[1], self.header.n)?;
        let weight = if self.header.weighted {
            Some(parse_scaled(tokens[2], self.decimals)?)
        } else {
            None
        };
        Ok(Record { u, v, weight })
    }
}

fn parse_header(body: &str) -> Result<StreamHeader, String> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    let weighted = match tokens.as_slice() {
        ["n", _] => false,
        ["n", _, "weighted"] => true,
        _ => return Err(format!("expected header `n <N> [weighted]`, got `{body}`")),
    };
    let n: usize = tokens[1]
        .parse()
        .map_err(|_| format!("bad vertex count `{}`", tokens[1]))?;
    if n == 0 || n > VertexId::MAX as usize {
        return Err(format!("vertex count {n} out of range"));
    }
    Ok(StreamHeader { n, weighted })
}

fn parse_vertex(token: &str, n: usize) -> Result<VertexId, String> {
    let x: VertexId = token.parse().map_err(|_| format!("bad vertex id `{token}`"))?;
    if x as usize >= n {
        return Err(format!("vertex {x} out of range for n = {n}"));
    }
    Ok(x)
}

impl<R: BufRead> Iterator for TextReader<R> {
    type Item = Result<Record, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let body = strip_comment(&self.buf);
            if body.is_empty() {
                continue;
            }
            let line = self.line;
            return Some(self.parse_record(body).map_err(|reason| FormatError::Text { line, reason }));
        }
    }
}

/// Fixed-width binary reader.
pub struct BinaryReader<R> {
    inner: R,
    header: StreamHeader,
    record: u64,
    failed: bool,
}

impl<R: Read> BinaryReader<R> {
    pub fn new(mut inner: R) -> Result<Self, FormatError> {
        let mut head = [0u8; 9];
        let got = read_full(&mut inner, &mut head)?;
        if got == 0 {
            return Err(FormatError::MissingHeader);
        }
        if got < head.len() {
            return Err(FormatError::BinaryHeader(format!("truncated after {got} bytes")));
        }
        if &head[..4] != MAGIC {
            return Err(FormatError::BinaryHeader("bad magic".into()));
        }
        let n = u32::from_le_bytes(head[4..8].try_into().unwrap()) as usize;
        let flags = head[8];
        if n == 0 {
            return Err(FormatError::BinaryHeader("vertex count 0".into()));
        }
        if flags & !FLAG_WEIGHTED != 0 {
            return Err(FormatError::BinaryHeader(format!("unknown flags {flags:#04x}")));
        }
        Ok(Self {
            inner,
            header: StreamHeader {
                n,
                weighted: flags & FLAG_WEIGHTED != 0,
            },
            record: 0,
            failed: false,
        })
    }

    pub fn header(&self) -> StreamHeader {
        self.header
    }

    fn read_record(&mut self) -> Result<Option<Record>, FormatError> {
        let width = if self.header.weighted { 16 } else { 8 };
        let mut raw = [0u8; 16];
        let got = read_full(&mut self.inner, &mut raw[..width])?;
        if got == 0 {
            return Ok(None);
        }
        let record = self.record;
        let fail = |reason: String| FormatError::Binary { record, reason };
        if got < width {
            return Err(fail(format!("truncated: {got} of {width} bytes")));
        }
        let u = u32::from_le_bytes(raw[0..4].try_into().unwrap());
        let v = u32::from_le_bytes(raw[4..8].try_into().unwrap());
        for x in [u, v] {
            if x as usize >= self.header.n {
                return Err(fail(format!("vertex {x} out of range for n = {}", self.header.n)));
            }
        }
        let weight = self
            .header
            .weighted
            .then(|| u64::from_le_bytes(raw[8..16].try_into().unwrap()));
        self.record += 1;
        Ok(Some(Record { u, v, weight }))
    }
}

fn read_full<R: Read>(r: &mut R, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(k) => filled += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

impl<R: Read> Iterator for BinaryReader<R> {
    type Item = Result<Record, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.read_record().transpose();
        if matches!(item, Some(Err(_))) {
            self.failed = true;
        }
        item
    }
}

/// Either reader behind one type.
pub enum EdgeReader<R> {
    Text(TextReader<R>),
    Binary(BinaryReader<R>),
}

impl<R: BufRead> EdgeReader<R> {
    /// Detects the encoding and reads the header.
    pub fn open(mut inner: R, decimals: u32) -> Result<Self, FormatError> {
        Ok(match detect_encoding(&mut inner)? {
            Encoding::Binary => EdgeReader::Binary(BinaryReader::new(inner)?),
            Encoding::Text => EdgeReader::Text(TextReader::new(inner, decimals)?),
        })
    }

    pub fn header(&self) -> StreamHeader {
        match self {
            EdgeReader::Text(r) => r.header(),
            EdgeReader::Binary(r) => r.header(),
        }
    }

    pub fn encoding(&self) -> Encoding {
        match self {
            EdgeReader::Text(_) => Encoding::Text,
            EdgeReader::Binary(_) => Encoding::Binary,
        }
    }
}

impl<R: BufRead> Iterator for EdgeReader<R> {
    type Item = Result<Record, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            EdgeReader::Text(r) => r.next(),
            EdgeReader::Binary(r) => r.next(),
        }
    }
}

/// Writes a stream in either encoding. Weights are written as integers.
pub struct EdgeWriter<W> {
    out: W,
    encoding: Encoding,
    header: StreamHeader,
}

impl<W: Write> EdgeWriter<W> {
    pub fn new(mut out: W, encoding: Encoding, header: StreamHeader) -> io::Result<Self> {
        match encoding {
            Encoding::Text => {
                writeln!(out, "n {}{}", header.n, if header.weighted { " weighted" } else { "" })?;
            }
            Encoding::Binary => {
                out.write_all(MAGIC)?;
                out.write_all(&(header.n as u32).to_le_bytes())?;
                out.write_all(&[if header.weighted { FLAG_WEIGHTED } else { 0 }])?;
            }
        }
        Ok(Self { out, encoding, header })
    }

    /// Writes one record; a weight is required exactly when the header is
    /// weighted.
    pub fn write(&mut self, r: &Record) -> io::Result<()> {
        if r.weight.is_some() != self.header.weighted {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                "record weight does not match the header",
            ));
        }
        match (self.encoding, r.weight) {
            (Encoding::Text, Some(w)) => writeln!(self.out, "{} {} {}", r.u, r.v, w),
            (Encoding::Text, None) => writeln!(self.out, "{} {}", r.u, r.v),
            (Encoding::Binary, w) => {
                self.out.write_all(&r.u.to_le_bytes())?;
                self.out.write_all(&r.v.to_le_bytes())?;
                if let Some(w) = w {
                    self.out.write_all(&w.to_le_bytes())?;
                }
                Ok(())
            }
        }
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Serializes a whole stream into a byte vector.
pub fn encode(encoding: Encoding, header: StreamHeader, records: &[Record]) -> io::Result<Vec<u8>> {
    let mut w = EdgeWriter::new(Vec::new(), encoding, header)?;
    for r in records {
        w.write(r)?;
    }
    w.finish()
}

/// Parses a whole stream from bytes.
pub fn decode(bytes: &[u8], decimals: u32) -> Result<(StreamHeader, Vec<Record>), FormatError> {
    let reader = EdgeReader::open(bytes, decimals)?;
    let header = reader.header();
    let records = reader.collect::<Result<Vec<_>, _>>()?;
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(u: VertexId, v: VertexId, weight: Option<u64>) -> Record {
        Record { u, v, weight }
    }

    #[test]
    fn text_with_comments() {
        let input = "# a triangle\n\nn 3 weighted\n0 1 1\n1 2 2 # heavy\n0 2 3\n";
        let (header, records) = decode(input.as_bytes(), 0).unwrap();
        assert_eq!(header, StreamHeader { n: 3, weighted: true });
        assert_eq!(records, vec![rec(0, 1, Some(1)), rec(1, 2, Some(2)), rec(0, 2, Some(3))]);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = decode(b"n 3\n0 1\n0 x\n", 0).unwrap_err();
        assert!(matches!(err, FormatError::Text { line: 3, .. }), "{err}");
        let err = decode(b"n 3\n0 1\n0 3\n", 0).unwrap_err();
        assert!(matches!(err, FormatError::Text { line: 3, .. }), "{err}");
        let err = decode(b"n 3\n0 1 5\n", 0).unwrap_err();
        assert!(matches!(err, FormatError::Text { line: 2, .. }), "{err}");
        assert!(matches!(decode(b"", 0), Err(FormatError::MissingHeader)));
        assert!(matches!(decode(b"n 0\n", 0), Err(FormatError::Text { line: 1, .. })));
        assert!(matches!(decode(b"m 4\n", 0), Err(FormatError::Text { line: 1, .. })));
    }

    #[test]
    fn loops_pass_through() {
        let (_, records) = decode(b"n 2\n1 1\n", 0).unwrap();
        assert_eq!(records, vec![rec(1, 1, None)]);
    }

    #[test]
    fn decimal_scaling() {
        assert_eq!(parse_scaled("1.25", 2), Ok(125));
        assert_eq!(parse_scaled("1.5", 2), Ok(150));
        assert_eq!(parse_scaled("7", 3), Ok(7000));
        assert_eq!(parse_scaled(".5", 1), Ok(5));
        assert!(parse_scaled("1.234", 2).is_err());
        assert!(parse_scaled("-1", 0).is_err());
        assert!(parse_scaled("1.", 0).is_ok());
        assert!(parse_scaled(".", 2).is_err());
        assert!(parse_scaled("18446744073709551615", 1).is_err());
        let (_, records) = decode(b"n 2 weighted\n0 1 0.75\n", 2).unwrap();
        assert_eq!(records[0].weight, Some(75));
    }

    #[test]
    fn binary_round_trip() {
        let header = StreamHeader { n: 5, weighted: true };
        let records = vec![rec(0, 4, Some(u64::MAX)), rec(3, 2, Some(0)), rec(1, 1, Some(9))];
        let bytes = encode(Encoding::Binary, header, &records).unwrap();
        assert_eq!(bytes.len(), 9 + 3 * 16);
        assert_eq!(decode(&bytes, 0).unwrap(), (header, records.clone()));
        let text = encode(Encoding::Text, header, &records).unwrap();
        assert_eq!(decode(&text, 0).unwrap(), (header, records));
    }

    #[test]
    fn binary_errors() {
        let header = StreamHeader { n: 2, weighted: false };
        let mut bytes = encode(Encoding::Binary, header, &[rec(0, 1, None)]).unwrap();
        bytes.extend_from_slice(&[1, 0, 0]);
        let err = decode(&bytes, 0).unwrap_err();
        assert!(matches!(err, FormatError::Binary { record: 1, .. }), "{err}");
        let mut bad = encode(Encoding::Binary, header, &[]).unwrap();
        bad[8] = 0x80;
        assert!(matches!(decode(&bad, 0), Err(FormatError::BinaryHeader(_))));
        assert!(matches!(decode(b"SGS1\x02", 0), Err(FormatError::BinaryHeader(_))));
        let out_of_range = encode(Encoding::Binary, header, &[rec(0, 2, None)]);
        let err = decode(&out_of_range.unwrap(), 0).unwrap_err();
        assert!(matches!(err, FormatError::Binary { record: 0, .. }));
    }

    #[test]
    fn writer_rejects_mismatched_weights() {
        let header = StreamHeader { n: 2, weighted: false };
        assert!(encode(Encoding::Text, header, &[rec(0, 1, Some(1))]).is_err());
    }
}
