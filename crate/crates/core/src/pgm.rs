//! Portable graymap (PGM) reading and writing, ASCII `P2` and binary `P5`.
//!
//! Input with `maxval < 255` is rescaled to the full 8-bit range; 16-bit
//! files are rejected. Output is always canonical: magic, dimensions and
//! `255` on their own lines, no comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::types::Bitmap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PgmFormat {
    /// ASCII raster.
    P2,
    /// Binary raster.
    P5,
}

impl std::str::FromStr for PgmFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P2" | "p2" => Ok(PgmFormat::P2),
            "P5" | "p5" => Ok(PgmFormat::P5),
            _ => Err(Error::config(format!(
                "unknown PGM format '{s}', expected P2 or P5"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PgmHeader {
    pub format: PgmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
}

const MAX_LINE: usize = 70;

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() || b == 0x0b {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next unsigned decimal token.
    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .filter(|&v| v <= u32::MAX as u64)
                .ok_or_else(|| Error::pgm(start, format!("{what} token overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.data.get(self.pos) {
                None => Error::pgm(self.pos, format!("truncated input: expected {what}")),
                Some(b) => Error::pgm(self.pos, format!("expected {what}, found byte 0x{b:02x}")),
            });
        }
        if let Some(&b) = self.data.get(self.pos) {
            if !(b.is_ascii_whitespace() || b == b'#' || b == 0x0b) {
                return Err(Error::pgm(
                    self.pos,
                    format!("unexpected byte 0x{b:02x} after {what}"),
                ));
            }
        }
        Ok(value)
    }
}

/// Parses the header; returns it with the offset where the raster starts
/// (for `P2`, the offset right after the maxval token).
pub fn read_pgm_header(data: &[u8]) -> Result<(PgmHeader, usize)> {
    let format = match data.get(..2) {
        Some(b"P2") => PgmFormat::P2,
        Some(b"P5") => PgmFormat::P5,
        _ => return Err(Error::pgm(0, "bad magic, expected P2 or P5")),
    };
    let mut cur = Cursor { data, pos: 2 };
    match data.get(2) {
        Some(b) if b.is_ascii_whitespace() || *b == b'#' || *b == 0x0b => {}
        Some(_) => return Err(Error::pgm(2, "bad magic, expected P2 or P5")),
        None => return Err(Error::pgm(2, "truncated input after magic")),
    }
    let width_at = {
        cur.skip_whitespace_and_comments();
        cur.pos
    };
    let width = cur.number("width")?;
    let height_at = {
        cur.skip_whitespace_and_comments();
        cur.pos
    };
    let height = cur.number("height")?;
    let maxval_at = {
        cur.skip_whitespace_and_comments();
        cur.pos
    };
    let maxval = cur.number("maxval")?;
    if width == 0 {
        return Err(Error::pgm(width_at, "width must be positive"));
    }
    if height == 0 {
        return Err(Error::pgm(height_at, "height must be positive"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::pgm(
            maxval_at,
            format!("maxval {maxval} outside 1..=255"),
        ));
    }
    let mut offset = cur.pos;
    if format == PgmFormat::P5 {
        match data.get(offset) {
            Some(b) if b.is_ascii_whitespace() || *b == 0x0b => offset += 1,
            Some(_) => {
                return Err(Error::pgm(
                    offset,
                    "expected one whitespace byte after maxval",
                ))
            }
            None => return Err(Error::pgm(offset, "truncated input: missing raster")),
        }
    }
    let header = PgmHeader {
        format,
        width: width as usize,
        height: height as usize,
        maxval: maxval as u16,
    };
    Ok((header, offset))
}

/// Decodes a `P2` or `P5` graymap into an 8-bit bitmap.
pub fn read_pgm(data: &[u8]) -> Result<Bitmap> {
    let (header, offset) = read_pgm_header(data)?;
    let count = header
        .width
        .checked_mul(header.height)
        .ok_or_else(|| Error::pgm(offset, "image dimensions overflow"))?;
    let maxval = header.maxval as u32;
    let tones = match header.format {
        PgmFormat::P5 => {
            let raster = data
                .get(offset..)
                .filter(|r| r.len() >= count)
                .ok_or_else(|| {
                    Error::pgm(
                        data.len(),
                        format!("truncated raster: expected {count} bytes after offset {offset}"),
                    )
                })?;
            let raster = &raster[..count];
            if let Some(k) = raster.iter().position(|&t| t as u32 > maxval) {
                return Err(Error::pgm(
                    offset + k,
                    format!("sample {} exceeds maxval {maxval}", raster[k]),
                ));
            }
            raster.iter().map(|&t| rescale(t as u32, maxval)).collect()
        }
        PgmFormat::P2 => {
            let mut cur = Cursor { data, pos: offset };
            let mut tones = Vec::with_capacity(count.min(data.len()));
            for _ in 0..count {
                cur.skip_whitespace_and_comments();
                let at = cur.pos;
                let t = cur.number("sample")?;
                if t > maxval as u64 {
                    return Err(Error::pgm(
                        at,
                        format!("sample {t} exceeds maxval {maxval}"),
                    ));
                }
                tones.push(rescale(t as u32, maxval));
            }
            tones
        }
    };
    Bitmap::new(header.height, header.width, tones)
}

/// `round(255·t / maxval)`, half up.
fn rescale(t: u32, maxval: u32) -> u8 {
    if maxval == 255 {
        t as u8
    } else {
        ((2 * 255 * t + maxval) / (2 * maxval)) as u8
    }
}

/// Encodes `bm` in canonical form.
pub fn write_pgm(bm: &Bitmap, format: PgmFormat) -> Vec<u8> {
    let magic = match format {
        PgmFormat::P2 => "P2",
        PgmFormat::P5 => "P5",
    };
    let mut out = format!("{magic}\n{} {}\n255\n", bm.width(), bm.height()).into_bytes();
    match format {
        PgmFormat::P5 => out.extend_from_slice(bm.tones()),
        PgmFormat::P2 => {
            let mut text = String::new();
            for row in bm.tones().chunks(bm.width()) {
                let mut line_len = 0;
                for &t in row {
                    let digits = if t >= 100 {
                        3
                    } else if t >= 10 {
                        2
                    } else {
                        1
                    };
                    if line_len > 0 && line_len + 1 + digits > MAX_LINE {
                        text.push('\n');
                        line_len = 0;
                    }
                    if line_len > 0 {
                        text.push(' ');
                        line_len += 1;
                    }
                    write!(text, "{t}").expect("writing to a String");
                    line_len += digits;
                }
                text.push('\n');
            }
            out.extend_from_slice(text.as_bytes());
        }
    }
    out
}
