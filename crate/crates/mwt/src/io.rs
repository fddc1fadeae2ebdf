//! PGM image and CSV signal I/O.

use std::io::{BufRead, BufReader, Read, Write};

use crate::{GrayImage, MwtError, Result};

/// PGM encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// `P2`, ASCII samples.
    Ascii,
    /// `P5`, one byte per sample.
    Binary,
}

fn parse_err(msg: impl Into<String>) -> MwtError {
    MwtError::Parse(msg.into())
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<&str> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err("unexpected end of PGM data"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).map_err(|_| parse_err("non-ASCII PGM header"))
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| parse_err(format!("invalid PGM number `{tok}`")))
    }
}

/// Reads an 8-bit `P2` or `P5` image.
pub fn read_pgm(mut reader: impl Read) -> Result<GrayImage> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let mut h = Header { bytes: &bytes, pos: 0 };
    let format = match h.token()? {
        "P2" => PgmFormat::Ascii,
        "P5" => PgmFormat::Binary,
        other => return Err(parse_err(format!("unsupported PGM magic `{other}`"))),
    };
    let width = h.number()?;
    let height = h.number()?;
    let maxval = h.number()?;
    if maxval == 0 || maxval > 255 {
        return Err(parse_err(format!("maxval {maxval} is not in 1..=255")));
    }
    let count = width * height;
    let samples = match format {
        PgmFormat::Ascii => (0..count)
            .map(|_| h.number().map(|v| v as f64))
            .collect::<Result<Vec<_>>>()?,
        PgmFormat::Binary => {
            let start = h.pos + 1;
            let data = bytes
                .get(start..start + count)
                .ok_or_else(|| parse_err("truncated P5 raster"))?;
            data.iter().map(|&v| f64::from(v)).collect()
        }
    };
    GrayImage::new(width, height, samples)
}

/// Writes `img` with maxval 255; samples are rounded and clamped to `0..=255`.
pub fn write_pgm(mut writer: impl Write, img: &GrayImage, format: PgmFormat) -> Result<()> {
    let quantized: Vec<u8> = img.samples.iter().map(|v| v.round().clamp(0.0, 255.0) as u8).collect();
    match format {
        PgmFormat::Ascii => {
            writeln!(writer, "P2\n{} {}\n255", img.width, img.height)?;
            for row in quantized.chunks(img.width.max(1)) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(writer, "{}", line.join(" "))?;
            }
        }
        PgmFormat::Binary => {
            write!(writer, "P5\n{} {}\n255\n", img.width, img.height)?;
            writer.write_all(&quantized)?;
        }
    }
    Ok(())
}

/// Reads one sample per line; blank lines are skipped.
pub fn read_csv(reader: impl Read) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let field = line.trim();
        if field.is_empty() {
            continue;
        }
        out.push(
            field
                .parse()
                .map_err(|_| parse_err(format!("line {}: invalid number `{field}`", i + 1)))?,
        );
    }
    Ok(out)
}

/// Writes one sample per line with 17 significant digits.
pub fn write_csv(mut writer: impl Write, x: &[f64]) -> Result<()> {
    for v in x {
        writeln!(writer, "{v:.16e}")?;
    }
    Ok(())
}
