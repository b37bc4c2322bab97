//! Raster ingestion and export: Netpbm graymaps and CSV symbol grids.

use crate::error::{Error, Result};
use crate::measures::SymbolGrid;

/// Default number of gray bins used when quantizing an external raster.
pub const DEFAULT_LEVELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

impl GrayImage {
    /// Quantizes gray values into `levels` uniform bins over `[0, maxval]`.
    pub fn quantize(&self, levels: usize) -> Result<SymbolGrid> {
        if levels == 0 {
            return Err(Error::InvalidParams("levels must be at least 1".into()));
        }
        let range = self.maxval as u64 + 1;
        let cells = self
            .pixels
            .iter()
            .map(|&v| ((v as u64 * levels as u64) / range) as u32)
            .collect();
        SymbolGrid::new(self.width, self.height, levels, cells)
    }
}

struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn next_token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.data[start..self.pos])
    }

    fn next_number(&mut self, what: &str) -> Result<u64> {
        let line = self.line;
        let tok = self.next_token().ok_or_else(|| Error::Parse {
            line,
            msg: format!("missing {what}"),
        })?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: self.line,
                msg: format!("invalid {what} `{}`", String::from_utf8_lossy(tok)),
            })
    }
}

/// Parses a plain (P2) or binary (P5) graymap.
pub fn parse_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut t = Tokens { data, pos: 0, line: 1 };
    let magic = t.next_token().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("not a PGM (magic `{}`)", String::from_utf8_lossy(other)),
            })
        }
    };
    let width = t.next_number("width")? as usize;
    let height = t.next_number("height")? as usize;
    let maxval = t.next_number("maxval")?;
    if maxval == 0 || maxval > u16::MAX as u64 {
        return Err(Error::Parse {
            line: t.line,
            msg: format!("maxval {maxval} out of range 1..=65535"),
        });
    }
    let n = width * height;
    let mut pixels = Vec::with_capacity(n);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        let start = t.pos + 1;
        let bytes_per = if maxval < 256 { 1 } else { 2 };
        let need = n * bytes_per;
        let raster = data.get(start..start + need).ok_or(Error::Parse {
            line: t.line,
            msg: format!("raster truncated: need {need} bytes"),
        })?;
        if bytes_per == 1 {
            pixels.extend(raster.iter().map(|&b| b as u16));
        } else {
            pixels.extend(raster.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])));
        }
    } else {
        for _ in 0..n {
            pixels.push(t.next_number("pixel")? as u16);
        }
    }
    if let Some(&v) = pixels.iter().find(|&&v| v as u64 > maxval) {
        return Err(Error::Parse {
            line: t.line,
            msg: format!("pixel value {v} exceeds maxval {maxval}"),
        });
    }
    Ok(GrayImage {
        width,
        height,
        maxval: maxval as u16,
        pixels,
    })
}

/// Plain (P2) graymap, 8-bit maxval, at most 16 values per line.
pub fn write_pgm_p2(width: usize, height: usize, pixels: &[u8], comment: Option<&str>) -> Vec<u8> {
    let mut out = String::from("P2\n");
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("{width} {height}\n255\n"));
    for row in pixels.chunks(width.max(1)) {
        for chunk in row.chunks(16) {
            let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out.into_bytes()
}

/// Linear map of `values` onto 0..=255; a constant input maps to 0.
pub fn normalize_to_bytes(values: &[f64]) -> (Vec<u8>, f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let bytes = values
        .iter()
        .map(|&v| {
            if span > 0.0 {
                ((v - min) / span * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect();
    (bytes, min, max)
}

/// Reads a CSV symbol grid: one row per line, comma-separated non-negative
/// integers. `alphabet` defaults to `max(2, largest symbol + 1)`.
pub fn parse_symbol_csv(text: &str, alphabet: Option<usize>) -> Result<SymbolGrid> {
    let mut width = None;
    let mut cells = Vec::new();
    let mut height = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<u32> = line
            .split(',')
            .map(|f| {
                f.trim().parse::<u32>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("`{}` is not a symbol id", f.trim()),
                })
            })
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("row has {} cells, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        cells.extend(row);
        height += 1;
    }
    let width = width.ok_or(Error::Parse {
        line: 1,
        msg: "no grid rows".into(),
    })?;
    let k = alphabet.unwrap_or_else(|| cells.iter().max().map_or(2, |&m| (m as usize + 1).max(2)));
    SymbolGrid::new(width, height, k, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_pgm_with_comments() {
        let src = b"P2\n# a comment\n3 2\n# another\n255\n0 128 255\n64 64 64\n";
        let img = parse_pgm(src).unwrap();
        assert_eq!((img.width, img.height, img.maxval), (3, 2, 255));
        assert_eq!(img.pixels, vec![0, 128, 255, 64, 64, 64]);
        let g = img.quantize(8).unwrap();
        assert_eq!(g.cells(), &[0, 4, 7, 2, 2, 2]);
    }

    #[test]
    fn binary_pgm() {
        let mut src = b"P5 2 2 255\n".to_vec();
        src.extend([0u8, 255, 127, 128]);
        let img = parse_pgm(&src).unwrap();
        assert_eq!(img.pixels, vec![0, 255, 127, 128]);
        assert_eq!(img.quantize(2).unwrap().cells(), &[0, 1, 0, 1]);
    }

    #[test]
    fn sixteen_bit_binary_pgm() {
        let mut src = b"P5 1 2 65535\n".to_vec();
        src.extend([0xFFu8, 0xFF, 0x00, 0x01]);
        let img = parse_pgm(&src).unwrap();
        assert_eq!(img.pixels, vec![65535, 1]);
    }

    #[test]
    fn malformed_pgm() {
        assert!(parse_pgm(b"").is_err());
        assert!(parse_pgm(b"P3 1 1 255 0 0 0").is_err());
        assert!(parse_pgm(b"P2 2 2 255 0 0 0").is_err());
        assert!(parse_pgm(b"P2 1 1 10 11").is_err());
        assert!(parse_pgm(b"P5 2 2 255\n\x00").is_err());
    }

    #[test]
    fn p2_round_trip() {
        let px = [0u8, 10, 20, 30, 40, 255];
        let bytes = write_pgm_p2(3, 2, &px, Some("min=0\nmax=1"));
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.pixels, px.iter().map(|&v| v as u16).collect::<Vec<_>>());
    }

    #[test]
    fn csv_grid() {
        let g = parse_symbol_csv("0,0\n1,1\n", None).unwrap();
        assert_eq!((g.width(), g.height(), g.alphabet_size()), (2, 2, 2));
        let g = parse_symbol_csv("0,0,0\n", None).unwrap();
        assert_eq!(g.alphabet_size(), 2);
        let g = parse_symbol_csv("# header\n3,1\n", None).unwrap();
        assert_eq!(g.alphabet_size(), 4);
        assert!(parse_symbol_csv("0,1\n0\n", None).is_err());
        assert!(parse_symbol_csv("0,x\n", None).is_err());
        assert!(parse_symbol_csv("", None).is_err());
        assert!(parse_symbol_csv("0,5\n", Some(3)).is_err());
    }

    #[test]
    fn normalization() {
        let (b, lo, hi) = normalize_to_bytes(&[-1.0, 0.0, 1.0]);
        assert_eq!(b, vec![0, 128, 255]);
        assert_eq!((lo, hi), (-1.0, 1.0));
        let (b, _, _) = normalize_to_bytes(&[2.0, 2.0]);
        assert_eq!(b, vec![0, 0]);
    }
}
