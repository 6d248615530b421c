//! Configuration serialization.
//!
//! Binary form: a 16-byte header (magic `FACF`, version, region kind,
//! dimension count), the dims and offsets, then run-length-encoded states
//! (first state byte, LEB128 run lengths alternating states).
//!
//! Text form (2-d only): one row per line, `'.'` infected, `'#'` healthy,
//! top line = highest y, for human-readable fixtures.

use crate::error::CodecError;
use crate::lattice::config::Config;
use crate::lattice::region::{Region, RegionKind};

const MAGIC: [u8; 4] = *b"FACF";
const VERSION: u16 = 1;

fn push_leb128(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            break;
        }
        out.push(byte | 0x80);
    }
}

fn read_leb128(bytes: &[u8], pos: &mut usize) -> Result<u64, CodecError> {
    let mut v: u64 = 0;
    let mut shift = 0;
    loop {
        let &b = bytes.get(*pos).ok_or(CodecError::Truncated)?;
        *pos += 1;
        v |= u64::from(b & 0x7f) << shift;
        if b & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
        if shift >= 64 {
            return Err(CodecError::RunOverflow);
        }
    }
}

pub fn write_binary(config: &Config) -> Vec<u8> {
    let region = config.region();
    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(match region.kind() {
        RegionKind::Rectangle => 0,
        RegionKind::Torus => 1,
    });
    out.push(region.ndim() as u8);
    out.extend_from_slice(&[0u8; 8]); // reserved, pads the header to 16 bytes
    for &d in region.dims() {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for &o in region.offset() {
        out.extend_from_slice(&o.to_le_bytes());
    }
    let first = config.state(0);
    out.push(first);
    let mut current = first;
    let mut run: u64 = 0;
    for idx in 0..config.len() {
        if config.state(idx) == current {
            run += 1;
        } else {
            push_leb128(&mut out, run);
            current = config.state(idx);
            run = 1;
        }
    }
    push_leb128(&mut out, run);
    out
}

pub fn read_binary(bytes: &[u8]) -> Result<Config, CodecError> {
    if bytes.len() < 16 {
        return Err(CodecError::Truncated);
    }
    if bytes[0..4] != MAGIC {
        return Err(CodecError::BadMagic);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(CodecError::BadVersion(version));
    }
    let kind = bytes[6];
    let nd = bytes[7] as usize;
    if nd == 0 {
        return Err(CodecError::Empty);
    }
    let mut pos = 16usize;
    let mut dims = Vec::with_capacity(nd);
    for _ in 0..nd {
        let end = pos + 8;
        let raw = bytes.get(pos..end).ok_or(CodecError::Truncated)?;
        dims.push(u64::from_le_bytes(raw.try_into().unwrap()) as usize);
        pos = end;
    }
    let mut offset = Vec::with_capacity(nd);
    for _ in 0..nd {
        let end = pos + 8;
        let raw = bytes.get(pos..end).ok_or(CodecError::Truncated)?;
        offset.push(i64::from_le_bytes(raw.try_into().unwrap()));
        pos = end;
    }
    let region = match kind {
        0 => Region::rectangle_at(&dims, &offset)?,
        1 => Region::torus(&dims)?,
        _ => return Err(CodecError::BadMagic),
    };
    let &first = bytes.get(pos).ok_or(CodecError::Truncated)?;
    pos += 1;
    if first > 1 {
        return Err(CodecError::BadMagic);
    }
    let mut cfg = Config::all_healthy(region.clone());
    let mut idx: u64 = 0;
    let mut state = first;
    let total = region.len() as u64;
    while idx < total {
        let run = read_leb128(bytes, &mut pos)?;
        if run == 0 || idx + run > total {
            return Err(CodecError::RunOverflow);
        }
        if state == 0 {
            for i in idx..idx + run {
                cfg.set_state(i as usize, 0);
            }
        }
        idx += run;
        state ^= 1;
    }
    if pos != bytes.len() {
        return Err(CodecError::TrailingBytes);
    }
    Ok(cfg)
}

/// Matrix text form for 2-d configurations. Rows print top-down from the
/// highest y; `'.'` = infected, `'#'` = healthy.
pub fn write_text(config: &Config) -> Result<String, CodecError> {
    let region = config.region();
    if region.ndim() != 2 {
        return Err(CodecError::Lattice(
            crate::error::LatticeError::DimensionMismatch {
                expected: 2,
                got: region.ndim(),
            },
        ));
    }
    let (w, h) = (region.dims()[0], region.dims()[1]);
    let (x0, y0) = (region.offset()[0], region.offset()[1]);
    let mut out = String::with_capacity((w + 1) * h);
    for row in (0..h).rev() {
        for col in 0..w {
            let idx = region
                .index_of(&[x0 + col as i64, y0 + row as i64])
                .unwrap();
            out.push(if config.is_infected(idx) { '.' } else { '#' });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parse the matrix text form into a rectangle configuration at the origin.
pub fn parse_text(text: &str) -> Result<Config, CodecError> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(CodecError::Empty);
    }
    let w = rows[0].chars().count();
    if rows.iter().any(|r| r.chars().count() != w) {
        return Err(CodecError::RaggedRows);
    }
    let h = rows.len();
    let region = Region::rect2(w, h)?;
    let mut cfg = Config::all_healthy(region.clone());
    for (line_no, row) in rows.iter().enumerate() {
        let y = (h - 1 - line_no) as i64;
        for (x, ch) in row.chars().enumerate() {
            match ch {
                '.' => cfg.set_state_at(&[x as i64, y], 0)?,
                '#' => {}
                other => return Err(CodecError::BadChar(other)),
            }
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::density::Density;
    use crate::lattice::sample::sample_config;
    use crate::rng::SeededRng;

    #[test]
    fn binary_roundtrip_rect_offset() {
        let region = Region::rectangle_at(&[5, 3], &[-2, 7]).unwrap();
        let cfg = sample_config(&region, Density::new(0.4).unwrap(), &SeededRng::new(3));
        let bytes = write_binary(&cfg);
        assert_eq!(read_binary(&bytes).unwrap(), cfg);
    }

    #[test]
    fn binary_roundtrip_torus() {
        let region = Region::torus(&[6, 2, 2]).unwrap();
        let cfg = sample_config(&region, Density::new(0.2).unwrap(), &SeededRng::new(4));
        let bytes = write_binary(&cfg);
        assert_eq!(read_binary(&bytes).unwrap(), cfg);
    }

    #[test]
    fn text_roundtrip() {
        let text = "#.#\n...\n##.\n";
        let cfg = parse_text(text).unwrap();
        assert_eq!(cfg.region().dims(), &[3, 3]);
        assert_eq!(write_text(&cfg).unwrap(), text);
        // top text line is the highest row: '#.#' => (1,2) infected
        assert_eq!(cfg.state_at(&[0, 2]).unwrap(), 1);
        assert_eq!(cfg.state_at(&[1, 2]).unwrap(), 0);
    }

    #[test]
    fn corrupt_input_rejected() {
        assert!(matches!(read_binary(b"nope"), Err(CodecError::Truncated)));
        let region = Region::rect2(2, 2).unwrap();
        let mut bytes = write_binary(&Config::all_infected(region));
        bytes[0] = b'X';
        assert!(matches!(read_binary(&bytes), Err(CodecError::BadMagic)));
        assert!(matches!(parse_text("#x\n"), Err(CodecError::BadChar('x'))));
        assert!(matches!(parse_text("##\n#\n"), Err(CodecError::RaggedRows)));
    }
}
