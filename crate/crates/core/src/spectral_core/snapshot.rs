use std::fs;
use std::io::Write;
use std::path::Path;

use super::field::Field;
use super::grid::SpectralGrid;
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"FZK1";
pub const HEADER_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotHeader {
    pub nx: u32,
    pub ny: u32,
    pub lx: f64,
    pub ly: f64,
}

// Layout: magic[0..4] nx[4..8] ny[8..12] reserved[12..16] lx[16..24] ly[24..32]
fn encode_header(h: &SnapshotHeader) -> [u8; HEADER_LEN] {
    let mut b = [0u8; HEADER_LEN];
    b[0..4].copy_from_slice(MAGIC);
    b[4..8].copy_from_slice(&h.nx.to_le_bytes());
    b[8..12].copy_from_slice(&h.ny.to_le_bytes());
    b[16..24].copy_from_slice(&h.lx.to_le_bytes());
    b[24..32].copy_from_slice(&h.ly.to_le_bytes());
    b
}

pub fn decode_header(b: &[u8]) -> Result<SnapshotHeader> {
    if b.len() < HEADER_LEN {
        return Err(Error::Snapshot(format!("file shorter than the {HEADER_LEN}-byte header")));
    }
    if &b[0..4] != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    let u32_at = |i: usize| u32::from_le_bytes(b[i..i + 4].try_into().unwrap());
    let f64_at = |i: usize| f64::from_le_bytes(b[i..i + 8].try_into().unwrap());
    Ok(SnapshotHeader { nx: u32_at(4), ny: u32_at(8), lx: f64_at(16), ly: f64_at(24) })
}

pub fn encode_snapshot(f: &Field) -> Vec<u8> {
    let g = f.grid();
    let h = SnapshotHeader { nx: g.nx() as u32, ny: g.ny() as u32, lx: g.lx(), ly: g.ly() };
    let v = f.physical_values();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * v.len());
    out.extend_from_slice(&encode_header(&h));
    for s in v.iter() {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<Field> {
    let h = decode_header(bytes)?;
    let grid = SpectralGrid::new(h.nx as usize, h.ny as usize, h.lx, h.ly)
        .map_err(|e| Error::Snapshot(e.to_string()))?;
    let n = grid.len();
    if bytes.len() != HEADER_LEN + 8 * n {
        return Err(Error::Snapshot(format!(
            "expected {} bytes of samples, found {}",
            8 * n,
            bytes.len() - HEADER_LEN
        )));
    }
    let samples = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Field::from_physical(&grid, samples)
}

pub fn write_snapshot(path: &Path, f: &Field) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode_snapshot(f))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<Field> {
    decode_snapshot(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = SpectralGrid::new(4, 6, 1.5, 2.5).unwrap();
        let f = Field::from_fn(&g, |x, y| x + 10.0 * y);
        let b = encode_snapshot(&f);
        assert_eq!(b.len(), 32 + 8 * 24);
        assert_eq!(&b[0..4], b"FZK1");
        assert_eq!(u32::from_le_bytes(b[4..8].try_into().unwrap()), 4);
        assert_eq!(u32::from_le_bytes(b[8..12].try_into().unwrap()), 6);
        assert_eq!(f64::from_le_bytes(b[16..24].try_into().unwrap()), 1.5);
        // second sample is x = dx, y = 0
        assert_eq!(f64::from_le_bytes(b[40..48].try_into().unwrap()), 1.5 / 4.0);
        // first sample of the second row is x = 0, y = dy
        let row1 = 32 + 8 * 4;
        assert_eq!(f64::from_le_bytes(b[row1..row1 + 8].try_into().unwrap()), 10.0 * 2.5 / 6.0);
        assert_eq!(decode_snapshot(&b).unwrap(), f);
    }

    #[test]
    fn malformed() {
        assert!(decode_snapshot(b"FZK1").is_err());
        let g = SpectralGrid::new(4, 4, 1.0, 1.0).unwrap();
        let mut b = encode_snapshot(&Field::zeros(&g));
        b.pop();
        assert!(decode_snapshot(&b).is_err());
        b.push(0);
        b[0] = b'X';
        assert!(decode_snapshot(&b).is_err());
    }
}
