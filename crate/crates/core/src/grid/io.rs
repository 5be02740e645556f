//! Flat binary dumps and CSV slices.
//!
//! Binary layout, all little-endian: `dim: u64`, `L: f64`, `N: u64`, then the
//! `Nⁿ` samples as `f64` in row-major order.

use std::io::{Read, Write};

use super::{Grid, GridField};
use crate::{Error, Real, Result};

pub fn write_binary<T: Real, W: Write>(field: &GridField<T>, mut out: W) -> Result<()> {
    let g = field.grid();
    out.write_all(&(g.dim() as u64).to_le_bytes())?;
    out.write_all(&g.side_length().as_f64().to_le_bytes())?;
    out.write_all(&(g.resolution() as u64).to_le_bytes())?;
    for v in field.values() {
        out.write_all(&v.as_f64().to_le_bytes())?;
    }
    Ok(())
}

pub fn read_binary<T: Real, R: Read>(mut input: R) -> Result<GridField<T>> {
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let dim = u64::from_le_bytes(word) as usize;
    input.read_exact(&mut word)?;
    let side = f64::from_le_bytes(word);
    input.read_exact(&mut word)?;
    let n = u64::from_le_bytes(word) as usize;
    let grid = Grid::new(dim, T::lit(side), n)?;
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        input.read_exact(&mut word)?;
        values.push(T::lit(f64::from_le_bytes(word)));
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!("{} trailing bytes after field payload", rest.len())));
    }
    GridField::new(grid, values)
}

/// Writes `x,value` rows. 1-D fields are written whole; 2-D fields are cut
/// along the first axis at second-axis index `column`.
pub fn write_csv_slice<T: Real, W: Write>(field: &GridField<T>, column: usize, mut out: W) -> Result<()> {
    let g = field.grid();
    writeln!(out, "x,value")?;
    for i in 0..g.resolution() {
        let v = if g.dim() == 1 { field.at([i, 0]) } else { field.at([i, column]) };
        writeln!(out, "{:.17e},{:.17e}", g.coord(i).as_f64(), v.as_f64())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip() {
        let g = Grid::new(2, 8.0_f64, 16).unwrap();
        let f = GridField::from_fn(g, |x| x[0] - 2.0 * x[1]).unwrap();
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), 24 + 8 * 256);
        assert_eq!(&buf[0..8], &2u64.to_le_bytes());
        let back: GridField<f64> = read_binary(&buf[..]).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn truncated_payload_is_an_error() {
        let g = Grid::new(1, 8.0_f64, 16).unwrap();
        let f = GridField::zeros(g);
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        buf.pop();
        assert!(read_binary::<f64, _>(&buf[..]).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let g = Grid::new(1, 8.0_f64, 8).unwrap();
        let f = GridField::from_fn(g, |x| x[0]).unwrap();
        let mut buf = Vec::new();
        write_csv_slice(&f, 0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 9);
        assert!(text.starts_with("x,value\n-4.0"));
    }
}
