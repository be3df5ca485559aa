//! Binary PGM (`P5`) camera images.
//!
//! 8-bit samples when the camera has 8 bits, otherwise 16-bit big-endian with
//! `maxval = 2^bits − 1`. Rows run from the highest ω down, columns along
//! ascending k.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::open_spectrum::SpectrumGrid;

pub fn write_pgm(image: &SpectrumGrid, bit_depth: u32) -> Result<Vec<u8>> {
    if ![8, 12, 16].contains(&bit_depth) {
        return Err(Error::InvalidInput(format!("unsupported bit depth {bit_depth}")));
    }
    let maxval = (1u32 << bit_depth) - 1;
    let (h, w) = image.values.dim();
    let mut out = format!("P5\n{w} {h}\n{maxval}\n").into_bytes();
    for i in (0..h).rev() {
        for j in 0..w {
            let v = image.values[[i, j]];
            if !(v >= 0.0 && v <= maxval as f64 && v.fract() == 0.0) {
                return Err(Error::InvalidInput(format!("pixel ({i}, {j}) = {v} is not a {bit_depth}-bit count")));
            }
            let v = v as u32;
            if bit_depth == 8 {
                out.push(v as u8);
            } else {
                out.extend_from_slice(&(v as u16).to_be_bytes());
            }
        }
    }
    Ok(out)
}

/// Returns the samples in file order (first row = highest ω) and `maxval`.
pub fn read_pgm(bytes: &[u8]) -> Result<(Array2<u32>, u32)> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Format("truncated PGM header".into()));
        }
        fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    if fields[0] != "P5" {
        return Err(Error::Format("not a binary PGM".into()));
    }
    let num = |s: &str| s.parse::<u32>().map_err(|_| Error::Format(format!("bad PGM header field `{s}`")));
    let (w, h, maxval) = (num(&fields[1])? as usize, num(&fields[2])? as usize, num(&fields[3])?);
    pos += 1;
    let bytes_per = if maxval < 256 { 1 } else { 2 };
    let data = &bytes[pos.min(bytes.len())..];
    if data.len() != w * h * bytes_per {
        return Err(Error::Format(format!("PGM payload is {} bytes, expected {}", data.len(), w * h * bytes_per)));
    }
    let v: Vec<u32> = if bytes_per == 1 {
        data.iter().map(|&b| b as u32).collect()
    } else {
        data.chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]]) as u32).collect()
    };
    Ok((Array2::from_shape_vec((h, w), v).expect("checked size"), maxval))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SpectrumGrid {
        let v = Array2::from_shape_vec((2, 3), vec![0.0, 1.0, 2.0, 255.0, 4.0, 5.0]).unwrap();
        SpectrumGrid::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0], v).unwrap()
    }

    #[test]
    fn eight_bit_layout() {
        let b = write_pgm(&tiny(), 8).unwrap();
        assert_eq!(b, b"P5\n3 2\n255\n\xff\x04\x05\x00\x01\x02".to_vec());
    }

    #[test]
    fn sixteen_bit_big_endian() {
        let b = write_pgm(&tiny(), 12).unwrap();
        let head = b"P5\n3 2\n4095\n";
        assert_eq!(&b[..head.len()], head);
        assert_eq!(&b[head.len()..head.len() + 2], &[0x00, 0xff]);
        let (img, maxval) = read_pgm(&b).unwrap();
        assert_eq!(maxval, 4095);
        assert_eq!(img[[0, 0]], 255);
        assert_eq!(img[[1, 2]], 2);
    }

    #[test]
    fn rejects_non_counts() {
        let mut g = tiny();
        g.values[[0, 0]] = 0.5;
        assert!(write_pgm(&g, 8).is_err());
        g.values[[0, 0]] = 300.0;
        assert!(write_pgm(&g, 8).is_err());
    }
}
