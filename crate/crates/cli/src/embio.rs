//! Embedding persistence.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! magic   b"INKEMB01"
//! year    i32
//! dim     u32
//! rows    u64
//! vectors rows × dim f32
//! vocab   rows × (count u64, byte length u32, UTF-8 bytes)
//! ```
//!
//! The text format is the common word2vec one: a `rows dim` header line, then
//! one `token v1 v2 …` line per row.

use std::io::{self, BufRead, Read, Write};

use inkspace_core::embeddings::EmbeddingSpace;

const MAGIC: &[u8; 8] = b"INKEMB01";

fn invalid(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

pub fn write_binary(space: &EmbeddingSpace, mut w: impl Write) -> io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&space.year().to_le_bytes())?;
    w.write_all(&(space.dim() as u32).to_le_bytes())?;
    w.write_all(&(space.len() as u64).to_le_bytes())?;
    for &v in space.vectors() {
        w.write_all(&(v as f32).to_le_bytes())?;
    }
    for (word, &count) in space.vocab().iter().zip(space.counts()) {
        w.write_all(&count.to_le_bytes())?;
        w.write_all(&(word.len() as u32).to_le_bytes())?;
        w.write_all(word.as_bytes())?;
    }
    Ok(())
}

fn read_array<const N: usize>(r: &mut impl Read) -> io::Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_binary(mut r: impl Read) -> io::Result<EmbeddingSpace> {
    if &read_array::<8>(&mut r)? != MAGIC {
        return Err(invalid("not an inkspace embedding file"));
    }
    let year = i32::from_le_bytes(read_array(&mut r)?);
    let dim = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let rows = u64::from_le_bytes(read_array(&mut r)?) as usize;
    let mut vectors = Vec::with_capacity(rows.saturating_mul(dim).min(1 << 28));
    for _ in 0..rows * dim {
        vectors.push(f32::from_le_bytes(read_array(&mut r)?) as f64);
    }
    let mut vocab = Vec::with_capacity(rows.min(1 << 24));
    let mut counts = Vec::with_capacity(rows.min(1 << 24));
    for _ in 0..rows {
        counts.push(u64::from_le_bytes(read_array(&mut r)?));
        let len = u32::from_le_bytes(read_array(&mut r)?) as usize;
        let mut bytes = vec![0u8; len];
        r.read_exact(&mut bytes)?;
        vocab.push(String::from_utf8(bytes).map_err(|e| invalid(e.to_string()))?);
    }
    EmbeddingSpace::new(year, dim, vocab, counts, vectors).map_err(|e| invalid(e.to_string()))
}

pub fn write_text(space: &EmbeddingSpace, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "{} {}", space.len(), space.dim())?;
    for (i, word) in space.vocab().iter().enumerate() {
        write!(w, "{word}")?;
        for v in space.row(i) {
            write!(w, " {}", *v as f32)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Reads the text format; counts are not stored there and come back as 1.
pub fn read_text(year: i32, r: impl BufRead) -> io::Result<EmbeddingSpace> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| invalid("empty embedding file"))??;
    let mut parts = header.split_whitespace().map(str::parse::<usize>);
    let (rows, dim) = match (parts.next(), parts.next()) {
        (Some(Ok(r)), Some(Ok(d))) => (r, d),
        _ => return Err(invalid("header must be `rows dim`")),
    };
    let mut out = Vec::with_capacity(rows.min(1 << 24));
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(' ');
        let word = fields.next().unwrap_or_default().to_string();
        let v = fields
            .filter(|f| !f.is_empty())
            .map(|f| f.parse::<f32>().map(f64::from))
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| invalid(format!("line {}: {e}", n + 2)))?;
        if v.len() != dim {
            return Err(invalid(format!("line {}: expected {dim} values, found {}", n + 2, v.len())));
        }
        out.push((word, v));
    }
    if out.len() != rows {
        return Err(invalid(format!("header announces {rows} rows, found {}", out.len())));
    }
    EmbeddingSpace::from_rows(year, out).map_err(|e| invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(rows: Vec<Vec<f32>>) -> EmbeddingSpace {
        let n = rows.len();
        let dim = rows[0].len();
        let vocab = (0..n).map(|i| format!("w{i}")).collect();
        let counts = (0..n as u64).map(|c| c * 3 + 1).collect();
        let vectors = rows.into_iter().flatten().map(f64::from).collect();
        EmbeddingSpace::new(2013, dim, vocab, counts, vectors).unwrap()
    }

    proptest! {
        #[test]
        fn binary_round_trip(rows in (1usize..5).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-10.0f32..10.0, d), 1..6))) {
            let s = space(rows);
            let mut buf = Vec::new();
            write_binary(&s, &mut buf).unwrap();
            prop_assert_eq!(read_binary(&buf[..]).unwrap(), s);
        }

        #[test]
        fn text_round_trip(rows in (1usize..5).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-10.0f32..10.0, d), 1..6))) {
            let s = space(rows);
            let mut buf = Vec::new();
            write_text(&s, &mut buf).unwrap();
            let back = read_text(2013, &buf[..]).unwrap();
            prop_assert_eq!(back.vectors(), s.vectors());
            prop_assert_eq!(back.vocab(), s.vocab());
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_binary(&b"NOTEMBED...."[..]).is_err());
        assert!(read_text(0, &b"2 3\nw 1 2 3\n"[..]).is_err());
        assert!(read_text(0, &b"1 3\nw 1 2\n"[..]).is_err());
    }
}
