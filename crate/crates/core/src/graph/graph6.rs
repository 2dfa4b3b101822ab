//! graph6 encoding, restricted to graphs with at most 16 vertices.
//!
//! Layout: one byte `n + 63`, followed by the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six
//! bits per byte, most significant bit first, each byte offset by 63.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{SimpleGraph, MAX_VERTICES};
use crate::error::{Error, Result};

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

pub fn parse_graph6(line: &str) -> Result<SimpleGraph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.starts_with(b">>") {
        return Err(g6_err(0, "graph6 headers (>>graph6<<) are not accepted"));
    }
    if bytes.is_empty() {
        return Err(g6_err(0, "empty line"));
    }
    let first = bytes[0];
    if !(63..=126).contains(&first) {
        return Err(g6_err(0, format!("byte {first} outside 63..=126")));
    }
    if first == 126 {
        return Err(g6_err(0, "extended size prefix: more than 16 vertices"));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(g6_err(0, "zero-vertex graph"));
    }
    if n > MAX_VERTICES {
        return Err(g6_err(0, format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(g6_err(
            bytes.len().min(1 + nbytes),
            format!("expected {} bytes for {n} vertices, found {}", 1 + nbytes, bytes.len()),
        ));
    }
    let mut data = Vec::with_capacity(nbytes);
    for (i, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(i + 1, format!("byte {b} outside 63..=126")));
        }
        data.push(b - 63);
    }
    let bit = |k: usize| data[k / 6] >> (5 - k % 6) & 1 == 1;
    let mut g = SimpleGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    for pad in nbits..nbytes * 6 {
        if bit(pad) {
            return Err(g6_err(1 + pad / 6, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Reads a graph6 file, one graph per line. Blank lines are skipped; each
/// entry carries its 1-based line number and the parse outcome.
pub fn read_graph6_file(path: &Path) -> Result<Vec<(usize, Result<SimpleGraph>)>> {
    let file = fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push((i + 1, parse_graph6(line.trim())));
    }
    Ok(out)
}

pub fn write_graph6_file<'a>(
    path: &Path,
    graphs: impl IntoIterator<Item = &'a SimpleGraph>,
) -> Result<()> {
    let mut w = std::io::BufWriter::new(fs::File::create(path)?);
    for g in graphs {
        writeln!(w, "{}", write_graph6(g))?;
    }
    w.flush()?;
    Ok(())
}
