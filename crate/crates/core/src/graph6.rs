//! graph6 text encoding of labeled simple graphs, bit-exact with the de
//! facto standard: printable bytes 63..=126, a one-byte header for n <= 62
//! or "~" plus an 18-bit size otherwise, then the upper triangle in
//! column-major order packed six bits per byte and zero-padded.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;

/// Parse one graph6 line. Errors name the byte offset of the first problem.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "empty input",
        });
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::Graph6 {
                offset: i,
                reason: "byte outside the printable graph6 range",
            });
        }
    }

    let (n, header_len) = if bytes[0] != b'~' {
        ((bytes[0] - OFFSET) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        // 8-byte header encodes n >= 258048, beyond the vertex cap
        return Err(Error::Graph6 {
            offset: 1,
            reason: "order exceeds the supported range",
        });
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6 {
                offset: bytes.len(),
                reason: "truncated extended size header",
            });
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "order exceeds the vertex cap",
        });
    }

    let bit_count = n * (n.saturating_sub(1)) / 2;
    let body_len = bit_count.div_ceil(6);
    if bytes.len() < header_len + body_len {
        return Err(Error::Graph6 {
            offset: bytes.len(),
            reason: "truncated adjacency bits",
        });
    }
    if bytes.len() > header_len + body_len {
        return Err(Error::Graph6 {
            offset: header_len + body_len,
            reason: "trailing bytes after adjacency bits",
        });
    }

    let mut g = Graph::empty(n);
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[header_len + pos / 6] - OFFSET;
            if byte >> (5 - pos % 6) & 1 != 0 {
                g.add_edge(i, j);
            }
            pos += 1;
        }
    }
    // padding bits must be zero
    for p in pos..body_len * 6 {
        let byte = bytes[header_len + p / 6] - OFFSET;
        if byte >> (5 - p % 6) & 1 != 0 {
            return Err(Error::Graph6 {
                offset: header_len + p / 6,
                reason: "nonzero padding bits",
            });
        }
    }
    Ok(g)
}

/// Encode the labeled adjacency of `g` (no isomorph canonicalization).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + OFFSET);
        out.push(((n >> 6) & 63) as u8 + OFFSET);
        out.push((n & 63) as u8 + OFFSET);
    }
    let mut acc = 0u8;
    let mut used = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            used += 1;
            if used == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
