//! graph6 ASCII format: order prefix, then the upper triangle in column order
//! packed six bits per byte with offset 63.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};
use std::io::{BufRead, Write};

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n) / 12);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12 & 63) as u8 + 63);
        out.push((n >> 6 & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

pub fn graph6_decode(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("graph6 byte {b} out of range")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, ..] => return Err(Error::Parse("graph6 order too large".into())),
        [126, a, b, c, rest @ ..] => {
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            (n, rest)
        }
        [126, ..] => return Err(Error::Parse("truncated graph6 order".into())),
        [first, rest @ ..] => (*first as usize - 63, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph order",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n = {n}",
            body.len(),
            nbits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads newline-separated graph6 strings, skipping blank lines.
pub fn read_graph6_list<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        graphs.push(graph6_decode(line)?);
    }
    Ok(graphs)
}

pub fn write_graph6_list<'a, W: Write>(
    mut w: W,
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<()> {
    for g in graphs {
        writeln!(w, "{}", graph6_encode(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(graph6_encode(&Graph::empty(2)), "A?");
        assert_eq!(graph6_decode("A_").unwrap(), Graph::complete(2));
        // K_4: six one-bits -> 111111 -> 126 '~'.
        assert_eq!(graph6_encode(&Graph::complete(4)), "C~");
        assert_eq!(graph6_encode(&Graph::empty(0)), "?");
    }

    #[test]
    fn long_order_prefix() {
        let g = Graph::cycle(64);
        let s = graph6_encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(graph6_decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(graph6_decode("A").is_err());
        assert!(graph6_decode("A??").is_err());
        assert!(graph6_decode("A\x20").is_err());
        assert!(graph6_decode("").is_err());
        assert!(graph6_decode("~??A").is_err());
    }

    #[test]
    fn list_round_trip() {
        let gs = vec![Graph::cycle(5), Graph::complete(3), Graph::empty(1)];
        let mut buf = Vec::new();
        write_graph6_list(&mut buf, &gs).unwrap();
        assert_eq!(read_graph6_list(&buf[..]).unwrap(), gs);
    }
}
