//! Plain-text face dump: one face per line, `k v0 v1 ... vk [volume]`.

use std::io::Write;

use super::FaceStream;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DumpedFace {
    pub k: usize,
    pub vertices: Vec<u32>,
    pub volume: Option<f64>,
}

/// Writes every face of `streams`; volumes are written for streams that
/// have them cached.
pub fn write_face_dump<W: Write>(mut out: W, streams: &[FaceStream]) -> Result<()> {
    for s in streams {
        let vols = s.volumes();
        for (i, f) in s.faces().enumerate() {
            write!(out, "{}", s.k())?;
            for v in f {
                write!(out, " {v}")?;
            }
            if let Some(v) = vols {
                write!(out, " {}", v[i])?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn parse_face_dump(text: &str) -> Result<Vec<DumpedFace>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: lineno + 1, message };
        let mut tokens = line.split_ascii_whitespace();
        let k: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("missing or invalid dimension".into()))?;
        let rest: Vec<&str> = tokens.collect();
        if k >= u32::MAX as usize || (rest.len() != k + 1 && rest.len() != k + 2) {
            return Err(err(format!("a {k}-face needs {} vertices and an optional volume", k + 1)));
        }
        let vertices = rest[..k + 1]
            .iter()
            .map(|t| t.parse::<u32>().map_err(|e| err(format!("vertex `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("vertices must be strictly increasing".into()));
        }
        let volume = match rest.get(k + 1) {
            None => None,
            Some(t) => {
                let v: f64 = t.parse().map_err(|e| err(format!("volume `{t}`: {e}")))?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(err(format!("volume must be finite and non-negative, got {v}")));
                }
                Some(v)
            }
        };
        out.push(DumpedFace { k, vertices, volume });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_faces, ComplexKind};
    use crate::geometry::{sample_poisson, Window};

    #[test]
    fn write_then_parse() {
        let w = Window::cube(2).unwrap();
        let c = sample_poisson(&w, 30.0, 3).unwrap();
        let streams = enumerate_faces(&c, 0.3, ComplexKind::Rips, 2, true).unwrap();
        let mut buf = Vec::new();
        write_face_dump(&mut buf, &streams).unwrap();
        let parsed = parse_face_dump(std::str::from_utf8(&buf).unwrap()).unwrap();
        let total: usize = streams.iter().map(|s| s.len()).sum();
        assert_eq!(parsed.len(), total);
        let mut i = 0;
        for s in &streams {
            for (j, f) in s.faces().enumerate() {
                assert_eq!(parsed[i].k, s.k());
                assert_eq!(parsed[i].vertices, f);
                assert_eq!(parsed[i].volume, Some(s.volumes().unwrap()[j]));
                i += 1;
            }
        }
    }

    #[test]
    fn volume_is_optional() {
        let p = parse_face_dump("1 0 3\n\n2 1 2 5 0.25\n").unwrap();
        assert_eq!(p[0], DumpedFace { k: 1, vertices: vec![0, 3], volume: None });
        assert_eq!(p[1].volume, Some(0.25));
    }

    #[test]
    fn malformed_lines() {
        for bad in ["x 1 2", "1 0", "1 0 1 2 3", "1 2 1", "1 1 1", "2 0 1 2 -1", "1 0 1 NaN", "0 -1"] {
            assert!(parse_face_dump(bad).is_err(), "{bad}");
        }
        match parse_face_dump("0 1\n1 2 1") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
