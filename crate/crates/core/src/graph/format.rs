//! Line-oriented instance files.
//!
//! ```text
//! ising-instance v1
//! n 3 m 2
//! edge 0 1 0.5
//! edge 1 2 0.5
//! field 0 +inf
//! ```
//! `#` starts a comment. Vertices without a `field` line have `h = 0`.

use std::fmt::Write as _;

use super::{Field, IsingInstance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const FORMAT_HEADER: &str = "ising-instance v1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))
}

pub fn parse_instance<S: Scalar>(text: &str) -> Result<IsingInstance<S>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
    if header != FORMAT_HEADER {
        return Err(parse_err(ln, format!("expected '{FORMAT_HEADER}'")));
    }
    let (ln, sizes) = lines.next().ok_or_else(|| parse_err(ln, "missing size line"))?;
    let toks: Vec<&str> = sizes.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "n" || toks[2] != "m" {
        return Err(parse_err(ln, "expected 'n <int> m <int>'"));
    }
    let n: usize = parse_num(Some(toks[1]), ln, "vertex count")?;
    let m: usize = parse_num(Some(toks[3]), ln, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut fields = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("edge") => {
                if !fields.is_empty() {
                    return Err(parse_err(ln, "edge line after field lines"));
                }
                let u: usize = parse_num(toks.next(), ln, "endpoint")?;
                let v: usize = parse_num(toks.next(), ln, "endpoint")?;
                let beta: f64 = parse_num(toks.next(), ln, "coupling")?;
                edges.push((u, v, S::lit(beta)));
            }
            Some("field") => {
                let v: usize = parse_num(toks.next(), ln, "vertex")?;
                let raw = toks.next().ok_or_else(|| parse_err(ln, "missing field value"))?;
                let h = match raw {
                    "+inf" | "inf" => Field::PlusInfinity,
                    "-inf" => Field::MinusInfinity,
                    other => {
                        let x: f64 = other.parse().map_err(|_| parse_err(ln, format!("bad field '{other}'")))?;
                        if !x.is_finite() {
                            return Err(parse_err(ln, format!("bad field '{other}'")));
                        }
                        Field::Finite(S::lit(x))
                    }
                };
                fields.push((v, h));
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record '{other}'"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(parse_err(ln, "trailing tokens"));
        }
    }
    if edges.len() != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    if fields.len() > n {
        return Err(parse_err(0, "more field lines than vertices"));
    }
    IsingInstance::build(n, &edges, &fields)
}

/// Serializes in canonical form: edges sorted, only nonzero fields listed.
pub fn write_instance<S: Scalar>(inst: &IsingInstance<S>) -> String {
    let edges = inst.edges();
    let mut out = String::new();
    writeln!(out, "{FORMAT_HEADER}").unwrap();
    writeln!(out, "n {} m {}", inst.n(), edges.len()).unwrap();
    for (u, v, b) in edges {
        writeln!(out, "edge {u} {v} {}", b.as_f64()).unwrap();
    }
    for v in 0..inst.n() {
        match inst.field(v) {
            Field::Finite(h) if h == S::zero() => {}
            Field::Finite(h) => writeln!(out, "field {v} {}", h.as_f64()).unwrap(),
            Field::PlusInfinity => writeln!(out, "field {v} +inf").unwrap(),
            Field::MinusInfinity => writeln!(out, "field {v} -inf").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example() {
        let text = "# demo\nising-instance v1\nn 3 m 2\nedge 0 1 0.5\nedge 1 2 0.25 # tail\nfield 0 +inf\nfield 2 -0.75\n";
        let inst: IsingInstance<f64> = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.field(0), Field::PlusInfinity);
        assert_eq!(inst.field(2), Field::Finite(-0.75));
        assert_eq!(inst.field(1), Field::Finite(0.0));
        assert_eq!(inst.beta_max(), 0.5);
    }

    #[test]
    fn rejects_bad_header_and_counts() {
        assert!(parse_instance::<f64>("ising v2\nn 1 m 0\n").is_err());
        assert!(parse_instance::<f64>("ising-instance v1\nn 2 m 1\n").is_err());
        assert!(parse_instance::<f64>("ising-instance v1\nn 2 m 1\nedge 0 1 -1\n").is_err());
        assert!(parse_instance::<f64>("ising-instance v1\nn 2 m 0\nfield 0 nan\n").is_err());
    }

    proptest! {
        #[test]
        fn write_parse_roundtrip(n in 1usize..8, raw in proptest::collection::vec((0usize..8, 0usize..8, 0.0f64..3.0), 0..12),
                                 hs in proptest::collection::vec(prop_oneof![(-5.0f64..5.0).prop_map(Some), Just(None)], 8)) {
            let mut seen = std::collections::BTreeSet::new();
            let edges: Vec<_> = raw.into_iter()
                .filter(|&(u, v, _)| u < n && v < n && u != v)
                .filter(|&(u, v, _)| seen.insert((u.min(v), u.max(v))))
                .collect();
            let fields: Vec<_> = (0..n).map(|v| (v, match hs[v] { Some(h) => Field::Finite(h), None => Field::MinusInfinity })).collect();
            let inst = IsingInstance::build(n, &edges, &fields).unwrap();
            let text = write_instance(&inst);
            let back: IsingInstance<f64> = parse_instance(&text).unwrap();
            prop_assert_eq!(write_instance(&back), text);
            prop_assert_eq!(back.edges(), inst.edges());
        }
    }
}
