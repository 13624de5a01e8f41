//! Plain-text file formats.
//!
//! Every format starts with a header line of counts followed by one record
//! per line. Blank lines and lines starting with `#` are ignored.
//!
//! | kind       | header  | records                                        |
//! |------------|---------|------------------------------------------------|
//! | poset      | `n m`   | `u v`, a cover pair `u ≺ v`                    |
//! | set system | `n k`   | member elements, `-` for the empty set         |
//! | cover      | `n k`   | the images `π'(0) … π'(n-1)`                   |
//! | TSP matrix | `N`     | `N` weights, `inf` for a missing edge          |
//! | DFAS graph | `n m`   | `u v`, an arc                                  |

use std::fmt::Write as _;
use std::str::FromStr;

use permtrade_core::cover::PermutationCover;
use permtrade_core::perm::is_permutation;
use permtrade_core::poset::Poset;
use permtrade_core::problem::{DfasInstance, TspInstance};
use permtrade_core::setsystem::SetSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_record(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            self.last = i + 1;
            return Some((i + 1, t.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        match self.next_record() {
            Some(r) => Ok(r),
            None => err(self.last + 1, format!("unexpected end of input, expected {what}")),
        }
    }

    fn finish(mut self) -> Result<(), FormatError> {
        match self.next_record() {
            Some((line, _)) => err(line, "trailing data after the declared records"),
            None => Ok(()),
        }
    }
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| FormatError {
            line,
            message: format!("expected a non-negative integer, found {tok:?}"),
        })
}

fn header(lines: &mut Lines, arity: usize) -> Result<(usize, Vec<usize>), FormatError> {
    let (line, toks) = lines.expect("a header")?;
    if toks.len() != arity {
        return err(line, format!("header needs {arity} fields, found {}", toks.len()));
    }
    let v = toks.iter().map(|t| num(line, t)).collect::<Result<Vec<usize>, _>>()?;
    Ok((line, v))
}

fn pair(lines: &mut Lines, n: usize, what: &str) -> Result<(usize, usize), FormatError> {
    let (line, toks) = lines.expect(what)?;
    if toks.len() != 2 {
        return err(line, format!("{what} needs 2 fields, found {}", toks.len()));
    }
    let (u, v) = (num(line, toks[0])?, num(line, toks[1])?);
    if u >= n || v >= n {
        return err(line, format!("element out of range 0..{n}"));
    }
    Ok((u, v))
}

pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, 2)?;
    let (n, m) = (h[0], h[1]);
    let pairs = (0..m)
        .map(|_| pair(&mut lines, n, "cover pair"))
        .collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    Poset::from_relations(n, &pairs).map_err(|e| FormatError {
        line: hline,
        message: e.to_string(),
    })
}

pub fn write_poset(p: &Poset) -> String {
    let mut s = format!("{} {}\n", p.len(), p.covers().len());
    for &(u, v) in p.covers() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_set_system(text: &str) -> Result<SetSystem, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, 2)?;
    let (n, k) = (h[0], h[1]);
    if n > permtrade_core::setsystem::MAX_UNIVERSE {
        return err(hline, format!("universe {n} is too large"));
    }
    let mut members = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, toks) = lines.expect("a member")?;
        let mut mask = 0u64;
        if toks != ["-"] {
            for t in toks {
                let e: usize = num(line, t)?;
                if e >= n {
                    return err(line, format!("element {e} out of range 0..{n}"));
                }
                if mask >> e & 1 == 1 {
                    return err(line, format!("element {e} repeated"));
                }
                mask |= 1 << e;
            }
        }
        members.push(mask);
    }
    lines.finish()?;
    let mut sorted = members.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return err(hline, "duplicate member");
    }
    SetSystem::new(n, members).map_err(|e| FormatError {
        line: hline,
        message: e.to_string(),
    })
}

fn elements(mask: u64) -> String {
    if mask == 0 {
        return "-".into();
    }
    (0..64)
        .filter(|e| mask >> e & 1 == 1)
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Members in `(popcount, value)` order, which is how they are stored.
pub fn write_set_system(a: &SetSystem) -> String {
    let mut s = format!("{} {}\n", a.universe(), a.len());
    for &m in a.members() {
        s.push_str(&elements(m));
        s.push('\n');
    }
    s
}

pub fn parse_cover(text: &str) -> Result<PermutationCover, FormatError> {
    let mut lines = Lines::new(text);
    let (_, h) = header(&mut lines, 2)?;
    let (n, k) = (h[0], h[1]);
    let mut perms = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, toks) = lines.expect("a permutation")?;
        if toks.len() != n {
            return err(line, format!("permutation needs {n} images, found {}", toks.len()));
        }
        let p = toks.iter().map(|t| num(line, t)).collect::<Result<Vec<usize>, _>>()?;
        if !is_permutation(&p) {
            return err(line, "not a permutation of 0..n");
        }
        perms.push(p);
    }
    lines.finish()?;
    Ok(PermutationCover {
        n,
        perms,
        certified: false,
        note: None,
    })
}

pub fn write_cover(c: &PermutationCover) -> String {
    let mut s = format!("{} {}\n", c.n, c.perms.len());
    for p in &c.perms {
        let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_tsp_matrix(text: &str) -> Result<TspInstance, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, 1)?;
    let n = h[0];
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, toks) = lines.expect("a matrix row")?;
        if toks.len() != n {
            return err(line, format!("row needs {n} entries, found {}", toks.len()));
        }
        let row = toks
            .iter()
            .map(|t| {
                if t.eq_ignore_ascii_case("inf") {
                    Ok(None)
                } else {
                    num::<u64>(line, t).and_then(|w| {
                        if w == u64::MAX {
                            err(line, "weight too large")
                        } else {
                            Ok(Some(w))
                        }
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    lines.finish()?;
    TspInstance::new(rows).map_err(|e| FormatError {
        line: hline,
        message: e.to_string(),
    })
}

pub fn write_tsp_matrix(t: &TspInstance) -> String {
    let n = t.cities();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| match t.weight(i, j).value() {
                Some(w) => w.to_string(),
                None => "inf".into(),
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_dfas_graph(text: &str) -> Result<DfasInstance, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, h) = header(&mut lines, 2)?;
    let (n, m) = (h[0], h[1]);
    let arcs = (0..m)
        .map(|_| pair(&mut lines, n, "arc"))
        .collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    DfasInstance::new(n, arcs).map_err(|e| FormatError {
        line: hline,
        message: e.to_string(),
    })
}

pub fn write_dfas_graph(g: &DfasInstance) -> String {
    let mut s = format!("{} {}\n", g.vertices(), g.arcs().len());
    for &(u, v) in g.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_roundtrip() {
        let p = parse_poset("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(p.below(2), 0b011);
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
    }

    #[test]
    fn poset_errors() {
        assert_eq!(parse_poset("3 2\n0 1\n").unwrap_err().line, 3);
        assert_eq!(parse_poset("2 1\n0 5\n").unwrap_err().line, 2);
        assert!(parse_poset("2 2\n0 1\n1 0\n").is_err());
        assert!(parse_poset("2 0\n0 1\n").is_err());
        assert!(parse_poset("x 0\n").is_err());
    }

    #[test]
    fn set_system_roundtrip() {
        let text = "2 3\n-\n1\n0 1\n";
        let a = parse_set_system(text).unwrap();
        assert_eq!(a.members(), &[0, 0b10, 0b11]);
        assert_eq!(write_set_system(&a), text);
        assert!(parse_set_system("2 2\n0\n0\n").is_err());
        assert!(parse_set_system("2 1\n0 0\n").is_err());
    }

    #[test]
    fn cover_roundtrip() {
        let c = parse_cover("3 2\n0 1 2\n2 0 1\n").unwrap();
        assert_eq!(c.perms[1], [2, 0, 1]);
        assert_eq!(parse_cover(&write_cover(&c)).unwrap().perms, c.perms);
        assert!(parse_cover("3 1\n0 0 1\n").is_err());
    }

    #[test]
    fn tsp_roundtrip() {
        let t = parse_tsp_matrix("# four cities\n3\n0 1 inf\n1 0 2\n4 2 0\n").unwrap();
        assert!(t.weight(0, 2).value().is_none());
        assert_eq!(parse_tsp_matrix(&write_tsp_matrix(&t)).unwrap(), t);
        assert!(parse_tsp_matrix("2\n0 1\n").is_err());
    }

    #[test]
    fn dfas_roundtrip() {
        let g = parse_dfas_graph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(parse_dfas_graph(&write_dfas_graph(&g)).unwrap().arcs(), g.arcs());
        assert!(parse_dfas_graph("2 1\n1 1\n").is_err());
    }
}
