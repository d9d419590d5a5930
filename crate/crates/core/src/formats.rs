//! Plain-text formats for events, relations and group elements.
//!
//! All formats are line based; `#` starts a comment and blank lines are
//! ignored. Errors carry the 1-based line number.
//!
//! * event file: `id x1 x2 x3 x4`
//! * relation file: `id1 id2`, one related pair per line
//! * group element: five lines of four scalars, the rows of the linear part
//!   followed by the translation

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::Affine4;
use crate::linalg::{Mat4, Vector};
use crate::partition::{EventSet, FinitePartition};
use crate::scalar::{Lexer, Scalar};
use crate::spacetime::Event;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn file_err(path: &str, line: usize, e: impl ToString) -> Error {
    Error::File { path: path.to_string(), line, message: e.to_string() }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses `(s1, s2, ..., sN)`.
pub fn parse_vector<const N: usize>(text: &str) -> Result<Vector<N>> {
    let mut lx = Lexer::new(text);
    let v = vector_from(&mut lx)?;
    if !lx.at_end() {
        return Err(Error::Parse(format!("trailing input after vector `{text}`")));
    }
    Ok(v)
}

pub(crate) fn vector_from<const N: usize>(lx: &mut Lexer<'_>) -> Result<Vector<N>> {
    lx.expect(b'(')?;
    let mut out = Vector::<N>::zero();
    for i in 0..N {
        if i > 0 {
            lx.expect(b',')?;
        }
        out[i] = lx.scalar()?;
    }
    lx.expect(b')')?;
    Ok(out)
}

/// Splits `kind key=value key=value ...` where every key is one of `keys`.
/// Values may contain spaces; a field ends where the next `key=` begins.
pub(crate) fn key_fields<'a>(line: &'a str, keys: &[&str]) -> Result<(&'a str, Vec<(&'a str, &'a str)>)> {
    let line = line.trim();
    let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim_start();
    if rest.is_empty() {
        return Ok((kind, Vec::new()));
    }
    let bytes = rest.as_bytes();
    let mut starts: Vec<(usize, &'a str)> = Vec::new();
    for i in 0..bytes.len() {
        if i > 0 && !bytes[i - 1].is_ascii_whitespace() {
            continue;
        }
        if let Some(eq) = rest[i..].find('=') {
            let key = &rest[i..i + eq];
            if keys.contains(&key) {
                starts.push((i, key));
            }
        }
    }
    if starts.first().map(|s| s.0) != Some(0) {
        return Err(Error::Parse(format!("unrecognised field in `{line}`")));
    }
    let fields = starts
        .iter()
        .enumerate()
        .map(|(n, &(i, key))| {
            let end = starts.get(n + 1).map_or(rest.len(), |s| s.0);
            (key, rest[i + key.len() + 1..end].trim())
        })
        .collect();
    Ok((kind, fields))
}

fn scalars_in_line(line: &str, count: usize) -> Result<Vec<Scalar>> {
    let mut lx = Lexer::new(line);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(lx.scalar()?);
    }
    if !lx.at_end() {
        return Err(Error::Parse(format!("unexpected trailing text `{}`", lx.rest())));
    }
    Ok(out)
}

pub fn parse_events(text: &str, path: &str) -> Result<EventSet> {
    let mut entries = Vec::new();
    let mut ids = HashSet::new();
    let mut points: HashMap<Event, String> = HashMap::new();
    for (no, line) in content_lines(text) {
        let (id, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let c = scalars_in_line(rest, 4).map_err(|e| file_err(path, no, e))?;
        let [a, b, cc, d]: [Scalar; 4] = c.try_into().unwrap();
        let ev = Event::new(a, b, cc, d);
        if !ids.insert(id.to_string()) {
            return Err(file_err(path, no, Error::DuplicateEvent(format!("id `{id}`"))));
        }
        if let Some(prev) = points.insert(ev.clone(), id.to_string()) {
            return Err(file_err(path, no, Error::DuplicateEvent(format!("`{id}` repeats the point of `{prev}`"))));
        }
        entries.push((id.to_string(), ev));
    }
    EventSet::new(entries)
}

pub fn read_events(path: &Path) -> Result<EventSet> {
    parse_events(&read(path)?, &path.display().to_string())
}

pub fn parse_relation(text: &str, path: &str, base: &Arc<EventSet>) -> Result<FinitePartition> {
    let mut pairs = Vec::new();
    for (no, line) in content_lines(text) {
        let ids: Vec<&str> = line.split_whitespace().collect();
        if ids.len() != 2 {
            return Err(file_err(path, no, "expected `id1 id2`"));
        }
        let idx = |id: &str| {
            base.index_of_id(id).ok_or_else(|| file_err(path, no, Error::UnknownEvent(id.to_string())))
        };
        pairs.push((idx(ids[0])?, idx(ids[1])?));
    }
    Ok(FinitePartition::from_pairs(base, pairs))
}

pub fn read_relation(path: &Path, base: &Arc<EventSet>) -> Result<FinitePartition> {
    parse_relation(&read(path)?, &path.display().to_string(), base)
}

pub fn parse_group_element(text: &str, path: &str) -> Result<Affine4> {
    let mut rows = Vec::new();
    let mut last = 0;
    for (no, line) in content_lines(text) {
        last = no;
        if rows.len() == 5 {
            return Err(file_err(path, no, "more than five rows"));
        }
        rows.push(scalars_in_line(line, 4).map_err(|e| file_err(path, no, e))?);
    }
    if rows.len() != 5 {
        return Err(file_err(path, last, format!("expected five rows, found {}", rows.len())));
    }
    let t = rows.pop().unwrap();
    let mut m = Mat4::zero();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, s) in row.into_iter().enumerate() {
            m.0[i][j] = s;
        }
    }
    let t: [Scalar; 4] = t.try_into().unwrap();
    Affine4::new(m, Vector(t)).map_err(|e| file_err(path, last, e))
}

pub fn read_group_element(path: &Path) -> Result<Affine4> {
    parse_group_element(&read(path)?, &path.display().to_string())
}

pub fn format_events(set: &EventSet) -> String {
    let mut out = String::new();
    for (id, ev) in set.iter() {
        let c = ev.coords();
        out.push_str(&format!("{id} {} {} {} {}\n", c[0], c[1], c[2], c[3]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVENTS: &str = "\
# three events
o 0 0 0 0
a 1 0 0 0   # on the x axis
b 1/2 -3 1 + 1*r2 -1*r2
";

    #[test]
    fn events_parse_with_comments() {
        let x = parse_events(EVENTS, "t").unwrap();
        assert_eq!(x.len(), 3);
        let b = x.event(x.index_of_id("b").unwrap()).coords();
        assert_eq!(b[2], "1 + 1*r2".parse().unwrap());
        assert_eq!(b[3], -Scalar::sqrt2());
    }

    #[test]
    fn bad_event_line_reports_line_number() {
        let err = parse_events("o 0 0 0 0\n\np 1 2 x 4\n", "ev.txt").unwrap_err();
        match err {
            Error::File { line, path, .. } => {
                assert_eq!(line, 3);
                assert_eq!(path, "ev.txt");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_events("o 0 0 0 0\nq 0 0 0 0\n", "t"), Err(Error::File { line: 2, .. })));
        assert!(matches!(parse_events("o 0 0 0\n", "t"), Err(Error::File { line: 1, .. })));
    }

    #[test]
    fn relation_file() {
        let x = Arc::new(parse_events(EVENTS, "t").unwrap());
        let r = parse_relation("o a\n", "r", &x).unwrap();
        assert_eq!(r.block_count(), 2);
        assert!(matches!(parse_relation("o z\n", "r", &x), Err(Error::File { line: 1, .. })));
    }

    #[test]
    fn group_element_file() {
        let g = parse_group_element("1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 2 3 4\n", "g").unwrap();
        assert_eq!(g.apply(&Event::origin()), Event::from_ints([1, 2, 3, 4]));
        assert!(parse_group_element("0 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n0 0 0 0\n", "g").is_err());
        assert!(parse_group_element("1 0 0 0\n", "g").is_err());
    }

    #[test]
    fn vectors() {
        let v: Vector<3> = parse_vector("(1/2, 0, -1*r2)").unwrap();
        assert_eq!(v[0], Scalar::frac(1, 2));
        assert!(parse_vector::<3>("(1,2)").is_err());
    }

    #[test]
    fn event_round_trip() {
        let x = parse_events(EVENTS, "t").unwrap();
        assert_eq!(parse_events(&format_events(&x), "t").unwrap(), x);
    }
}
