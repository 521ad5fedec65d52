//! Point-set file format.
//!
//! ```text
//!   # q=9 p=3 l=2 d=2 modulus=1,0,1
//!   0 5
//!   1 3
//! ```
//!
//! One header line, then one point per line: d canonical element indices
//! in [0, q), space-separated, points sorted ascending by encoded index.
//! Reading validates the header against the expected field and dimension.

use fqlab::{Error, FieldSpec, GridPoint, PointSet, Result};
use std::fmt::Write as _;

pub fn render_pointset(field: &FieldSpec, set: &PointSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} d={}", field.describe(), set.d());
    for idx in set.members() {
        let p = GridPoint::decode(set.q(), set.d(), idx);
        let line: Vec<String> = p.coords.iter().map(|c| c.index().to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn write_pointset(path: &str, field: &FieldSpec, set: &PointSet) -> Result<()> {
    std::fs::write(path, render_pointset(field, set))
        .map_err(|e| Error::ParseError(format!("cannot write {path}: {e}")))
}

pub fn parse_pointset(field: &FieldSpec, d: u32, text: &str) -> Result<PointSet> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::ParseError("empty file".into()))?;
    let expected = format!("# {} d={}", field.describe(), d);
    if header.trim() != expected {
        return Err(Error::HeaderMismatch(format!(
            "expected `{expected}`, found `{}`",
            header.trim()
        )));
    }
    let mut idxs = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let coords: Vec<u64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::ParseError(format!("line {}: bad index {tok}", lineno + 2)))
            })
            .collect::<Result<_>>()?;
        if coords.len() != d as usize {
            return Err(Error::ParseError(format!(
                "line {}: expected {d} coordinates, got {}",
                lineno + 2,
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= field.q()) {
            return Err(Error::ParseError(format!("line {}: index out of range", lineno + 2)));
        }
        let pt = GridPoint::new(coords.into_iter().map(|c| field.element(c)).collect());
        idxs.push(pt.encode(field.q()));
    }
    Ok(PointSet::from_indices(field.q(), d, idxs))
}

pub fn read_pointset(path: &str, field: &FieldSpec, d: u32) -> Result<PointSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("cannot read {path}: {e}")))?;
    parse_pointset(field, d, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fqlab::Fq;

    #[test]
    fn round_trip_and_encoding() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        // x+2 has coefficients (2,1), index 2 + 1·3 = 5
        let pt = GridPoint::new(vec![f9.from_digits(&[2, 1]), Fq(0)]);
        assert_eq!(pt.coords[0].index(), 5);
        let set = PointSet::from_points(9, 2, &[pt]);
        let text = render_pointset(&f9, &set);
        assert_eq!(text, "# q=9 p=3 l=2 modulus=1,0,1 d=2\n5 0\n");
        let back = parse_pointset(&f9, 2, &text).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn header_mismatch_and_parse_errors() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let f25 = FieldSpec::new(5, 2).unwrap();
        let set = PointSet::from_indices(9, 2, [0u64, 5]);
        let text = render_pointset(&f9, &set);
        assert!(matches!(parse_pointset(&f25, 2, &text), Err(Error::HeaderMismatch(_))));
        assert!(matches!(parse_pointset(&f9, 3, &text), Err(Error::HeaderMismatch(_))));
        let bad = "# q=9 p=3 l=2 modulus=1,0,1 d=2\n9 0\n";
        assert!(matches!(parse_pointset(&f9, 2, bad), Err(Error::ParseError(_))));
        let bad2 = "# q=9 p=3 l=2 modulus=1,0,1 d=2\n1 2 3\n";
        assert!(matches!(parse_pointset(&f9, 2, bad2), Err(Error::ParseError(_))));
    }
}
