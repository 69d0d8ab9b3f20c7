//! Text format: a line `deg <d>`, then `d+1` lines `<k> <coef>` with `k`
//! ascending from 0. Coefficients are decimal integers of any size.

use std::io::{BufRead, Write};

use num_bigint::BigInt;

use super::IntPoly;
use crate::error::{Error, Result};

pub fn write_poly<W: Write>(p: &IntPoly, mut w: W) -> Result<()> {
    let d = p.degree().ok_or(Error::DegeneratePoly("zero"))?;
    writeln!(w, "deg {d}")?;
    for (k, c) in p.coeffs().iter().enumerate() {
        writeln!(w, "{k} {c}")?;
    }
    Ok(())
}

pub fn read_poly<R: BufRead>(r: R) -> Result<IntPoly> {
    let mut lines = r.lines().enumerate();
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let (_, head) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let head = head?;
    let d: usize = head
        .trim()
        .strip_prefix("deg ")
        .ok_or_else(|| perr(1, "expected `deg <d>`".into()))?
        .trim()
        .parse()
        .map_err(|e| perr(1, format!("bad degree: {e}")))?;
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| perr(k + 2, format!("missing coefficient {k}")))?;
        let line = line?;
        let ln = ln + 1;
        let mut parts = line.split_whitespace();
        let idx: usize = parts
            .next()
            .ok_or_else(|| perr(ln, "empty line".into()))?
            .parse()
            .map_err(|e| perr(ln, format!("bad index: {e}")))?;
        if idx != k {
            return Err(perr(ln, format!("expected index {k}, found {idx}")));
        }
        let c: BigInt = parts
            .next()
            .ok_or_else(|| perr(ln, "missing coefficient".into()))?
            .parse()
            .map_err(|e| perr(ln, format!("bad coefficient: {e}")))?;
        if parts.next().is_some() {
            return Err(perr(ln, "trailing tokens".into()));
        }
        coeffs.push(c);
    }
    for (ln, line) in lines {
        if !line?.trim().is_empty() {
            return Err(perr(ln + 1, "content after the last coefficient".into()));
        }
    }
    let p = IntPoly::new(coeffs);
    if p.degree() != Some(d) {
        return Err(perr(d + 2, "leading coefficient is zero".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let text = "deg 3\n0 -7\n1 0\n2 123456789012345678901234567890\n3 1\n";
        let p = read_poly(text.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_poly(&p, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = read_poly("deg 2\n0 1\n2 1\n1 1\n".as_bytes()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(matches!(
            read_poly("deg 1\n0 1\n1 0\n".as_bytes()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            read_poly("degree 1\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
