//! Text formats for field elements, polynomials, matrices, encoder files
//! and system files.
//!
//! Elements of an extension field are written in the generator `a`
//! (`a^2+a`, `2a+1`); prime-field elements are decimal. Polynomials are
//! written in ascending powers of `z`, e.g. `1+z^2`, `2z`, `a+az^3`.
//! Multi-term coefficients are parenthesised: `(a+1)z`. Whitespace is
//! ignored. Matrices are one row per line with `;` between entries.

use crate::error::{Error, Result};
use crate::galois::{is_prime, Elem, Field, FieldMatrix};
use crate::polymat::{Poly, PolyMatrix};
use crate::realization::StateSpace;

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Moves a parse error from a single-line parse to its place in a file.
fn relocate(e: Error, line: usize, col_offset: usize) -> Error {
    match e {
        Error::Parse { col, msg, .. } => err(line, col + col_offset, msg),
        other => other,
    }
}

// ---------------------------------------------------------------- fields

pub fn parse_field(src: &str) -> Result<Field> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err(1, 1, format!("expected GF(p) or GF(p^s), found `{}`", src.trim())))?;
    let num = |t: &str| t.parse::<u32>().map_err(|_| err(1, 4, format!("invalid integer `{t}`")));
    let (p, s) = match inner.split_once('^') {
        Some((p, s)) => (num(p)?, num(s)?),
        None => {
            let q = num(inner)?;
            prime_power(q).ok_or_else(|| err(1, 4, format!("{q} is not a prime power")))?
        }
    };
    Field::new(p, s).map_err(|e| err(1, 4, e.to_string()))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    if !is_prime(p) {
        return None;
    }
    let (mut r, mut s) = (q, 0);
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    (r == 1).then_some((p, s))
}

// ---------------------------------------------------------------- scanner

/// Characters of one line with whitespace removed; columns are 1-based
/// positions in the original text.
struct Scanner {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_col: usize,
}

impl Scanner {
    fn new(src: &str) -> Scanner {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Scanner {
            chars,
            pos: 0,
            end_col: src.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_col, |&(c, _)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn int(&mut self) -> Result<Option<u64>> {
        let start = self.col();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Ok(None);
        }
        digits
            .parse()
            .map(Some)
            .map_err(|_| err(1, start, format!("integer `{digits}` is too large")))
    }

    fn exponent(&mut self) -> Result<u64> {
        if !self.eat('^') {
            return Ok(1);
        }
        let col = self.col();
        self.int()?.ok_or_else(|| err(1, col, "expected an exponent after `^`"))
    }
}

// --------------------------------------------------------------- elements

pub fn format_elem(f: &Field, e: Elem) -> String {
    if f.is_prime_field() {
        return e.index().to_string();
    }
    let digits = f.digits(e);
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let c = if d == 1 && i > 0 { String::new() } else { d.to_string() };
            match i {
                0 => c,
                1 => format!("{c}a"),
                _ => format!("{c}a^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// `int? ('a' ('^' int)?)?`, at least one part present.
fn elem_term(sc: &mut Scanner, f: &Field) -> Result<Option<Elem>> {
    let col = sc.col();
    let c = match sc.int()? {
        Some(n) if n >= f.characteristic() as u64 => {
            return Err(err(1, col, format!("integer {n} is not below the characteristic {}", f.characteristic())));
        }
        Some(n) => Some(f.from_int(n)),
        None => None,
    };
    let a_col = sc.col();
    if sc.eat('a') {
        if f.is_prime_field() {
            return Err(err(1, a_col, format!("generator `a` is not available in {f}")));
        }
        let e = sc.exponent()?;
        let g = f.pow(f.generator(), e);
        Ok(Some(f.mul(c.unwrap_or(Elem::ONE), g)))
    } else {
        Ok(c)
    }
}

fn elem_sum(sc: &mut Scanner, f: &Field) -> Result<Elem> {
    let mut acc = Elem::ZERO;
    loop {
        let col = sc.col();
        let t = elem_term(sc, f)?.ok_or_else(|| err(1, col, "expected a field element"))?;
        acc = f.add(acc, t);
        if !sc.eat('+') {
            return Ok(acc);
        }
    }
}

pub fn parse_elem(f: &Field, src: &str) -> Result<Elem> {
    let mut sc = Scanner::new(src);
    let e = elem_sum(&mut sc, f)?;
    if !sc.at_end() {
        return Err(err(1, sc.col(), format!("unexpected `{}`", sc.peek().unwrap())));
    }
    Ok(e)
}

// ------------------------------------------------------------ polynomials

pub fn format_poly(f: &Field, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (e, &c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = format_elem(f, c);
        let z = match e {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{e}"),
        };
        terms.push(if e == 0 {
            cs
        } else if c.is_one() {
            z
        } else if cs.contains('+') {
            format!("({cs}){z}")
        } else {
            format!("{cs}{z}")
        });
    }
    terms.join("+")
}

fn poly_term(sc: &mut Scanner, f: &Field) -> Result<Poly> {
    let col = sc.col();
    let coef = if sc.eat('(') {
        let e = elem_sum(sc, f)?;
        if !sc.eat(')') {
            return Err(err(1, sc.col(), "expected `)`"));
        }
        Some(e)
    } else {
        elem_term(sc, f)?
    };
    let exp = if sc.eat('z') { Some(sc.exponent()?) } else { None };
    if coef.is_none() && exp.is_none() {
        return Err(match sc.peek() {
            Some(c) => err(1, col, format!("unexpected `{c}`")),
            None => err(1, col, "expected a term"),
        });
    }
    let e = exp.unwrap_or(0);
    if e > 1 << 20 {
        return Err(err(1, col, format!("exponent {e} is too large")));
    }
    Ok(Poly::monomial(coef.unwrap_or(Elem::ONE), e as usize))
}

fn poly_sum(sc: &mut Scanner, f: &Field) -> Result<Poly> {
    let mut acc = Poly::zero();
    loop {
        acc = acc.add(&poly_term(sc, f)?, f);
        if !sc.eat('+') {
            return Ok(acc);
        }
    }
}

pub fn parse_poly(f: &Field, src: &str) -> Result<Poly> {
    let mut sc = Scanner::new(src);
    let p = poly_sum(&mut sc, f)?;
    if !sc.at_end() {
        return Err(err(1, sc.col(), format!("unexpected `{}`", sc.peek().unwrap())));
    }
    Ok(p)
}

// --------------------------------------------------------------- matrices

fn parse_row(f: &Field, line: &str, line_no: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for entry in line.split(';') {
        let p = parse_poly(f, entry).map_err(|e| relocate(e, line_no, offset))?;
        out.push(p);
        offset += entry.chars().count() + 1;
    }
    Ok(out)
}

/// Rows from `(line number, text)` pairs, checking they all have one length.
fn parse_rows(f: &Field, lines: &[(usize, &str)]) -> Result<PolyMatrix> {
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for &(no, text) in lines {
        let row = parse_row(f, text, no)?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(err(
                    no,
                    1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(f, rows)
}

pub fn parse_poly_matrix(f: &Field, src: &str) -> Result<PolyMatrix> {
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    parse_rows(f, &lines)
}

pub fn format_poly_matrix(m: &PolyMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| format_poly(m.field(), p))
                .collect::<Vec<_>>()
                .join("; ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn format_field_matrix(m: &FieldMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&e| format_elem(m.field(), e))
                .collect::<Vec<_>>()
                .join("; ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn constant_rows(f: &Field, lines: &[(usize, &str)], cols_hint: usize) -> Result<FieldMatrix> {
    if lines.is_empty() {
        return Ok(FieldMatrix::zeros(f, 0, cols_hint));
    }
    let m = parse_rows(f, lines)?;
    if !m.is_constant() {
        let line = lines[(0..m.rows()).find(|&i| m.row(i).iter().any(|p| !p.is_constant())).unwrap()].0;
        return Err(err(line, 1, "system matrices must be constant"));
    }
    Ok(m.coefficient(0))
}

pub fn parse_field_matrix(f: &Field, src: &str) -> Result<FieldMatrix> {
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    constant_rows(f, &lines, 0)
}

// ------------------------------------------------------------------ files

/// An encoder matrix with its field and an optional label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncoderFile {
    pub field: Field,
    pub label: Option<String>,
    pub matrix: PolyMatrix,
}

/// Either kind of input file.
#[derive(Clone, Debug)]
pub enum InputFile {
    Encoder(EncoderFile),
    System(StateSpace),
}

/// Non-blank lines with `#` comments stripped, numbered from 1.
fn content_lines(src: &str) -> Vec<(usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap()))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect()
}

/// Splits off a leading `key:` prefix, returning the rest of the line.
fn keyed<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let t = line.trim_start();
    let rest = t.strip_prefix(key)?;
    rest.trim_start().strip_prefix(':')
}

fn field_header(lines: &[(usize, &str)]) -> Result<Field> {
    let &(no, first) = lines.first().ok_or_else(|| err(1, 1, "empty input"))?;
    let spec = keyed(first, "field").ok_or_else(|| err(no, 1, "expected `field: GF(...)` as the first line"))?;
    parse_field(spec).map_err(|e| relocate(e, no, 0))
}

const SECTIONS: [&str; 4] = ["A", "B", "C", "D"];

fn is_section_header(line: &str) -> Option<usize> {
    SECTIONS
        .iter()
        .position(|s| keyed(line, s).is_some_and(|rest| rest.trim().is_empty()))
}

pub fn parse_input(src: &str) -> Result<InputFile> {
    let lines = content_lines(src);
    if lines.iter().any(|(_, l)| is_section_header(l).is_some()) {
        parse_system_file(src).map(InputFile::System)
    } else {
        parse_encoder_file(src).map(InputFile::Encoder)
    }
}

pub fn parse_encoder_file(src: &str) -> Result<EncoderFile> {
    let lines = content_lines(src);
    let field = field_header(&lines)?;
    let mut rest = &lines[1..];
    let mut label = None;
    if let Some(&(_, l)) = rest.first() {
        if let Some(text) = keyed(l, "label") {
            label = Some(text.trim().to_string());
            rest = &rest[1..];
        }
    }
    if rest.is_empty() {
        let line = lines.last().map_or(1, |l| l.0);
        return Err(err(line, 1, "encoder file has no matrix rows"));
    }
    let matrix = parse_rows(&field, rest)?;
    Ok(EncoderFile { field, label, matrix })
}

pub fn format_encoder_file(e: &EncoderFile) -> String {
    let mut out = format!("field: {}\n", e.field);
    if let Some(l) = &e.label {
        out.push_str(&format!("label: {l}\n"));
    }
    out.push_str(&format_poly_matrix(&e.matrix));
    out.push('\n');
    out
}

pub fn parse_system_file(src: &str) -> Result<StateSpace> {
    let lines = content_lines(src);
    let field = field_header(&lines)?;
    let mut sections: [Option<Vec<(usize, &str)>>; 4] = Default::default();
    let mut current: Option<usize> = None;
    for &(no, l) in &lines[1..] {
        if let Some(s) = is_section_header(l) {
            if sections[s].is_some() {
                return Err(err(no, 1, format!("section {}: appears twice", SECTIONS[s])));
            }
            sections[s] = Some(Vec::new());
            current = Some(s);
            continue;
        }
        match current {
            Some(s) => sections[s].as_mut().unwrap().push((no, l)),
            None => return Err(err(no, 1, "expected a section header `A:`, `B:`, `C:` or `D:`")),
        }
    }
    let d_lines = sections[3]
        .take()
        .ok_or_else(|| err(lines.last().unwrap().0, 1, "missing section D:"))?;
    let d = constant_rows(&field, &d_lines, 0)?;
    let a_lines = sections[0].take().unwrap_or_default();
    let delta = a_lines.first().map_or(0, |&(no, l)| parse_row(&field, l, no).map_or(0, |r| r.len()));
    let a = constant_rows(&field, &a_lines, delta)?;
    let b_lines = sections[1].take().unwrap_or_default();
    let b = if b_lines.is_empty() {
        FieldMatrix::zeros(&field, d.rows(), delta)
    } else {
        constant_rows(&field, &b_lines, delta)?
    };
    let c = constant_rows(&field, &sections[2].take().unwrap_or_default(), d.cols())?;
    let at = d_lines.first().map_or(1, |l| l.0);
    StateSpace::new(a, b, c, d).map_err(|e| match e {
        Error::Shape(msg) => err(at, 1, msg),
        other => other,
    })
}

pub fn format_system(sys: &StateSpace) -> String {
    let mut out = format!("field: {}\n", sys.field());
    if sys.delta() > 0 {
        for (name, m) in [("A", sys.a()), ("B", sys.b()), ("C", sys.c())] {
            out.push_str(name);
            out.push_str(":\n");
            out.push_str(&format_field_matrix(m));
            out.push('\n');
        }
    }
    out.push_str("D:\n");
    out.push_str(&format_field_matrix(sys.d()));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, s: u32) -> Field {
        Field::new(p, s).unwrap()
    }

    #[test]
    fn field_literals() {
        assert_eq!(parse_field("GF(2)").unwrap(), gf(2, 1));
        assert_eq!(parse_field(" GF( 3^2 ) ").unwrap(), gf(3, 2));
        assert_eq!(parse_field("GF(8)").unwrap(), gf(2, 3));
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("F(2)").is_err());
    }

    #[test]
    fn element_round_trip() {
        for f in [gf(2, 1), gf(5, 1), gf(2, 3), gf(3, 2)] {
            for e in f.elements() {
                let s = format_elem(&f, e);
                assert_eq!(parse_elem(&f, &s).unwrap(), e, "{s}");
            }
        }
        let f = gf(2, 2);
        assert_eq!(format_elem(&f, f.elem(3).unwrap()), "a+1");
        assert_eq!(format_elem(&gf(3, 2), Elem::ZERO), "0");
        assert_eq!(format_elem(&gf(3, 2), gf(3, 2).elem(7).unwrap()), "2a+1");
        // a^2 = a+1 under x^2+x+1
        assert_eq!(parse_elem(&f, "a^2").unwrap(), f.elem(3).unwrap());
    }

    #[test]
    fn polynomial_syntax() {
        let f = gf(2, 2);
        let p = parse_poly(&f, "a + a z^3").unwrap();
        assert_eq!(format_poly(&f, &p), "a+az^3");
        let p = parse_poly(&f, "(a+1)z + z + 1").unwrap();
        assert_eq!(format_poly(&f, &p), "1+az");
        let g = gf(3, 1);
        assert_eq!(format_poly(&g, &parse_poly(&g, "2z+z+1").unwrap()), "1");
        assert_eq!(format_poly(&g, &parse_poly(&g, "0").unwrap()), "0");
        assert_eq!(format_poly(&g, &parse_poly(&g, "1+2z^2").unwrap()), "1+2z^2");
    }

    #[test]
    fn polynomial_errors_have_columns() {
        let f = gf(3, 1);
        assert_eq!(
            parse_poly(&f, "1+3z"),
            Err(err(1, 3, "integer 3 is not below the characteristic 3"))
        );
        assert!(matches!(parse_poly(&f, "1+"), Err(Error::Parse { col: 3, .. })));
        assert!(matches!(parse_poly(&f, "1+a"), Err(Error::Parse { col: 3, .. })));
        assert!(matches!(parse_poly(&f, "z^"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&gf(2, 2), "(a+1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn encoder_file() {
        let src = "# comment\nfield: GF(2)\nlabel: demo\nz; 1+z^2   # first row\n1; 0\n";
        let e = parse_encoder_file(src).unwrap();
        assert_eq!(e.label.as_deref(), Some("demo"));
        assert_eq!(e.matrix.rows(), 2);
        assert_eq!(parse_encoder_file(&format_encoder_file(&e)).unwrap(), e);
        let bad = parse_encoder_file("field: GF(2)\n1; z\n1\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 3, .. }));
        let bad = parse_encoder_file("field: GF(2)\n1; 2z\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 2, col: 4, .. }), "{bad:?}");
    }

    #[test]
    fn system_file_round_trip() {
        let src = "field: GF(3)\nA:\n0\nB:\n2\n1\nC:\n0; 0; 1\nD:\n0; 1; 1\n1; 0; 0\n";
        let sys = parse_system_file(src).unwrap();
        assert_eq!((sys.delta(), sys.k(), sys.n()), (1, 2, 3));
        assert_eq!(format_system(&sys), src);
        assert!(matches!(parse_input(src).unwrap(), InputFile::System(_)));
        let block = parse_system_file("field: GF(2)\nD:\n1; 1\n").unwrap();
        assert_eq!(block.delta(), 0);
        assert_eq!(format_system(&block), "field: GF(2)\nD:\n1; 1\n");
        assert!(parse_system_file("field: GF(2)\nA:\n0\nD:\n1; z\n").is_err());
    }
}
