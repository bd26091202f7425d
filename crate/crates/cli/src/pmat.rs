//! The `.pmat` text format for polynomial, Laurent and rational matrices.
//!
//! ```text
//! # comment
//! field 2
//! ring poly
//! size 2 1
//! p 1 0 1
//! p 1 1 1
//! ```
//!
//! Extension fields are written `field <p> <m> <c0> .. <cm>` with the monic
//! modulus in ascending order; coefficients are integers `0..q-1` in base-p
//! digit order. Entries are row-major, one per line: `p <c0> <c1> ..`,
//! `l <minexp> <c0> ..` or `r <c0> .. | <d0> ..`. Only canonical entries are
//! accepted: no trailing zeros, Laurent bodies starting with a nonzero
//! coefficient, rational entries reduced with a monic denominator. Zero is
//! written `p`, `l 0` or `r | 1`.

use std::fmt::Write;

use convcode::field::Field;
use convcode::matrix::{AnyMatrix, LaurentMatrix, PolyMatrix, RationalMatrix};
use convcode::poly::{Laurent, Poly, RatFn, RingElement};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PmatError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("field error at line {line}, column {col}: {msg}")]
    Field { line: usize, col: usize, msg: String },
    #[error("dimension error: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ring {
    Poly,
    Laurent,
    Rational,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

struct Line<'a> {
    number: usize,
    end_col: usize,
    tokens: Vec<Token<'a>>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap();
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            if ch == ' ' || ch == '\t' || ch == '\r' {
                if let Some(s) = start.take() {
                    tokens.push(Token { text: &body[s..j], line: i + 1, col: s + 1 });
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, end_col: body.trim_end().len() + 1, tokens });
        }
    }
    out
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> PmatError {
    PmatError::Syntax { line, col, msg: msg.into() }
}

fn int<T: std::str::FromStr>(t: &Token) -> Result<T, PmatError> {
    let digits = t.text.strip_prefix('-').unwrap_or(t.text);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && t.text != "-0";
    if !canonical {
        return Err(syntax(t.line, t.col, format!("expected an integer, found `{}`", t.text)));
    }
    t.text.parse().map_err(|_| syntax(t.line, t.col, format!("integer `{}` out of range", t.text)))
}

fn keyword<'a>(l: &'a Line, word: &str) -> Result<&'a [Token<'a>], PmatError> {
    let first = &l.tokens[0];
    if first.text != word {
        return Err(syntax(l.number, first.col, format!("expected `{word}`, found `{}`", first.text)));
    }
    Ok(&l.tokens[1..])
}

fn parse_field(l: &Line) -> Result<Field, PmatError> {
    let args = keyword(l, "field")?;
    let field_err = |col: usize, msg: String| PmatError::Field { line: l.number, col, msg };
    let Some(pt) = args.first() else {
        return Err(syntax(l.number, l.end_col, "missing characteristic"));
    };
    let p: u32 = int(pt)?;
    if args.len() == 1 {
        return Field::prime(p).map_err(|e| field_err(pt.col, e.to_string()));
    }
    let mt = &args[1];
    let m: u32 = int(mt)?;
    if m < 2 {
        return Err(syntax(l.number, mt.col, "prime fields are written `field <p>`"));
    }
    if args.len() != m as usize + 3 {
        let col = args.get(m as usize + 3).map_or(l.end_col, |t| t.col);
        return Err(syntax(l.number, col, format!("expected {} modulus coefficients", m + 1)));
    }
    let modulus = args[2..].iter().map(int::<u32>).collect::<Result<Vec<_>, _>>()?;
    Field::new(p, m, Some(&modulus)).map_err(|e| field_err(pt.col, e.to_string()))
}

fn parse_ring(l: &Line) -> Result<Ring, PmatError> {
    let args = keyword(l, "ring")?;
    let ring = match args.first().map(|t| t.text) {
        Some("poly") => Ring::Poly,
        Some("laurent") => Ring::Laurent,
        Some("rational") => Ring::Rational,
        Some(other) => {
            return Err(syntax(l.number, args[0].col, format!("unknown ring `{other}`")));
        }
        None => return Err(syntax(l.number, l.end_col, "missing ring name")),
    };
    if let Some(t) = args.get(1) {
        return Err(syntax(l.number, t.col, "unexpected token"));
    }
    Ok(ring)
}

fn parse_size(l: &Line) -> Result<(usize, usize), PmatError> {
    let args = keyword(l, "size")?;
    if args.len() != 2 {
        let col = args.get(2).map_or(l.end_col, |t| t.col);
        return Err(syntax(l.number, col, "expected `size <rows> <cols>`"));
    }
    Ok((int(&args[0])?, int(&args[1])?))
}

fn coeffs(f: &Field, ts: &[Token]) -> Result<Vec<u32>, PmatError> {
    ts.iter()
        .map(|t| {
            let c: u32 = int(t)?;
            if !f.contains(c) {
                return Err(PmatError::Field {
                    line: t.line,
                    col: t.col,
                    msg: format!("coefficient {c} is not an element of GF({})", f.order()),
                });
            }
            Ok(c)
        })
        .collect()
}

fn no_trailing_zero(l: &Line, ts: &[Token], c: &[u32]) -> Result<(), PmatError> {
    if c.last() == Some(&0) {
        return Err(syntax(l.number, ts[ts.len() - 1].col, "trailing zero coefficient"));
    }
    Ok(())
}

fn parse_poly(f: &Field, l: &Line) -> Result<Poly, PmatError> {
    let args = keyword(l, "p")?;
    let c = coeffs(f, args)?;
    no_trailing_zero(l, args, &c)?;
    Ok(Poly::new(f, c))
}

fn parse_laurent(f: &Field, l: &Line) -> Result<Laurent, PmatError> {
    let args = keyword(l, "l")?;
    let Some(lt) = args.first() else {
        return Err(syntax(l.number, l.end_col, "missing lowest exponent"));
    };
    let low: i64 = int(lt)?;
    let c = coeffs(f, &args[1..])?;
    if c.is_empty() {
        if low != 0 {
            return Err(syntax(l.number, lt.col, "zero is written `l 0`"));
        }
        return Ok(Laurent::zero(f));
    }
    if c[0] == 0 {
        return Err(syntax(l.number, args[1].col, "leading zero coefficient"));
    }
    no_trailing_zero(l, &args[1..], &c)?;
    Ok(Laurent::new(low, Poly::new(f, c)))
}

fn parse_rational(f: &Field, l: &Line) -> Result<RatFn, PmatError> {
    let args = keyword(l, "r")?;
    let Some(bar) = args.iter().position(|t| t.text == "|") else {
        return Err(syntax(l.number, l.end_col, "missing `|` between numerator and denominator"));
    };
    let (nt, dt) = (&args[..bar], &args[bar + 1..]);
    let num = coeffs(f, nt)?;
    let den = coeffs(f, dt)?;
    no_trailing_zero(l, nt, &num)?;
    no_trailing_zero(l, dt, &den)?;
    if den.is_empty() {
        return Err(syntax(l.number, args[bar].col, "zero denominator"));
    }
    let (num, den) = (Poly::new(f, num), Poly::new(f, den));
    let r = RatFn::new(num.clone(), den.clone());
    if r.num() != &num || r.den() != &den {
        return Err(syntax(l.number, args[0].col, format!("entry is not in lowest terms with monic denominator; write `{}`", rational_entry(&r))));
    }
    Ok(r)
}

/// Parses a matrix, accepting only the canonical form of each line.
pub fn parse_pmat(text: &str) -> Result<AnyMatrix, PmatError> {
    let ls = lines(text);
    let last = text.lines().count().max(1);
    let header = |i: usize, what: &str| -> Result<&Line, PmatError> {
        ls.get(i).ok_or_else(|| syntax(last, 1, format!("missing `{what}` line")))
    };
    let f = parse_field(header(0, "field")?)?;
    let ring = parse_ring(header(1, "ring")?)?;
    let (rows, cols) = parse_size(header(2, "size")?)?;
    let entries = &ls[3..];
    let want = rows.checked_mul(cols).ok_or_else(|| PmatError::Dimension("size overflows".into()))?;
    if entries.len() != want {
        return Err(PmatError::Dimension(format!(
            "size {rows} x {cols} needs {want} entries, found {}",
            entries.len()
        )));
    }
    Ok(match ring {
        Ring::Poly => {
            let v = entries.iter().map(|l| parse_poly(&f, l)).collect::<Result<Vec<_>, _>>()?;
            PolyMatrix::from_fn(&f, rows, cols, |i, j| v[i * cols + j].clone()).into()
        }
        Ring::Laurent => {
            let v = entries.iter().map(|l| parse_laurent(&f, l)).collect::<Result<Vec<_>, _>>()?;
            LaurentMatrix::from_fn(&f, rows, cols, |i, j| v[i * cols + j].clone()).into()
        }
        Ring::Rational => {
            let v = entries.iter().map(|l| parse_rational(&f, l)).collect::<Result<Vec<_>, _>>()?;
            RationalMatrix::from_fn(&f, rows, cols, |i, j| v[i * cols + j].clone()).into()
        }
    })
}

fn join(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn with_args(head: &str, args: String) -> String {
    if args.is_empty() {
        head.to_string()
    } else {
        format!("{head} {args}")
    }
}

fn rational_entry(r: &RatFn) -> String {
    let num = join(r.num().coeffs());
    let den = join(r.den().coeffs());
    let mut s = String::from("r");
    if !num.is_empty() {
        s.push(' ');
        s.push_str(&num);
    }
    s.push_str(" | ");
    s.push_str(&den);
    s
}

pub fn field_line(f: &Field) -> String {
    if f.degree() == 1 {
        format!("field {}", f.characteristic())
    } else {
        format!("field {} {} {}", f.characteristic(), f.degree(), join(f.modulus()))
    }
}

/// Canonical text of a matrix; [`parse_pmat`] inverts it exactly.
pub fn to_pmat(m: &AnyMatrix) -> String {
    let mut s = String::new();
    let (rows, cols) = m.shape();
    let ring = match m {
        AnyMatrix::Poly(_) => "poly",
        AnyMatrix::Laurent(_) => "laurent",
        AnyMatrix::Rational(_) => "rational",
    };
    writeln!(s, "{}\nring {ring}\nsize {rows} {cols}", field_line(m.field())).unwrap();
    match m {
        AnyMatrix::Poly(p) => {
            for e in p.entries() {
                writeln!(s, "{}", with_args("p", join(e.coeffs()))).unwrap();
            }
        }
        AnyMatrix::Laurent(l) => {
            for e in l.entries() {
                if e.is_zero() {
                    writeln!(s, "l 0").unwrap();
                } else {
                    writeln!(s, "l {} {}", e.low(), join(e.body().coeffs())).unwrap();
                }
            }
        }
        AnyMatrix::Rational(r) => {
            for e in r.entries() {
                writeln!(s, "{}", rational_entry(e)).unwrap();
            }
        }
    }
    s
}

pub fn poly_to_pmat(m: &PolyMatrix) -> String {
    to_pmat(&AnyMatrix::Poly(m.clone()))
}
