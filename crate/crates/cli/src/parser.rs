//! Expression parser for enveloping-algebra words.
//!
//! Grammar (whitespace between tokens is ignored; `*` between atoms is
//! optional):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := rational atom* | atom+
//! rational := INT ('/' INT)?
//! atom     := GEN ':' LABEL suffix?
//!           | 'binom' '(' H '-' INT ',' INT ')'
//!           | OP '{' multiset '}'            OP in X1 Xm1 H1 H2
//!           | OP '(' tuple ')'               OP in X2 X3 Xm2 Xm3
//!           | 'p1' '(' mset ',' mset ')'
//!           | 'q1' '(' mset ',' mset ')'
//!           | 'p'  '(' mset ',' mset ',' tuple ')'
//! suffix   := '^(' INT ')'    divided power g^r / r!
//!           | '^' INT         plain power
//! mset     := '{' (LABEL ':' INT (',' LABEL ':' INT)*)? '}'
//! tuple    := '(' (LABEL (',' LABEL)*)? ')'
//! ```
//!
//! Labels are resolved greedily against the algebra: `t^2` names the basis
//! element when the algebra has it, otherwise the `^2` is read as a power
//! suffix. A parenthesized exponent always means a divided power.

use std::fmt;

use sl21_core::algebra::{Algebra, BasisId};
use sl21_core::multiset::{Multiset, Tuple};
use sl21_core::operators::Operators;
use sl21_core::pbw::{divided_power, h_binomial, Generator, UElem};
use sl21_core::rational::{factorial, parse_rational, Rational};
use sl21_core::sl21::GenId;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Int(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    Ok(out)
}

/// Result of a parse: the element plus any warnings (e.g. odd generators
/// raised to powers, which vanish).
#[derive(Debug)]
pub struct Parsed {
    pub elem: UElem,
    pub warnings: Vec<String>,
}

pub fn parse_expr(src: &str, alg: &Algebra) -> Result<Parsed, ParseError> {
    let toks = lex(src)?;
    let ops = Operators::new(alg);
    let mut p = Parser {
        toks,
        pos: 0,
        alg,
        ops,
        warnings: Vec::new(),
    };
    let elem = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(Parsed {
        elem,
        warnings: p.warnings,
    })
}

/// Parse a standalone multiset literal like `{t:2, t^2:1}`.
pub fn parse_multiset(src: &str, alg: &Algebra) -> Result<Multiset, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        alg,
        ops: Operators::new(alg),
        warnings: Vec::new(),
    };
    let ms = p.multiset_literal()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(ms)
}

/// Parse a standalone tuple literal like `(t, t^2)`.
pub fn parse_tuple(src: &str, alg: &Algebra) -> Result<Tuple, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        alg,
        ops: Operators::new(alg),
        warnings: Vec::new(),
    };
    let t = p.tuple_literal()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alg: &'a Algebra,
    ops: Operators<'a>,
    warnings: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|s| &s.tok)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> ParseError {
        match self.toks.get(self.pos.min(self.toks.len().saturating_sub(1))) {
            Some(s) if self.pos < self.toks.len() => ParseError {
                line: s.line,
                col: s.col,
                msg: msg.to_string(),
            },
            Some(s) => ParseError {
                line: s.line,
                col: s.col + 1,
                msg: format!("{msg} (at end of input)"),
            },
            None => ParseError {
                line: 1,
                col: 1,
                msg: format!("{msg} (empty input)"),
            },
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<UElem, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<UElem, ParseError> {
        let mut coeff = Rational::from_integer(1.into());
        let mut have_rational = false;
        if let Some(Tok::Int(_)) = self.peek() {
            coeff = self.rational()?;
            have_rational = true;
        }
        let mut acc = UElem::scalar(coeff);
        let mut have_atom = false;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                continue;
            }
            if !self.atom_starts_here() {
                break;
            }
            let a = self.atom()?;
            acc = acc
                .mul(&a, self.alg)
                .map_err(|e| self.err_here(&e.to_string()))?;
            have_atom = true;
        }
        if !have_rational && !have_atom {
            return Err(self.err_here("expected a term"));
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let Some(Spanned { tok: Tok::Int(n), .. }) = self.next() else {
            return Err(self.err_here("expected a number"));
        };
        let mut text = n;
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Spanned { tok: Tok::Int(d), .. }) = self.next() else {
                return Err(self.err_here("expected a denominator"));
            };
            text = format!("{text}/{d}");
        }
        parse_rational(&text).map_err(|e| self.err_here(&e.to_string()))
    }

    fn atom_starts_here(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)))
    }

    fn atom(&mut self) -> Result<UElem, ParseError> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.err_here("expected an atom"));
        };
        // generator atom: gen ':' label
        if let Some(gen) = GenId::from_name(&name) {
            if self.peek2() == Some(&Tok::Colon) {
                self.pos += 2;
                let basis = self.label()?;
                return self.gen_with_suffix(Generator::new(gen, basis));
            }
        }
        match name.as_str() {
            "binom" => self.binom_call(),
            "X1" | "Xm1" | "H1" | "H2" => {
                self.pos += 1;
                let ms = self.multiset_literal()?;
                let result = match name.as_str() {
                    "X1" => self.ops.x1(&ms),
                    "Xm1" => self.ops.xm1(&ms),
                    "H1" => self.ops.h(GenId::H1, &ms),
                    _ => self.ops.h(GenId::H2, &ms),
                };
                result.map_err(|e| self.err_here(&e.to_string()))
            }
            "X2" | "X3" | "Xm2" | "Xm3" => {
                self.pos += 1;
                let xi = self.tuple_literal()?;
                let gen = match name.as_str() {
                    "X2" => GenId::X2,
                    "X3" => GenId::X3,
                    "Xm2" => GenId::Xm2,
                    _ => GenId::Xm3,
                };
                self.ops
                    .ordered_product(gen, &xi)
                    .map_err(|e| self.err_here(&e.to_string()))
            }
            "p1" | "q1" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                let a = self.multiset_literal()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.multiset_literal()?;
                self.expect(Tok::RParen, "')'")?;
                let result = if name == "p1" {
                    self.ops.p1(&a, &b)
                } else {
                    self.ops.q1(&a, &b)
                };
                result.map_err(|e| self.err_here(&e.to_string()))
            }
            "p" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                let a = self.multiset_literal()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.multiset_literal()?;
                self.expect(Tok::Comma, "','")?;
                let xi = self.tuple_literal()?;
                self.expect(Tok::RParen, "')'")?;
                self.ops
                    .p(&a, &b, &xi)
                    .map_err(|e| self.err_here(&e.to_string()))
            }
            other => Err(self.err_here(&format!(
                "unknown atom '{other}' (generators are lowercase x1..xm3, operator calls \
                 X1{{..}} Xm1{{..}} H1{{..}} H2{{..}} X2(..) X3(..) Xm2(..) Xm3(..) \
                 p1(..) q1(..) p(..))"
            ))),
        }
    }

    fn gen_with_suffix(&mut self, g: Generator) -> Result<UElem, ParseError> {
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            if self.peek() == Some(&Tok::LParen) {
                self.pos += 1;
                let r = self.small_int()?;
                self.expect(Tok::RParen, "')'")?;
                if g.parity() == 1 && r >= 2 {
                    self.warnings.push(format!(
                        "odd generator {}:{} with power {r} vanishes",
                        g.gen.name(),
                        self.alg.label(g.basis)
                    ));
                }
                return Ok(divided_power(g, r));
            }
            let r = self.small_int()?;
            if g.parity() == 1 && r >= 2 {
                self.warnings.push(format!(
                    "odd generator {}:{} with power {r} vanishes",
                    g.gen.name(),
                    self.alg.label(g.basis)
                ));
                return Ok(UElem::zero());
            }
            // plain power: divided power rescaled by r!
            return Ok(divided_power(g, r).scale(&Rational::from_integer(factorial(r))));
        }
        Ok(UElem::gen(g))
    }

    fn binom_call(&mut self) -> Result<UElem, ParseError> {
        self.pos += 1; // 'binom'
        self.expect(Tok::LParen, "'('")?;
        let Some(Spanned { tok: Tok::Ident(h), .. }) = self.next() else {
            return Err(self.err_here("expected h1 or h2"));
        };
        let h = match h.as_str() {
            "h1" => GenId::H1,
            "h2" => GenId::H2,
            _ => return Err(self.err_here("expected h1 or h2")),
        };
        let offset = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            self.small_int()? as i64
        } else {
            0
        };
        self.expect(Tok::Comma, "','")?;
        let j = self.small_int()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(h_binomial(h, offset, j))
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let Some(Spanned { tok: Tok::Int(n), .. }) = self.next() else {
            return Err(self.err_here("expected an integer"));
        };
        n.parse().map_err(|_| self.err_here("integer too large"))
    }

    /// A basis label, resolved greedily: `IDENT ^ INT` is preferred when the
    /// algebra knows the combined label, otherwise the caret is left for the
    /// caller. An INT token is a complete label on its own (the unit `1`).
    fn label(&mut self) -> Result<BasisId, ParseError> {
        match self.next() {
            Some(Spanned { tok: Tok::Int(n), line, col }) => {
                self.alg.parse_label(&n).ok_or(ParseError {
                    line,
                    col,
                    msg: format!("unknown basis label '{n}'"),
                })
            }
            Some(Spanned { tok: Tok::Ident(base), line, col }) => {
                if self.peek() == Some(&Tok::Caret) {
                    if let Some(Tok::Int(exp)) = self.peek2() {
                        let candidate = format!("{base}^{exp}");
                        if let Some(b) = self.alg.parse_label(&candidate) {
                            self.pos += 2;
                            return Ok(b);
                        }
                    }
                }
                self.alg.parse_label(&base).ok_or(ParseError {
                    line,
                    col,
                    msg: format!("unknown basis label '{base}'"),
                })
            }
            _ => Err(self.err_here("expected a basis label")),
        }
    }

    fn multiset_literal(&mut self) -> Result<Multiset, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut pairs: Vec<(BasisId, u32)> = Vec::new();
        if self.peek() == Some(&Tok::RBrace) {
            self.pos += 1;
            return Ok(Multiset::empty());
        }
        loop {
            let b = self.label()?;
            self.expect(Tok::Colon, "':'")?;
            let k = self.small_int()?;
            pairs.push((b, k));
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                }
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err_here("expected ',' or '}'")),
            }
        }
        Ok(Multiset::from_pairs(&pairs))
    }

    fn tuple_literal(&mut self) -> Result<Tuple, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = Tuple::new();
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.label()?);
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                }
                Some(Tok::RParen) => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err_here("expected ',' or ')'")),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sl21_core::rational::rat;

    fn b(i: usize) -> BasisId {
        BasisId(i)
    }

    #[test]
    fn simple_products() {
        let alg = Algebra::Poly;
        let got = parse_expr("x1:t * xm1:t", &alg).unwrap().elem;
        let direct = UElem::gen(Generator::new(GenId::X1, b(1)))
            .mul(&UElem::gen(Generator::new(GenId::Xm1, b(1))), &alg)
            .unwrap();
        assert_eq!(got, direct);
        // juxtaposition without '*'
        let got2 = parse_expr("x1:t xm1:t", &alg).unwrap().elem;
        assert_eq!(got2, direct);
    }

    #[test]
    fn divided_power_suffix() {
        let alg = Algebra::Poly;
        let got = parse_expr("xm1:1^(2)", &alg).unwrap().elem;
        assert_eq!(got, divided_power(Generator::new(GenId::Xm1, b(0)), 2));
        // plain power is r! times the divided power
        let got = parse_expr("xm1:1^2", &alg).unwrap().elem;
        assert_eq!(
            got,
            divided_power(Generator::new(GenId::Xm1, b(0)), 2)
                .scale(&Rational::from_integer(2.into()))
        );
    }

    #[test]
    fn label_greediness_depends_on_algebra() {
        // in poly, t^2 is a label
        let poly = Algebra::Poly;
        let got = parse_expr("xm1:t^2", &poly).unwrap().elem;
        assert_eq!(got, UElem::gen(Generator::new(GenId::Xm1, b(2))));
        // in trunc:2 there is no t^2, so ^2 is a power suffix
        let trunc = Algebra::Trunc(2);
        let got = parse_expr("xm1:t^2", &trunc).unwrap().elem;
        assert_eq!(
            got,
            divided_power(Generator::new(GenId::Xm1, b(1)), 2)
                .scale(&Rational::from_integer(2.into()))
        );
    }

    #[test]
    fn opcalls() {
        let alg = Algebra::Poly;
        let ops = Operators::new(&alg);
        let got = parse_expr("p1({},{t:1})", &alg).unwrap().elem;
        assert_eq!(
            got,
            ops.p1(&Multiset::empty(), &Multiset::single(b(1))).unwrap()
        );
        let got = parse_expr("p({t:1},{},())", &alg).unwrap().elem;
        assert_eq!(
            got,
            ops.p(&Multiset::single(b(1)), &Multiset::empty(), &vec![])
                .unwrap()
        );
        let got = parse_expr("Xm3(t, t^2)", &alg).unwrap().elem;
        assert_eq!(got, ops.xm3(&vec![b(1), b(2)]).unwrap());
        let got = parse_expr("H1{t:2}", &alg).unwrap().elem;
        assert_eq!(
            got,
            ops.h(GenId::H1, &Multiset::repeated(b(1), 2)).unwrap()
        );
    }

    #[test]
    fn sums_signs_and_rationals() {
        let alg = Algebra::Poly;
        let got = parse_expr("1/2 h1:1 - 2 h2:t + 3", &alg).unwrap().elem;
        let expect = UElem::gen(Generator::new(GenId::H1, b(0)))
            .scale(&rat(1, 2))
            .add(&UElem::gen(Generator::new(GenId::H2, b(1))).scale(&rat(-2, 1)))
            .add(&UElem::scalar(rat(3, 1)));
        assert_eq!(got, expect);
        assert_eq!(parse_expr("0", &alg).unwrap().elem, UElem::zero());
        let got = parse_expr("-h1:1", &alg).unwrap().elem;
        assert_eq!(got, UElem::gen(Generator::new(GenId::H1, b(0))).neg());
    }

    #[test]
    fn binom_atoms() {
        let alg = Algebra::Poly;
        let got = parse_expr("binom(h1 - 2, 2)", &alg).unwrap().elem;
        assert_eq!(got, h_binomial(GenId::H1, 2, 2));
        let got = parse_expr("binom(h2, 1)", &alg).unwrap().elem;
        assert_eq!(got, h_binomial(GenId::H2, 0, 1));
    }

    #[test]
    fn odd_powers_warn_and_vanish() {
        // in poly the greedy label wins: xm3:t^2 is the generator at t^2
        let poly = Algebra::Poly;
        let parsed = parse_expr("xm3:t^2", &poly).unwrap();
        assert_eq!(parsed.elem, UElem::gen(Generator::new(GenId::Xm3, b(2))));
        assert!(parsed.warnings.is_empty());
        // with no such label the caret is a power, and odd squares vanish
        let trunc = Algebra::Trunc(2);
        let parsed = parse_expr("xm3:t^2", &trunc).unwrap();
        assert!(parsed.elem.is_zero());
        assert_eq!(parsed.warnings.len(), 1);
        let parsed = parse_expr("xm3:1^(2)", &poly).unwrap();
        assert!(parsed.elem.is_zero());
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_position() {
        let alg = Algebra::Poly;
        let err = parse_expr("x1:t +", &alg).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.col >= 6, "{err}");
        let err = parse_expr("x1:zz", &alg).unwrap_err();
        assert!(err.msg.contains("unknown basis label"));
        let err = parse_expr("frob(1)", &alg).unwrap_err();
        assert!(err.msg.contains("unknown atom"));
        let err = parse_expr("x1:t^2", &Algebra::Table(table2())).unwrap_err();
        assert!(err.msg.contains("expected an integer") || err.msg.contains("unknown"), "{err}");
    }

    fn table2() -> sl21_core::algebra::ProductTable {
        let v = serde_json::json!({
            "dim": 2,
            "labels": ["1", "g"],
            "unit": 0,
            "products": [
                [ [[0, "1"]], [[1, "1"]] ],
                [ [[0, "1"]] ]
            ]
        });
        sl21_core::algebra::ProductTable::from_json(&v).unwrap()
    }

    #[test]
    fn multiset_and_tuple_literals() {
        let alg = Algebra::Poly;
        let ms = parse_multiset("{t:2, t^2:1}", &alg).unwrap();
        assert_eq!(ms, Multiset::from_pairs(&[(b(1), 2), (b(2), 1)]));
        assert_eq!(parse_multiset("{}", &alg).unwrap(), Multiset::empty());
        let t = parse_tuple("(t, t^2)", &alg).unwrap();
        assert_eq!(t, vec![b(1), b(2)]);
        assert_eq!(parse_tuple("()", &alg).unwrap(), Vec::<BasisId>::new());
    }

    #[test]
    fn render_round_trip_spot() {
        let alg = Algebra::Poly;
        let u = parse_expr("x1:1 * xm1:1", &alg).unwrap().elem;
        let printed = u.render(&alg);
        assert_eq!(printed, "xm1:1 x1:1 + h1:1");
        let back = parse_expr(&printed, &alg).unwrap().elem;
        assert_eq!(back, u);
    }
}
