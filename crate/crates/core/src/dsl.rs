//! Text syntax for scalars, Weil-Deligne representations, matrices and lists.
//! The grammar is documented in docs/dsl.md; every `render` output parses back
//! to the same value.

use crate::algebra::{Coef, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::wd::{DualDecl, InertialAtom, SpehBlock, WDRep, UNR};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if "()[],;+-*/^=".contains(c) {
            out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Parse { line: l0, col: c0, expected: "a token".into(), found: format!("`{c}`") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

const RESERVED: &[&str] = &["q", "x", "zeta", "unr", "tau", "Sp", "T"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Parse { line: s.line, col: s.col, expected: expected.into(), found: s.tok.describe() })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(i) if i == s)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("`{c}`"))
        }
    }

    fn expect_ident(&mut self, s: &str) -> Result<()> {
        if self.is_ident(s) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("`{s}`"))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("end of input")
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err("an integer"),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        if self.is_sym('-') {
            self.bump();
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn small<T: TryFrom<i64>>(&mut self, signed: bool) -> Result<T> {
        let pos = self.pos;
        let n = if signed { self.signed_int()? } else { self.int()? };
        match n.to_i64().and_then(|v| T::try_from(v).ok()) {
            Some(v) => Ok(v),
            None => {
                self.pos = pos;
                self.err("a small integer")
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("an identifier"),
        }
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Coef> {
        let mut acc = if self.is_sym('-') {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = acc.add(&self.term()?);
            } else if self.is_sym('-') {
                self.bump();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power (('*' | '/') power)*
    fn term(&mut self) -> Result<Coef> {
        let mut acc = self.power()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                acc = acc.mul(&self.power()?);
            } else if self.is_sym('/') {
                self.bump();
                let pos = self.pos;
                let d = self.power()?;
                if d.is_zero() {
                    self.pos = pos;
                    return self.err("a nonzero divisor");
                }
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    fn exponent(&mut self) -> Result<BigRational> {
        if self.is_sym('(') {
            self.bump();
            let n = self.signed_int()?;
            let d = if self.is_sym('/') {
                self.bump();
                let pos = self.pos;
                let d = self.int()?;
                if d.is_zero() {
                    self.pos = pos;
                    return self.err("a nonzero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            self.expect_sym(')')?;
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(self.signed_int()?))
        }
    }

    // power := primary ['^' exponent]
    fn power(&mut self) -> Result<Coef> {
        let is_q = self.is_ident("q");
        let base = self.primary()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos;
        let e = self.exponent()?;
        let bad = |p: &mut Parser, what: &str| {
            p.pos = pos;
            p.err::<Coef>(what)
        };
        if e.is_integer() {
            let Some(k) = e.to_integer().to_i64() else {
                return bad(self, "a small exponent");
            };
            if base.is_zero() && k < 0 {
                return bad(self, "a nonnegative exponent of zero");
            }
            return base.pow(k);
        }
        if !is_q || *e.denom() != BigInt::from(2) {
            return bad(self, "an integer exponent (only q takes half-integers)");
        }
        let k = e.numer().to_i64().unwrap_or(0);
        Ok(Scalar::q_half_pow(k).to_coef())
    }

    // primary := INT | 'q' | 'x' | 'zeta' '(' INT ',' INT ')' | IDENT | '(' expr ')'
    fn primary(&mut self) -> Result<Coef> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Coef::from(BigRational::from_integer(n)))
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(s) => match s.as_str() {
                "q" => {
                    self.bump();
                    Ok(Coef::from(crate::algebra::q_rat()))
                }
                "x" => {
                    self.bump();
                    Ok(Coef::x())
                }
                "zeta" => {
                    self.bump();
                    self.expect_sym('(')?;
                    let a: i64 = self.small(true)?;
                    self.expect_sym(',')?;
                    let pos = self.pos;
                    let n: u32 = self.small(false)?;
                    if n == 0 {
                        self.pos = pos;
                        return self.err("a positive root order");
                    }
                    self.expect_sym(')')?;
                    Ok(Coef::root(a, n))
                }
                _ if RESERVED.contains(&s.as_str()) => self.err("a scalar"),
                _ => {
                    self.bump();
                    Ok(Coef::opaque(&s))
                }
            },
            _ => self.err("a scalar"),
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let pos = self.pos;
        let c = self.expr()?;
        Scalar::from_coef(&c).or_else(|_| {
            self.pos = pos;
            self.err("a nonzero monomial scalar")
        })
    }

    // atom := 'tau' '(' IDENT (',' key '=' value)* ')'
    fn tau(&mut self) -> Result<InertialAtom> {
        let start = self.pos;
        self.expect_ident("tau")?;
        self.expect_sym('(')?;
        let label = self.ident()?;
        let (mut dim, mut f, mut cond, mut w) = (1usize, 1u32, 1u32, 0i64);
        let mut eps = None;
        let mut dual = DualDecl::Undeclared;
        while self.is_sym(',') {
            self.bump();
            let key = self.ident()?;
            self.expect_sym('=')?;
            match key.as_str() {
                "dim" => dim = self.small(false)?,
                "f" => f = self.small(false)?,
                "cond" => cond = self.small(false)?,
                "w" => w = self.small(true)?,
                "eps" => eps = Some(self.scalar()?),
                "dual" => {
                    let d = self.ident()?;
                    dual = if d == "self" { DualDecl::SelfDual } else { DualDecl::Label(d) };
                }
                _ => {
                    self.pos -= 2;
                    return self.err("one of dim, f, cond, w, eps, dual");
                }
            }
        }
        self.expect_sym(')')?;
        InertialAtom::tau(&label, dim, f, cond, w, eps, dual).map_err(|e| {
            let s = &self.toks[start];
            Error::Parse { line: s.line, col: s.col, expected: "a valid atom".into(), found: e.to_string() }
        })
    }

    fn unr_factor(&mut self) -> Result<Scalar> {
        self.expect_ident(UNR)?;
        self.expect_sym('(')?;
        let a = self.scalar()?;
        self.expect_sym(')')?;
        Ok(a)
    }

    // inducing := 'unr' '(' scalar ')' | atom ['*' 'unr' '(' scalar ')']
    fn inducing(&mut self) -> Result<(InertialAtom, Scalar)> {
        if self.is_ident(UNR) {
            return Ok((InertialAtom::unramified(), self.unr_factor()?));
        }
        if self.is_ident("tau") {
            let atom = self.tau()?;
            let alpha = if self.is_sym('*') {
                self.bump();
                self.unr_factor()?
            } else {
                Scalar::one()
            };
            return Ok((atom, alpha));
        }
        self.err("`unr` or `tau`")
    }

    // block := 'Sp' '(' inducing ',' INT ')' | inducing
    fn block(&mut self) -> Result<SpehBlock> {
        let start = self.pos;
        let (atom, alpha, m) = if self.is_ident("Sp") {
            self.bump();
            self.expect_sym('(')?;
            let (atom, alpha) = self.inducing()?;
            self.expect_sym(',')?;
            let pos = self.pos;
            let m: usize = self.small(false)?;
            if m == 0 {
                self.pos = pos;
                return self.err("a positive block length");
            }
            self.expect_sym(')')?;
            (atom, alpha, m)
        } else {
            let (atom, alpha) = self.inducing()?;
            (atom, alpha, 1)
        };
        SpehBlock::new(atom, alpha, m).map_err(|e| {
            let s = &self.toks[start];
            Error::Parse { line: s.line, col: s.col, expected: "a valid block".into(), found: e.to_string() }
        })
    }

    // rep := '0' | block ('+' block)*
    fn rep(&mut self) -> Result<WDRep> {
        if *self.peek() == Tok::Int(BigInt::zero()) {
            self.bump();
            return Ok(WDRep::zero());
        }
        let start = self.pos;
        let mut blocks = vec![self.block()?];
        while self.is_sym('+') {
            self.bump();
            blocks.push(self.block()?);
        }
        WDRep::new(blocks).map_err(|e| {
            let s = &self.toks[start];
            Error::Parse { line: s.line, col: s.col, expected: "consistent atom data".into(), found: e.to_string() }
        })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.is_sym(',') {
            self.bump();
            out.push(item(self)?);
        }
        Ok(out)
    }

    // matrix := '[' row (',' row)* ']' ; row := '[' expr (',' expr)* ']'
    fn matrix(&mut self) -> Result<Matrix> {
        let start = self.pos;
        self.expect_sym('[')?;
        let rows = self.list(|p| {
            p.expect_sym('[')?;
            let r = p.list(Parser::expr)?;
            p.expect_sym(']')?;
            Ok(r)
        })?;
        self.expect_sym(']')?;
        Matrix::from_rows(rows).map_err(|e| {
            let s = &self.toks[start];
            Error::Parse { line: s.line, col: s.col, expected: "a rectangular matrix".into(), found: e.to_string() }
        })
    }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src)?;
    let v = f(&mut p)?;
    p.expect_end()?;
    Ok(v)
}

pub fn parse_coef(src: &str) -> Result<Coef> {
    whole(src, Parser::expr)
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    whole(src, Parser::scalar)
}

pub fn parse_rational(src: &str) -> Result<BigRational> {
    let mut p = Parser::new(src)?;
    let c = p.expr()?;
    p.expect_end()?;
    match c.as_rational() {
        Some(r) => Ok(r.clone()),
        None => {
            p.pos = 0;
            p.err("a rational number")
        }
    }
}

pub fn parse_rep(src: &str) -> Result<WDRep> {
    whole(src, Parser::rep)
}

pub fn parse_atom(src: &str) -> Result<InertialAtom> {
    whole(src, Parser::tau)
}

pub fn parse_matrix(src: &str) -> Result<Matrix> {
    whole(src, Parser::matrix)
}

/// Comma-separated scalars, e.g. `2, 3, q^-1`.
pub fn parse_scalar_list(src: &str) -> Result<Vec<Scalar>> {
    whole(src, |p| p.list(Parser::scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::q_pow(-1));
        assert_eq!(parse_scalar("1/3").unwrap(), Scalar::q_pow(-1));
        assert_eq!(parse_scalar("q^(1/2)").unwrap(), Scalar::q_half_pow(1));
        let s = Scalar::q_half_pow(-1).mul(&Scalar::rational(rat(2, 5)).unwrap()).mul_root(1, 3);
        assert_eq!(parse_scalar(&s.render()).unwrap(), s);
        assert_eq!(parse_scalar("-eps_a^2").unwrap(), Scalar::opaque("eps_a").pow(2).mul_root(1, 2));
        let fx = parse_scalar("(x + 2)/(x^2 + 1)").unwrap();
        assert!(fx.depends_on_x());
        assert_eq!(parse_scalar(&fx.render()).unwrap(), fx);
    }

    #[test]
    fn scalar_errors() {
        let Err(Error::Parse { line, col, .. }) = parse_scalar("2 +\n  *3") else { panic!() };
        assert_eq!((line, col), (2, 3));
        assert!(matches!(parse_scalar("1 + q^(1/2)"), Err(Error::Parse { col: 1, .. })));
        assert!(parse_scalar("0").is_err());
        assert!(parse_scalar("2^(1/2)").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("2 $").is_err());
    }

    #[test]
    fn reps() {
        let r = parse_rep("Sp(unr(1), 2) + unr(q^-1)").unwrap();
        assert_eq!(r.rank(), 3);
        assert_eq!(parse_rep(&r.render()).unwrap(), r);
        let t = parse_rep("Sp(tau(a, dim=2, f=2, cond=3, w=1, dual=b)*unr(zeta(1,4)), 2)").unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(parse_rep(&t.render()).unwrap(), t);
        let e = parse_rep("tau(s, eps=-1, dual=self)").unwrap();
        assert_eq!(e.blocks()[0].atom.eps, Scalar::int(-1).unwrap());
        assert_eq!(parse_rep(&e.render()).unwrap(), e);
        assert_eq!(parse_rep("0").unwrap(), WDRep::zero());
        assert_eq!(parse_rep(&WDRep::zero().render()).unwrap(), WDRep::zero());
    }

    #[test]
    fn rep_errors() {
        assert!(matches!(parse_rep("Sp(unr(1), 0)"), Err(Error::Parse { col: 12, .. })));
        assert!(matches!(parse_rep("Sp(unr(1) 2)"), Err(Error::Parse { col: 11, .. })));
        assert!(parse_rep("tau(a, cond=0)").is_err());
        assert!(parse_rep("tau(a, dim=1) + tau(a, dim=2)").is_err());
        assert!(parse_rep("tau(a, colour=1)").is_err());
    }

    #[test]
    fn matrices_and_lists() {
        let m = parse_matrix("[[0, x], [0, 0]]").unwrap();
        assert_eq!(m.get(0, 1), &Coef::x());
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert_eq!(parse_scalar_list("2, 3").unwrap().len(), 2);
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert!(parse_rational("x").is_err());
    }
}
