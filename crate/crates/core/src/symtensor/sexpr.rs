//! Stable s-expression text form of [`SymExpr`].
//!
//! ```text
//! expr     := rational | "(" form ")"
//! rational := ["-"] digits ["/" digits]
//! form     := "c" rational rational          complex constant re + i·im
//!           | "x" index                      coordinate
//!           | "f" name fitem*                opaque field
//!           | "+" expr*  | "*" expr*         sum, product
//!           | "^" expr rational              power
//!           | "-" expr   | "/" expr          negation, reciprocal
//!           | "sin" expr | "cos" expr | "exp" expr
//! fitem    := "(on" index* ")"               coordinates the field depends on
//!           | "pos"                          declared positive
//!           | "(d" index* ")"                derivative, one index per ∂
//! ```
//!
//! Fields print their items in the order `on`, `pos`, `d`; the printer is
//! deterministic, so printing a normalized expression gives golden text.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use super::atom::{FieldSym, MAX_DIM};
use super::expr::{Node, SymExpr};
use super::SymError;
use crate::clifford::ExactComplex;

pub fn to_sexpr(e: &SymExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_expr(e: &SymExpr, out: &mut String) {
    match e.node() {
        Node::Const(c) => {
            if c.is_real() {
                out.push_str(&c.re.to_string());
            } else {
                out.push_str(&format!("(c {} {})", c.re, c.im));
            }
        }
        Node::Coord(i) => out.push_str(&format!("(x {i})")),
        Node::Field(f) => write_field(f, out),
        Node::Sum(ts) => write_list("+", ts, out),
        Node::Product(fs) => write_list("*", fs, out),
        Node::Power(b, p) => {
            out.push_str("(^ ");
            write_expr(b, out);
            out.push_str(&format!(" {p})"));
        }
        Node::Neg(a) => write_list("-", std::slice::from_ref(a), out),
        Node::Inv(a) => write_list("/", std::slice::from_ref(a), out),
        Node::Sin(a) => write_list("sin", std::slice::from_ref(a), out),
        Node::Cos(a) => write_list("cos", std::slice::from_ref(a), out),
        Node::Exp(a) => write_list("exp", std::slice::from_ref(a), out),
    }
}

fn write_list(head: &str, items: &[SymExpr], out: &mut String) {
    out.push('(');
    out.push_str(head);
    for it in items {
        out.push(' ');
        write_expr(it, out);
    }
    out.push(')');
}

fn write_field(f: &FieldSym, out: &mut String) {
    out.push_str("(f ");
    out.push_str(&f.name);
    out.push_str(" (on");
    for i in 0..MAX_DIM {
        if f.depends_on(i) {
            out.push_str(&format!(" {i}"));
        }
    }
    out.push(')');
    if f.positive {
        out.push_str(" pos");
    }
    if !f.is_underived() {
        out.push_str(" (d");
        for (i, &k) in f.deriv.iter().enumerate() {
            for _ in 0..k {
                out.push_str(&format!(" {i}"));
            }
        }
        out.push(')');
    }
    out.push(')');
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, toks: &mut Vec<Tok>| {
        if !word.is_empty() {
            toks.push(Tok::Word(std::mem::take(word)));
        }
    };
    for ch in s.chars() {
        match ch {
            '(' => {
                flush(&mut word, &mut toks);
                toks.push(Tok::Open);
            }
            ')' => {
                flush(&mut word, &mut toks);
                toks.push(Tok::Close);
            }
            c if c.is_whitespace() => flush(&mut word, &mut toks),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut toks);
    toks
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> SymError {
        SymError::Parse(format!("{msg} at token {}", self.pos))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn word(&mut self) -> Result<String, SymError> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => Err(self.err("expected a word")),
        }
    }

    fn close(&mut self) -> Result<(), SymError> {
        match self.next() {
            Some(Tok::Close) => Ok(()),
            _ => Err(self.err("expected ')'")),
        }
    }

    fn index(&mut self) -> Result<usize, SymError> {
        let w = self.word()?;
        let i: usize = w.parse().map_err(|_| self.err("expected an index"))?;
        if i >= MAX_DIM {
            return Err(self.err("index out of range"));
        }
        Ok(i)
    }

    fn indices_until_close(&mut self) -> Result<Vec<usize>, SymError> {
        let mut v = Vec::new();
        while !matches!(self.peek(), Some(Tok::Close)) {
            v.push(self.index()?);
        }
        self.close()?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<SymExpr, SymError> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(SymExpr::constant(ExactComplex::real(parse_rational(&w).ok_or_else(|| self.err("bad number"))?))),
            Some(Tok::Open) => {
                let head = self.word()?;
                let e = match head.as_str() {
                    "c" => {
                        let re = parse_rational(&self.word()?).ok_or_else(|| self.err("bad number"))?;
                        let im = parse_rational(&self.word()?).ok_or_else(|| self.err("bad number"))?;
                        self.close()?;
                        return Ok(SymExpr::constant(ExactComplex::new(re, im)));
                    }
                    "x" => {
                        let i = self.index()?;
                        self.close()?;
                        return Ok(SymExpr::coord(i));
                    }
                    "f" => return self.field(),
                    "^" => {
                        let b = self.expr()?;
                        let p = parse_rational64(&self.word()?).ok_or_else(|| self.err("bad exponent"))?;
                        self.close()?;
                        return Ok(b.pow(p));
                    }
                    "+" | "*" => {
                        let mut items = Vec::new();
                        while !matches!(self.peek(), Some(Tok::Close)) {
                            items.push(self.expr()?);
                        }
                        self.close()?;
                        return Ok(if head == "+" { SymExpr::sum(items) } else { SymExpr::product(items) });
                    }
                    "-" => -self.expr()?,
                    "/" => self.expr()?.inv(),
                    "sin" => self.expr()?.sin(),
                    "cos" => self.expr()?.cos(),
                    "exp" => self.expr()?.exp(),
                    _ => return Err(self.err(&format!("unknown head {head:?}"))),
                };
                self.close()?;
                Ok(e)
            }
            _ => Err(self.err("unexpected token")),
        }
    }

    fn field(&mut self) -> Result<SymExpr, SymError> {
        let name = self.word()?;
        if !name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return Err(self.err("bad field name"));
        }
        let mut f = FieldSym::new(&name, 0);
        let mut deriv = [0u8; MAX_DIM];
        loop {
            match self.next() {
                Some(Tok::Close) => break,
                Some(Tok::Word(w)) if w == "pos" => f.positive = true,
                Some(Tok::Open) => match self.word()?.as_str() {
                    "on" => f = f.depending_on(&self.indices_until_close()?),
                    "d" => {
                        for i in self.indices_until_close()? {
                            deriv[i] += 1;
                        }
                    }
                    _ => return Err(self.err("unknown field item")),
                },
                _ => return Err(self.err("unexpected field item")),
            }
        }
        Ok(SymExpr::field(f.with_deriv(deriv)))
    }
}

fn parse_rational(w: &str) -> Option<BigRational> {
    let (n, d) = match w.split_once('/') {
        Some((n, d)) => (n, d),
        None => (w, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

fn parse_rational64(w: &str) -> Option<Rational64> {
    let (n, d) = match w.split_once('/') {
        Some((n, d)) => (n.parse().ok()?, d.parse().ok()?),
        None => (w.parse().ok()?, 1i64),
    };
    (d != 0).then(|| Rational64::new(n, d))
}

pub fn parse_sexpr(s: &str) -> Result<SymExpr, SymError> {
    let mut p = Parser { toks: tokenize(s), pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn leaf() -> impl Strategy<Value = SymExpr> {
        prop_oneof![
            (-9i64..10, 1i64..5).prop_map(|(n, d)| SymExpr::rational(n, d)),
            (0usize..3).prop_map(SymExpr::coord),
            (0usize..3).prop_map(|i| SymExpr::field(FieldSym::new("w", 3).positive().with_deriv({
                let mut d = [0u8; MAX_DIM];
                d[i] = (i % 2) as u8;
                d
            }))),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = SymExpr> {
        leaf().prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..3).prop_map(SymExpr::sum),
                proptest::collection::vec(inner.clone(), 1..3).prop_map(SymExpr::product),
                inner.clone().prop_map(|e| -e),
                (inner.clone(), -2i64..3).prop_map(|(e, k)| e.powi(k)),
                inner.prop_map(|e| (SymExpr::int(2) * e).sin()),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = to_sexpr(&e);
            prop_assert_eq!(parse_sexpr(&text).unwrap(), e);
        }

        #[test]
        fn normalize_idempotent(e in arb_expr()) {
            if let Ok(n) = e.normalize() {
                prop_assert_eq!(n.normalize().unwrap(), n.clone());
                // the canonical text parses back to the same canonical form
                prop_assert_eq!(parse_sexpr(&to_sexpr(&n)).unwrap().normalize().unwrap(), n);
            }
        }
    }

    #[test]
    fn field_text() {
        let f = FieldSym::new("psi", 5).positive().derivative(2).unwrap();
        let s = to_sexpr(&SymExpr::field(f.clone()));
        assert_eq!(s, "(f psi (on 0 1 2 3 4) (d 2))");
        assert_eq!(parse_sexpr(&s).unwrap(), SymExpr::field(f));
    }

    #[test]
    fn complex_constant() {
        let e = parse_sexpr("(* (c 0 3/2) (x 1))").unwrap();
        assert_eq!(to_sexpr(&e), "(* (c 0 3/2) (x 1))");
    }

    #[test]
    fn errors() {
        for bad in ["(", "(x 9)", "(q 1)", "(^ (x 0) a)", "1/0", "(x 0) 2", "(f 1x)"] {
            assert!(parse_sexpr(bad).is_err(), "{bad}");
        }
    }
}
