//! Bundle expressions and their text grammar.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'S' | 'Sv' | 'Q' | 'Qv' | 'O' | 'trivial' '(' int ')'
//!         | 'sym' int '(' expr ')' | 'dual' '(' expr ')'
//!         | 'schur' '[' int (',' int)* ']' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `⊕`/`⊗` are accepted for `+`/`*`, and `S^∨`/`Q^∨` for `Sv`/`Qv`.
//! Whitespace is insignificant.

use std::fmt;
use std::str::FromStr;

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::weights::{binomial, weyl_dimension, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// Universal subbundle.
    S,
    /// Its dual.
    Sv,
    /// Universal quotient bundle.
    Q,
    Qv,
    /// Trivial bundle of the given rank.
    Trivial(u32),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    Schur(Partition, Box<BundleExpr>),
}

impl BundleExpr {
    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sym(k: u32, a: BundleExpr) -> Self {
        BundleExpr::Sym(k, Box::new(a))
    }

    pub fn dual(a: BundleExpr) -> Self {
        BundleExpr::Dual(Box::new(a))
    }

    pub fn schur(lambda: Partition, a: BundleExpr) -> Self {
        BundleExpr::Schur(lambda, Box::new(a))
    }

    /// `a ⊕ a ⊕ ... ⊕ a` with `m >= 1` copies.
    pub fn copies(a: BundleExpr, m: usize) -> Self {
        assert!(m >= 1);
        let mut acc = a.clone();
        for _ in 1..m {
            acc = BundleExpr::sum(acc, a.clone());
        }
        acc
    }

    /// Tangent bundle `S^∨ ⊗ Q`.
    pub fn tangent() -> Self {
        BundleExpr::tensor(BundleExpr::Sv, BundleExpr::Q)
    }

    /// `O(d) = (det S^∨)^d` for a given `r`.
    pub fn line(r: usize, d: i64) -> Self {
        let base = if d >= 0 { BundleExpr::Sv } else { BundleExpr::S };
        let det = BundleExpr::schur(Partition::column(r), base);
        match d.unsigned_abs() {
            0 => BundleExpr::Trivial(1),
            1 => det,
            k => BundleExpr::schur(Partition::row(k as u32), det),
        }
    }

    /// Rejects zero-rank trivial bundles.
    pub fn validate(&self) -> Result<()> {
        match self {
            BundleExpr::Trivial(0) => Err(Error::MalformedExpr("trivial bundle of rank 0".into())),
            BundleExpr::S | BundleExpr::Sv | BundleExpr::Q | BundleExpr::Qv | BundleExpr::Trivial(_) => Ok(()),
            BundleExpr::Sum(a, b) | BundleExpr::Tensor(a, b) => {
                a.validate()?;
                b.validate()
            }
            BundleExpr::Sym(_, a) | BundleExpr::Dual(a) | BundleExpr::Schur(_, a) => a.validate(),
        }
    }

    /// Rank computed structurally from the tree, without decomposing.
    pub fn rank(&self, ambient: Ambient) -> u64 {
        match self {
            BundleExpr::S | BundleExpr::Sv => ambient.r() as u64,
            BundleExpr::Q | BundleExpr::Qv => ambient.corank() as u64,
            BundleExpr::Trivial(m) => *m as u64,
            BundleExpr::Sum(a, b) => a.rank(ambient) + b.rank(ambient),
            BundleExpr::Tensor(a, b) => a.rank(ambient) * b.rank(ambient),
            BundleExpr::Dual(a) => a.rank(ambient),
            BundleExpr::Sym(k, a) => {
                let e = a.rank(ambient);
                if e == 0 {
                    return u64::from(*k == 0);
                }
                binomial(e + *k as u64 - 1, *k as u64)
            }
            BundleExpr::Schur(lambda, a) => {
                let e = a.rank(ambient) as usize;
                if lambda.len() > e {
                    return 0;
                }
                weyl_dimension(&lambda.to_weight(e).unwrap(), e).unwrap()
            }
        }
    }

    /// Number of nodes, used to bound random test expressions.
    pub fn size(&self) -> usize {
        match self {
            BundleExpr::Sum(a, b) | BundleExpr::Tensor(a, b) => 1 + a.size() + b.size(),
            BundleExpr::Sym(_, a) | BundleExpr::Dual(a) | BundleExpr::Schur(_, a) => 1 + a.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::S => write!(f, "S"),
            BundleExpr::Sv => write!(f, "Sv"),
            BundleExpr::Q => write!(f, "Q"),
            BundleExpr::Qv => write!(f, "Qv"),
            BundleExpr::Trivial(1) => write!(f, "O"),
            BundleExpr::Trivial(m) => write!(f, "trivial({m})"),
            BundleExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            BundleExpr::Tensor(a, b) => write!(f, "({a} * {b})"),
            BundleExpr::Sym(k, a) => write!(f, "sym {k}({a})"),
            BundleExpr::Dual(a) => write!(f, "dual({a})"),
            BundleExpr::Schur(l, a) => write!(f, "schur [{l}]({a})"),
        }
    }
}

impl FromStr for BundleExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        e.validate()?;
        Ok(e)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Self {
        Parser {
            chars: s.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('+') | Some('⊕')) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = BundleExpr::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BundleExpr> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some('*') | Some('⊗')) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = BundleExpr::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer out of range"))
    }

    /// Consumes an optional `^∨` or `∨` dual marker.
    fn dual_marker(&mut self) -> bool {
        let rest: String = self.chars[self.pos..].iter().take(2).collect();
        if rest.starts_with("^∨") {
            self.pos += 2;
            true
        } else if rest.starts_with('∨') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn factor(&mut self) -> Result<BundleExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            None => return Err(self.error("unexpected end of input")),
            _ => {}
        }
        let start = self.pos;
        let id = self.ident();
        match id.as_str() {
            "S" => Ok(if self.dual_marker() { BundleExpr::Sv } else { BundleExpr::S }),
            "Q" => Ok(if self.dual_marker() { BundleExpr::Qv } else { BundleExpr::Q }),
            "Sv" => Ok(BundleExpr::Sv),
            "Qv" => Ok(BundleExpr::Qv),
            "O" => Ok(BundleExpr::Trivial(1)),
            "trivial" => {
                self.expect('(')?;
                let m = self.int()?;
                self.expect(')')?;
                Ok(BundleExpr::Trivial(m))
            }
            "sym" => {
                let k = self.int()?;
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(BundleExpr::sym(k, e))
            }
            "dual" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(BundleExpr::dual(e))
            }
            "schur" => {
                self.expect('[')?;
                let mut parts = vec![self.int()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.int()?);
                }
                self.expect(']')?;
                let lambda = Partition::new(parts).map_err(|e| Error::Parse {
                    offset: self.pos,
                    msg: e.to_string(),
                })?;
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(BundleExpr::schur(lambda, e))
            }
            "" => Err(self.error("expected a bundle")),
            other => {
                self.pos = start;
                Err(self.error(&format!("unknown identifier {other:?}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let e: BundleExpr = "sym 2(Sv + Sv) * dual(Q) + schur[2,1](S) + O".parse().unwrap();
        let expected = BundleExpr::sum(
            BundleExpr::sum(
                BundleExpr::tensor(
                    BundleExpr::sym(2, BundleExpr::sum(BundleExpr::Sv, BundleExpr::Sv)),
                    BundleExpr::dual(BundleExpr::Q),
                ),
                BundleExpr::schur(Partition::new(vec![2, 1]).unwrap(), BundleExpr::S),
            ),
            BundleExpr::Trivial(1),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn unicode_aliases() {
        let a: BundleExpr = "S⊗S".parse().unwrap();
        assert_eq!(a, BundleExpr::tensor(BundleExpr::S, BundleExpr::S));
        let b: BundleExpr = "S^∨ ⊕ Q∨".parse().unwrap();
        assert_eq!(b, BundleExpr::sum(BundleExpr::Sv, BundleExpr::Qv));
    }

    #[test]
    fn display_round_trips() {
        for s in ["S * Sv + trivial(3)", "schur [2,1](dual(Q + Sv))", "sym 3(S) * O"] {
            let e: BundleExpr = s.parse().unwrap();
            let again: BundleExpr = e.to_string().parse().unwrap();
            assert_eq!(e, again);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!("S +".parse::<BundleExpr>().is_err());
        assert!("Foo".parse::<BundleExpr>().is_err());
        assert!("sym (S)".parse::<BundleExpr>().is_err());
        assert!("trivial(0)".parse::<BundleExpr>().is_err());
        assert!("schur[1,2](S)".parse::<BundleExpr>().is_err());
        assert!("(S".parse::<BundleExpr>().is_err());
    }

    #[test]
    fn structural_rank() {
        let a = Ambient::new(2, 4).unwrap();
        assert_eq!(BundleExpr::tangent().rank(a), 4);
        let e: BundleExpr = "sym 2(Sv + Sv)".parse().unwrap();
        assert_eq!(e.rank(a), 10);
        let e: BundleExpr = "schur[1,1,1](Sv)".parse().unwrap();
        assert_eq!(e.rank(a), 0);
    }
}
