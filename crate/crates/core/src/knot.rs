//! Torus knots and formal connected sums of them, with the text grammar
//!
//! ```text
//! expr := term ('#' term)*
//! term := ['-'] [int '*'] 'T(' int ',' int ')'
//! ```
//!
//! where `-` denotes the mirror image. Whitespace is ignored.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// `T(p, q)` with `p < q` coprime, possibly mirrored. `p = 1` is the unknot,
/// stored as `T(1,1)` and never mirrored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusKnot {
    p: u64,
    q: u64,
    mirrored: bool,
}

impl TorusKnot {
    pub fn new(p: u64, q: u64, mirrored: bool) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Semantic(format!("T({p},{q}): parameters must be positive")));
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(Error::Semantic(format!(
                "T({p},{q}) is not a knot: gcd({p},{q}) = {g}"
            )));
        }
        let (p, q) = (p.min(q), p.max(q));
        if p == 1 {
            return Ok(Self::unknot());
        }
        Ok(TorusKnot { p, q, mirrored })
    }

    pub fn positive(p: u64, q: u64) -> Result<Self> {
        Self::new(p, q, false)
    }

    pub fn unknot() -> Self {
        TorusKnot { p: 1, q: 1, mirrored: false }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    pub fn mirror(&self) -> Self {
        if self.is_unknot() {
            *self
        } else {
            TorusKnot { mirrored: !self.mirrored, ..*self }
        }
    }

    /// `(p − 1)(q − 1) / 2`, the slice genus of the unmirrored knot.
    pub fn genus(&self) -> u64 {
        (self.p - 1) * (self.q - 1) / 2
    }

    /// τ: the genus, negated for mirrors.
    pub fn tau(&self) -> Rational {
        let g = int(self.genus() as i64);
        if self.mirrored {
            -g
        } else {
            g
        }
    }

    /// Slice genus; only available for unmirrored knots.
    pub fn g4(&self) -> Result<Rational> {
        if self.mirrored {
            return Err(Error::Unsupported(format!("g4 of the mirror {self} is not computed")));
        }
        Ok(int(self.genus() as i64))
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            write!(f, "-")?;
        }
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// A formal connected sum `k_1·K_1 # k_2·K_2 # …`; empty means the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KnotExpr {
    summands: Vec<(TorusKnot, u64)>,
}

impl KnotExpr {
    /// Unknot summands and zero multiplicities are dropped.
    pub fn new(summands: Vec<(TorusKnot, u64)>) -> Self {
        KnotExpr { summands: summands.into_iter().filter(|(k, m)| !k.is_unknot() && *m > 0).collect() }
    }

    pub fn unknot() -> Self {
        KnotExpr::default()
    }

    pub fn single(knot: TorusKnot) -> Self {
        KnotExpr::new(vec![(knot, 1)])
    }

    pub fn summands(&self) -> &[(TorusKnot, u64)] {
        &self.summands
    }

    pub fn is_unknot(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn has_mirrors(&self) -> bool {
        self.summands.iter().any(|(k, _)| k.is_mirrored())
    }

    pub fn mirror(&self) -> Self {
        KnotExpr { summands: self.summands.iter().map(|(k, m)| (k.mirror(), *m)).collect() }
    }

    pub fn connect(&self, other: &KnotExpr) -> Self {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        KnotExpr { summands }
    }

    /// τ is additive and odd under mirroring.
    pub fn tau(&self) -> Rational {
        self.summands.iter().map(|(k, m)| k.tau() * int(*m as i64)).sum()
    }

    /// Slice genus of a sum of unmirrored torus knots (where it equals τ).
    pub fn g4(&self) -> Result<Rational> {
        if self.has_mirrors() {
            return Err(Error::Unsupported(format!(
                "g4 of `{self}` is not computed: it contains mirrored summands"
            )));
        }
        Ok(self.tau())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser { text: text.as_bytes(), pos: 0 }.expr()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "{}", TorusKnot::unknot());
        }
        for (idx, (k, m)) in self.summands.iter().enumerate() {
            if idx > 0 {
                write!(f, " # ")?;
            }
            if k.is_mirrored() {
                write!(f, "-")?;
            }
            if *m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "T({},{})", k.p(), k.q())?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(Error::parse(self.pos, format!("expected `{}`, found `{}`", c as char, x as char))),
            None => Err(Error::parse(self.pos, format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "integer too large"))
    }

    fn term(&mut self) -> Result<(TorusKnot, u64)> {
        let mirrored = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut multiplicity = 1;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let at = self.pos;
            multiplicity = self.integer()?;
            if multiplicity == 0 {
                return Err(Error::Semantic(format!("multiplicity at position {at} must be positive")));
            }
            self.expect(b'*')?;
        }
        self.expect(b'T')?;
        self.expect(b'(')?;
        let at = self.pos;
        let p = self.integer()?;
        self.expect(b',')?;
        let q = self.integer()?;
        self.expect(b')')?;
        let knot = TorusKnot::new(p, q, mirrored).map_err(|e| match e {
            Error::Semantic(msg) => Error::Semantic(format!("{msg} (position {at})")),
            other => other,
        })?;
        Ok((knot, multiplicity))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let mut summands = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'#') => {
                    self.pos += 1;
                    summands.push(self.term()?);
                }
                Some(c) => {
                    return Err(Error::parse(self.pos, format!("expected `#` or end of input, found `{}`", c as char)))
                }
            }
        }
        Ok(KnotExpr::new(summands))
    }
}
