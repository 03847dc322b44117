//! Bracket words: formal nested double-bracket expressions over
//! generator indices. A word is either a bare generator index or
//! `[[left, mid], right]`; its length is the leaf count, which is
//! always odd because a node combines three odd lengths.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketWord {
    /// A generator index, 1-based.
    Leaf(usize),
    /// `[[left, mid], right]`.
    Node(Box<BracketWord>, Box<BracketWord>, Box<BracketWord>),
}

// A word has at least one leaf; there is no empty case for
// `is_empty` to report.
#[allow(clippy::len_without_is_empty)]
impl BracketWord {
    pub fn node(left: BracketWord, mid: BracketWord, right: BracketWord) -> Self {
        BracketWord::Node(Box::new(left), Box::new(mid), Box::new(right))
    }

    /// Leaf count; odd by construction.
    pub fn len(&self) -> usize {
        match self {
            BracketWord::Leaf(_) => 1,
            BracketWord::Node(l, m, r) => l.len() + m.len() + r.len(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BracketWord::Leaf(_))
    }

    /// Nesting depth: 0 for leaves, 1 + max child depth for nodes.
    pub fn node_depth(&self) -> usize {
        match self {
            BracketWord::Leaf(_) => 0,
            BracketWord::Node(l, m, r) => {
                1 + l.node_depth().max(m.node_depth()).max(r.node_depth())
            }
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            BracketWord::Leaf(i) => out.push(*i),
            BracketWord::Node(l, m, r) => {
                l.collect_leaves(out);
                m.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(i) => write!(f, "{i}"),
            BracketWord::Node(l, m, r) => write!(f, "[[{l},{m}],{r}]"),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::WordParse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(format!("expected `{}` at offset {}", c as char, self.pos)))
        }
    }

    fn word(&mut self) -> Result<BracketWord, Error> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Err(self.fail("unexpected end of input"));
        }
        if self.bytes[self.pos] == b'[' {
            self.expect(b'[')?;
            self.expect(b'[')?;
            let left = self.word()?;
            self.expect(b',')?;
            let mid = self.word()?;
            self.expect(b']')?;
            self.expect(b',')?;
            let right = self.word()?;
            self.expect(b']')?;
            Ok(BracketWord::node(left, mid, right))
        } else {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.fail(format!("expected an index at offset {start}")));
            }
            let index: usize = self.input[start..self.pos]
                .parse()
                .map_err(|e| self.fail(format!("bad index: {e}")))?;
            if index == 0 {
                return Err(self.fail("generator indices are 1-based"));
            }
            Ok(BracketWord::Leaf(index))
        }
    }
}

impl FromStr for BracketWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parser = Parser {
            input: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let word = parser.word()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.fail(format!("trailing input at offset {}", parser.pos)));
        }
        Ok(word)
    }
}

impl Serialize for BracketWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BracketWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
