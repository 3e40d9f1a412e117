//! Words, geodesic normal forms, word length and ball enumeration.
//!
//! A group element is represented by a `Word` (possibly unreduced). Reduction
//! repeatedly deletes a pair `x … x⁻¹` whose intermediate letters all commute
//! with `x`; the surviving words are exactly the geodesics. The canonical
//! `GeodesicForm` is the lexicographically least geodesic in the shuffle class
//! under the graph's declared generator order, obtained by greedily pulling
//! the least available letter to the front.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GenId, SimplicialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A signed generator. Ordering is generator first, then `Pos < Neg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: GenId) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: GenId) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("UnknownGenerator: `{0}` is not a vertex of the graph")]
    UnknownGenerator(String),
    #[error("ZeroExponent: token `{0}` has exponent 0")]
    ZeroExponent(String),
    #[error("BadToken: cannot parse token `{0}`")]
    BadToken(String),
}

/// A finite sequence of letters; may be non-reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Parses the whitespace-separated token syntax: `name`, `name^-1`, `name^k`.
    pub fn parse(graph: &SimplicialGraph, input: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, exp_str)) => {
                    let exp: i64 = exp_str
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_owned()))?;
                    (name, exp)
                }
            };
            if exp == 0 {
                return Err(WordError::ZeroExponent(token.to_owned()));
            }
            if name.is_empty() {
                return Err(WordError::BadToken(token.to_owned()));
            }
            let gen = graph
                .id(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_owned()))?;
            let sign = if exp > 0 { Sign::Pos } else { Sign::Neg };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter { gen, sign });
            }
        }
        Ok(Word { letters })
    }

    /// Renders in the token syntax, collapsing runs: `a a b⁻¹ ↦ "a^2 b^-1"`.
    pub fn display(&self, graph: &SimplicialGraph) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            let exp = run as i64 * l.sign.exponent();
            if exp == 1 {
                out.push_str(graph.name(l.gen));
            } else {
                let _ = write!(out, "{}^{}", graph.name(l.gen), exp);
            }
            i += run;
        }
        out
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word { letters }
    }
}

/// Canonical geodesic representative. Only `normal_form` constructs these, so
/// holding one certifies both minimal length and canonical letter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeodesicForm {
    letters: Vec<Letter>,
}

impl GeodesicForm {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word { letters: self.letters.clone() }
    }

    pub fn display(&self, graph: &SimplicialGraph) -> String {
        self.as_word().display(graph)
    }
}

/// Length first, then lexicographic: the canonical enumeration order.
impl Ord for GeodesicForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for GeodesicForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deletes cancellable pairs until none remain, then returns a geodesic.
fn reduce(graph: &SimplicialGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut w: Vec<Letter> = letters.to_vec();
    'outer: loop {
        for i in 0..w.len() {
            let x = w[i];
            for j in i + 1..w.len() {
                if w[j].gen == x.gen {
                    if w[j].sign != x.sign {
                        w.remove(j);
                        w.remove(i);
                        continue 'outer;
                    }
                    // same sign: commutes with itself, keep scanning
                } else if !graph.adjacent(w[j].gen, x.gen) {
                    break; // blocks every later partner for this i
                }
            }
        }
        return w;
    }
}

/// True if appending `l` to the geodesic `w` stays geodesic.
fn extends_geodesic(graph: &SimplicialGraph, w: &[Letter], l: Letter) -> bool {
    for t in w.iter().rev() {
        if t.gen == l.gen {
            if t.sign != l.sign {
                return false; // cancellable pair across commuting letters
            }
            // same generator, same sign: transparent, keep scanning
        } else if !graph.adjacent(t.gen, l.gen) {
            return true;
        }
    }
    true
}

/// Greedy Cartier–Foata pass: repeatedly move the least letter that commutes
/// past everything before it to the front.
fn canonicalize(graph: &SimplicialGraph, mut rem: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rem.len());
    while !rem.is_empty() {
        let mut best: Option<usize> = None;
        'scan: for i in 0..rem.len() {
            for j in 0..i {
                if rem[j].gen == rem[i].gen || !graph.adjacent(rem[j].gen, rem[i].gen) {
                    continue 'scan;
                }
            }
            if best.is_none_or(|b| rem[i] < rem[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("first letter is always available");
        out.push(rem.remove(i));
    }
    out
}

/// Canonical geodesic representative of the element `w` represents.
pub fn normal_form(graph: &SimplicialGraph, w: &Word) -> GeodesicForm {
    let reduced = reduce(graph, w.letters());
    GeodesicForm { letters: canonicalize(graph, reduced) }
}

/// Word length `‖g‖` of the element represented by `w`.
pub fn geodesic_length(graph: &SimplicialGraph, w: &Word) -> usize {
    reduce(graph, w.letters()).len()
}

pub fn is_identity(graph: &SimplicialGraph, w: &Word) -> bool {
    geodesic_length(graph, w) == 0
}

/// The canonical forms one level further out: all elements of length
/// `prev_len + 1`, given all elements of length `prev_len`.
pub(crate) fn ball_level_from(
    graph: &SimplicialGraph,
    prev: &[GeodesicForm],
) -> Vec<GeodesicForm> {
    let mut next: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for w in prev {
        for gen in 0..graph.gen_count() {
            for sign in [Sign::Pos, Sign::Neg] {
                let l = Letter { gen, sign };
                if !extends_geodesic(graph, w.letters(), l) {
                    continue;
                }
                let mut cand = w.letters().to_vec();
                cand.push(l);
                next.insert(canonicalize(graph, cand));
            }
        }
    }
    next.into_iter().map(|letters| GeodesicForm { letters }).collect()
}

/// Streams every nontrivial element of word length ≤ `n`, each exactly once,
/// in canonical order (length, then lexicographic).
pub fn ball<'g>(graph: &'g SimplicialGraph, n: usize) -> Ball<'g> {
    Ball { graph, radius: n, depth: 0, level: vec![GeodesicForm { letters: vec![] }], cursor: 0 }
}

pub struct Ball<'g> {
    graph: &'g SimplicialGraph,
    radius: usize,
    depth: usize,
    level: Vec<GeodesicForm>,
    cursor: usize,
}

impl<'g> Iterator for Ball<'g> {
    type Item = GeodesicForm;

    fn next(&mut self) -> Option<GeodesicForm> {
        loop {
            if self.cursor < self.level.len() && self.depth > 0 {
                let item = self.level[self.cursor].clone();
                self.cursor += 1;
                return Some(item);
            }
            if self.depth >= self.radius || self.level.is_empty() {
                return None;
            }
            self.level = ball_level_from(self.graph, &self.level);
            self.depth += 1;
            self.cursor = 0;
        }
    }
}
