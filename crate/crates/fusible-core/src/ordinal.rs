//! Ordinals below ε₀ in weighted Cantor normal form.
//!
//! An [`Ordinal`] is a sorted list of terms `ω^e · c` with strictly
//! decreasing exponents (themselves ordinals) and positive arbitrary-precision
//! coefficients; the empty list is 0. Structural equality coincides with
//! ordinal equality, and the derived order is the ordinal order.
//!
//! Text grammar (used by the CLI and all fixtures):
//!
//! ```text
//! ordinal := term ('+' term)*
//! term    := atom ('*' nat)?
//! atom    := nat | 'w' | 'w^(' ordinal ')' | 'w^' nat
//! ```
//!
//! Printing always emits canonical weighted CNF, with compound exponents
//! parenthesized, e.g. `w^(w+2)*6+w^(w+1)*5`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// An ordinal below ε₀ in weighted CNF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, BigUint)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_nat(1u32)
    }

    pub fn omega() -> Self {
        Ordinal {
            terms: vec![(Ordinal::one(), BigUint::one())],
        }
    }

    pub fn from_nat<N: Into<BigUint>>(n: N) -> Self {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// Builds an ordinal from weighted-CNF terms, validating canonical form
    /// (strictly decreasing exponents, positive coefficients).
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::Parse(
                    "ordinal terms must have strictly decreasing exponents".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(Error::Parse("ordinal coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, BigUint)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A successor ordinal has a trailing finite part.
    pub fn is_successor(&self) -> bool {
        self.terms
            .last()
            .map(|(e, _)| e.is_zero())
            .unwrap_or(false)
    }

    /// Nonzero and not a successor.
    pub fn is_limit(&self) -> bool {
        self.terms
            .last()
            .map(|(e, _)| !e.is_zero())
            .unwrap_or(false)
    }

    /// The natural number value, if this ordinal is finite.
    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.len() {
            0 => Some(BigUint::zero()),
            1 if self.terms[0].0.is_zero() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Result<Ordinal> {
        if !self.is_successor() {
            return Err(Error::NotLimit(format!(
                "{self} is not a successor, cannot take its predecessor"
            )));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1.is_one() {
            terms.pop();
        } else {
            last.1 -= 1u32;
        }
        Ok(Ordinal { terms })
    }

    /// `ω^a` in canonical form.
    pub fn omega_power(a: &Ordinal) -> Ordinal {
        Ordinal {
            terms: vec![(a.clone(), BigUint::one())],
        }
    }

    /// Successor `self + 1`.
    pub fn succ(&self) -> Ordinal {
        ordinal_add(self, &Ordinal::one())
    }

    /// Leading term `(exponent, coefficient)` plus the remaining tail.
    pub(crate) fn split_leading(&self) -> Option<(Ordinal, BigUint, Ordinal)> {
        let (e, c) = self.terms.first()?;
        Some((
            e.clone(),
            c.clone(),
            Ordinal {
                terms: self.terms[1..].to_vec(),
            },
        ))
    }

    pub(crate) fn from_leading(exp: Ordinal, coeff: BigUint, rest: Ordinal) -> Ordinal {
        debug_assert!(rest.terms.first().map(|(e, _)| *e < exp).unwrap_or(true));
        debug_assert!(!coeff.is_zero());
        let mut terms = Vec::with_capacity(1 + rest.terms.len());
        terms.push((exp, coeff));
        terms.extend(rest.terms);
        Ordinal { terms }
    }

    /// The canonical sequence `[self]_n`, extended to successors by
    /// `[a+1]_n = a` (independent of `n`). Requires `self > 0` and `n >= 1`.
    pub fn canonical_seq(&self, n: &BigUint) -> Result<Ordinal> {
        if self.is_zero() {
            return Err(Error::ZeroOrdinal);
        }
        if n.is_zero() {
            return Err(Error::NonPositive("canonical sequence index 0".into()));
        }
        if self.is_successor() {
            return self.pred();
        }
        let mut terms: Vec<(Ordinal, BigUint)> = self.terms[..self.terms.len() - 1].to_vec();
        let (e, c) = self.terms.last().unwrap();
        if !c.is_one() {
            terms.push((e.clone(), c - 1u32));
        }
        // expand the final unit term w^e
        if e.is_successor() {
            terms.push((e.pred()?, n.clone()));
        } else {
            terms.push((e.canonical_seq(n)?, BigUint::one()));
        }
        Ok(Ordinal { terms })
    }

    /// ω-tower of height `n` (`tau(0) = 1`). Capped to keep printing and
    /// recursion depths sane.
    pub fn tau(n: u32) -> Result<Ordinal> {
        const CAP: u32 = 4096;
        if n > CAP {
            return Err(Error::ResourceExhausted {
                what: format!("omega tower of height {n}"),
                limit: CAP as u64,
            });
        }
        let mut o = Ordinal::one();
        for _ in 0..n {
            o = Ordinal::omega_power(&o);
        }
        Ok(o)
    }

    /// JSON rendering as nested term arrays: 0 is `[]`, otherwise
    /// `[[exp, "coeff"], ...]` with exponents rendered recursively.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        self.write_json(&mut s);
        s
    }

    fn write_json(&self, out: &mut String) {
        out.push('[');
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            e.write_json(out);
            out.push_str(",\"");
            out.push_str(&c.to_string());
            out.push_str("\"]");
        }
        out.push(']');
    }

    pub fn parse(s: &str) -> Result<Ordinal> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let o = p.ordinal()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::Parse(format!(
                "trailing input at byte {} of '{s}'",
                p.pos
            )));
        }
        Ok(o)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match ea.cmp(eb).then_with(|| ca.cmp(cb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e.as_natural().map(|n| n.is_one()).unwrap_or(false) {
                write!(f, "w")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ordinal::parse(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at byte {}",
                b as char, self.pos
            )))
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at byte {start}")));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(BigUint::from_str(s).unwrap())
    }

    fn ordinal(&mut self) -> Result<Ordinal> {
        let mut terms = Vec::new();
        let mut saw_zero_literal = false;
        loop {
            let (exp, coeff) = self.term()?;
            if coeff.is_zero() {
                saw_zero_literal = true;
            } else {
                terms.push((exp, coeff));
            }
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if saw_zero_literal && !terms.is_empty() {
            return Err(Error::Parse("'0' cannot appear in a sum".into()));
        }
        Ordinal::from_terms(terms)
    }

    fn term(&mut self) -> Result<(Ordinal, BigUint)> {
        let (exp, mut coeff) = self.atom()?;
        if self.peek() == Some(b'*') {
            self.pos += 1;
            let k = self.nat()?;
            if k.is_zero() {
                return Err(Error::Parse("coefficient '*0' is not canonical".into()));
            }
            coeff *= k;
        }
        Ok((exp, coeff))
    }

    fn atom(&mut self) -> Result<(Ordinal, BigUint)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        let e = self.ordinal()?;
                        self.eat(b')')?;
                        Ok((e, BigUint::one()))
                    } else {
                        let n = self.nat()?;
                        Ok((Ordinal::from_nat(n), BigUint::one()))
                    }
                } else {
                    Ok((Ordinal::one(), BigUint::one()))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok((Ordinal::zero(), n))
            }
            other => Err(Error::Parse(format!(
                "expected 'w' or a number, got {:?} at byte {}",
                other.map(|b| b as char),
                self.pos
            ))),
        }
    }
}

/// Ordinary (non-commutative) ordinal addition.
pub fn ordinal_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some((be, _)) = b.terms.first() else {
        return a.clone();
    };
    let keep = a.terms.iter().take_while(|(e, _)| e > be).count();
    let mut terms: Vec<(Ordinal, BigUint)> = a.terms[..keep].to_vec();
    if keep < a.terms.len() && a.terms[keep].0 == *be {
        let mut it = b.terms.iter();
        let (e, c) = it.next().unwrap();
        terms.push((e.clone(), &a.terms[keep].1 + c));
        terms.extend(it.cloned());
    } else {
        terms.extend(b.terms.iter().cloned());
    }
    Ordinal { terms }
}

/// Left subtraction: the unique `g` with `b + g = a`. Requires `b <= a`.
pub fn left_subtract(b: &Ordinal, a: &Ordinal) -> Result<Ordinal> {
    match b.cmp(a) {
        Ordering::Greater => Err(Error::Underflow {
            b: b.to_string(),
            a: a.to_string(),
        }),
        Ordering::Equal => Ok(Ordinal::zero()),
        Ordering::Less => {
            let mut i = 0;
            loop {
                // invariant: b.terms[..i] == a.terms[..i]
                match (b.terms.get(i), a.terms.get(i)) {
                    (None, _) => {
                        return Ok(Ordinal {
                            terms: a.terms[i..].to_vec(),
                        })
                    }
                    (Some((be, bc)), Some((ae, ac))) => {
                        if be < ae {
                            // b's tail is absorbed by the larger term of a
                            return Ok(Ordinal {
                                terms: a.terms[i..].to_vec(),
                            });
                        }
                        debug_assert!(be == ae, "b > a contradicts the order check");
                        if bc < ac {
                            let mut terms = vec![(ae.clone(), ac - bc)];
                            terms.extend(a.terms[i + 1..].iter().cloned());
                            return Ok(Ordinal { terms });
                        }
                        debug_assert!(bc == ac, "b > a contradicts the order check");
                        i += 1;
                    }
                    (Some(_), None) => unreachable!("b > a contradicts the order check"),
                }
            }
        }
    }
}

/// Hessenberg natural sum: merge the CNF exponent multisets.
pub fn natural_sum(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let mut terms: Vec<(Ordinal, BigUint)> = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = match (a.terms.get(i), b.terms.get(j)) {
            (Some((ea, _)), Some((eb, _))) => ea >= eb,
            (Some(_), None) => true,
            (None, _) => false,
        };
        let (e, c) = if take_a {
            i += 1;
            a.terms[i - 1].clone()
        } else {
            j += 1;
            b.terms[j - 1].clone()
        };
        match terms.last_mut() {
            Some((pe, pc)) if *pe == e => *pc += c,
            _ => terms.push((e, c)),
        }
    }
    Ordinal { terms }
}

/// Hessenberg natural product: `⊕ over unit terms of ω^(e_i ⊕ f_j)`.
pub fn natural_product(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let mut acc = Ordinal::zero();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let term = Ordinal {
                terms: vec![(natural_sum(ea, eb), ca * cb)],
            };
            acc = natural_sum(&acc, &term);
        }
    }
    acc
}

/// Outcome of a bounded greedy canonical descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descent {
    /// The full step list from `a` down to `b`, inclusive.
    Reached(Vec<Ordinal>),
    /// Some limit step needed a descent parameter above the bound; `at` is
    /// the ordinal where the greedy search got stuck.
    Unreachable { at: Ordinal, trace: Vec<Ordinal> },
}

/// Greedy shortest canonical descent from `a` to `b` with descent parameters
/// bounded by `k`: at every limit step, take the smallest parameter `n <= k`
/// with `[cur]_n >= b`; successor steps drop to the predecessor.
pub fn descend(a: &Ordinal, b: &Ordinal, k: u64, budget: &mut Budget) -> Result<Descent> {
    if b > a {
        return Err(Error::Underflow {
            b: b.to_string(),
            a: a.to_string(),
        });
    }
    let mut trace = vec![a.clone()];
    let mut cur = a.clone();
    while cur > *b {
        if !budget.try_step() {
            return Err(Error::BudgetExhausted {
                steps: budget.steps_consumed(),
                depth: trace.len(),
                frontier: format!("descent at {cur}"),
            });
        }
        if cur.is_successor() {
            cur = cur.pred()?;
        } else {
            let mut found = None;
            for n in 1..=k {
                let cand = cur.canonical_seq(&BigUint::from(n))?;
                if cand >= *b {
                    found = Some(cand);
                    break;
                }
            }
            match found {
                Some(next) => cur = next,
                None => return Ok(Descent::Unreachable { at: cur, trace }),
            }
        }
        trace.push(cur.clone());
    }
    Ok(Descent::Reached(trace))
}

/// Configuration for the seeded random ordinal generator used by the
/// property suites.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Maximum nesting depth of exponents (tower height).
    pub max_depth: u32,
    /// Maximum number of CNF terms per level.
    pub max_terms: usize,
    /// Maximum coefficient.
    pub max_coeff: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 3,
            max_terms: 3,
            max_coeff: 5,
        }
    }
}

/// Draws a random ordinal in weighted CNF, bounded by `cfg`.
pub fn random_ordinal<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Ordinal {
    fn gen_level<R: Rng>(rng: &mut R, depth: u32, cfg: &GenConfig) -> Ordinal {
        if depth == 0 || rng.gen_bool(0.3) {
            return Ordinal::from_nat(rng.gen_range(0..=cfg.max_coeff));
        }
        let nterms = rng.gen_range(1..=cfg.max_terms);
        let mut exps: Vec<Ordinal> = (0..nterms)
            .map(|_| gen_level(rng, depth - 1, cfg))
            .collect();
        exps.sort();
        exps.dedup();
        exps.reverse();
        let terms = exps
            .into_iter()
            .map(|e| (e, BigUint::from(rng.gen_range(1..=cfg.max_coeff))))
            .collect();
        Ordinal { terms }
    }
    gen_level(rng, cfg.max_depth, cfg)
}
