//! Group words over `a` and the elements of `B`, their sections, the word
//! problem and element orders.
//!
//! Words are kept in alternating normal form: `A`-tokens (`a^k`, `k != 0`)
//! and `B`-tokens (nonzero vectors) alternate, so the token count is the word
//! length over `A ∪ B \ {1}`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::gfp::{FieldVector, GroupSpec};
use crate::portrait::{vertex_index, Portrait, SparseElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// `a^k`
    A(u32),
    /// An element of `B`.
    B(FieldVector),
}

impl Token {
    fn is_a(&self) -> bool {
        matches!(self, Token::A(_))
    }

    fn is_trivial(&self) -> bool {
        match self {
            Token::A(k) => *k == 0,
            Token::B(v) => v.is_zero(),
        }
    }

    fn inverse(&self, p: u32) -> Token {
        match self {
            Token::A(k) => Token::A((p - k % p) % p),
            Token::B(v) => Token::B(v.neg(p)),
        }
    }

    /// Merges two tokens of the same kind.
    fn merge(&self, other: &Token, p: u32) -> Token {
        match (self, other) {
            (Token::A(x), Token::A(y)) => Token::A((x + y) % p),
            (Token::B(x), Token::B(y)) => Token::B(x.add(y, p)),
            _ => unreachable!("merge of tokens of different kinds"),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::A(1) => write!(f, "a"),
            Token::A(k) => write!(f, "a^{k}"),
            Token::B(v) => match v.as_basis_index() {
                Some(i) => write!(f, "d{i}"),
                None => write!(f, "b{v}"),
            },
        }
    }
}

/// Merges adjacent same-kind tokens and drops identities. Tokens must already
/// have the right dimension.
fn reduce(p: u32, tokens: impl IntoIterator<Item = Token>) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::new();
    for t in tokens {
        if t.is_trivial() {
            continue;
        }
        match out.last() {
            Some(last) if last.is_a() == t.is_a() => {
                let merged = last.merge(&t, p);
                out.pop();
                if !merged.is_trivial() {
                    out.push(merged);
                }
            }
            _ => out.push(t),
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    tokens: Vec<Token>,
}

/// Root activity and first-level sections of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDecomposition {
    pub root_activity: u32,
    pub sections: Vec<Word>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn a(spec: &GroupSpec, k: i64) -> Word {
        Word {
            tokens: reduce(spec.p(), [Token::A(k.rem_euclid(spec.p() as i64) as u32)]),
        }
    }

    /// The standard basis element `d_i`.
    pub fn d(spec: &GroupSpec, i: usize) -> Word {
        Word {
            tokens: vec![Token::B(FieldVector::basis(spec.m(), i))],
        }
    }

    pub fn b(spec: &GroupSpec, v: FieldVector) -> Result<Word> {
        Word::normalize(spec, vec![Token::B(v)])
    }

    /// Validates token dimensions and brings them into normal form.
    pub fn normalize(spec: &GroupSpec, tokens: Vec<Token>) -> Result<Word> {
        let p = spec.p();
        let mut checked = Vec::with_capacity(tokens.len());
        for t in tokens {
            match t {
                Token::A(k) => checked.push(Token::A(k % p)),
                Token::B(v) => {
                    if v.dim() != spec.m() {
                        return Err(Error::BadVector {
                            expected: spec.m(),
                            got: v.dim(),
                        });
                    }
                    let reduced = FieldVector::new(v.entries().iter().map(|x| x % p).collect());
                    checked.push(Token::B(reduced));
                }
            }
        }
        Ok(Word {
            tokens: reduce(p, checked),
        })
    }

    /// Parses whitespace-separated tokens: `a`, `a^K`, `dI`, `b[c0,...,c{m-1}]`,
    /// each optionally raised to `^K` or `^-K`.
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<Word> {
        let p = spec.p() as i64;
        let mut tokens = Vec::new();
        for raw in text.split_whitespace() {
            if raw == "1" {
                continue;
            }
            let (base, exp) = match raw.rfind('^') {
                Some(i) if !raw[i..].contains(']') => {
                    let e: i64 = raw[i + 1..]
                        .parse()
                        .map_err(|_| Error::WordSyntax(format!("bad exponent in {raw:?}")))?;
                    (&raw[..i], e)
                }
                _ => (raw, 1),
            };
            let k = exp.rem_euclid(p) as u32;
            let token = if base == "a" {
                Token::A(k)
            } else if let Some(idx) = base.strip_prefix('d') {
                let i: usize = idx
                    .parse()
                    .map_err(|_| Error::WordSyntax(format!("bad basis index in {raw:?}")))?;
                if i >= spec.m() {
                    return Err(Error::WordSyntax(format!(
                        "basis index {i} out of range for m = {}",
                        spec.m()
                    )));
                }
                Token::B(FieldVector::basis(spec.m(), i).scale(k, spec.p()))
            } else if let Some(inner) = base.strip_prefix("b[").and_then(|s| s.strip_suffix(']')) {
                let entries = inner
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map(|x| x.rem_euclid(p) as u32)
                            .map_err(|_| Error::WordSyntax(format!("bad vector entry in {raw:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != spec.m() {
                    return Err(Error::BadVector {
                        expected: spec.m(),
                        got: entries.len(),
                    });
                }
                Token::B(FieldVector::new(entries).scale(k, spec.p()))
            } else {
                return Err(Error::WordSyntax(format!("unknown token {raw:?}")));
            };
            tokens.push(token);
        }
        Word::normalize(spec, tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn mul(&self, spec: &GroupSpec, other: &Word) -> Word {
        Word {
            tokens: reduce(
                spec.p(),
                self.tokens.iter().chain(&other.tokens).cloned(),
            ),
        }
    }

    pub fn inverse(&self, spec: &GroupSpec) -> Word {
        Word {
            tokens: self.tokens.iter().rev().map(|t| t.inverse(spec.p())).collect(),
        }
    }

    pub fn pow(&self, spec: &GroupSpec, k: u64) -> Word {
        let mut acc = Word::identity();
        for _ in 0..k {
            acc = acc.mul(spec, self);
        }
        acc
    }

    /// `by^{-1} * self * by`.
    pub fn conjugate(&self, spec: &GroupSpec, by: &Word) -> Word {
        by.inverse(spec).mul(spec, self).mul(spec, by)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(spec: &GroupSpec, x: &Word, y: &Word) -> Word {
        x.inverse(spec)
            .mul(spec, &y.inverse(spec))
            .mul(spec, x)
            .mul(spec, y)
    }

    /// Image in `A`: the sum of the `a`-exponents.
    pub fn project_a(&self, spec: &GroupSpec) -> u32 {
        self.tokens.iter().fold(0, |acc, t| match t {
            Token::A(k) => (acc + k) % spec.p(),
            Token::B(_) => acc,
        })
    }

    /// Image in `B`: the sum of the `B`-tokens.
    pub fn project_b(&self, spec: &GroupSpec) -> FieldVector {
        self.tokens.iter().fold(FieldVector::zero(spec.m()), |acc, t| match t {
            Token::A(_) => acc,
            Token::B(v) => acc.add(v, spec.p()),
        })
    }

    /// Section of the word at the first-level vertex `x`.
    pub fn section(&self, spec: &GroupSpec, x: u32) -> Word {
        let p = spec.p();
        let mut pos = x;
        let mut collected = Vec::new();
        for t in self.tokens.iter().rev() {
            match t {
                Token::A(k) => pos = (pos + k) % p,
                Token::B(v) => {
                    if pos == 0 {
                        collected.push(Token::A(spec.omega_of(v)));
                    } else if pos == p - 1 {
                        collected.push(Token::B(spec.rho(v)));
                    }
                }
            }
        }
        collected.reverse();
        Word {
            tokens: reduce(p, collected),
        }
    }

    pub fn sections(&self, spec: &GroupSpec) -> SectionDecomposition {
        SectionDecomposition {
            root_activity: self.project_a(spec),
            sections: (0..spec.p()).map(|x| self.section(spec, x)).collect(),
        }
    }

    /// Image of a tree word under the element.
    pub fn act(&self, spec: &GroupSpec, tree_word: &[u32]) -> Result<Vec<u32>> {
        let p = spec.p();
        if let Some(&d) = tree_word.iter().find(|&&x| x >= p) {
            return Err(Error::BadDigit { digit: d, p });
        }
        let mut w = tree_word.to_vec();
        for t in self.tokens.iter().rev() {
            act_token(spec, t, &mut w);
        }
        Ok(w)
    }

    /// Portrait of the element at `depth`, built by composing generator portraits.
    pub fn portrait(&self, spec: &GroupSpec, depth: usize) -> Portrait {
        let mut acc = Portrait::identity(spec.p(), depth);
        for t in self.tokens.iter().rev() {
            let g = generator_portrait(spec, t, depth);
            SparseElement::from_portrait(&g).left_mul_portrait(&mut acc);
        }
        acc
    }

    /// Conjugates to a canonical cyclic rotation; conjugation preserves the order.
    fn cyclic_canonical(&self, spec: &GroupSpec) -> Word {
        let p = spec.p();
        let mut t = self.tokens.clone();
        while t.len() >= 2 && t[0].is_a() == t[t.len() - 1].is_a() {
            let last = t.pop().unwrap();
            let merged = last.merge(&t[0], p);
            if merged.is_trivial() {
                t.remove(0);
            } else {
                t[0] = merged;
            }
        }
        if t.len() < 2 {
            return Word { tokens: t };
        }
        let best = (0..t.len())
            .map(|r| {
                let mut rot = t[r..].to_vec();
                rot.extend_from_slice(&t[..r]);
                rot
            })
            .min()
            .unwrap();
        Word { tokens: best }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn act_token(spec: &GroupSpec, token: &Token, w: &mut [u32]) {
    let p = spec.p();
    let mut current = token.clone();
    for digit in w.iter_mut() {
        match current {
            Token::A(k) => {
                *digit = (*digit + k) % p;
                return;
            }
            Token::B(ref v) => {
                if *digit == 0 {
                    let k = spec.omega_of(v);
                    if k == 0 {
                        return;
                    }
                    current = Token::A(k);
                } else if *digit == p - 1 {
                    current = Token::B(spec.rho(v));
                } else {
                    return;
                }
            }
        }
    }
}

/// Portrait of a single token, obtained by unrolling the recursions
/// `a = pi (1, ..., 1)` and `b = (omega(b), 1, ..., 1, rho(b))`.
pub fn generator_portrait(spec: &GroupSpec, token: &Token, depth: usize) -> Portrait {
    let p = spec.p();
    let mut acts = Portrait::identity(p, depth).activities().to_vec();
    let mut vertex: Vec<u32> = Vec::new();
    let mut current = Some(token.clone());
    while let Some(t) = current.take() {
        if vertex.len() >= depth || t.is_trivial() {
            break;
        }
        match t {
            Token::A(k) => acts[vertex_index(p, &vertex)] = k % p,
            Token::B(v) => {
                // section at 0 is a^{omega(v)}: a single activity one level down
                let k = spec.omega_of(&v);
                if k != 0 && vertex.len() + 1 < depth {
                    vertex.push(0);
                    acts[vertex_index(p, &vertex)] = k;
                    vertex.pop();
                }
                vertex.push(p - 1);
                current = Some(Token::B(spec.rho(&v)));
            }
        }
    }
    Portrait::from_raw(p, depth, acts)
}

/// Search budget for [`WordProblem::element_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderLimits {
    /// Maximum number of `x p` descents along one branch.
    pub max_steps: usize,
    /// Maximum token length of any word met during the search.
    pub max_len: usize,
}

impl Default for OrderLimits {
    fn default() -> Self {
        OrderLimits {
            max_steps: 64,
            max_len: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderResult {
    Finite(BigUint),
    /// Words along a descent cycle; the first word reappears after at least one `x p` step.
    Infinite(Vec<Word>),
    Unknown(String),
}

/// Word problem and order computations for one group, with a cache of words
/// already proven trivial or nontrivial.
///
/// The cache only affects speed. It is confined to the owning value, so use
/// one instance per thread.
pub struct WordProblem<'a> {
    spec: &'a GroupSpec,
    trivial: FxHashSet<Word>,
    nontrivial: FxHashSet<Word>,
}

impl<'a> WordProblem<'a> {
    pub fn new(spec: &'a GroupSpec) -> Self {
        WordProblem {
            spec,
            trivial: FxHashSet::default(),
            nontrivial: FxHashSet::default(),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        self.spec
    }

    /// Decides whether `w` acts trivially on the tree.
    ///
    /// Recurses into sections; a word met again on the current recursion
    /// stack is assumed trivial. If every branch closes this way, every
    /// reachable activity is zero. Contraction keeps all words short, so the
    /// search is finite.
    pub fn is_identity(&mut self, w: &Word) -> bool {
        let mut on_stack = FxHashSet::default();
        let mut visited = Vec::new();
        let ok = self.trivial_rec(w, &mut on_stack, &mut visited);
        if ok {
            // only sound to cache after the whole search closed
            self.trivial.extend(visited);
        }
        ok
    }

    fn trivial_rec(
        &mut self,
        w: &Word,
        on_stack: &mut FxHashSet<Word>,
        visited: &mut Vec<Word>,
    ) -> bool {
        if w.is_empty() || self.trivial.contains(w) || on_stack.contains(w) {
            return true;
        }
        if self.nontrivial.contains(w) {
            return false;
        }
        if w.project_a(self.spec) != 0 {
            self.nontrivial.insert(w.clone());
            return false;
        }
        on_stack.insert(w.clone());
        visited.push(w.clone());
        let mut ok = true;
        for x in 0..self.spec.p() {
            let s = w.section(self.spec, x);
            if !self.trivial_rec(&s, on_stack, visited) {
                ok = false;
                break;
            }
        }
        on_stack.remove(w);
        if !ok {
            self.nontrivial.insert(w.clone());
        }
        ok
    }

    /// Order of `w`. Root-active words use `|w| = p * |(w^p)_0|` (all first-level
    /// sections of `w^p` are conjugate); root-inactive words take the lcm over
    /// their sections. A word that reappears after a `x p` step has infinite order.
    pub fn element_order(&mut self, w: &Word, limits: OrderLimits) -> OrderResult {
        let mut path = Vec::new();
        self.order_rec(w.clone(), &mut path, 0, limits)
    }

    fn order_rec(
        &mut self,
        w: Word,
        path: &mut Vec<(Word, usize)>,
        descents: usize,
        limits: OrderLimits,
    ) -> OrderResult {
        let spec = self.spec;
        let w = w.cyclic_canonical(spec);
        if self.is_identity(&w) {
            return OrderResult::Finite(BigUint::one());
        }
        if let Some(pos) = path.iter().position(|(x, _)| *x == w) {
            if descents > path[pos].1 {
                return OrderResult::Infinite(path[pos..].iter().map(|(x, _)| x.clone()).collect());
            }
            // a pure section cycle adds no constraint of its own
            return OrderResult::Finite(BigUint::one());
        }
        if descents >= limits.max_steps {
            return OrderResult::Unknown(format!("descent budget of {} exhausted", limits.max_steps));
        }
        if w.len() > limits.max_len {
            return OrderResult::Unknown(format!(
                "word length {} exceeds the limit {}",
                w.len(),
                limits.max_len
            ));
        }
        path.push((w.clone(), descents));
        let p = spec.p();
        let result = if w.project_a(spec) != 0 {
            let s0 = w.pow(spec, p as u64).section(spec, 0);
            match self.order_rec(s0, path, descents + 1, limits) {
                OrderResult::Finite(n) => OrderResult::Finite(n * p),
                other => other,
            }
        } else {
            let mut acc = BigUint::one();
            let mut unknown = None;
            let mut infinite = None;
            for x in 0..p {
                let s = w.section(spec, x);
                match self.order_rec(s, path, descents, limits) {
                    OrderResult::Finite(n) => acc = acc.lcm(&n),
                    OrderResult::Infinite(c) => {
                        infinite = Some(c);
                        break;
                    }
                    OrderResult::Unknown(why) => unknown = Some(why),
                }
            }
            match (infinite, unknown) {
                (Some(c), _) => OrderResult::Infinite(c),
                (None, Some(why)) => OrderResult::Unknown(why),
                (None, None) => OrderResult::Finite(acc),
            }
        };
        path.pop();
        result
    }
}

/// One-shot identity test.
pub fn is_identity(spec: &GroupSpec, w: &Word) -> bool {
    WordProblem::new(spec).is_identity(w)
}

/// One-shot order computation.
pub fn element_order(spec: &GroupSpec, w: &Word, limits: OrderLimits) -> OrderResult {
    WordProblem::new(spec).element_order(w, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grig() -> GroupSpec {
        GroupSpec::new(2, &[1, 1, 1]).unwrap()
    }

    fn w(spec: &GroupSpec, s: &str) -> Word {
        Word::parse(spec, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let g = grig();
        assert_eq!(w(&g, "a d0 a d1").to_string(), "a d0 a d1");
        assert_eq!(w(&g, "a b[1,1]").to_string(), "a b[1,1]");
        assert_eq!(w(&g, "b[0,1]").to_string(), "d1");
        assert!(w(&g, "a a").is_empty());
        assert!(w(&g, "d0 d0").is_empty());
        assert!(matches!(Word::parse(&g, "d2"), Err(Error::WordSyntax(_))));
        assert!(matches!(Word::parse(&g, "b[1,1,1]"), Err(Error::BadVector { .. })));
        assert!(matches!(Word::parse(&g, "x"), Err(Error::WordSyntax(_))));
        let g3 = GroupSpec::new(3, &[2, 2, 1]).unwrap();
        let x = w(&g3, "a a d0 d1");
        assert_eq!(
            x.tokens(),
            &[Token::A(2), Token::B(FieldVector::new(vec![1, 1]))]
        );
        assert_eq!(w(&g3, "a^-1").tokens(), &[Token::A(2)]);
        assert_eq!(w(&g3, "d1^-1").to_string(), "b[0,2]");
        assert!(matches!(
            Word::normalize(&g3, vec![Token::B(FieldVector::new(vec![1]))]),
            Err(Error::BadVector { .. })
        ));
    }

    #[test]
    fn normalize_is_idempotent() {
        let g3 = GroupSpec::new(3, &[2, 2, 1]).unwrap();
        let x = w(&g3, "a a d0 d1 a^2 a d0^2 d0");
        let again = Word::normalize(&g3, x.tokens().to_vec()).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn projections() {
        let g = grig();
        let x = w(&g, "a d0 a d0");
        assert_eq!(x.project_a(&g), 0);
        assert!(x.project_b(&g).is_zero());
        let y = w(&g, "a d0 a d1");
        assert_eq!(y.project_a(&g), 0);
        assert_eq!(y.project_b(&g), FieldVector::new(vec![1, 1]));
        assert_eq!(Word::identity().project_a(&g), 0);
    }

    #[test]
    fn section_examples() {
        let g = grig();
        let s = w(&g, "d0").sections(&g);
        assert_eq!(s.root_activity, 0);
        assert_eq!(s.sections, vec![Word::identity(), w(&g, "d1")]);
        let s = w(&g, "a d0 a").sections(&g);
        assert_eq!(s.root_activity, 0);
        assert_eq!(s.sections, vec![w(&g, "d1"), Word::identity()]);
        let s = w(&g, "a").sections(&g);
        assert_eq!(s.root_activity, 1);
        assert!(s.sections.iter().all(Word::is_empty));
    }

    #[test]
    fn act_examples() {
        let g = grig();
        assert_eq!(w(&g, "a").act(&g, &[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(w(&g, "d1").act(&g, &[0, 0]).unwrap(), vec![0, 1]);
        assert_eq!(Word::identity().act(&g, &[1, 0, 1]).unwrap(), vec![1, 0, 1]);
        assert!(matches!(w(&g, "a").act(&g, &[2]), Err(Error::BadDigit { .. })));
    }

    #[test]
    fn generator_portraits() {
        let g = grig();
        assert_eq!(w(&g, "a").portrait(&g, 2).activities(), &[1, 0, 0]);
        let d0 = w(&g, "d0").portrait(&g, 3);
        assert_eq!(d0.activity_at(&[1, 0]).unwrap(), 1);
        assert_eq!(d0.activities().iter().sum::<u32>(), 1);
        assert_eq!(w(&g, "d0").portrait(&g, 0).activities().len(), 0);
        let section = d0.section(&[1]).unwrap();
        assert_eq!(section, w(&g, "d1").portrait(&g, 2));
    }

    #[test]
    fn commutator_a_d0_is_d1_d1() {
        let g = grig();
        let c = Word::commutator(&g, &w(&g, "a"), &w(&g, "d0"));
        let pc = c.portrait(&g, 5);
        let d1 = w(&g, "d1").portrait(&g, 4);
        let expected = Portrait::from_sections(0, &[d1.clone(), d1]).unwrap();
        assert_eq!(pc, expected);
    }

    #[test]
    fn word_portrait_agrees_with_act() {
        let g = grig();
        let x = w(&g, "a d0 a d1 a b[1,1]");
        let pt = x.portrait(&g, 4);
        for n in 0..16u32 {
            let tw: Vec<u32> = (0..4).map(|i| (n >> (3 - i)) & 1).collect();
            assert_eq!(pt.apply(&tw).unwrap(), x.act(&g, &tw).unwrap());
        }
    }

    #[test]
    fn identity_examples() {
        let g = grig();
        assert!(is_identity(&g, &w(&g, "a d0 a d0 a d0 a d0")));
        assert!(!is_identity(&g, &w(&g, "a d0 a d0")));
        assert!(is_identity(&g, &Word::identity()));
        let mut wp = WordProblem::new(&g);
        // b c d = 1 in the Grigorchuk group
        assert!(wp.is_identity(&w(&g, "d1 b[1,1] d0")));
        assert!(!wp.is_identity(&w(&g, "d1")));
    }

    #[test]
    fn order_examples() {
        let g = grig();
        let lim = OrderLimits::default();
        assert_eq!(element_order(&g, &w(&g, "a"), lim), OrderResult::Finite(2u32.into()));
        assert_eq!(element_order(&g, &w(&g, "a d0"), lim), OrderResult::Finite(4u32.into()));
        assert_eq!(element_order(&g, &w(&g, "d1"), lim), OrderResult::Finite(2u32.into()));
        assert_eq!(element_order(&g, &w(&g, "a d1"), lim), OrderResult::Finite(16u32.into()));
        let g3 = GroupSpec::new(3, &[2, 2, 1]).unwrap();
        assert_eq!(element_order(&g3, &w(&g3, "a"), lim), OrderResult::Finite(3u32.into()));

        let ge = GroupSpec::new(2, &[1, 0, 1]).unwrap();
        match element_order(&ge, &w(&ge, "a b[1,1]"), lim) {
            OrderResult::Infinite(cycle) => {
                assert!(cycle.iter().all(|c| c.project_b(&ge) == FieldVector::new(vec![1, 1])))
            }
            other => panic!("expected infinite order, got {other:?}"),
        }
    }

    #[test]
    fn order_budget_reports_unknown() {
        let g = grig();
        let lim = OrderLimits {
            max_steps: 1,
            max_len: 256,
        };
        assert!(matches!(
            element_order(&g, &w(&g, "a d1"), lim),
            OrderResult::Unknown(_)
        ));
    }
}
