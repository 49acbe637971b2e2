//! Finitely constrained groups: pattern sets, window tests and counting.
//!
//! A pattern set `P` is a group of depth-`D` portraits. A portrait is
//! window-valid when its depth-`D` window at every vertex deep enough to hold
//! one lies in `P`. For `G_{p,f}` with `m >= 2`, `P` is `G/G_{m+2}`.

use std::io::{BufRead, Write};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::GroupSpec;
use crate::portrait::{level_offset, vertex_count, Codec, Portrait, SparseElement};
use crate::quotient::{closure, Budget, QuotientTable};

/// A group of depth-`pattern_depth` portraits, stored as sorted codes.
#[derive(Clone, Debug)]
pub struct PatternSet {
    m: usize,
    codec: Codec,
    /// Codec of the depth-`pattern_depth - 1` truncations.
    state_codec: Codec,
    patterns: Vec<u128>,
}

impl PatternSet {
    /// `P = G/G_{m+2}`.
    pub fn pattern_group(spec: &GroupSpec, budget: &Budget) -> Result<Self> {
        let m = spec.m();
        if m < 2 {
            return Err(Error::DegreeTooSmall(m));
        }
        let table = QuotientTable::enumerate(spec, m + 2, budget)?;
        Self::from_sorted_codes(m, *table.codec(), table.codes().to_vec())
    }

    /// Builds a pattern set from explicit portraits, checking they form a group.
    pub fn from_portraits(m: usize, portraits: &[Portrait]) -> Result<Self> {
        let first = portraits
            .first()
            .ok_or_else(|| Error::BadParameters("empty pattern set".into()))?;
        let codec = Codec::new(first.p(), first.depth())?;
        let mut codes = Vec::with_capacity(portraits.len());
        for g in portraits {
            if g.p() != codec.p() || g.depth() != codec.depth() {
                return Err(Error::DepthMismatch(codec.depth(), g.depth()));
            }
            codes.push(codec.encode(g));
        }
        codes.sort_unstable();
        codes.dedup();
        check_group(&codec, &codes)?;
        Self::from_sorted_codes(m, codec, codes)
    }

    /// Every depth-`depth` portrait.
    pub fn full(p: u32, depth: usize, budget: &Budget) -> Result<Self> {
        let codec = Codec::new(p, depth)?;
        let size = (p as u128).checked_pow(codec.vertices() as u32);
        let size = match size {
            Some(s) if s <= budget.max_elements as u128 => s as usize,
            _ => return Err(budget.exceeded(budget.max_elements)),
        };
        let mut acts = vec![0u32; codec.vertices()];
        let mut codes = Vec::with_capacity(size);
        for _ in 0..size {
            codes.push(codec.encode_slice(&acts));
            for a in acts.iter_mut().rev() {
                *a += 1;
                if *a < p {
                    break;
                }
                *a = 0;
            }
        }
        codes.sort_unstable();
        Self::from_sorted_codes(depth.saturating_sub(2), codec, codes)
    }

    fn from_sorted_codes(m: usize, codec: Codec, patterns: Vec<u128>) -> Result<Self> {
        if codec.depth() < 2 {
            return Err(Error::BadParameters("pattern depth must be at least 2".into()));
        }
        let state_codec = Codec::new(codec.p(), codec.depth() - 1)?;
        Ok(PatternSet {
            m,
            codec,
            state_codec,
            patterns,
        })
    }

    pub fn p(&self) -> u32 {
        self.codec.p()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pattern_depth(&self) -> usize {
        self.codec.depth()
    }

    pub fn size(&self) -> usize {
        self.patterns.len()
    }

    pub fn codes(&self) -> &[u128] {
        &self.patterns
    }

    pub fn contains(&self, g: &Portrait) -> bool {
        g.p() == self.p()
            && g.depth() == self.pattern_depth()
            && self.patterns.binary_search(&self.codec.encode(g)).is_ok()
    }

    /// Members whose depth-`pattern_depth - 1` truncation has code `state`.
    /// Members sharing a truncation are contiguous in code order.
    pub fn extensions(&self, state: u128) -> &[u128] {
        let lo = self.patterns.partition_point(|&c| self.codec.truncate_code(c) < state);
        let hi = self.patterns.partition_point(|&c| self.codec.truncate_code(c) <= state);
        &self.patterns[lo..hi]
    }

    fn windows(&self, depth: usize) -> Result<Windows> {
        if depth < self.pattern_depth() {
            return Err(Error::TooShallow {
                depth,
                pattern_depth: self.pattern_depth(),
            });
        }
        Ok(Windows::new(self.p(), depth, self.pattern_depth()))
    }

    /// Every depth-`pattern_depth` window of `g` lies in the set.
    pub fn window_valid(&self, g: &Portrait) -> Result<bool> {
        if g.p() != self.p() {
            return Err(Error::BadParameters("prime mismatch".into()));
        }
        let w = self.windows(g.depth())?;
        Ok(self.windows_valid(&w, g.activities()))
    }

    fn windows_valid(&self, w: &Windows, acts: &[u32]) -> bool {
        w.slots.iter().all(|slot| {
            let code = encode_at(&self.codec, acts, slot, slot.len());
            self.patterns.binary_search(&code).is_ok()
        })
    }

    /// Number of window-valid depth-`n` portraits.
    ///
    /// The state at a vertex is the depth-`(D-1)` truncation of its window;
    /// `C_h(q)` counts depth-`h` completions of state `q`, with
    /// `C_{D-1} = 1` and `C_h(q) = sum over w in P extending q of prod_x C_{h-1}(w_x)`.
    pub fn count_window_valid(&self, n: usize) -> Result<BigUint> {
        let d = self.pattern_depth();
        if n < d {
            return Err(Error::TooShallow {
                depth: n,
                pattern_depth: d,
            });
        }
        let steps: Vec<(u128, Vec<u128>)> = self
            .patterns
            .iter()
            .map(|&c| {
                let g = self.codec.decode(c);
                let children = (0..self.p())
                    .map(|x| self.state_codec.encode(&g.section(&[x]).expect("level-1 vertex")))
                    .collect();
                (self.codec.truncate_code(c), children)
            })
            .collect();
        let one = BigUint::one();
        let mut counts: Option<FxHashMap<u128, BigUint>> = None;
        let product = |children: &[u128], counts: &Option<FxHashMap<u128, BigUint>>| -> BigUint {
            match counts {
                None => one.clone(),
                Some(c) => children
                    .iter()
                    .map(|q| c.get(q).cloned().unwrap_or_default())
                    .fold(one.clone(), |acc, x| acc * x),
            }
        };
        for _ in d..n {
            let mut next: FxHashMap<u128, BigUint> = FxHashMap::default();
            for (state, children) in &steps {
                let v = product(children, &counts);
                if !v.is_zero() {
                    *next.entry(*state).or_default() += v;
                }
            }
            counts = Some(next);
        }
        Ok(steps
            .iter()
            .map(|(_, children)| product(children, &counts))
            .sum())
    }

    /// Calls `emit` on the activity vector of every window-valid depth-`n` portrait.
    pub fn for_each_window_valid(&self, n: usize, mut emit: impl FnMut(&[u32])) -> Result<()> {
        let w = self.windows(n)?;
        let mut buf = vec![0u32; vertex_count(self.p(), n)];
        let mut pending = vec![0usize];
        self.fill(&w, &mut pending, &mut buf, &mut emit);
        Ok(())
    }

    fn fill(&self, w: &Windows, pending: &mut Vec<usize>, buf: &mut [u32], emit: &mut dyn FnMut(&[u32])) {
        let Some(slot) = pending.pop() else {
            emit(buf);
            return;
        };
        let idx = &w.slots[slot];
        let state_len = self.state_codec.vertices();
        let (cands, from) = if slot == 0 {
            (&self.patterns[..], 0)
        } else {
            (self.extensions(encode_at(&self.state_codec, buf, idx, state_len)), state_len)
        };
        let base = pending.len();
        for &c in cands {
            for (k, &pos) in idx.iter().enumerate().skip(from) {
                buf[pos] = self.codec.get(c, k);
            }
            pending.extend(w.children(slot));
            self.fill(w, pending, buf, emit);
            pending.truncate(base);
        }
        pending.push(slot);
    }

    /// Codes of all window-valid depth-`n` portraits, sorted.
    pub fn enumerate_window_valid(&self, n: usize, budget: &Budget) -> Result<Vec<u128>> {
        let count = self.count_window_valid(n)?;
        if count > BigUint::from(budget.max_elements) {
            return Err(budget.exceeded(count.to_usize().unwrap_or(usize::MAX)));
        }
        let codec = Codec::new(self.p(), n)?;
        let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
        self.for_each_window_valid(n, |acts| out.push(codec.encode_slice(acts)))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Writes the pattern file: header, then sorted base-p activity strings.
    pub fn export<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "p={} m={} pattern_depth={} size={}",
            self.p(),
            self.m,
            self.pattern_depth(),
            self.size()
        )?;
        for &c in &self.patterns {
            writeln!(out, "{}", self.codec.decode(c).digit_string())?;
        }
        Ok(())
    }

    /// Reads a pattern file written by [`PatternSet::export`].
    pub fn load<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty pattern file".into()))??;
        let mut fields = FxHashMap::default();
        for part in header.split_whitespace() {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("bad header field {part}")))?;
            let v: usize = v
                .parse()
                .map_err(|_| Error::Format(format!("bad header value {part}")))?;
            fields.insert(k.to_string(), v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::Format(format!("header lacks {k}")))
        };
        let (p, m, depth, size) = (get("p")?, get("m")?, get("pattern_depth")?, get("size")?);
        let mut portraits = Vec::with_capacity(size);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            portraits.push(Portrait::from_digit_string(p as u32, depth, line.trim())?);
        }
        if portraits.len() != size {
            return Err(Error::Format(format!(
                "header declares {size} patterns, file has {}",
                portraits.len()
            )));
        }
        Self::from_portraits(m, &portraits)
    }
}

/// Checks that sorted `codes` is closed under products and contains the
/// identity, by greedily adding generators until the closure is reached.
fn check_group(codec: &Codec, codes: &[u128]) -> Result<()> {
    if codes.first() != Some(&0) {
        return Err(Error::NotAGroup);
    }
    let budget = Budget {
        max_elements: codes.len(),
        max_bytes: usize::MAX,
    };
    let mut gens = Vec::new();
    let mut reached = vec![0u128];
    for &c in codes {
        if reached.binary_search(&c).is_ok() {
            continue;
        }
        gens.push(SparseElement::from_portrait(&codec.decode(c)));
        reached = match closure(codec, &gens, &budget) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { .. }) => return Err(Error::NotAGroup),
            Err(e) => return Err(e),
        };
    }
    if reached.len() != codes.len() {
        return Err(Error::NotAGroup);
    }
    Ok(())
}

fn encode_at(codec: &Codec, acts: &[u32], idx: &[usize], len: usize) -> u128 {
    let bits = codec.bits();
    idx[..len]
        .iter()
        .fold(0u128, |acc, &i| (acc << bits) | acts[i] as u128)
}

/// For each vertex `u` holding a window, the level-order positions of the
/// window's vertices inside a depth-`n` activity vector.
struct Windows {
    p: u32,
    last_level: usize,
    slots: Vec<Vec<usize>>,
}

impl Windows {
    fn new(p: u32, n: usize, d: usize) -> Self {
        let last_level = n - d;
        let mut slots = Vec::with_capacity(vertex_count(p, last_level + 1));
        for level in 0..=last_level {
            for rank in 0..(p as usize).pow(level as u32) {
                let mut idx = Vec::with_capacity(vertex_count(p, d));
                for j in 0..d {
                    let width = (p as usize).pow(j as u32);
                    let start = level_offset(p, level + j) + rank * width;
                    idx.extend(start..start + width);
                }
                slots.push(idx);
            }
        }
        Windows { p, last_level, slots }
    }

    fn children(&self, slot: usize) -> std::ops::Range<usize> {
        let p = self.p as usize;
        let mut level = 0;
        while level_offset(self.p, level + 1) <= slot {
            level += 1;
        }
        if level == self.last_level {
            return 0..0;
        }
        let rank = slot - level_offset(self.p, level);
        let start = level_offset(self.p, level + 1) + rank * p;
        start..start + p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub depth: usize,
    pub dp_count: String,
    pub table_size: usize,
    /// Window-valid portraits missing from the table.
    pub valid_not_in_table: u64,
    /// Table elements with a window outside the pattern set.
    pub table_not_valid: u64,
    /// Up to ten offending activity strings.
    pub examples: Vec<String>,
    /// Set when the window-valid set was too large to enumerate.
    pub enumeration_skipped: bool,
    pub agree: bool,
}

/// Compares the window-valid depth-`n` portraits with the quotient table.
pub fn cross_check(patterns: &PatternSet, table: &QuotientTable, budget: &Budget) -> Result<CrossCheckReport> {
    let n = table.depth();
    let dp = patterns.count_window_valid(n)?;
    let mut examples = Vec::new();
    let note = |acts: &[u32], examples: &mut Vec<String>| {
        if examples.len() < 10 {
            examples.push(acts.iter().map(|&a| std::char::from_digit(a, 36).unwrap()).collect());
        }
    };
    let w = patterns.windows(n)?;
    let mut table_not_valid = 0;
    let mut acts = vec![0u32; table.codec().vertices()];
    for &c in table.codes() {
        table.codec().decode_into(c, &mut acts);
        if !patterns.windows_valid(&w, &acts) {
            table_not_valid += 1;
            note(&acts, &mut examples);
        }
    }
    let mut valid_not_in_table = 0;
    let skip = dp > BigUint::from(budget.max_elements);
    if !skip {
        let codec = table.codec();
        patterns.for_each_window_valid(n, |acts| {
            if table.index_of_code(codec.encode_slice(acts)).is_none() {
                valid_not_in_table += 1;
                note(acts, &mut examples);
            }
        })?;
    }
    let agree = !skip
        && table_not_valid == 0
        && valid_not_in_table == 0
        && dp == BigUint::from(table.size());
    Ok(CrossCheckReport {
        depth: n,
        dp_count: dp.to_string(),
        table_size: table.size(),
        valid_not_in_table,
        table_not_valid,
        examples,
        enumeration_skipped: skip,
        agree,
    })
}

/// [`cross_check`] for `G_{p,f}` against its own pattern group.
pub fn cross_check_membership(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<CrossCheckReport> {
    let patterns = PatternSet::pattern_group(spec, budget)?;
    let table = QuotientTable::enumerate(spec, n, budget)?;
    cross_check(&patterns, &table, budget)
}
