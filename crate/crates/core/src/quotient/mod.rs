//! Exact enumeration of congruence quotients `G/G_n`.
//!
//! `G/G_n` is the group generated by the depth-`n` portraits of `a` and
//! `d_0, ..., d_{m-1}`. It is enumerated breadth-first on packed portraits,
//! then sorted, so ordinals are a pure function of `(spec, n)` regardless of
//! thread count.

mod dimension;
mod verify;

use std::io::Write;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::gfp::GroupSpec;
use crate::portrait::{Codec, Portrait, SparseElement};
use crate::word::Word;

pub use dimension::{
    closed_form_dimension, closed_form_nu, general_dimension, hausdorff_dimension,
    hausdorff_dimension_capped, t_sequence, theoretical_t, DimensionMode, DimensionReport,
    GeneralDimension, Source, TSequence,
};
pub use verify::{
    abelianization_check, branching_check, preset_generators,
    full_wreath_check, self_replicating_check, self_replicating_check_group, subgroup_index,
    subgroup_index_in, verify_branch_generators, AbelianizationReport, BranchGeneratorReport, BranchingData,
    BranchingReport, SelfReplicationReport, SubgroupIndex, SubgroupPreset, WreathReport,
};

/// Resource limits for enumeration. Exceeding either is reported as
/// [`Error::BudgetExceeded`], never as a truncated result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_elements: usize,
    pub max_bytes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 8_000_000,
            max_bytes: 4 << 30,
        }
    }
}

impl Budget {
    pub(crate) fn check(&self, count: usize, bytes_per_element: usize) -> Result<()> {
        if count > self.max_elements || count.saturating_mul(bytes_per_element) > self.max_bytes {
            return Err(self.exceeded(count));
        }
        Ok(())
    }

    pub(crate) fn exceeded(&self, reached: usize) -> Error {
        Error::BudgetExceeded {
            reached,
            limit_elements: self.max_elements,
            limit_bytes: self.max_bytes,
        }
    }
}

/// Hash set entry, sorted code and one move ordinal per generator.
fn bytes_per_element(generators: usize) -> usize {
    48 + 4 * generators
}

/// Breadth-first closure of `{identity}` under left multiplication by `generators`.
pub(crate) fn closure(codec: &Codec, generators: &[SparseElement], budget: &Budget) -> Result<Vec<u128>> {
    let bpe = bytes_per_element(generators.len());
    let mut seen: FxHashSet<u128> = FxHashSet::default();
    seen.insert(0);
    let mut frontier = vec![0u128];
    while !frontier.is_empty() {
        let next: Vec<u128> = frontier
            .par_iter()
            .flat_map_iter(|&h| generators.iter().map(move |g| g.left_mul(codec, h)))
            .collect();
        let mut fresh = Vec::new();
        for c in next {
            if seen.insert(c) {
                fresh.push(c);
            }
        }
        budget.check(seen.len(), bpe)?;
        frontier = fresh;
    }
    let mut elements: Vec<u128> = seen.into_iter().collect();
    elements.par_sort_unstable();
    Ok(elements)
}

/// The finite group `G/G_n` with its elements in canonical order and the
/// Cayley moves of each generator.
#[derive(Clone, Debug)]
pub struct QuotientTable {
    spec: Option<GroupSpec>,
    codec: Codec,
    generator_names: Vec<String>,
    generators: Vec<Portrait>,
    /// Sorted packed portraits; ordinal 0 is the identity.
    elements: Vec<u128>,
    /// `moves[g][i]` is the ordinal of `generator_g * element_i`.
    moves: Vec<Vec<u32>>,
}

impl QuotientTable {
    /// Enumerates `G/G_n` for `G = G_{p,f}`, generated by `a, d_0, ..., d_{m-1}`.
    pub fn enumerate(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<Self> {
        if n == 0 {
            return Err(Error::InsufficientDepth("quotient depth must be at least 1".into()));
        }
        let mut gens = vec![("a".to_string(), Word::a(spec, 1).portrait(spec, n))];
        for i in 0..spec.m() {
            let w = Word::d(spec, i);
            gens.push((w.to_string(), w.portrait(spec, n)));
        }
        let mut table = Self::enumerate_group(spec.p(), n, gens, budget)?;
        table.spec = Some(spec.clone());
        Ok(table)
    }

    /// Enumerates the group generated by arbitrary portraits of a common depth.
    pub fn enumerate_group(
        p: u32,
        depth: usize,
        generators: Vec<(String, Portrait)>,
        budget: &Budget,
    ) -> Result<Self> {
        let codec = Codec::new(p, depth)?;
        if let Some((_, g)) = generators.iter().find(|(_, g)| g.p() != p || g.depth() != depth) {
            return Err(Error::DepthMismatch(depth, g.depth()));
        }
        let sparse: Vec<SparseElement> = generators
            .iter()
            .map(|(_, g)| SparseElement::from_portrait(g))
            .collect();
        let elements = closure(&codec, &sparse, budget)?;
        let moves = sparse
            .iter()
            .map(|g| {
                elements
                    .par_iter()
                    .map(|&c| {
                        let target = g.left_mul(&codec, c);
                        elements.binary_search(&target).expect("closed under generators") as u32
                    })
                    .collect()
            })
            .collect();
        let (generator_names, generators) = generators.into_iter().unzip();
        Ok(QuotientTable {
            spec: None,
            codec,
            generator_names,
            generators,
            elements,
            moves,
        })
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn p(&self) -> u32 {
        self.codec.p()
    }

    pub fn depth(&self) -> usize {
        self.codec.depth()
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// `log_p` of the size.
    pub fn nu(&self) -> u32 {
        let p = self.p() as usize;
        let mut n = self.elements.len();
        let mut nu = 0;
        while n > 1 {
            debug_assert_eq!(n % p, 0, "quotient of a p-group");
            n /= p;
            nu += 1;
        }
        nu
    }

    pub fn codes(&self) -> &[u128] {
        &self.elements
    }

    pub fn portrait(&self, ordinal: usize) -> Portrait {
        self.codec.decode(self.elements[ordinal])
    }

    pub fn portraits(&self) -> impl Iterator<Item = Portrait> + '_ {
        self.elements.iter().map(|&c| self.codec.decode(c))
    }

    pub fn index_of_code(&self, code: u128) -> Option<usize> {
        self.elements.binary_search(&code).ok()
    }

    pub fn index_of(&self, g: &Portrait) -> Option<usize> {
        if g.p() != self.p() || g.depth() != self.depth() {
            return None;
        }
        self.index_of_code(self.codec.encode(g))
    }

    pub fn contains(&self, g: &Portrait) -> bool {
        self.index_of(g).is_some()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generators(&self) -> &[Portrait] {
        &self.generators
    }

    pub fn moves(&self, generator: usize) -> &[u32] {
        &self.moves[generator]
    }

    /// The quotient one level up, obtained by truncating every element.
    pub fn truncated(&self) -> Result<QuotientTable> {
        let depth = self.depth();
        if depth <= 1 {
            return Err(Error::InsufficientDepth("cannot truncate below depth 1".into()));
        }
        let gens = self
            .generator_names
            .iter()
            .cloned()
            .zip(self.generators.iter().map(|g| g.truncate(depth - 1)))
            .collect();
        let mut t = QuotientTable::enumerate_group(self.p(), depth - 1, gens, &Budget {
            max_elements: usize::MAX,
            max_bytes: usize::MAX,
        })?;
        t.spec = self.spec.clone();
        Ok(t)
    }

    /// Writes the quotient export: a header line, then one sorted base-p
    /// activity string per element.
    pub fn export<W: Write>(&self, mut out: W) -> Result<()> {
        let f = match &self.spec {
            Some(s) => s
                .full_coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            None => "-".to_string(),
        };
        writeln!(
            out,
            "p={} f={} depth={} size={}",
            self.p(),
            f,
            self.depth(),
            self.size()
        )?;
        let mut acts = vec![0u32; self.codec.vertices()];
        let mut line = String::with_capacity(acts.len() + 1);
        for &c in &self.elements {
            self.codec.decode_into(c, &mut acts);
            line.clear();
            line.extend(acts.iter().map(|&a| std::char::from_digit(a, 36).unwrap()));
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }
}

/// `nu_1, nu_2, ...` with `[G:G_n] = p^{nu_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence {
    pub p: u32,
    pub nus: Vec<u32>,
    /// Set when the budget stopped the run before `n_max`; `nus` is then a prefix.
    pub exhausted: Option<Error>,
}

impl IndexSequence {
    /// `nu_n` (1-based).
    pub fn nu(&self, n: usize) -> Option<u32> {
        n.checked_sub(1).and_then(|i| self.nus.get(i)).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.exhausted.is_none()
    }
}

pub fn enumerate_quotient(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<QuotientTable> {
    QuotientTable::enumerate(spec, n, budget)
}

/// Runs [`enumerate_quotient`] for `n = 1..=n_max`.
pub fn index_sequence(spec: &GroupSpec, n_max: usize, budget: &Budget) -> IndexSequence {
    let mut nus = Vec::new();
    for n in 1..=n_max {
        match QuotientTable::enumerate(spec, n, budget) {
            Ok(t) => nus.push(t.nu()),
            Err(e) => {
                return IndexSequence {
                    p: spec.p(),
                    nus,
                    exhausted: Some(e),
                }
            }
        }
    }
    IndexSequence {
        p: spec.p(),
        nus,
        exhausted: None,
    }
}

/// Generator tokens `a, d_0, ..., d_{m-1}` as words.
pub fn standard_generators(spec: &GroupSpec) -> Vec<Word> {
    let mut v = vec![Word::a(spec, 1)];
    v.extend((0..spec.m()).map(|i| Word::d(spec, i)));
    v
}
