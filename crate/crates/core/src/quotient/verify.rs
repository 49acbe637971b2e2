//! Structural verifications on finite quotients.

use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{closure, standard_generators, Budget, QuotientTable};
use crate::error::{Error, Result};
use crate::gfp::{FieldVector, GroupSpec};
use crate::portrait::{vertex_count, Codec, Portrait, SparseElement};
use crate::word::Word;

/// Codes of a depth-`depth` codec whose activities vanish on the first
/// `levels` levels form the range `[0, bound)`.
fn zero_prefix_bound(codec: &Codec, levels: usize) -> u128 {
    let free = codec.vertices() - vertex_count(codec.p(), levels);
    let bits = codec.bits() as usize;
    if bits * free >= 128 {
        u128::MAX
    } else {
        1u128 << (bits * free)
    }
}

fn zero_prefix<'a>(codes: &'a [u128], codec: &Codec, levels: usize) -> &'a [u128] {
    let bound = zero_prefix_bound(codec, levels);
    &codes[..codes.partition_point(|&c| c < bound)]
}

/// Sorted, deduplicated truncation of every code by one level.
fn truncate_all(codec: &Codec, codes: &[u128]) -> Vec<u128> {
    let mut out: Vec<u128> = codes.iter().map(|&c| codec.truncate_code(c)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Section at the level-1 vertex `x`, as a depth-`depth - 1` code.
fn section_code(codec: &Codec, lower: &Codec, code: u128, x: u32) -> u128 {
    let g = codec.decode(code);
    lower.encode(&g.section(&[x]).expect("level-1 vertex"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupPreset {
    /// `[x, y]` over all pairs of standard generators.
    Commutator,
    /// `[a, b]` over a basis of `B_1`; only for `p = 2`.
    KSubgroup,
}

impl std::str::FromStr for SubgroupPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "commutator" => Ok(SubgroupPreset::Commutator),
            "k" | "k-subgroup" => Ok(SubgroupPreset::KSubgroup),
            _ => Err(Error::BadParameters(format!("unknown subgroup preset {s}"))),
        }
    }
}

pub fn preset_generators(spec: &GroupSpec, preset: SubgroupPreset) -> Result<Vec<Word>> {
    match preset {
        SubgroupPreset::Commutator => {
            let gens = standard_generators(spec);
            let mut out = Vec::new();
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    out.push(Word::commutator(spec, &gens[i], &gens[j]));
                }
            }
            Ok(out)
        }
        SubgroupPreset::KSubgroup => {
            if spec.p() != 2 {
                return Err(Error::BadParameters("the K subgroup is defined only for p = 2".into()));
            }
            let a = Word::a(spec, 1);
            spec.kernel_subspace(1)
                .into_iter()
                .map(|v| Ok(Word::commutator(spec, &a, &Word::b(spec, v)?)))
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupIndex {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: u64,
    /// `log_p` of the index.
    pub exponent: u32,
}

/// Sorted codes of the (normal) closure of `gens` inside `table`.
fn subgroup_codes(
    table: &QuotientTable,
    gens: &[Portrait],
    normal_closure: bool,
    budget: &Budget,
) -> Result<Vec<u128>> {
    let codec = table.codec();
    for g in gens {
        if !table.contains(g) {
            return Err(Error::BadParameters("subgroup generator outside the quotient".into()));
        }
    }
    let mut gens: Vec<Portrait> = gens.to_vec();
    loop {
        let sparse: Vec<SparseElement> = gens.iter().map(SparseElement::from_portrait).collect();
        let codes = closure(codec, &sparse, budget)?;
        if !normal_closure {
            return Ok(codes);
        }
        let mut added = false;
        for g in table.generators() {
            let g_inv = g.inverse();
            for x in gens.clone() {
                let c = g_inv.compose(&x)?.compose(g)?;
                if codes.binary_search(&codec.encode(&c)).is_err() {
                    gens.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(codes);
        }
    }
}

pub fn subgroup_index_in(
    table: &QuotientTable,
    gens: &[Portrait],
    normal_closure: bool,
    budget: &Budget,
) -> Result<SubgroupIndex> {
    let h = subgroup_codes(table, gens, normal_closure, budget)?;
    Ok(index_report(table, h.len()))
}

fn index_report(table: &QuotientTable, subgroup_order: usize) -> SubgroupIndex {
    let index = (table.size() / subgroup_order) as u64;
    let mut exponent = 0;
    let mut k = index;
    while k > 1 {
        k /= table.p() as u64;
        exponent += 1;
    }
    SubgroupIndex {
        group_order: table.size(),
        subgroup_order,
        index,
        exponent,
    }
}

/// Index of the subgroup generated by `words` in `G/G_n`.
pub fn subgroup_index(
    spec: &GroupSpec,
    n: usize,
    words: &[Word],
    normal_closure: bool,
    budget: &Budget,
) -> Result<SubgroupIndex> {
    let table = QuotientTable::enumerate(spec, n, budget)?;
    let gens: Vec<Portrait> = words.iter().map(|w| w.portrait(spec, n)).collect();
    subgroup_index_in(&table, &gens, normal_closure, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchGeneratorReport {
    pub depth: usize,
    pub checked: usize,
    /// `(b, b')` pairs whose identity failed.
    pub failures: Vec<(FieldVector, FieldVector)>,
    pub pass: bool,
}

/// Checks `[b^a, rho^{-1}(b')] = (1, ..., 1, [a, b'])` on portraits, for every
/// `b` with `omega(b) = 1` and every `b'` in `B` (odd `p`) or in `B_1` (`p = 2`).
pub fn verify_branch_generators(spec: &GroupSpec, depth: usize) -> Result<BranchGeneratorReport> {
    let m = spec.m();
    if m < 2 {
        return Err(Error::DegreeTooSmall(m));
    }
    if depth < 4 {
        return Err(Error::InsufficientDepth("branch generator check needs depth >= 4".into()));
    }
    let p = spec.p();
    let all: Vec<FieldVector> = (0..(p as u64).pow(m as u32))
        .map(|r| FieldVector::from_rank(r, p, m))
        .collect();
    let primes = if p == 2 {
        spec.span(&spec.kernel_subspace(1))
    } else {
        all.clone()
    };
    let a = Word::a(spec, 1);
    let identity = Portrait::identity(p, depth - 1);
    let mut checked = 0;
    let mut failures = Vec::new();
    for b in all.iter().filter(|b| spec.omega_of(b) == 1) {
        let ba = Word::b(spec, b.clone())?.conjugate(spec, &a);
        for b2 in &primes {
            let shifted = Word::b(spec, spec.rho_power_apply(b2, -1))?;
            let lhs = Word::commutator(spec, &ba, &shifted).portrait(spec, depth);
            let inner = Word::commutator(spec, &a, &Word::b(spec, b2.clone())?).portrait(spec, depth - 1);
            let mut sections = vec![identity.clone(); p as usize];
            sections[p as usize - 1] = inner;
            let rhs = Portrait::from_sections(0, &sections)?;
            checked += 1;
            if lhs != rhs {
                failures.push((b.clone(), b2.clone()));
            }
        }
    }
    Ok(BranchGeneratorReport {
        depth,
        checked,
        pass: failures.is_empty() && checked > 0,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingReport {
    pub n: usize,
    pub d: usize,
    /// `|G_n/G_d|`.
    pub component_size: usize,
    /// Number of `p`-tuples checked.
    pub tuples_checked: u128,
    /// Section tuples found in the stabilizer.
    pub targets: usize,
    pub missing: u128,
    pub pass: bool,
}

/// Data for checking `psi(G_{n+1}) >= G_n x ... x G_n` modulo `G_d`.
#[derive(Clone, Debug)]
pub struct BranchingData {
    p: u32,
    n: usize,
    d: usize,
    codec: Codec,
    component: Vec<u128>,
    targets: FxHashSet<Vec<u128>>,
    max_tuples: usize,
}

impl BranchingData {
    pub fn compute(spec: &GroupSpec, n: usize, d: usize, budget: &Budget) -> Result<Self> {
        let s = spec.m() + 1;
        if n < s || d <= n {
            return Err(Error::BadParameters(format!("need n >= {s} and d > n")));
        }
        let p = spec.p();
        let upper = QuotientTable::enumerate(spec, d + 1, budget)?;
        let ucodec = *upper.codec();
        let codec = Codec::new(p, d)?;
        let lower = truncate_all(&ucodec, upper.codes());
        let component = zero_prefix(&lower, &codec, n).to_vec();
        let targets = zero_prefix(upper.codes(), &ucodec, n + 1)
            .iter()
            .map(|&c| (0..p).map(|x| section_code(&ucodec, &codec, c, x)).collect())
            .collect();
        Ok(BranchingData {
            p,
            n,
            d,
            codec,
            component,
            targets,
            max_tuples: budget.max_elements,
        })
    }

    pub fn component(&self) -> impl Iterator<Item = Portrait> + '_ {
        self.component.iter().map(|&c| self.codec.decode(c))
    }

    pub fn check(&self) -> Result<BranchingReport> {
        self.check_with_extra(&[])
    }

    /// Runs the check with `extra` depth-`d` portraits added to the component.
    pub fn check_with_extra(&self, extra: &[Portrait]) -> Result<BranchingReport> {
        let mut comp = self.component.clone();
        for g in extra {
            if g.p() != self.p || g.depth() != self.d {
                return Err(Error::DepthMismatch(self.d, g.depth()));
            }
            comp.push(self.codec.encode(g));
        }
        comp.sort_unstable();
        comp.dedup();
        let k = comp.len();
        let total = (k as u128).checked_pow(self.p);
        let total = match total {
            Some(t) if t <= self.max_tuples as u128 => t,
            _ => return Err(Error::BudgetExceeded {
                reached: k,
                limit_elements: self.max_tuples,
                limit_bytes: 0,
            }),
        };
        let mut idx = vec![0usize; self.p as usize];
        let mut tuple = vec![comp[0]; self.p as usize];
        let mut missing = 0u128;
        for _ in 0..total {
            for (slot, &i) in tuple.iter_mut().zip(&idx) {
                *slot = comp[i];
            }
            if !self.targets.contains(&tuple) {
                missing += 1;
            }
            for i in idx.iter_mut().rev() {
                *i += 1;
                if *i < k {
                    break;
                }
                *i = 0;
            }
        }
        Ok(BranchingReport {
            n: self.n,
            d: self.d,
            component_size: k,
            tuples_checked: total,
            targets: self.targets.len(),
            missing,
            pass: missing == 0,
        })
    }
}

pub fn branching_check(spec: &GroupSpec, n: usize, d: usize, budget: &Budget) -> Result<BranchingReport> {
    BranchingData::compute(spec, n, d, budget)?.check()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfReplicationReport {
    pub n: usize,
    /// Per level-1 vertex: stabilizer sections fill `G/G_n`.
    pub sections_full: Vec<bool>,
    /// Size of the orbit of `0^n`.
    pub orbit_size: u64,
    pub transitive: bool,
    pub pass: bool,
}

/// Self-replication and level-`n` transitivity of the group generated by
/// depth-`n+1` portraits.
pub fn self_replicating_check_group(
    p: u32,
    generators: Vec<(String, Portrait)>,
    n: usize,
    budget: &Budget,
) -> Result<SelfReplicationReport> {
    if n == 0 {
        return Err(Error::InsufficientDepth("self-replication needs n >= 1".into()));
    }
    let upper = QuotientTable::enumerate_group(p, n + 1, generators, budget)?;
    let ucodec = upper.codec();
    let codec = Codec::new(p, n)?;
    let lower = truncate_all(ucodec, upper.codes());
    let stab = zero_prefix(upper.codes(), ucodec, 1);
    let sections_full = (0..p)
        .map(|x| {
            let mut s: Vec<u128> = stab.iter().map(|&c| section_code(ucodec, &codec, c, x)).collect();
            s.sort_unstable();
            s.dedup();
            s == lower
        })
        .collect::<Vec<_>>();
    let origin = vec![0u32; n];
    let orbit: FxHashSet<Vec<u32>> = lower
        .iter()
        .map(|&c| codec.decode(c).apply(&origin).expect("level-n vertex"))
        .collect();
    let orbit_size = orbit.len() as u64;
    let transitive = orbit_size == (p as u64).pow(n as u32);
    Ok(SelfReplicationReport {
        n,
        pass: transitive && sections_full.iter().all(|&b| b),
        sections_full,
        orbit_size,
        transitive,
    })
}

pub fn self_replicating_check(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<SelfReplicationReport> {
    let gens = standard_generators(spec)
        .into_iter()
        .map(|w| (w.to_string(), w.portrait(spec, n + 1)))
        .collect();
    self_replicating_check_group(spec.p(), gens, n, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationReport {
    pub n: usize,
    pub commutator: SubgroupIndex,
    pub expected_index: u64,
    /// Per standard generator: order exactly `p` modulo the commutator subgroup.
    pub generator_order_p: Vec<bool>,
    pub pass: bool,
}

/// Certifies `G/G' = A x B` at depth `n`: `[G:G'] = p^{m+1}` and each of the
/// `m+1` standard generators has order `p` modulo `G'`.
pub fn abelianization_check(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<AbelianizationReport> {
    let m = spec.m();
    if n < m + 1 {
        return Err(Error::InsufficientDepth(format!(
            "abelianization needs depth >= {}, the stabilizer is not yet inside G'",
            m + 1
        )));
    }
    let p = spec.p();
    let table = QuotientTable::enumerate(spec, n, budget)?;
    let gens: Vec<Portrait> = preset_generators(spec, SubgroupPreset::Commutator)?
        .iter()
        .map(|w| w.portrait(spec, n))
        .collect();
    let h = subgroup_codes(&table, &gens, true, budget)?;
    let commutator = index_report(&table, h.len());
    let codec = table.codec();
    let in_h = |g: &Portrait| h.binary_search(&codec.encode(g)).is_ok();
    let generator_order_p: Vec<bool> = table
        .generators()
        .iter()
        .map(|g| !in_h(g) && in_h(&g.pow(p as u64)))
        .collect();
    let expected_index = (p as u64).pow(m as u32 + 1);
    Ok(AbelianizationReport {
        n,
        pass: commutator.index == expected_index && generator_order_p.iter().all(|&b| b),
        commutator,
        expected_index,
        generator_order_p,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathReport {
    pub n: usize,
    pub nu: u32,
    pub expected_nu: u32,
    pub pass: bool,
}

/// `G/G_n` is the full iterated wreath product for `n <= m+1`.
pub fn full_wreath_check(spec: &GroupSpec, n: usize, budget: &Budget) -> Result<WreathReport> {
    if n == 0 || n > spec.m() + 1 {
        return Err(Error::BadParameters(format!(
            "the quotient is the full wreath product only for 1 <= n <= {}",
            spec.m() + 1
        )));
    }
    let p = spec.p();
    let nu = QuotientTable::enumerate(spec, n, budget)?.nu();
    let expected_nu = ((p as u64).pow(n as u32) - 1) / (p as u64 - 1);
    let expected_nu = expected_nu as u32;
    Ok(WreathReport {
        n,
        nu,
        expected_nu,
        pass: nu == expected_nu,
    })
}
