//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use selfsimilar::gfp::{growth_polynomial, GrowthParameters};
use selfsimilar::patterns::{cross_check_membership, PatternSet};
use selfsimilar::quotient::{
    branching_check, general_dimension, hausdorff_dimension, index_sequence, preset_generators,
    subgroup_index, t_sequence, verify_branch_generators, BranchingData, Budget, DimensionMode,
    QuotientTable, SubgroupPreset,
};
use selfsimilar::word::{element_order, is_identity};
use selfsimilar::{FieldVector, GroupSpec, OrderLimits, OrderResult, Portrait, Word};

const BFS_DEPTH5_LIMIT: Duration = Duration::from_secs(120);
const FULL_WREATH_32_LIMIT: Duration = Duration::from_secs(600);
const BRANCH_GENERATOR_LIMIT: Duration = Duration::from_secs(1);
const DP_DEPTH6_LIMIT: Duration = Duration::from_secs(5);
const MEMORY_LIMIT_KB: u64 = 4 * 1024 * 1024;
const HANOI_TOLERANCE: f64 = 1e-6;
const ETA_TOLERANCE: f64 = 1e-12;
const ALPHA_WINDOW: (f64, f64) = (0.767, 0.768);
const RANDOM_WORDS: usize = 1000;
const RANDOM_WORD_SEED: u64 = 0x5e1f_5171;

fn spec(p: i64, f: &[i64]) -> GroupSpec {
    GroupSpec::new(p, f).unwrap()
}

fn grigorchuk() -> GroupSpec {
    spec(2, &[1, 1, 1])
}

/// Peak resident set size of this process in kB.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1(nus_out: &mut Vec<u32>) -> Outcome {
    let start = Instant::now();
    let seq = index_sequence(&grigorchuk(), 5, &Budget::default());
    let elapsed = start.elapsed();
    let rss = peak_rss_kb();
    ensure(seq.is_complete(), format!("stopped early: {:?}", seq.exhausted))?;
    ensure(seq.nus == [1, 3, 7, 12, 22], format!("nu = {:?}", seq.nus))?;
    ensure(elapsed < BFS_DEPTH5_LIMIT, format!("took {elapsed:?}"))?;
    if let Some(kb) = rss {
        ensure(kb < MEMORY_LIMIT_KB, format!("peak RSS {kb} kB"))?;
    }
    *nus_out = seq.nus.clone();
    Ok(format!(
        "nu = {:?}, n <= 5 in {:.2?}, peak RSS {} MB",
        seq.nus,
        elapsed,
        rss.map_or("n/a".into(), |kb| (kb / 1024).to_string())
    ))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for (p, f, expected_nu) in [
        (2, vec![1, 1, 1], 7),
        (2, vec![1, 1, 0, 1], 15),
        (3, vec![2, 2, 1], 13),
    ] {
        let s = spec(p, &f);
        let start = Instant::now();
        let table = QuotientTable::enumerate(&s, s.m() + 1, &Budget::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let expected_size = (p as usize).pow(expected_nu);
        ensure(
            table.size() == expected_size,
            format!("({p},{}) size {} != {expected_size}", s.m(), table.size()),
        )?;
        if p == 3 {
            ensure(elapsed < FULL_WREATH_32_LIMIT, format!("(3,2) took {elapsed:?}"))?;
        }
        notes.push(format!("({p},{}) {p}^{expected_nu} in {elapsed:.2?}", s.m()));
    }
    Ok(notes.join(", "))
}

fn criterion_3(nus: &[u32]) -> Outcome {
    ensure(nus.len() == 5, "needs the index sequence from criterion 1")?;
    let ts = t_sequence(nus, 2, 3).map_err(|e| e.to_string())?;
    ensure(ts.t(3) == Some(3) && ts.t(4) == Some(3), format!("t = {:?}", ts.values))?;
    ensure(ts.stable, "t does not stabilize")?;
    Ok(format!("t_3 = {}, t_4 = {}", ts.values[0], ts.values[1]))
}

fn criterion_4() -> Outcome {
    let b = Budget::default();
    let emp = hausdorff_dimension(&grigorchuk(), DimensionMode::Empirical, &b).map_err(|e| e.to_string())?;
    ensure(!emp.fell_back, "empirical run fell back to cited parameters")?;
    ensure(emp.dimension.to_string() == "5/8", format!("Grigorchuk {}", emp.dimension))?;
    ensure(emp.matches_closed_form, "empirical value differs from the closed form")?;
    let th = hausdorff_dimension(&grigorchuk(), DimensionMode::Theoretical, &b).map_err(|e| e.to_string())?;
    ensure(emp.dimension == th.dimension, "empirical != theoretical")?;
    let d32 = hausdorff_dimension(&spec(3, &[2, 2, 1]), DimensionMode::Theoretical, &b).map_err(|e| e.to_string())?;
    ensure(d32.dimension.to_string() == "8/9", format!("(3,2) {}", d32.dimension))?;
    let d23 = hausdorff_dimension(&spec(2, &[1, 1, 0, 1]), DimensionMode::Theoretical, &b).map_err(|e| e.to_string())?;
    ensure(d23.dimension.to_string() == "13/16", format!("(2,3) {}", d23.dimension))?;
    Ok(format!(
        "empirical {} = theoretical, (3,2) {}, (2,3) {}",
        emp.dimension, d32.dimension, d23.dimension
    ))
}

fn criterion_5() -> Outcome {
    let b = Budget::default();
    let g = grigorchuk();
    let index = |s: &GroupSpec, n: usize, preset| -> Result<u64, String> {
        let gens = preset_generators(s, preset).map_err(|e| e.to_string())?;
        Ok(subgroup_index(s, n, &gens, true, &b).map_err(|e| e.to_string())?.index)
    };
    let gc = index(&g, 4, SubgroupPreset::Commutator)?;
    let gk = index(&g, 4, SubgroupPreset::KSubgroup)?;
    let s32 = spec(3, &[2, 2, 1]);
    let c32 = index(&s32, 3, SubgroupPreset::Commutator)?;
    ensure(gc == 8 && gk == 16 && c32 == 27, format!("indices {gc}, {gk}, {c32}"))?;
    Ok(format!("[G:G'] = {gc}, [G:K] = {gk}, (3,2) [G:G'] = {c32}"))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (p, f, depth) in [
        (2, vec![1, 1, 1], 6),
        (2, vec![1, 1, 0, 1], 5),
        (3, vec![2, 2, 1], 5),
        (5, vec![1, 1, 1], 4),
    ] {
        let s = spec(p, &f);
        let start = Instant::now();
        let rep = verify_branch_generators(&s, depth).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(rep.pass, format!("({p},{}) failures {:?}", s.m(), rep.failures))?;
        ensure(elapsed < BRANCH_GENERATOR_LIMIT, format!("({p},{}) took {elapsed:?}", s.m()))?;
        notes.push(format!("({p},{}) {} ids {elapsed:.0?}", s.m(), rep.checked));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let g = grigorchuk();
    let b = Budget::default();
    let rep = branching_check(&g, 3, 4, &b).map_err(|e| e.to_string())?;
    ensure(rep.pass, format!("{} tuples missing", rep.missing))?;
    ensure(rep.tuples_checked == 1 << 10, format!("{} tuples", rep.tuples_checked))?;
    let data = BranchingData::compute(&g, 3, 4, &b).map_err(|e| e.to_string())?;
    let mut bogus = Portrait::identity(2, 4);
    bogus.set_activity(&[0, 0, 0], 1).map_err(|e| e.to_string())?;
    let table4 = QuotientTable::enumerate(&g, 4, &b).map_err(|e| e.to_string())?;
    ensure(!table4.contains(&bogus), "control portrait lies in G/G_4")?;
    let corrupted = data.check_with_extra(&[bogus]).map_err(|e| e.to_string())?;
    ensure(!corrupted.pass, "corrupted control passed")?;
    Ok(format!(
        "{} tuples contained; corrupted control misses {}",
        rep.tuples_checked, corrupted.missing
    ))
}

fn criterion_8() -> Outcome {
    let b = Budget::default();
    let g = grigorchuk();
    let ps = PatternSet::pattern_group(&g, &b).map_err(|e| e.to_string())?;
    let c4 = ps.count_window_valid(4).map_err(|e| e.to_string())?;
    let c5 = ps.count_window_valid(5).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let c6 = ps.count_window_valid(6).map_err(|e| e.to_string())?;
    let dp6 = start.elapsed();
    let pow2 = |k: u32| BigUint::from(1u8) << k;
    ensure(c4 == pow2(12) && c5 == pow2(22) && c6 == pow2(42), format!("counts {c4}, {c5}, {c6}"))?;
    ensure(dp6 < DP_DEPTH6_LIMIT, format!("depth-6 DP took {dp6:?}"))?;
    let table5 = QuotientTable::enumerate(&g, 5, &b).map_err(|e| e.to_string())?;
    ensure(c5 == BigUint::from(table5.size()), "depth-5 count differs from BFS size")?;
    let cross = cross_check_membership(&g, 5, &b).map_err(|e| e.to_string())?;
    ensure(
        cross.agree && cross.valid_not_in_table == 0 && cross.table_not_valid == 0,
        format!("cross-check {cross:?}"),
    )?;
    Ok(format!(
        "2^12, 2^22, 2^42; depth-6 DP {dp6:.2?}; depth-5 cross-check 0 mismatches"
    ))
}

fn criterion_9() -> Outcome {
    let g = grigorchuk();
    let t = g.torsion_analysis();
    ensure(t.is_p_group && t.r == Some(3), format!("x^2+x+1: {t:?}"))?;
    let h = spec(2, &[1, 0, 1]);
    let th = h.torsion_analysis();
    let witness = th.witness_orbit.clone().unwrap_or_default();
    ensure(
        !th.is_p_group && witness == vec![FieldVector::new(vec![1, 1])],
        format!("x^2+1: {th:?}"),
    )?;
    let w = Word::parse(&h, "a b[1,1]").map_err(|e| e.to_string())?;
    let inf = element_order(&h, &w, OrderLimits::default());
    ensure(matches!(inf, OrderResult::Infinite(_)), format!("a b[1,1]: {inf:?}"))?;
    let w = Word::parse(&g, "a d0").map_err(|e| e.to_string())?;
    let fin = element_order(&g, &w, OrderLimits::default());
    ensure(fin == OrderResult::Finite(BigUint::from(4u8)), format!("a d0: {fin:?}"))?;
    let portrait = w.portrait(&g, 8);
    ensure(
        portrait.pow(4).is_identity() && !portrait.pow(2).is_identity(),
        "portrait exponentiation disagrees",
    )?;
    Ok("r = 3; witness [1,1]; a b[1,1] infinite; a d0 order 4 (portrait depth 8 agrees)".into())
}

fn criterion_10() -> Outcome {
    let t = 2f64.ln() / 6f64.ln();
    let g = general_dimension(3, 6, 1.0, 2.0, t, 1).map_err(|e| e.to_string())?;
    let reference = 1.0 - t / 3.0;
    ensure(
        (g.dimension - reference).abs() < HANOI_TOLERANCE,
        format!("{} vs {reference}", g.dimension),
    )?;
    Ok(format!("{:.9} = 1 - (1/3) log_6 2", g.dimension))
}

fn grigorchuk_token(i: usize) -> &'static str {
    ["a", "d0", "d1", "b[1,1]"][i]
}

fn criterion_11() -> Outcome {
    let g = grigorchuk();
    let depth = 16;
    let mut texts: Vec<String> = vec![String::new()];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..5 {
        layer = layer
            .iter()
            .flat_map(|w| (0..4).map(move |t| [w.clone(), vec![t]].concat()))
            .collect();
        texts.extend(layer.iter().map(|w| {
            w.iter().map(|&t| grigorchuk_token(t)).collect::<Vec<_>>().join(" ")
        }));
    }
    let exhaustive = texts.len();
    let mut rng = rand::rngs::StdRng::seed_from_u64(RANDOM_WORD_SEED);
    for _ in 0..RANDOM_WORDS {
        let len = rng.gen_range(1..=8);
        let w: Vec<&str> = (0..len).map(|_| grigorchuk_token(rng.gen_range(0..4))).collect();
        texts.push(w.join(" "));
    }
    let mut disagreements = Vec::new();
    let mut trivial = 0;
    for text in &texts {
        let w = Word::parse(&g, text).map_err(|e| e.to_string())?;
        let by_recursion = is_identity(&g, &w);
        let by_portrait = w.portrait(&g, depth).is_identity();
        trivial += by_recursion as usize;
        if by_recursion != by_portrait {
            disagreements.push(text.clone());
        }
    }
    ensure(disagreements.is_empty(), format!("disagreements: {:?}", &disagreements[..disagreements.len().min(5)]))?;
    Ok(format!(
        "{exhaustive} exhaustive + {RANDOM_WORDS} random words, {trivial} trivial, 0 disagreements"
    ))
}

fn criterion_12() -> Outcome {
    let gp = GrowthParameters::for_r(2, 3).map_err(|e| e.to_string())?;
    let eta = gp.eta;
    let residual = eta.powi(3) + eta.powi(2) + eta - 2.0;
    ensure(residual.abs() < ETA_TOLERANCE, format!("residual {residual:e}"))?;
    ensure(growth_polynomial(3, eta).abs() < ETA_TOLERANCE, "growth polynomial residual")?;
    ensure(
        gp.alpha > ALPHA_WINDOW.0 && gp.alpha < ALPHA_WINDOW.1,
        format!("alpha = {}", gp.alpha),
    )?;
    let from_spec = grigorchuk().growth_parameters().map_err(|e| e.to_string())?;
    ensure(from_spec == gp, "Grigorchuk growth parameters differ from r = 3")?;
    Ok(format!("eta = {eta:.12}, alpha = {:.6}", gp.alpha))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &outcome {
        Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
        Err(detail) => println!("criterion {id:>2} FAIL  {name}: {detail}"),
    }
    outcome.is_ok()
}

#[test]
fn acceptance() {
    let mut nus = Vec::new();
    let results = [
        run(1, "Grigorchuk index sequence", || criterion_1(&mut nus)),
        run(2, "full wreath quotients", criterion_2),
        run(3, "t extraction", || criterion_3(&nus)),
        run(4, "Hausdorff dimension", criterion_4),
        run(5, "subgroup indices", criterion_5),
        run(6, "branch-generator identities", criterion_6),
        run(7, "branching containment", criterion_7),
        run(8, "pattern DP", criterion_8),
        run(9, "torsion and element orders", criterion_9),
        run(10, "general dimension", criterion_10),
        run(11, "word problem vs portraits", criterion_11),
        run(12, "growth parameters", criterion_12),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    assert_eq!(passed, results.len());
}
