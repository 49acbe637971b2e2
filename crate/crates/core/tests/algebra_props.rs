//! Invariants of the GF(p) data, with brute-force oracles for torsion and
//! faithfulness.

use proptest::prelude::*;
use selfsimilar::gfp::{faithfulness_check, growth_polynomial, GrowthParameters};
use selfsimilar::{FieldMatrix, FieldVector, GroupSpec};

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    (prop::sample::select(vec![2i64, 3, 5, 7]), 1usize..=4).prop_flat_map(|(p, m)| {
        (1..p, prop::collection::vec(0..p, m - 1)).prop_map(move |(a0, rest)| {
            let mut coeffs = vec![a0];
            coeffs.extend(rest);
            coeffs.push(1);
            GroupSpec::new(p, &coeffs).unwrap()
        })
    })
}

fn all_vectors(p: u32, m: usize) -> Vec<FieldVector> {
    (0..(p as u64).pow(m as u32))
        .map(|r| FieldVector::from_rank(r, p, m))
        .collect()
}

fn dot(v: &FieldVector, w: &[u32], p: u32) -> u32 {
    (v.entries().iter().zip(w).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32
}

/// Least `r` with `B_0 ∪ ... ∪ B_{r-1} = B`, found by testing each vector:
/// `v` lies in `B_i` iff `omega(rho^{-i} v) = 0`.
fn brute_force_r(spec: &GroupSpec) -> Option<u32> {
    let p = spec.p();
    let m = spec.m();
    let limit = (p as i64).pow(m as u32);
    let mut r = 0;
    for v in all_vectors(p, m) {
        let first = (0..=limit).find(|&i| spec.omega_of(&spec.rho_power_apply(&v, -i)) == 0)?;
        r = r.max(first as u32 + 1);
    }
    Some(r)
}

/// Faithful iff no nonzero `v` has `omega(rho^i v) = 0` for every `i`.
fn brute_force_faithful(rho: &FieldMatrix, omega: &[u32]) -> bool {
    let p = rho.p();
    let m = rho.dim();
    let period = (p as usize).pow(m as u32) * 2;
    all_vectors(p, m).into_iter().filter(|v| !v.is_zero()).all(|v| {
        let mut w = v;
        for _ in 0..period {
            if dot(&w, omega, p) != 0 {
                return true;
            }
            w = rho.apply(&w);
        }
        false
    })
}

fn row_space(spec: &GroupSpec, basis: &[FieldVector]) -> Vec<FieldVector> {
    spec.span(basis)
}

proptest! {
    #[test]
    fn cayley_hamilton(spec in spec_strategy(), seed in any::<u64>()) {
        let p = spec.p();
        let m = spec.m();
        let v = FieldVector::from_rank(seed % (p as u64).pow(m as u32), p, m);
        let mut acc = FieldVector::zero(m);
        for (i, &a) in spec.low_coeffs().iter().enumerate() {
            acc = acc.add(&spec.rho_power_apply(&v, i as i64).scale(a, p), p);
        }
        prop_assert_eq!(spec.rho_power_apply(&v, m as i64), acc.neg(p));
    }

    #[test]
    fn orbits_partition(spec in spec_strategy()) {
        let rep = spec.rho_orbits();
        let p = spec.p() as usize;
        prop_assert_eq!(rep.total_members(), p.pow(spec.m() as u32) - 1);
        let mut all: Vec<&FieldVector> = rep.orbits.iter().flat_map(|o| &o.members).collect();
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), rep.total_members());
        for o in &rep.orbits {
            let start = &o.members[0];
            prop_assert_eq!(&spec.rho_power_apply(start, o.members.len() as i64), start);
        }
    }

    #[test]
    fn kernel_subspaces_shift(spec in spec_strategy(), i in -3i64..4) {
        let next = row_space(&spec, &spec.kernel_subspace(i + 1));
        let image: Vec<FieldVector> = spec.kernel_subspace(i).iter().map(|v| spec.rho(v)).collect();
        prop_assert_eq!(next, row_space(&spec, &image));
    }

    #[test]
    fn torsion_matches_brute_force(spec in spec_strategy()) {
        let t = spec.torsion_analysis();
        let brute = if spec.m() == 1 { None } else { brute_force_r(&spec) };
        prop_assert_eq!(t.r, brute);
        prop_assert_eq!(t.is_p_group, brute.is_some());
        if t.is_p_group {
            prop_assert!(spec.rho_orbits().orbits.iter().all(|o| o.meets_kernel));
            prop_assert!(t.r.unwrap() as usize <= (spec.p() as usize).pow(spec.m() as u32));
        } else {
            let w = t.witness_orbit.unwrap();
            prop_assert!(w.iter().all(|v| spec.omega_of(v) != 0));
        }
    }

    #[test]
    fn faithfulness_matches_brute_force(
        p in prop::sample::select(vec![2u32, 3, 5]),
        m in 1usize..=3,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let rows: Vec<Vec<u32>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect()).collect();
        let omega: Vec<u32> = (0..m).map(|_| rng.gen_range(0..p)).collect();
        let rho = FieldMatrix::new(p, rows).unwrap();
        match faithfulness_check(&rho, &omega) {
            Ok(f) => {
                prop_assert_eq!(f.faithful, brute_force_faithful(&rho, &omega));
                if let Some(w) = f.witness {
                    prop_assert!(w.iter().all(|v| dot(v, &omega, p) == 0 && !v.is_zero()));
                }
            }
            Err(_) => prop_assert!(rho.inverse().is_none() || omega.iter().all(|&w| w == 0)),
        }
    }

    #[test]
    fn growth_root_properties(r in 2u32..12) {
        let g = GrowthParameters::for_r(2, r).unwrap();
        prop_assert!(growth_polynomial(r, g.eta).abs() < 1e-12);
        prop_assert!(0.0 < g.eta && g.eta < 1.0);
        let next = GrowthParameters::for_r(2, r + 1).unwrap();
        prop_assert!(next.alpha > g.alpha);
    }
}

/// Companion inputs are always faithful.
#[test]
fn faithfulness_sweep() {
    let mut checked = 0;
    for p in [2i64, 3, 5, 7] {
        for m in 1..=4usize {
            let count = (p as u64).pow(m as u32 - 1) * (p as u64 - 1);
            for idx in 0..count {
                let mut coeffs = vec![(idx % (p as u64 - 1)) as i64 + 1];
                let mut rest = idx / (p as u64 - 1);
                for _ in 1..m {
                    coeffs.push((rest % p as u64) as i64);
                    rest /= p as u64;
                }
                coeffs.push(1);
                let spec = GroupSpec::new(p, &coeffs).unwrap();
                let f = faithfulness_check(spec.companion_matrix(), spec.omega_row()).unwrap();
                assert!(f.faithful, "{}", spec.polynomial_string());
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1 + 2 + 4 + 8 + 2 + 6 + 18 + 54 + 4 + 20 + 100 + 500 + 6 + 42 + 294 + 2058);
}
