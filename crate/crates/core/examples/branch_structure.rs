//! Branch structure checked on finite quotients.

use selfsimilar::quotient::{
    abelianization_check, branching_check, full_wreath_check, preset_generators,
    self_replicating_check, subgroup_index, verify_branch_generators, Budget, SubgroupPreset,
};
use selfsimilar::GroupSpec;

fn main() -> selfsimilar::Result<()> {
    let budget = Budget::default();
    let g = GroupSpec::new(2, &[1, 1, 1])?;

    let rep = verify_branch_generators(&g, 6)?;
    println!("branch generators at depth 6: {} identities, pass = {}", rep.checked, rep.pass);

    let w = full_wreath_check(&g, 3, &budget)?;
    println!("G/G_3 is the full wreath product: nu = {} (expected {})", w.nu, w.expected_nu);

    for preset in [SubgroupPreset::Commutator, SubgroupPreset::KSubgroup] {
        let gens = preset_generators(&g, preset)?;
        let idx = subgroup_index(&g, 4, &gens, true, &budget)?;
        println!("{preset:?}: index {} at depth 4", idx.index);
    }

    let ab = abelianization_check(&g, 4, &budget)?;
    println!("G/G' = A x B at depth 4: {}", ab.pass);

    let br = branching_check(&g, 3, 4, &budget)?;
    println!(
        "psi(G_4) contains G_3 x G_3 mod G_4: {} ({} tuples)",
        br.pass, br.tuples_checked
    );

    let sr = self_replicating_check(&g, 3, &budget)?;
    println!("self-replicating at depth 3: {}, level-3 orbit size {}", sr.pass, sr.orbit_size);

    let odd = GroupSpec::new(3, &[2, 2, 1])?;
    let rep = verify_branch_generators(&odd, 5)?;
    println!("p = 3: branch generators at depth 5: {} identities, pass = {}", rep.checked, rep.pass);
    let gens = preset_generators(&odd, SubgroupPreset::Commutator)?;
    println!("p = 3: [G:G'] = {}", subgroup_index(&odd, 3, &gens, true, &budget)?.index);
    Ok(())
}
