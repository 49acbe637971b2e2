//! Hausdorff dimension of the closure: measured, cited and mixed.

use selfsimilar::quotient::{hausdorff_dimension, Budget, DimensionMode};
use selfsimilar::GroupSpec;

fn main() -> selfsimilar::Result<()> {
    let budget = Budget::default();
    for (p, f) in [(2, vec![1, 1, 1]), (2, vec![1, 1, 0, 1]), (3, vec![2, 2, 1]), (5, vec![1, 1, 1])] {
        let g = GroupSpec::new(p, &f)?;
        for mode in [DimensionMode::Theoretical, DimensionMode::Hybrid] {
            let rep = hausdorff_dimension(&g, mode, &budget)?;
            println!(
                "p = {p}, f = {:<12} {:<11} r = {:>3} ({:?}), t = {} ({:?}): {} = {:.6}, closed form {}",
                g.polynomial_string(),
                format!("{mode:?}"),
                rep.r,
                rep.r_source,
                rep.t,
                rep.t_source,
                rep.dimension,
                rep.dimension_f64(),
                if rep.matches_closed_form { "matches" } else { "differs" },
            );
        }
    }
    let g = GroupSpec::new(2, &[1, 1, 1])?;
    let rep = hausdorff_dimension(&g, DimensionMode::Empirical, &budget)?;
    println!("Grigorchuk, fully measured: {} from nu = {:?}", rep.dimension, rep.nus);
    Ok(())
}
