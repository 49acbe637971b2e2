//! Orbits of rho, the torsion criterion, r, and the growth exponent.

use selfsimilar::GroupSpec;

fn main() -> selfsimilar::Result<()> {
    let specs = [
        (2, vec![1, 1, 1]),
        (2, vec![1, 0, 1]),
        (2, vec![1, 1, 0, 1]),
        (2, vec![1, 0, 0, 1]),
        (3, vec![2, 2, 1]),
        (3, vec![1, 0, 1]),
    ];
    for (p, f) in specs {
        let g = GroupSpec::new(p, &f)?;
        let orbits = g.rho_orbits();
        let lengths: Vec<usize> = orbits.orbits.iter().map(|o| o.members.len()).collect();
        let t = g.torsion_analysis();
        print!("p = {p}, f = {:<14} orbit lengths {lengths:?}  ", g.polynomial_string());
        match (t.r, g.growth_parameters()) {
            (Some(r), Ok(gp)) => println!("torsion, r = {r}, eta = {:.6}, alpha = {:.6}", gp.eta, gp.alpha),
            (Some(r), Err(_)) => println!("torsion, r = {r}"),
            (None, _) => {
                let w: Vec<String> = t.witness_orbit.unwrap_or_default().iter().map(|v| v.to_string()).collect();
                println!("not torsion, orbit avoiding ker omega: {}", w.join(" "));
            }
        }
    }

    // x^3 + 1 = (x + 1)(x^2 + x + 1) over GF(2)
    let g = GroupSpec::new(2, &[1, 0, 0, 1])?;
    for (f1, f2) in [(vec![1, 1], vec![1, 1, 1]), (vec![1, 1, 1], vec![1, 1])] {
        let fg = g.factor_generator(&f1, &f2)?;
        let basis: Vec<String> = fg.cyclic_basis.iter().map(|v| v.to_string()).collect();
        println!("factor {f1:?}: b = {}, cyclic basis {}", fg.b, basis.join(" "));
    }
    Ok(())
}
