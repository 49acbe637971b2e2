//! Word problem and element orders by contracting recursion.

use selfsimilar::{GroupSpec, OrderLimits, OrderResult, Word, WordProblem};

fn show(g: &GroupSpec, texts: &[&str]) -> selfsimilar::Result<()> {
    let mut wp = WordProblem::new(g);
    println!("f = {} over GF({})", g.polynomial_string(), g.p());
    for text in texts {
        let w = Word::parse(g, text)?;
        let trivial = wp.is_identity(&w);
        let order = match wp.element_order(&w, OrderLimits::default()) {
            OrderResult::Finite(n) => n.to_string(),
            OrderResult::Infinite(cycle) => format!("infinite (cycle of {} words)", cycle.len()),
            OrderResult::Unknown(why) => format!("unknown: {why}"),
        };
        println!("  {text:<24} trivial: {trivial:<5}  order: {order}");
    }
    Ok(())
}

fn main() -> selfsimilar::Result<()> {
    let grigorchuk = GroupSpec::new(2, &[1, 1, 1])?;
    show(&grigorchuk, &["a d0", "a d1", "a b[1,1]", "d0 d1 b[1,1]", "a d0 a d0 a d0 a d0", "a d1 a d0 a d1"])?;
    let not_torsion = GroupSpec::new(2, &[1, 0, 1])?;
    show(&not_torsion, &["a b[1,1]", "a d0", "a d1"])?;
    let odd = GroupSpec::new(3, &[2, 2, 1])?;
    show(&odd, &["a d0", "a^2 d1", "d1 a d1"])?;
    Ok(())
}
