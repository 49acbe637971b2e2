//! Exact enumeration of G/G_n, index sequences and the parameter t.

use std::time::Instant;

use selfsimilar::quotient::{closed_form_nu, index_sequence, t_sequence, Budget, QuotientTable};
use selfsimilar::GroupSpec;

fn main() -> selfsimilar::Result<()> {
    let budget = Budget::default();
    for (p, f, n_max) in [(2, vec![1, 1, 1], 5), (2, vec![1, 1, 0, 1], 4), (3, vec![2, 2, 1], 3)] {
        let g = GroupSpec::new(p, &f)?;
        let start = Instant::now();
        let seq = index_sequence(&g, n_max, &budget);
        println!("p = {p}, f = {}: nu = {:?} ({:.2?})", g.polynomial_string(), seq.nus, start.elapsed());
        let closed: Vec<String> = (1..=n_max)
            .map(|n| closed_form_nu(g.p(), g.m(), n).map_or("-".into(), |v| v.to_string()))
            .collect();
        println!("  closed form from n = m+1: [{}]", closed.join(", "));
        if let Ok(ts) = t_sequence(&seq.nus, g.p(), g.m() + 1) {
            println!("  t_n from n = {}: {:?}", ts.start, ts.values);
        }
    }

    let g = GroupSpec::new(2, &[1, 1, 1])?;
    let table = QuotientTable::enumerate(&g, 3, &budget)?;
    println!("G/G_3 has {} elements; the first five:", table.size());
    for i in 0..5 {
        println!("  #{i}: {}", table.portrait(i));
    }
    let a = 0;
    println!("a moves #0 to #{} and #1 to #{}", table.moves(a)[0], table.moves(a)[1]);

    let tight = Budget { max_elements: 100_000, max_bytes: usize::MAX };
    match QuotientTable::enumerate(&g, 5, &tight) {
        Err(e) => println!("with a 100k element budget: {e}"),
        Ok(t) => println!("unexpectedly fit: {}", t.size()),
    }
    Ok(())
}
