//! The closure as a finitely constrained group: patterns of size m+2.

use std::time::Instant;

use selfsimilar::patterns::{cross_check, PatternSet};
use selfsimilar::quotient::{Budget, QuotientTable};
use selfsimilar::{GroupSpec, Word};

fn main() -> selfsimilar::Result<()> {
    let budget = Budget::default();
    let g = GroupSpec::new(2, &[1, 1, 1])?;
    let ps = PatternSet::pattern_group(&g, &budget)?;
    println!("{} allowed patterns of depth {}", ps.size(), ps.pattern_depth());

    for n in 4..=10 {
        let start = Instant::now();
        let count = ps.count_window_valid(n)?;
        println!("depth {n:>2}: 2^{} window-valid portraits ({:.2?})", count.bits() - 1, start.elapsed());
    }

    let table = QuotientTable::enumerate(&g, 5, &budget)?;
    let rep = cross_check(&ps, &table, &budget)?;
    println!("depth 5 against G/G_5: agree = {}, {} elements", rep.agree, rep.table_size);

    let mut d0 = Word::d(&g, 0).portrait(&g, 4);
    println!("d0 window-valid: {}", ps.window_valid(&d0)?);
    d0.set_activity(&[1, 1], 1)?;
    println!("d0 with vertex 11 flipped: {}", ps.window_valid(&d0)?);

    let full = PatternSet::full(2, 4, &budget)?;
    let rep = cross_check(&full, &QuotientTable::enumerate(&g, 4, &budget)?, &budget)?;
    println!("with every pattern allowed: {} valid vs {} in G/G_4", rep.dp_count, rep.table_size);
    Ok(())
}
