//! Dimension of finitely constrained groups on k-ary trees.

use selfsimilar::quotient::general_dimension;

fn main() -> selfsimilar::Result<()> {
    // Hanoi towers group on three pegs: k = 3, q = 6, r = 2, t = log_6 2, s = 1.
    let t = 2f64.ln() / 6f64.ln();
    let hanoi = general_dimension(3, 6, 1.0, 2.0, t, 1)?;
    println!("Hanoi towers: {:.9} (1 - log_6(2)/3 = {:.9})", hanoi.dimension, 1.0 - t / 3.0);
    for n in 1..=5 {
        println!("  log_6 [H:H_{n}] = {:.6}", hanoi.index_exponent(n));
    }
    // The p-adic case reduces to (p^{m+1} - 1 - p + 1)/p^{m+1}.
    let padic = general_dimension(3, 3, 1.0, 26.0, 3.0, 3)?;
    println!("p = 3, m = 2: {:.9} (8/9 = {:.9})", padic.dimension, 8.0 / 9.0);
    Ok(())
}
