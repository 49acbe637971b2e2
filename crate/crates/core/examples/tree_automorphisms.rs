//! Generators, portraits, sections and the action on the tree.

use selfsimilar::{GroupSpec, Word};

fn main() -> selfsimilar::Result<()> {
    // x^2 + x + 1 over GF(2): the first Grigorchuk group.
    let g = GroupSpec::new(2, &[1, 1, 1])?;
    println!("f = {}, m = {}", g.polynomial_string(), g.m());

    for text in ["a", "d0", "d1", "b[1,1]"] {
        let w = Word::parse(&g, text)?;
        println!("{text:>7} at depth 4: {}", w.portrait(&g, 4));
    }

    // [a, d0] = (d1, d1)
    let c = Word::commutator(&g, &Word::a(&g, 1), &Word::d(&g, 0));
    let dec = c.sections(&g);
    let secs: Vec<String> = dec.sections.iter().map(|s| s.to_string()).collect();
    println!("[a, d0] = {c}: root {} sections ({})", dec.root_activity, secs.join(", "));

    let w = Word::parse(&g, "a d0 a d1")?;
    for v in [[0, 0, 0], [1, 0, 1], [1, 1, 0]] {
        println!("{w} maps {v:?} to {:?}", w.act(&g, &v)?);
    }
    println!("portrait JSON: {}", w.portrait(&g, 2).to_json());
    Ok(())
}
