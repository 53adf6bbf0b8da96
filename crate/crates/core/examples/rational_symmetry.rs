//! Rational symmetry, the congruence analysis and the intersection criterion.

use symorder::builders::{four_dim_nonrational, rank2_order};
use symorder::decomp::{rational_intersection_criterion, rational_symmetry_search, DEFAULT_IDEAL_DIM};
use symorder::builders::Fixture;
use symorder::Prime;

fn analyse(f: &Fixture) -> symorder::Result<()> {
    let table = f.characters.as_ref().unwrap();
    let rep = rational_symmetry_search(&f.order, table, &f.form, 3)?;
    println!("{}: schur valuations {:?}", f.name, rep.schur_valuations);
    for c in &rep.congruences {
        println!("  basis {}: terms {:?}, ratio {:?}", c.basis_index, c.terms, c.ratio);
    }
    println!("  satisfiable over F_p: {:?}", rep.satisfiable_in_prime_field);
    let Some(w) = rep.witness else {
        println!("  no witness within bound");
        return Ok(());
    };
    println!("  witness n = {}, σ̃ = {:?}", w.n, w.sigma.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    if let Some(d) = &f.decomposition {
        let v = rational_intersection_criterion(&f.order, table, d, &w, DEFAULT_IDEAL_DIM)?;
        println!("  {} maximal ideals, proper {:?}, verdict {}", v.maximal_ideals, v.proper, v.verdict);
    }
    Ok(())
}

fn main() -> symorder::Result<()> {
    analyse(&four_dim_nonrational(3)?)?;
    for m in 1..=2 {
        analyse(&rank2_order(m, Prime::new(2)?)?)?;
    }
    Ok(())
}
