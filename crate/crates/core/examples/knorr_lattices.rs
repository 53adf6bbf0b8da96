//! Knörr lattices, stable exponents and the constant value check.

use symorder::builders::{decomposable_s3, rank2_order, symmetric_group_s3};
use symorder::forms::SymmetricData;
use symorder::lattice::{constant_value_check, knorr_check, stable_exponent_check, Lattice, Limits};
use symorder::builders::Fixture;
use symorder::{Order, Prime};

fn describe(order: &Order, data: &SymmetricData, name: &str, u: &Lattice) -> symorder::Result<()> {
    let limits = Limits::default();
    let k = knorr_check(order, u, &limits)?;
    let c = constant_value_check(order, data, u)?;
    match stable_exponent_check(order, data, u, &limits) {
        Ok(se) => println!(
            "{name:>12}: knorr {}, exponent {}, twisted trace valuation {:?}, criterion {}",
            k.is_knorr, c.exponent, se.identity_valuation, se.criterion
        ),
        Err(e) => println!("{name:>12}: knorr {}, {e}", k.is_knorr),
    }
    Ok(())
}

fn main() -> symorder::Result<()> {
    let p3 = Prime::new(3)?;
    let s3: Fixture = symmetric_group_s3(p3)?;
    let data = SymmetricData::new(&s3.order, &s3.form)?;
    for (name, u) in &s3.lattices {
        describe(&s3.order, &data, name, u)?;
    }
    let (g, u) = decomposable_s3(p3)?;
    describe(&g.order, &SymmetricData::new(&g.order, &g.form)?, "trivial²", &u)?;
    let r = rank2_order(2, Prime::new(2)?)?;
    let data = SymmetricData::new(&r.order, &r.form)?;
    describe(&r.order, &data, "rank2 first", r.lattice("first").expect("builder lattice"))?;
    Ok(())
}
