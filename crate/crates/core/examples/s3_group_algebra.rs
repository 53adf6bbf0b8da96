//! The group algebra of S3 at p = 3: Casimir element, central idempotents, lattices.

use symorder::builders::symmetric_group_s3;
use symorder::forms::{casimir, central_idempotents, psp_direct};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    let f = symmetric_group_s3(Prime::new(3)?)?;
    let a = &f.order;
    println!("dim {}, centre rank {}", a.dim(), a.center_basis().len());
    println!("casimir = {:?}", casimir(a, &f.form)?.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("psp exponent {:?}", psp_direct(a, &f.form)?.map(|c| c.n));
    let table = f.characters.as_ref().expect("S3 has a character table");
    for (name, e) in table.names.iter().zip(central_idempotents(a, &table.characters)?) {
        println!("e_{name} = {:?}", e.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    for (name, u) in &f.lattices {
        println!("lattice {name}: rank {}", u.rank());
    }
    Ok(())
}
