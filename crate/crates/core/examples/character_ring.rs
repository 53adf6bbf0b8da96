//! Character rings: the Casimir element takes the value |C_G(g)| on each class.

use symorder::builders::{character_ring, ClassData};
use symorder::forms::{casimir, psp_direct};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    for (name, data, p) in [("S3", ClassData::s3(), 3), ("S3", ClassData::s3(), 2), ("C2", ClassData::c2(), 2)] {
        let f = character_ring(&data, Prime::new(p)?)?;
        let z = casimir(&f.order, &f.form)?;
        let on_classes: Vec<String> = (0..data.sizes.len())
            .map(|c| {
                let v: symorder::Scalar = z.coords.iter().zip(&data.values).map(|(x, row)| x * &symorder::Scalar::from(row[c])).sum();
                v.to_string()
            })
            .collect();
        println!("R({name}) at p={p}: casimir on classes {on_classes:?}, psp {:?}", psp_direct(&f.order, &f.form)?.map(|c| c.n));
    }
    Ok(())
}
