//! Stable Hom groups and the Tate pairing between S3 lattices.

use symorder::builders::symmetric_group_s3;
use symorder::forms::SymmetricData;
use symorder::lattice::{stable_hom, verify_tate_duality};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    let f = symmetric_group_s3(Prime::new(3)?)?;
    let data = SymmetricData::new(&f.order, &f.form)?;
    for (a, u) in &f.lattices {
        for (b, v) in &f.lattices {
            let h = stable_hom(&f.order, &data, u, v)?;
            let t = verify_tate_duality(&f.order, &data, u, v)?;
            let values: Vec<Vec<String>> = t.values.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            println!("{a:>11} → {b:<11} stable Hom {:?}, perfect {}, values {values:?}", h.exponents(), t.perfect);
        }
    }
    Ok(())
}
