//! Valuations, residues and Smith normal form over Z_(p).

use symorder::integral::smith_normal_form;
use symorder::scalar::residue_mod_ring;
use symorder::{Matrix, Prime, Scalar};

fn main() -> symorder::Result<()> {
    let p = Prime::new(3)?;
    for x in ["18/5", "2/9", "7", "0"] {
        let x: Scalar = x.parse()?;
        println!("{x:>5}: val {:?}, residue {:?}, in K/O {}", x.val(p), x.residue(p), residue_mod_ring(&x, p).representative());
    }

    let m = Matrix::from_ints(&[&[3, 6, 0], &[1, 2, 9], &[0, 3, 27]]);
    let snf = smith_normal_form(&m, p)?;
    println!("exponents of the Smith form: {:?}", snf.exponents);
    assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diagonal);
    Ok(())
}
