//! Searching decomposition-matrix combinations for a form with scalar Casimir element.

use symorder::builders::{matrix_order, rank2_order, symmetric_group_s3};
use symorder::decomp::{morita_psp_search, morita_psp_search_integers};
use symorder::builders::Fixture;
use symorder::Prime;

fn search(f: &Fixture) {
    let (table, d) = (f.characters.as_ref().unwrap(), f.decomposition.as_ref().unwrap());
    match morita_psp_search(&f.order, table, d, 4) {
        Some(w) => println!("{}: m = {:?}, a = {:?}, n = {}", f.name, w.m, w.a, w.n),
        None => {
            let signed = morita_psp_search_integers(&f.order, table, d, 3).map(|w| w.m);
            println!("{}: none within bound (signed search: {signed:?})", f.name);
        }
    }
}

fn main() -> symorder::Result<()> {
    search(&symmetric_group_s3(Prime::new(3)?)?);
    search(&matrix_order(2, Prime::new(2)?)?);
    search(&rank2_order(2, Prime::new(2)?)?);
    Ok(())
}
