//! Condensing O S3 at an idempotent of the Young subgroup and comparing Casimir spectra.

use symorder::builders::{condensed_s3_data, s3_transposition_idempotent, symmetric_group_s3};
use symorder::forms::{spectrum_from_schur, spectrum_is_scalarizable};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    let p = Prime::new(3)?;
    let f = symmetric_group_s3(p)?;
    let e = s3_transposition_idempotent(&f);
    let c = f.order.condense(&e)?;
    println!("eAe has rank {}", c.order.dim());

    let (table, sigma) = condensed_s3_data();
    let spectrum = spectrum_from_schur(&sigma, &table.degrees)?;
    let shown: Vec<String> = spectrum.iter().map(|x| x.to_string()).collect();
    let vals: Vec<_> = spectrum.iter().map(|x| x.val(p)).collect();
    println!("condensed spectrum {shown:?}, valuations {vals:?}");
    println!("scalarizable by a central unit: {}", spectrum_is_scalarizable(&spectrum, p));
    Ok(())
}
