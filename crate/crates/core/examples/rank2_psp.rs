//! The rank-2 order {(α, β) : β − α ∈ p^m O}: which (m, p) give a scalar Casimir element.

use symorder::builders::rank2_order;
use symorder::forms::{casimir, psp_direct, psp_regular_gram};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    for (m, p) in [(1, 2), (2, 2), (1, 3), (1, 5)] {
        let f = rank2_order(m, Prime::new(p)?)?;
        let z = casimir(&f.order, &f.form)?;
        let direct = psp_direct(&f.order, &f.form)?;
        let gram = psp_regular_gram(&f.order)?;
        println!(
            "m={m} p={p}: casimir {:?}, direct {:?}, gram exponents {:?}",
            z.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            direct.map(|c| c.n),
            gram.exponents
        );
    }
    Ok(())
}
