//! One-parameter Hecke algebras H_q(C2) over Z_(2).

use symorder::builders::hecke_rank1;
use symorder::forms::{psp_direct, psp_regular_gram};
use symorder::Prime;

fn main() -> symorder::Result<()> {
    let p = Prime::new(2)?;
    for q in [1, 3, 5, 7, 9] {
        let f = hecke_rank1(q, p)?;
        let direct = psp_direct(&f.order, &f.form)?.map(|c| c.n);
        let gram = psp_regular_gram(&f.order)?;
        println!("q={q} (q mod 4 = {}): psp {direct:?}, gram exponents {:?}", q % 4, gram.exponents);
    }
    Ok(())
}
