//! How many leading orders of each QLM iterate agree with the WKB series.

use qlmwkb::qlm::{match_prefix, qlm_iterates};
use qlmwkb::wkb::wkb_terms;

fn main() -> qlmwkb::Result<()> {
    let n = 8;
    let w = wkb_terms(n)?.series;
    for (p, y) in qlm_iterates(3, n)?.iter().enumerate() {
        let m = match_prefix(y, &w)?;
        println!("y_{p}: {m} exact orders (2^{p} = {})", 1 << p);
        if m < n {
            println!("    first difference at g^{m}:");
            println!("      qlm {}", y.coeff(m));
            println!("      wkb {}", w.coeff(m));
        }
    }
    Ok(())
}
