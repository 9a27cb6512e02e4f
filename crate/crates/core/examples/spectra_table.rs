//! Exact, WKB and QLM levels for every potential in the catalogue.

use qlmwkb::spectra::{bound_state_count, level_table, PotentialKind, PotentialSpec};

fn show(e: Option<f64>) -> String {
    e.map(|v| format!("{v:>14.8}")).unwrap_or_else(|| format!("{:>14}", "-"))
}

fn main() -> qlmwkb::Result<()> {
    for kind in PotentialKind::ALL {
        let s = PotentialSpec::documented(kind);
        println!("{}  bound states: {:?}", s.describe(), bound_state_count(&s));
        println!("{:>3} {:>14} {:>14} {:>14}", "n", "exact", "wkb", "qlm");
        for row in level_table(&s, 3)? {
            println!("{:>3} {} {} {}", row.n, show(row.exact.energy), show(row.wkb.energy), show(row.qlm.energy));
        }
        println!();
    }
    Ok(())
}
