//! Checks the generated series against the checked-in golden expansions.

use qlmwkb::fixtures::GoldenSet;
use qlmwkb::qlm::qlm_pth_series;
use qlmwkb::wkb::{all_equal, golden_compare, wkb_terms};

fn main() -> qlmwkb::Result<()> {
    let golden = GoldenSet::builtin()?;
    let cases = [
        ("wkb", wkb_terms(8)?.series, &golden.wkb),
        ("qlm y_1", qlm_pth_series(1, 8)?.series, &golden.qlm_y1),
        ("qlm y_2", qlm_pth_series(2, 8)?.series, &golden.qlm_y2),
    ];
    for (name, series, fixture) in cases {
        let verdicts = golden_compare(&series, fixture);
        println!("{name}: {}", if all_equal(&verdicts) { "all orders equal" } else { "MISMATCH" });
        for v in verdicts.iter().filter(|v| !v.equal) {
            println!("  g^{}: {} vs {}", v.order, v.lhs, v.rhs);
        }
    }
    // y_1 against the WKB fixture: equal through g^1, different from g^2 on
    let v = golden_compare(&qlm_pth_series(1, 8)?.series, &golden.wkb);
    println!("y_1 vs wkb: {:?}", v.iter().map(|v| v.equal).collect::<Vec<_>>());
    Ok(())
}
