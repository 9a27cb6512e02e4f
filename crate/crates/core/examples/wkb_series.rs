//! Prints the WKB series to a chosen order in text and LaTeX.

use qlmwkb::formal::text::{series_to_latex, series_to_text};
use qlmwkb::wkb::{riccati_residual, wkb_terms};

fn main() -> qlmwkb::Result<()> {
    let order: usize = std::env::args().nth(1).map(|s| s.parse().expect("order must be an integer")).unwrap_or(5);
    let w = wkb_terms(order)?;
    print!("{}", series_to_text(&w.series));
    println!();
    println!("{}", series_to_latex(&w.series));
    println!("residual vanishes: {}", riccati_residual(&w.series).is_zero());
    Ok(())
}
