//! Numeric QLM iterates for the harmonic oscillator at a non-eigen energy.

use qlmwkb::numeric::{asymptotic_residue_fit, solve_qlm, LeadingModel, SolveConfig};
use qlmwkb::spectra::{PotentialKind, PotentialSpec};

fn main() -> qlmwkb::Result<()> {
    let e: f64 = std::env::args().nth(1).map(|s| s.parse().expect("energy")).unwrap_or(2.5);
    let ho = PotentialSpec::documented(PotentialKind::Ho1d);
    let cfg = SolveConfig::for_potential(&ho, e)?;
    println!("grid: {} points on [{}, {}] + {} i", cfg.grid_points, cfg.z_min, cfg.z_max, cfg.imag_shift);
    let h = solve_qlm(&ho, e, 6, &cfg)?;
    for (i, d) in h.sup_diffs.iter().enumerate() {
        println!("|y_{} - y_{i}| = {d:.3e}", i + 1);
    }
    for (i, r) in h.convergence_orders(0.1) {
        println!("order estimate from steps {i}, {}: {r:.2}", i + 1);
    }
    let model = LeadingModel::for_potential(&ho, e).expect("oscillator model");
    for p in 1..h.iterates.len() {
        let alpha = asymptotic_residue_fit(&h.iterates[p], model)?;
        println!("residue at infinity of y_{p}: {alpha:.8} (E - 1/2 = {})", e - 0.5);
    }
    Ok(())
}
