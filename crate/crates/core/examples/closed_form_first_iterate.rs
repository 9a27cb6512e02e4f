//! First QLM iterate from nested quadrature against the ODE solution.

use qlmwkb::numeric::{first_iterate_closed_form, qlm_step_numeric, zeroth_iterate, SolveConfig};
use qlmwkb::spectra::{PotentialKind, PotentialSpec};

fn main() -> qlmwkb::Result<()> {
    for (kind, e) in [(PotentialKind::Ho1d, 2.5), (PotentialKind::ModifiedPt, -4.5)] {
        let s = PotentialSpec::documented(kind);
        let cfg = SolveConfig::for_potential(&s, e)?;
        let y0 = zeroth_iterate(&s, e, &cfg)?;
        let ode = qlm_step_numeric(&y0, &s, e, &cfg)?;
        let quad = first_iterate_closed_form(&s, e, &cfg)?;
        println!("{} at E = {e}: sup |closed form - ODE| = {:.3e}", s.describe(), quad.sup_diff(&ode)?);
    }
    Ok(())
}
