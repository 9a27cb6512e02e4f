//! Levels from direct integration of the Schrodinger equation against the QLM formulas.

use qlmwkb::spectra::{
    bound_state_count, first_level, qlm_levels, shooting_oracle, BoundCount, PotentialKind, PotentialSpec,
};

fn main() -> qlmwkb::Result<()> {
    for kind in [
        PotentialKind::Hulthen,
        PotentialKind::Morse,
        PotentialKind::ModifiedPt,
        PotentialKind::Eckart1d,
        PotentialKind::Ho1d,
    ] {
        let s = PotentialSpec::documented(kind);
        let count = match bound_state_count(&s) {
            BoundCount::Finite(c) => c.min(3),
            BoundCount::Infinite => 3,
        };
        let first = first_level(kind);
        for n in first..first + count {
            let q = qlm_levels(&s, n)?.energy.expect("bound level");
            let o = shooting_oracle(&s, n)?;
            println!(
                "{:<28} n = {n}: qlm {q:>16.12}  shooting {o:>16.12}  rel {:.1e}",
                s.describe(),
                ((q - o) / q).abs()
            );
        }
    }
    Ok(())
}
