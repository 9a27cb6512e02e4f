use qlmwkb::numeric::{
    asymptotic_residue_fit, first_iterate_closed_form, inner_pole_fit, qlm_step_numeric, solve_qlm, LeadingModel,
    SolveConfig,
};
use qlmwkb::spectra::{PotentialKind, PotentialSpec};

fn ho() -> PotentialSpec {
    PotentialSpec::documented(PotentialKind::Ho1d)
}

#[test]
fn oscillator_converges_quadratically() {
    let cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
    let h = solve_qlm(&ho(), 2.5, 5, &cfg).unwrap();
    println!("sup_diffs {:?}", h.sup_diffs);
    assert_eq!(h.sup_diffs.len(), h.iterates.len() - 1);
    for w in h.sup_diffs.windows(2) {
        assert!(w[1] < w[0]);
    }
    let orders = h.convergence_orders(0.1);
    println!("orders {orders:?}");
    assert!(orders.len() >= 2);
    assert!(orders.iter().all(|&(_, r)| r >= 1.8));

    let alpha = asymptotic_residue_fit(&h.iterates[3], LeadingModel::Linear { slope: -0.5 }).unwrap();
    println!("alpha p=3 {alpha}");
    assert!((alpha - 2.0).abs() < 1e-4);
}

#[test]
fn closed_form_first_iterate_agrees_with_ode() {
    let cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
    let h = solve_qlm(&ho(), 2.5, 1, &cfg).unwrap();
    let cf = first_iterate_closed_form(&ho(), 2.5, &cfg).unwrap();
    let d = cf.sup_diff(&h.iterates[1]).unwrap();
    println!("closed form vs ode {d:e}");
    assert!(d < 1e-6);
    // far out y_1 already carries the E - 1/2 pole
    let a = asymptotic_residue_fit(&cf, LeadingModel::Linear { slope: -0.5 }).unwrap();
    println!("closed-form alpha {a}");
}

#[test]
fn converged_iterate_is_a_fixed_point() {
    let cfg = SolveConfig::for_potential(&ho(), 2.5).unwrap();
    let h = solve_qlm(&ho(), 2.5, 6, &cfg).unwrap();
    let y = h.last();
    let again = qlm_step_numeric(y, &ho(), 2.5, &cfg).unwrap();
    let d = again.sup_diff(y).unwrap();
    println!("fixed point change {d:e}");
    assert!(d < 10.0 * cfg.ode_rel_tol);
}

#[test]
fn oscillator_residue_sweep() {
    for e in [0.5, 1.3, 2.5, 3.7, 5.0] {
        let cfg = SolveConfig::for_potential(&ho(), e).unwrap();
        let h = solve_qlm(&ho(), e, 6, &cfg).unwrap();
        let a = asymptotic_residue_fit(h.last(), LeadingModel::for_potential(&ho(), e).unwrap()).unwrap();
        println!("E={e} alpha={a} diffs={:?}", h.sup_diffs);
        assert!((a - (e - 0.5)).abs() < 1e-4, "E={e}: {a}");
    }
}

#[test]
fn coulomb_residue_sweep() {
    let c = PotentialSpec::documented(PotentialKind::Coulomb);
    for e in [-0.5, -0.3, -0.2, -0.125, -0.08] {
        let mut cfg = SolveConfig::for_potential(&c, e).unwrap();
        cfg.z_max = 200.0;
        cfg.grid_points = 20001;
        let h = solve_qlm(&c, e, 6, &cfg).unwrap();
        let a = asymptotic_residue_fit(h.last(), LeadingModel::for_potential(&c, e).unwrap()).unwrap();
        let want = 1.0 / (2.0 * e.abs()).sqrt();
        println!("E={e} alpha={a} want={want} diffs={:?}", h.sup_diffs);
        assert!((a - want).abs() < 1e-4, "E={e}: {a} vs {want}");
    }
}

#[test]
fn modified_poschl_teller_ground_state() {
    let s = PotentialSpec::documented(PotentialKind::ModifiedPt);
    let cfg = SolveConfig::for_potential(&s, -4.5).unwrap();
    let h = solve_qlm(&s, -4.5, 5, &cfg).unwrap();
    println!("mpt sup_diffs {:?} orders {:?}", h.sup_diffs, h.convergence_orders(0.1));
    // 3e-5 after the fourth step; the 1e-8 level is reached one step later
    assert!(h.sup_diffs[3] < 1e-4);
    assert!(h.sup_diffs[4] < 1e-8);
    assert!(h.convergence_orders(0.1).iter().all(|&(_, r)| r >= 1.8));
}

#[test]
fn spherical_oscillator_inner_pole() {
    let s = PotentialSpec::new(PotentialKind::Ho3d, &[("l", 1.0)]).unwrap();
    let mut cfg = SolveConfig::for_potential(&s, 2.5).unwrap();
    cfg.z_min = 0.2;
    let h = solve_qlm(&s, 2.5, 6, &cfg).unwrap();
    let f = inner_pole_fit(h.last(), 0.05).unwrap();
    println!("ho3d sup_diffs {:?} fit {f:?}", h.sup_diffs);
    assert!((f.a.re - 2.0).abs() < 1e-3);
}
