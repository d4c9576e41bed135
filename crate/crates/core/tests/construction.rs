use tspread::construct::{
    build_omegas, construct_extremal_ideal, max_corners, omega_claim_check, omega_claim_check_with,
    ClaimRoute,
};
use tspread::betti::{corners_from_table, graded_betti};
use tspread::monomial::max_index;

fn valid_inputs(n_max: u32, t_max: u32) -> impl Iterator<Item = (u32, u32, usize)> {
    (2..=t_max).flat_map(move |t| {
        (2..=n_max).flat_map(move |n| {
            (2..=n as usize).filter_map(move |ell1| max_corners(n, t, ell1).map(|_| (n, t, ell1)))
        })
    })
}

#[test]
fn omegas_have_the_expected_shape() {
    for (n, t, ell1) in valid_inputs(60, 6) {
        let r = build_omegas(n, t, ell1).unwrap();
        assert_eq!(Some(r.total), max_corners(n, t, ell1));
        for (j, w) in r.omegas.iter().enumerate() {
            assert_eq!(w.degree(), ell1 + j);
            assert_eq!(max_index(w), n);
        }
        if r.has_critic {
            assert_eq!(r.total as i64, 1 + r.j_max + 1 + r.nu_max, "n={n} t={t} ell1={ell1}");
        }
    }
}

#[test]
fn claim_holds_across_the_sweep() {
    for (n, t, ell1) in valid_inputs(60, 6) {
        let r = build_omegas(n, t, ell1).unwrap();
        assert!(omega_claim_check(&r.omegas, &r.ctx, ell1), "n={n} t={t} ell1={ell1}");
    }
}

#[test]
fn claim_routes_agree_on_small_inputs() {
    for (n, t, ell1) in valid_inputs(18, 4) {
        let r = build_omegas(n, t, ell1).unwrap();
        let explicit = omega_claim_check_with(&r.omegas, &r.ctx, ell1, ClaimRoute::Explicit);
        let pruned = omega_claim_check_with(&r.omegas, &r.ctx, ell1, ClaimRoute::Pruned);
        assert!(explicit && pruned, "n={n} t={t} ell1={ell1}");
        for cut in 0..r.omegas.len() {
            let short = &r.omegas[..cut];
            assert!(!omega_claim_check_with(short, &r.ctx, ell1, ClaimRoute::Explicit));
            assert!(!omega_claim_check_with(short, &r.ctx, ell1, ClaimRoute::Pruned));
        }
    }
}

#[test]
fn constructed_ideals_realize_their_corners() {
    for (n, t, ell1) in valid_inputs(40, 5) {
        let (ideal, r) = construct_extremal_ideal(n, t, ell1).unwrap();
        let corners = corners_from_table(&graded_betti(&ideal).unwrap());
        assert_eq!(corners.corners, r.predicted_corners, "n={n} t={t} ell1={ell1}");
        assert!(corners.all_values_one());
        for &(k, ell) in &corners.corners {
            assert_eq!(k + t as usize * (ell - 1) + 1, n as usize);
        }
    }
}

#[test]
fn max_corners_is_monotone_in_n() {
    for t in 2..=6 {
        for ell1 in 2..=8 {
            let mut last = 0;
            for n in 2..=80 {
                if let Some(v) = max_corners(n, t, ell1) {
                    assert!(v >= last, "t={t} ell1={ell1} n={n}");
                    last = v;
                }
            }
        }
    }
}
