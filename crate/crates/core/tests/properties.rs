//! Randomized invariants of the scalar kernels, generated by proptest.

use proptest::prelude::*;

use wedge_eigen::star::{moment, sector};
use wedge_eigen::wedge::{big_z, big_z_inverse, cal_f};
use wedge_eigen::Wedge;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Z is the antiderivative of F, so Z⁻¹(Z(r)) = r.
    #[test]
    fn z_inverse_round_trip(alpha in 1.05f64..4.0, r in 0.05f64..3.0) {
        let w = Wedge::new(alpha).unwrap();
        let z = big_z(r, &w, 1e-12).unwrap();
        let back = big_z_inverse(z, &w, 1e-12).unwrap();
        prop_assert!((back - r).abs() < 1e-8, "r = {r}, back = {back}");
    }

    /// F > 0 on (0, π), so Z is strictly increasing.
    #[test]
    fn big_z_is_monotone(alpha in 1.05f64..4.0, r in 0.1f64..2.9, dr in 0.01f64..0.2) {
        let w = Wedge::new(alpha).unwrap();
        let z0 = big_z(r, &w, 1e-12).unwrap();
        let z1 = big_z((r + dr).min(3.05), &w, 1e-12).unwrap();
        prop_assert!(z1 > z0);
        prop_assert!(cal_f(r, &w).unwrap() > 0.0);
    }

    /// I(S(r)) is increasing in r: a larger sector contains the smaller.
    #[test]
    fn sector_moment_is_monotone(alpha in 1.1f64..3.0, r in 0.2f64..2.5, dr in 0.05f64..0.4) {
        let w = Wedge::new(alpha).unwrap();
        let m0 = moment(&sector(r, w).unwrap(), 1e-10).unwrap().moment;
        let m1 = moment(&sector((r + dr).min(2.95), w).unwrap(), 1e-10).unwrap().moment;
        prop_assert!(m1 > m0);
    }
}
