//! Lattice evolution against the momentum-space engine at finite times.

use qwalk_core::kspace::{evolve_k_moments, QuadratureSpec};
use qwalk_core::lattice::{build_initial, Evolution};
use qwalk_core::{spin_from_angles, BlochAngles, CoinKind, InitialProfile};

fn profiles() -> Vec<InitialProfile> {
    vec![
        InitialProfile::Local,
        InitialProfile::Gaussian { sigma0: 1.0 },
        InitialProfile::Gaussian { sigma0: 2.5 },
        InitialProfile::Gaussian { sigma0: 10.0 },
        InitialProfile::Rectangular { a: 0 },
        InitialProfile::Rectangular { a: 1 },
        InitialProfile::Rectangular { a: 4 },
        InitialProfile::Rectangular { a: 17 },
    ]
}

#[test]
fn moments_agree_up_to_t64() {
    let quad = QuadratureSpec::default();
    let spins = [(0.0, 0.0), (0.7, 1.3), (2.9, -2.0), (std::f64::consts::FRAC_PI_2, 0.4)];
    let mut worst = 0.0f64;
    for coin in CoinKind::ALL {
        for profile in profiles() {
            for &(alpha, beta) in &spins {
                let spin = spin_from_angles(BlochAngles::new(alpha, beta).unwrap());
                let initial = build_initial(profile, spin).unwrap();
                let mut run = Evolution::new(&initial, &coin.operator(), 64, 1 << 16).unwrap();
                for t in 0..=64u64 {
                    if t % 4 == 0 || t < 4 {
                        let lat = run.moments();
                        let k = evolve_k_moments(profile, spin, coin, t, &quad).unwrap();
                        let err = (lat.a - k.a).abs().max((lat.b - k.b).norm());
                        worst = worst.max(err);
                        assert!(err < 1e-8, "{coin} {profile:?} ({alpha}, {beta}) t={t}: {err}");
                    }
                    if t < 64 {
                        run.advance().unwrap();
                    }
                }
            }
        }
    }
    eprintln!("worst cross-engine deviation: {worst:e}");
}
