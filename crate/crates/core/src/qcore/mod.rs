//! Exact finite-dimensional quantum simulation for the money scheme:
//! single-qubit density matrices, dichotomic observables, POVMs, the Born
//! rule, outcome sampling, and the two-qubit Bell machinery needed by the
//! superdense-coding attack.

mod mat2;
mod observable;
mod state;
mod twoqubit;

pub use mat2::Mat2;
pub use observable::{born, observable_from_direction, sample_outcome, Observable, Povm};
pub use state::{bloch_to_state, QubitState};
pub use twoqubit::{singlet_encode_decode, Pauli, TwoQubitPureState};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arb_bloch() -> impl Strategy<Value = [f64; 3]> {
        // Uniform in the cube, rescaled into the ball when needed.
        (
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
        )
            .prop_map(|(x, y, z)| {
                let norm = (x * x + y * y + z * z).sqrt();
                if norm > 1.0 {
                    [x / norm, y / norm, z / norm]
                } else {
                    [x, y, z]
                }
            })
    }

    fn arb_direction() -> impl Strategy<Value = [f64; 3]> {
        (
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
        )
            .prop_filter_map("zero direction", |(x, y, z)| {
                let norm = (x * x + y * y + z * z).sqrt();
                if norm < 1e-3 {
                    None
                } else {
                    Some([x / norm, y / norm, z / norm])
                }
            })
    }

    proptest! {
        #[test]
        fn states_from_bloch_satisfy_invariants(r in arb_bloch()) {
            let state = bloch_to_state(r).unwrap();
            let m = state.matrix();
            prop_assert!(m.is_hermitian(crate::MATRIX_TOL));
            prop_assert!((m.trace().re - 1.0).abs() <= crate::MATRIX_TOL);
            prop_assert!(m.min_eigenvalue() >= -crate::MATRIX_TOL);
        }

        #[test]
        fn born_probabilities_normalised(r in arb_bloch(), n in arb_direction()) {
            let state = bloch_to_state(r).unwrap();
            let povm = observable_from_direction(n).unwrap().povm();
            let p0 = born(&state, &povm, 0).unwrap();
            let p1 = born(&state, &povm, 1).unwrap();
            prop_assert!((0.0..=1.0).contains(&p0));
            prop_assert!((0.0..=1.0).contains(&p1));
            prop_assert!((p0 + p1 - 1.0).abs() <= crate::MATRIX_TOL);
        }

    }

    /// Empirical frequencies track Born values: 10^6 samples per case,
    /// deviation within four binomial standard errors, at most 1% of the
    /// randomized cases allowed to miss. Seeds are fixed, so the test is
    /// deterministic.
    #[test]
    fn sampling_tracks_born_values_at_a_million_samples() {
        let samples = 1_000_000usize;
        let cases = 8u64;
        let mut misses = 0usize;
        for case in 0..cases {
            let mut rng = ChaCha8Rng::seed_from_u64(0xb0d1 + case);
            let r: [f64; 3] = {
                let raw = [
                    rng.gen_range(-1.0f64..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ];
                let norm = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
                if norm > 1.0 {
                    [raw[0] / norm, raw[1] / norm, raw[2] / norm]
                } else {
                    raw
                }
            };
            let dir = {
                let raw = [
                    rng.gen_range(-1.0f64..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ];
                let norm = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
                [raw[0] / norm, raw[1] / norm, raw[2] / norm]
            };
            let state = bloch_to_state(r).unwrap();
            let povm = observable_from_direction(dir).unwrap().povm();
            let p = born(&state, &povm, 0).unwrap();
            let hits = (0..samples)
                .filter(|_| sample_outcome(&state, &povm, &mut rng) == 0)
                .count();
            let freq = hits as f64 / samples as f64;
            let sigma = (p * (1.0 - p) / samples as f64).sqrt();
            if (freq - p).abs() > 4.0 * sigma + 1e-9 {
                misses += 1;
            }
        }
        assert!(
            misses as f64 <= 0.01 * cases as f64,
            "{misses}/{cases} cases deviated beyond four standard errors"
        );
    }

    /// Honest round at x = 0 on rho_00: correct-answer frequency matches
    /// cos^2(pi/8) at a million samples.
    #[test]
    fn sampling_honest_round_hits_quantum_value() {
        let state = QubitState::ket0();
        let povm = crate::protocol::honest_measurement(0).povm();
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
        let samples = 1_000_000usize;
        let hits = (0..samples)
            .filter(|_| sample_outcome(&state, &povm, &mut rng) == 0)
            .count();
        let freq = hits as f64 / samples as f64;
        assert!((freq - 0.8536).abs() < 0.002, "freq {freq}");
    }
}
