//! Concentration audit: samples the XOR-scenario measure for a fixed
//! typical challenge-XOR string and compares the guess counters against
//! the Hoeffding machinery of the security proof.

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{guess_counters, CollusionBox, XorRound, XorTranscript};
use crate::seedmix;
use crate::{bounds, Bit, Error, Result};

const DOMAIN_XOR: u64 = 0x6175_7872;
const DOMAIN_TRIAL: u64 = 0x6175_7472;

/// Audit outcome: empirical counter behaviour against the analytic
/// bounds, for one fixed typical challenge-XOR string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub eta: f64,
    pub trials: u64,
    /// |D|: rounds with x_xor = 0 in the fixed string.
    pub d_size: usize,
    /// Expected counters per the box table: (X_A, X_F, Y_A, Y_F).
    pub expected_counters: [f64; 4],
    /// Count bound B = 2 P_Q (1/2 + eta) n + M (1/2 + eta) n + 2 eta n.
    pub count_bound: f64,
    /// Empirical fraction of trials with Z > B.
    pub empirical_z_exceed: f64,
    /// Lemma bound on that fraction: sum of the four epsilon_i.
    pub lemma_bound: f64,
    /// Per-counter deviation rates: fraction of trials where the counter
    /// strayed more than eta*|D| (X-type) or eta*|D-bar| (Y-type) from
    /// its expectation.
    pub counter_deviation_rates: [f64; 4],
    /// The per-counter Hoeffding bounds epsilon_i.
    pub counter_bounds: [f64; 4],
    /// True when the summed bound is >= 1 and the audit certifies nothing.
    pub vacuous: bool,
}

/// Draws one eta-typical challenge-XOR string by rejection; fails only if
/// typicality is unreachable (never, for eta >= 0 and even n at worst one
/// resample in two).
fn draw_typical_xor(n: usize, eta: f64, rng: &mut impl RngCore) -> Vec<Bit> {
    loop {
        let x: Vec<Bit> = (0..n).map(|_| (rng.next_u32() & 1) as Bit).collect();
        let zeros = x.iter().filter(|&&b| b == 0).count();
        if (zeros as f64 / n as f64 - 0.5).abs() <= eta {
            return x;
        }
    }
}

/// Runs the audit: fixes a typical challenge-XOR string, samples `trials`
/// transcripts of the conditional measure, tallies guess counters and
/// reports every deviation rate next to its bound.
pub fn concentration_audit(
    box_: &CollusionBox,
    n: usize,
    eta: f64,
    trials: u64,
    master_seed: u64,
) -> Result<ConcentrationReport> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter(
            "concentration_audit requires n >= 1 and trials >= 1".into(),
        ));
    }
    if !(eta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "concentration_audit requires eta > 0, got {eta}"
        )));
    }
    let mut xor_rng = seedmix::stream(master_seed, DOMAIN_XOR, 0);
    let x_xor = draw_typical_xor(n, eta, &mut xor_rng);
    let d_size = x_xor.iter().filter(|&&b| b == 0).count();
    let dbar_size = n - d_size;

    let (ex_a, ex_f) = box_.expected_x_counters();
    let (ey_a, ey_f) = box_.expected_y_counters();
    let expected = [
        ex_a * d_size as f64,
        ex_f * d_size as f64,
        ey_a * dbar_size as f64,
        ey_f * dbar_size as f64,
    ];
    let count_bound = bounds::count_bound(n as u64, eta)?;

    let eps_d = (2.0 * (-2.0 * eta * eta * d_size as f64).exp()).min(1.0);
    let eps_dbar = (2.0 * (-2.0 * eta * eta * dbar_size as f64).exp()).min(1.0);
    // Counters ordered (X_A, X_F, Y_A, Y_F); X-types live on D, Y-types
    // on its complement.
    let counter_bounds = [eps_d, eps_d, eps_dbar, eps_dbar];
    let lemma_bound = (counter_bounds.iter().sum::<f64>()).min(1.0);

    let (z_exceed, deviations) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = seedmix::stream(master_seed, DOMAIN_TRIAL, trial);
            let mut rounds = Vec::with_capacity(n);
            for &x_xor_bit in &x_xor {
                let word = rng.next_u32();
                let x_a = (word & 1) as Bit;
                let y0 = ((word >> 1) & 1) as Bit;
                let y1 = ((word >> 2) & 1) as Bit;
                let x_f = x_a ^ x_xor_bit;
                let (a_a, a_f) = box_.sample(y0, y1, x_a, x_f, &mut rng);
                rounds.push(XorRound {
                    y0,
                    y1,
                    x_a,
                    a_a,
                    x_xor: x_xor_bit,
                    a_f,
                });
            }
            let c = guess_counters(&XorTranscript { rounds });
            let observed = [
                c.xbar_a as f64,
                c.xbar_f as f64,
                c.ybar_a as f64,
                c.ybar_f as f64,
            ];
            let spans = [
                eta * d_size as f64,
                eta * d_size as f64,
                eta * dbar_size as f64,
                eta * dbar_size as f64,
            ];
            let mut dev = [0u64; 4];
            for i in 0..4 {
                if (observed[i] - expected[i]).abs() > spans[i] {
                    dev[i] = 1;
                }
            }
            (u64::from(c.zbar as f64 > count_bound), dev)
        })
        .reduce(
            || (0u64, [0u64; 4]),
            |a, b| {
                (
                    a.0 + b.0,
                    [
                        a.1[0] + b.1[0],
                        a.1[1] + b.1[1],
                        a.1[2] + b.1[2],
                        a.1[3] + b.1[3],
                    ],
                )
            },
        );

    let t = trials as f64;
    Ok(ConcentrationReport {
        n,
        eta,
        trials,
        d_size,
        expected_counters: expected,
        count_bound,
        empirical_z_exceed: z_exceed as f64 / t,
        lemma_bound,
        counter_deviation_rates: [
            deviations[0] as f64 / t,
            deviations[1] as f64 / t,
            deviations[2] as f64 / t,
            deviations[3] as f64 / t,
        ],
        counter_bounds,
        vacuous: lemma_bound >= 1.0,
    })
}
