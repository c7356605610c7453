//! The device-independent no-go construction: a product of two honest
//! single-branch devices passes verification at two non-communicating
//! branches simultaneously, so no fully device-independent money scheme
//! can exist.

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::protocol::{generate_key, honest_source, honest_terminal};
use crate::seedmix;
use crate::{Bit, Error, Result};

/// A per-branch input/output law: how one branch's device answers a
/// round. The honest law is the Born-rule implementation; the no-go
/// argument only needs that *some* accepted law exists.
pub trait BranchLaw: Sync {
    fn answer(&self, y0: Bit, y1: Bit, x: Bit, rng: &mut dyn rand::RngCore) -> Bit;
}

/// The honest Born-rule law, answering at the quantum rate cos^2(pi/8).
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestLaw;

impl BranchLaw for HonestLaw {
    fn answer(&self, y0: Bit, y1: Bit, x: Bit, rng: &mut dyn rand::RngCore) -> Bit {
        honest_terminal(&honest_source(y0, y1), x, rng)
    }
}

/// Result of the product-device demonstration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NogoReport {
    pub trials: u64,
    pub both_accepted: u64,
    pub branch_accepts: [u64; 2],
    /// Fraction of trials in which both branches accepted.
    pub p_both: f64,
    /// Per-branch acceptance fractions.
    pub p_branch: [f64; 2],
}

/// Runs the product device law x law against two branches that verify
/// independently (fresh keys and fresh challenges per trial) and reports
/// how often both accept. By construction the two branches see
/// independent copies of the honest distribution, so the joint acceptance
/// is the product of the marginals.
pub fn nogo_demo(
    law: &dyn BranchLaw,
    n: usize,
    theta: f64,
    trials: u64,
    master_seed: u64,
) -> Result<NogoReport> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter(
            "nogo_demo requires n >= 1 and trials >= 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    let threshold = theta * n as f64;
    let (both, b1, b2) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut key_rng = seedmix::stream(master_seed, 0x6e6f_676f, trial);
            let key = generate_key(n, &mut key_rng).expect("n >= 1");
            let mut accepted = [false; 2];
            for branch in 0..2u64 {
                let mut rng = seedmix::stream(master_seed, 0x6e6f_6762 + branch, trial);
                let mut correct = 0usize;
                for &(y0, y1) in key.rounds() {
                    let x = (rng.next_u32() & 1) as Bit;
                    let a = law.answer(y0, y1, x, &mut rng);
                    if a == if x == 0 { y0 } else { y1 } {
                        correct += 1;
                    }
                }
                accepted[branch as usize] = correct as f64 >= threshold;
            }
            (
                u64::from(accepted[0] && accepted[1]),
                u64::from(accepted[0]),
                u64::from(accepted[1]),
            )
        })
        .reduce(
            || (0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
        );
    Ok(NogoReport {
        trials,
        both_accepted: both,
        branch_accepts: [b1, b2],
        p_both: both as f64 / trials as f64,
        p_branch: [b1 as f64 / trials as f64, b2 as f64 / trials as f64],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_device_double_accepts_below_p_q() {
        // theta leaves a comfortable Hoeffding gap at this n; the
        // acceptance suite runs the tight (0.8475, 10^5) point.
        let report = nogo_demo(&HonestLaw, 20_000, 0.84, 200, 77).unwrap();
        assert!(report.p_both >= 0.99, "p_both = {}", report.p_both);
        // Joint acceptance equals the product of the marginals up to
        // sampling error (here everything is essentially 1).
        let product = report.p_branch[0] * report.p_branch[1];
        assert!((report.p_both - product).abs() < 0.05);
    }

    #[test]
    fn threshold_above_p_q_rejects_even_honest_devices() {
        let report = nogo_demo(&HonestLaw, 20_000, 0.87, 100, 78).unwrap();
        assert_eq!(report.both_accepted, 0);
        assert_eq!(report.branch_accepts, [0, 0]);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(nogo_demo(&HonestLaw, 0, 0.5, 10, 1).is_err());
        assert!(nogo_demo(&HonestLaw, 10, 1.5, 10, 1).is_err());
        assert!(nogo_demo(&HonestLaw, 10, 0.5, 0, 1).is_err());
    }
}
