//! Collusion boxes: the conditional distribution P(a_A, a_F | y0, y1,
//! x_A, x_F) describing a qubit-by-qubit joint attack at two branches,
//! plus the quantum strategies that realize such boxes.

use num_complex::Complex64;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::qcore::{born, Mat2, Povm, QubitState};
use crate::protocol::{honest_measurement, honest_state};
use crate::{Bit, Error, Result, MATRIX_TOL};

/// Schema tag for box files.
pub const BOX_FORMAT: &str = "sdi-box/1";
/// Schema tag for quantum collusion strategy files.
pub const STRATEGY_FORMAT: &str = "sdi-strategy/1";

/// Dense table of P(a_A, a_F | y0, y1, x_A, x_F).
///
/// Row order is (y0, y1, x_A, x_F) lexicographic; within a row the four
/// outcomes are (a_A, a_F) lexicographic. 16 rows x 4 outcomes = 64 reals.
/// Entries are nonnegative and every row sums to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct CollusionBox {
    table: [f64; 64],
}

#[inline]
fn input_index(y0: Bit, y1: Bit, x_a: Bit, x_f: Bit) -> usize {
    (((y0 as usize * 2 + y1 as usize) * 2 + x_a as usize) * 2 + x_f as usize) * 4
}

impl CollusionBox {
    pub fn new(table: [f64; 64]) -> Result<Self> {
        for (i, &p) in table.iter().enumerate() {
            if !(p >= 0.0) {
                return Err(Error::InvalidBox(format!(
                    "entry {i} is negative or NaN ({p})"
                )));
            }
        }
        for row in 0..16 {
            let sum: f64 = table[row * 4..row * 4 + 4].iter().sum();
            if (sum - 1.0).abs() > MATRIX_TOL {
                return Err(Error::InvalidBox(format!(
                    "row {row} sums to {sum}, not 1"
                )));
            }
        }
        Ok(CollusionBox { table })
    }

    /// The box answering uniformly at random.
    pub fn uniform() -> Self {
        CollusionBox { table: [0.25; 64] }
    }

    /// Deterministic box that answers the complement of the challenged
    /// bit for both parties — wrong in every round.
    pub fn always_wrong() -> Self {
        let mut table = [0.0; 64];
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    for x_f in 0..2u8 {
                        let a_a = 1 - if x_a == 0 { y0 } else { y1 };
                        let a_f = 1 - if x_f == 0 { y0 } else { y1 };
                        let idx = input_index(y0, y1, x_a, x_f)
                            + a_a as usize * 2
                            + a_f as usize;
                        table[idx] = 1.0;
                    }
                }
            }
        }
        CollusionBox { table }
    }

    pub fn table(&self) -> &[f64; 64] {
        &self.table
    }

    #[inline]
    pub fn prob(&self, y0: Bit, y1: Bit, x_a: Bit, x_f: Bit, a_a: Bit, a_f: Bit) -> f64 {
        self.table[input_index(y0, y1, x_a, x_f) + a_a as usize * 2 + a_f as usize]
    }

    /// The four outcome weights for one input combination, (a_A, a_F)
    /// lexicographic.
    #[inline]
    pub fn row(&self, y0: Bit, y1: Bit, x_a: Bit, x_f: Bit) -> [f64; 4] {
        let base = input_index(y0, y1, x_a, x_f);
        [
            self.table[base],
            self.table[base + 1],
            self.table[base + 2],
            self.table[base + 3],
        ]
    }

    /// Samples an answer pair for one round.
    #[inline]
    pub fn sample(
        &self,
        y0: Bit,
        y1: Bit,
        x_a: Bit,
        x_f: Bit,
        rng: &mut dyn RngCore,
    ) -> (Bit, Bit) {
        let row = self.row(y0, y1, x_a, x_f);
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let mut acc = 0.0;
        for outcome in 0..4usize {
            acc += row[outcome];
            if u < acc {
                return ((outcome >> 1) as Bit, (outcome & 1) as Bit);
            }
        }
        (1, 1)
    }

    /// Alice's marginal P(a_A | inputs).
    pub fn alice_marginal(&self, y0: Bit, y1: Bit, x_a: Bit, x_f: Bit, a_a: Bit) -> f64 {
        self.prob(y0, y1, x_a, x_f, a_a, 0) + self.prob(y0, y1, x_a, x_f, a_a, 1)
    }

    /// Frederick's conditional P(a_F = 1 | a_A, inputs); uniform when the
    /// conditioning marginal vanishes (such answers are never sampled).
    pub fn frederick_conditional_one(
        &self,
        y0: Bit,
        y1: Bit,
        x_a: Bit,
        x_f: Bit,
        a_a: Bit,
    ) -> f64 {
        let marginal = self.alice_marginal(y0, y1, x_a, x_f, a_a);
        if marginal <= 0.0 {
            return 0.5;
        }
        self.prob(y0, y1, x_a, x_f, a_a, 1) / marginal
    }

    /// Average probability that Alice's answer matches her challenged
    /// bit, uniform over all 16 input combinations.
    pub fn alice_success_rate(&self) -> f64 {
        let mut total = 0.0;
        for_each_input(|y0, y1, x_a, x_f| {
            let target = if x_a == 0 { y0 } else { y1 };
            total += self.alice_marginal(y0, y1, x_a, x_f, target);
        });
        total / 16.0
    }

    /// Per-round expectations of the X-type guess counters (rounds with
    /// x_xor = 0, i.e. x_F = x_A): both parties judged against y_{x_A}.
    /// Exact arithmetic on the table, averaged over the uniform
    /// (x_A, y0, y1).
    pub fn expected_x_counters(&self) -> (f64, f64) {
        let mut ex_a = 0.0;
        let mut ex_f = 0.0;
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    let target = if x_a == 0 { y0 } else { y1 };
                    ex_a += self.alice_marginal(y0, y1, x_a, x_a, target);
                    ex_f += self.prob(y0, y1, x_a, x_a, 0, target)
                        + self.prob(y0, y1, x_a, x_a, 1, target);
                }
            }
        }
        (ex_a / 8.0, ex_f / 8.0)
    }

    /// Per-round expectations of the Y-type counters (rounds with
    /// x_xor = 1, i.e. x_F = x_A xor 1): Alice judged against y_{x_A},
    /// Frederick against the opposite bit y_{x_A xor 1}.
    pub fn expected_y_counters(&self) -> (f64, f64) {
        let mut ey_a = 0.0;
        let mut ey_f = 0.0;
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    let x_f = x_a ^ 1;
                    let a_target = if x_a == 0 { y0 } else { y1 };
                    let f_target = if x_f == 0 { y0 } else { y1 };
                    ey_a += self.alice_marginal(y0, y1, x_a, x_f, a_target);
                    ey_f += self.prob(y0, y1, x_a, x_f, 0, f_target)
                        + self.prob(y0, y1, x_a, x_f, 1, f_target);
                }
            }
        }
        (ey_a / 8.0, ey_f / 8.0)
    }

    /// A random box: each row drawn from a flat Dirichlet.
    pub fn random(rng: &mut dyn RngCore) -> Self {
        let mut table = [0.0; 64];
        for row in 0..16 {
            let mut weights = [0.0f64; 4];
            let mut sum = 0.0;
            for w in &mut weights {
                // Exponential draws normalise to a flat Dirichlet.
                let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                *w = -(1.0 - u).ln();
                sum += *w;
            }
            for (i, w) in weights.iter().enumerate() {
                table[row * 4 + i] = w / sum;
            }
        }
        // Renormalise exactly so the validator's 1e-12 row check holds.
        for row in 0..16 {
            let s: f64 = table[row * 4..row * 4 + 4].iter().sum();
            for i in 0..4 {
                table[row * 4 + i] /= s;
            }
        }
        CollusionBox { table }
    }
}

fn for_each_input(mut f: impl FnMut(Bit, Bit, Bit, Bit)) {
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            for x_a in 0..2u8 {
                for x_f in 0..2u8 {
                    f(y0, y1, x_a, x_f);
                }
            }
        }
    }
}

/// Copying attack: Alice plays the honest optimal strategy and Frederick
/// repeats her answer. Alice's marginal success is cos^2(pi/8) on every
/// input; when the branches happen to ask the same bit both succeed with
/// that probability.
pub fn copy_box() -> CollusionBox {
    let mut table = [0.0; 64];
    for_each_input(|y0, y1, x_a, x_f| {
        let state = honest_state(y0, y1);
        let povm = honest_measurement(x_a).povm();
        for a_a in 0..2u8 {
            let p = born(&state, &povm, a_a as usize).expect("two outcomes");
            let idx = input_index(y0, y1, x_a, x_f) + a_a as usize * 2 + a_a as usize;
            table[idx] = p;
        }
    });
    CollusionBox::new(table).expect("honest Born weights form a valid box")
}

/// A qubit-by-qubit collusion strategy: four states indexed by the key
/// bits and, for every challenge pair (x_A, x_F), one four-outcome POVM
/// over the answer pair (a_A, a_F). Letting the POVM depend on both
/// challenges errs on the side of adversary power.
#[derive(Debug, Clone)]
pub struct QuantumCollusionStrategy {
    states: [QubitState; 4],
    /// Indexed povms[x_a][x_f]; outcomes (a_A, a_F) lexicographic.
    povms: [[Povm; 2]; 2],
}

impl QuantumCollusionStrategy {
    pub fn new(states: [QubitState; 4], povms: [[Povm; 2]; 2]) -> Result<Self> {
        for row in &povms {
            for povm in row {
                if povm.outcomes() != 4 {
                    return Err(Error::InvalidStrategy(format!(
                        "collusion POVMs need 4 outcomes, got {}",
                        povm.outcomes()
                    )));
                }
            }
        }
        Ok(QuantumCollusionStrategy { states, povms })
    }

    pub fn state(&self, y0: Bit, y1: Bit) -> &QubitState {
        &self.states[y0 as usize * 2 + y1 as usize]
    }

    pub fn povm(&self, x_a: Bit, x_f: Bit) -> &Povm {
        &self.povms[x_a as usize][x_f as usize]
    }

    /// The honest-Alice / copying-Frederick strategy; its box equals
    /// [`copy_box`].
    pub fn honest_copy() -> Self {
        let states = [
            honest_state(0, 0),
            honest_state(0, 1),
            honest_state(1, 0),
            honest_state(1, 1),
        ];
        let make_povm = |x_a: Bit| {
            let obs = honest_measurement(x_a);
            // Outcomes (a_A, a_F): Frederick always repeats Alice.
            Povm::new(vec![
                obs.projector_plus(),
                Mat2::zero(),
                Mat2::zero(),
                obs.projector_minus(),
            ])
            .expect("projectors complete")
        };
        QuantumCollusionStrategy {
            states,
            povms: [
                [make_povm(0), make_povm(0)],
                [make_povm(1), make_povm(1)],
            ],
        }
    }

    /// Random strategy: states uniform in the Bloch ball, POVMs built
    /// from random positive factors normalised by T^(-1/2) G T^(-1/2).
    pub fn random(rng: &mut dyn RngCore) -> Self {
        let mut unit = || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let mut states = Vec::with_capacity(4);
        for _ in 0..4 {
            loop {
                let r = [
                    2.0 * unit() - 1.0,
                    2.0 * unit() - 1.0,
                    2.0 * unit() - 1.0,
                ];
                if r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0 {
                    states.push(QubitState::from_bloch(r).expect("inside the ball"));
                    break;
                }
            }
        }
        let mut random_povm = || {
            let mut gs = Vec::with_capacity(4);
            let mut total = Mat2::zero();
            for _ in 0..4 {
                let l = Mat2::new(
                    Complex64::new(2.0 * unit() - 1.0, 2.0 * unit() - 1.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(2.0 * unit() - 1.0, 2.0 * unit() - 1.0),
                    Complex64::new(2.0 * unit() - 1.0, 2.0 * unit() - 1.0),
                );
                // G = L L^dagger + eps I keeps the total invertible.
                let g = l * l.adjoint() + Mat2::identity().scale(1e-6);
                total = total + g;
                gs.push(g);
            }
            let w = total.inv_sqrt().expect("total is positive definite");
            let elements: Vec<Mat2> = gs.into_iter().map(|g| w * g * w).collect();
            Povm::new(elements).expect("normalised factors form a POVM")
        };
        QuantumCollusionStrategy {
            states: [states[0], states[1], states[2], states[3]],
            povms: [
                [random_povm(), random_povm()],
                [random_povm(), random_povm()],
            ],
        }
    }
}

/// Evaluates a quantum strategy into its box: entry (a_A, a_F | inputs) =
/// Tr(rho_{y0 y1} E^{x_A x_F}_{a_A a_F}).
pub fn box_from_quantum_strategy(strategy: &QuantumCollusionStrategy) -> Result<CollusionBox> {
    let mut table = [0.0; 64];
    for y0 in 0..2u8 {
        for y1 in 0..2u8 {
            for x_a in 0..2u8 {
                for x_f in 0..2u8 {
                    let state = strategy.state(y0, y1);
                    let povm = strategy.povm(x_a, x_f);
                    let base = input_index(y0, y1, x_a, x_f);
                    for outcome in 0..4usize {
                        table[base + outcome] = born(state, povm, outcome)?;
                    }
                    // Clamping can shave a row sum by a few ulps below the
                    // validator's tolerance; renormalise exactly.
                    let sum: f64 = table[base..base + 4].iter().sum();
                    for entry in &mut table[base..base + 4] {
                        *entry /= sum;
                    }
                }
            }
        }
    }
    CollusionBox::new(table)
}

/// Wire form of a collusion box.
#[derive(Debug, Serialize, Deserialize)]
pub struct BoxFile {
    pub format: String,
    /// 64 reals, (y0, y1, x_A, x_F) lexicographic rows of four
    /// (a_A, a_F)-lexicographic outcome weights.
    pub table: Vec<f64>,
}

impl BoxFile {
    pub fn from_box(b: &CollusionBox) -> Self {
        BoxFile {
            format: BOX_FORMAT.to_owned(),
            table: b.table.to_vec(),
        }
    }

    pub fn into_box(self) -> Result<CollusionBox> {
        if self.format != BOX_FORMAT {
            return Err(Error::SchemaMismatch {
                expected: BOX_FORMAT.to_owned(),
                got: self.format,
            });
        }
        let table: [f64; 64] = self
            .table
            .try_into()
            .map_err(|v: Vec<f64>| Error::InvalidBox(format!("expected 64 reals, got {}", v.len())))?;
        CollusionBox::new(table)
    }
}

/// Wire form of a quantum collusion strategy: states as Bloch vectors,
/// POVM elements as row-major 2x2 complex matrices ([re, im] pairs).
#[derive(Debug, Serialize, Deserialize)]
pub struct StrategyFile {
    pub format: String,
    /// Four Bloch vectors, (y0, y1) lexicographic.
    pub states: Vec<[f64; 3]>,
    /// povms[x_a][x_f] = four elements, each a row-major 2x2 matrix of
    /// [re, im] pairs.
    pub povms: Vec<Vec<Vec<[[[f64; 2]; 2]; 2]>>>,
}

impl StrategyFile {
    pub fn from_strategy(s: &QuantumCollusionStrategy) -> Self {
        let mat_to_wire = |m: &Mat2| {
            [
                [
                    [m.e[0][0].re, m.e[0][0].im],
                    [m.e[0][1].re, m.e[0][1].im],
                ],
                [
                    [m.e[1][0].re, m.e[1][0].im],
                    [m.e[1][1].re, m.e[1][1].im],
                ],
            ]
        };
        StrategyFile {
            format: STRATEGY_FORMAT.to_owned(),
            states: (0..4)
                .map(|i| s.states[i].bloch_vector())
                .collect(),
            povms: (0..2)
                .map(|x_a| {
                    (0..2)
                        .map(|x_f| {
                            let povm = &s.povms[x_a][x_f];
                            (0..povm.outcomes())
                                .map(|o| mat_to_wire(povm.element(o).expect("in range")))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_strategy(self) -> Result<QuantumCollusionStrategy> {
        if self.format != STRATEGY_FORMAT {
            return Err(Error::SchemaMismatch {
                expected: STRATEGY_FORMAT.to_owned(),
                got: self.format,
            });
        }
        if self.states.len() != 4 || self.povms.len() != 2 || self.povms.iter().any(|r| r.len() != 2)
        {
            return Err(Error::InvalidStrategy(
                "need 4 states and a 2x2 grid of POVMs".into(),
            ));
        }
        let wire_to_mat = |w: &[[[f64; 2]; 2]; 2]| {
            Mat2::new(
                Complex64::new(w[0][0][0], w[0][0][1]),
                Complex64::new(w[0][1][0], w[0][1][1]),
                Complex64::new(w[1][0][0], w[1][0][1]),
                Complex64::new(w[1][1][0], w[1][1][1]),
            )
        };
        let mut states = Vec::with_capacity(4);
        for bloch in &self.states {
            states.push(QubitState::from_bloch(*bloch)?);
        }
        let mut povm_grid: Vec<Vec<Povm>> = Vec::with_capacity(2);
        for row in &self.povms {
            let mut povm_row = Vec::with_capacity(2);
            for elements in row {
                let mats: Vec<Mat2> = elements.iter().map(wire_to_mat).collect();
                povm_row.push(Povm::new(mats)?);
            }
            povm_grid.push(povm_row);
        }
        let mut rows = povm_grid.into_iter();
        let mut r0 = rows.next().expect("two rows").into_iter();
        let mut r1 = rows.next().expect("two rows").into_iter();
        QuantumCollusionStrategy::new(
            [states[0], states[1], states[2], states[3]],
            [
                [r0.next().unwrap(), r0.next().unwrap()],
                [r1.next().unwrap(), r1.next().unwrap()],
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_box_is_valid_and_flat() {
        let b = CollusionBox::uniform();
        assert_abs_diff_eq!(b.alice_success_rate(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn copy_box_marginals() {
        let b = copy_box();
        let p_q = bounds::p_quantum();
        // Alice's marginal is P_Q on every one of the 16 inputs.
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    for x_f in 0..2u8 {
                        let target = if x_a == 0 { y0 } else { y1 };
                        assert_abs_diff_eq!(
                            b.alice_marginal(y0, y1, x_a, x_f, target),
                            p_q,
                            epsilon = 1e-12
                        );
                    }
                }
            }
        }
        // Same challenge: both correct with probability P_Q.
        let mut joint = 0.0;
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x in 0..2u8 {
                    let target = if x == 0 { y0 } else { y1 };
                    joint += b.prob(y0, y1, x, x, target, target);
                }
            }
        }
        assert_abs_diff_eq!(joint / 8.0, p_q, epsilon = 1e-12);
        // Opposite challenges: Frederick's success averages to 1/2.
        let mut fred = 0.0;
        for y0 in 0..2u8 {
            for y1 in 0..2u8 {
                for x_a in 0..2u8 {
                    let x_f = x_a ^ 1;
                    let target = if x_f == 0 { y0 } else { y1 };
                    fred += b.prob(y0, y1, x_a, x_f, 0, target)
                        + b.prob(y0, y1, x_a, x_f, 1, target);
                }
            }
        }
        assert_abs_diff_eq!(fred / 8.0, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn honest_copy_strategy_reproduces_copy_box() {
        let via_strategy = box_from_quantum_strategy(&QuantumCollusionStrategy::honest_copy())
            .unwrap();
        let direct = copy_box();
        for i in 0..64 {
            assert_abs_diff_eq!(via_strategy.table()[i], direct.table()[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn mixed_states_uniform_povm_gives_quarter_entries() {
        let states = [QubitState::maximally_mixed(); 4];
        let uniform_povm = || {
            Povm::new(vec![Mat2::identity().scale(0.25); 4]).unwrap()
        };
        let strategy = QuantumCollusionStrategy::new(
            states,
            [
                [uniform_povm(), uniform_povm()],
                [uniform_povm(), uniform_povm()],
            ],
        )
        .unwrap();
        let b = box_from_quantum_strategy(&strategy).unwrap();
        for &p in b.table() {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_strategies_normalise() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let s = QuantumCollusionStrategy::random(&mut rng);
            let b = box_from_quantum_strategy(&s).unwrap();
            for row in 0..16 {
                let sum: f64 = b.table()[row * 4..row * 4 + 4].iter().sum();
                assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
            }
        }
    }

    /// The per-round expectation bounds behind the security proof: for
    /// quantum boxes, E X-counters stay below 2 P_Q and E Y-counters
    /// below M. Exact table arithmetic, no sampling.
    #[test]
    fn quantum_boxes_respect_per_round_counter_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let two_p_q = 2.0 * bounds::p_quantum();
        let m = bounds::monogamy_m();
        for _ in 0..200 {
            let s = QuantumCollusionStrategy::random(&mut rng);
            let b = box_from_quantum_strategy(&s).unwrap();
            let (ex_a, ex_f) = b.expected_x_counters();
            let (ey_a, ey_f) = b.expected_y_counters();
            assert!(ex_a + ex_f <= two_p_q + 1e-9, "X bound broken: {}", ex_a + ex_f);
            assert!(ey_a + ey_f <= m + 1e-9, "Y bound broken: {}", ey_a + ey_f);
        }
        // The copy box saturates the X bound.
        let b = copy_box();
        let (ex_a, ex_f) = b.expected_x_counters();
        assert_abs_diff_eq!(ex_a + ex_f, two_p_q, epsilon = 1e-12);
    }

    #[test]
    fn invalid_tables_rejected() {
        let mut bad = [0.25; 64];
        bad[0] = -0.1;
        assert!(CollusionBox::new(bad).is_err());
        let mut unnorm = [0.25; 64];
        unnorm[0] = 0.3;
        assert!(CollusionBox::new(unnorm).is_err());
    }

    #[test]
    fn box_json_round_trip() {
        let b = copy_box();
        let json = serde_json::to_string(&BoxFile::from_box(&b)).unwrap();
        let back: BoxFile = serde_json::from_str(&json).unwrap();
        let b2 = back.into_box().unwrap();
        assert_eq!(b, b2);

        let bad = r#"{"format":"sdi-box/2","table":[]}"#;
        let bad_file: BoxFile = serde_json::from_str(bad).unwrap();
        assert!(bad_file.into_box().is_err());
    }

    #[test]
    fn strategy_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let s = QuantumCollusionStrategy::random(&mut rng);
        let json = serde_json::to_string(&StrategyFile::from_strategy(&s)).unwrap();
        let back: StrategyFile = serde_json::from_str(&json).unwrap();
        let s2 = back.into_strategy().unwrap();
        let b1 = box_from_quantum_strategy(&s).unwrap();
        let b2 = box_from_quantum_strategy(&s2).unwrap();
        for i in 0..64 {
            assert_abs_diff_eq!(b1.table()[i], b2.table()[i], epsilon = 1e-9);
        }
    }

    #[test]
    fn sampling_matches_row_weights() {
        let b = copy_box();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 200_000;
        let mut hits = [0usize; 4];
        for _ in 0..n {
            let (a_a, a_f) = b.sample(0, 0, 0, 0, &mut rng);
            hits[a_a as usize * 2 + a_f as usize] += 1;
        }
        let row = b.row(0, 0, 0, 0);
        for (i, &h) in hits.iter().enumerate() {
            let freq = h as f64 / n as f64;
            assert!(
                (freq - row[i]).abs() < 0.005,
                "outcome {i}: freq {freq} vs weight {}",
                row[i]
            );
        }
    }
}
