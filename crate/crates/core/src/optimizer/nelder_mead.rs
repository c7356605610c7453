//! Derivative-free simplex maximisation. The objectives here are smooth
//! and at most a few dozen dimensions, so a plain Nelder-Mead with
//! multi-start (driven by the caller) is enough; no gradient bookkeeping
//! through the POVM constraints.

/// Outcome of one simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximises `f` from `start`, treating non-finite values as infeasible.
pub fn maximize(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    start: &[f64],
    initial_step: f64,
    max_iterations: usize,
    tolerance: f64,
) -> SimplexResult {
    let dim = start.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_finite() {
            -v
        } else {
            f64::INFINITY
        }
    };

    // Initial simplex: the start plus one step along each coordinate.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += initial_step;
        let v = eval(&p);
        simplex.push((p, v));
    }

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..max_iterations {
        iterations = iter + 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[dim].1 - simplex[0].1).abs() < tolerance {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; dim];
        for (p, _) in simplex.iter().take(dim) {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / dim as f64;
            }
        }
        let worst = simplex[dim].clone();

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let f_reflect = eval(&reflect);

        if f_reflect < simplex[0].1 {
            // Try expanding further along the same direction.
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + gamma * (c - w))
                .collect();
            let f_expand = eval(&expand);
            simplex[dim] = if f_expand < f_reflect {
                (expand, f_expand)
            } else {
                (reflect, f_reflect)
            };
            continue;
        }
        if f_reflect < simplex[dim - 1].1 {
            simplex[dim] = (reflect, f_reflect);
            continue;
        }

        let contract: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + rho * (w - c))
            .collect();
        let f_contract = eval(&contract);
        if f_contract < worst.1 {
            simplex[dim] = (contract, f_contract);
            continue;
        }

        // Shrink towards the best vertex.
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let shrunk: Vec<f64> = best
                .iter()
                .zip(&entry.0)
                .map(|(b, x)| b + sigma * (x - b))
                .collect();
            let v = eval(&shrunk);
            *entry = (shrunk, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best_point, neg_value) = simplex.swap_remove(0);
    SimplexResult {
        best_point,
        best_value: if neg_value.is_finite() {
            -neg_value
        } else {
            f64::NEG_INFINITY
        },
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_maximum() {
        let f = |x: &[f64]| -(x[0] - 1.5).powi(2) - (x[1] + 0.5).powi(2) + 3.0;
        let result = maximize(&f, &[0.0, 0.0], 0.5, 2000, 1e-12);
        assert!(result.converged);
        assert!((result.best_value - 3.0).abs() < 1e-8);
        assert!((result.best_point[0] - 1.5).abs() < 1e-4);
        assert!((result.best_point[1] + 0.5).abs() < 1e-4);
    }

    #[test]
    fn infeasible_regions_are_avoided() {
        // NaN outside the unit disc; the optimum sits on the boundary.
        let f = |x: &[f64]| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            if r2 > 1.0 {
                f64::NAN
            } else {
                x[0]
            }
        };
        let result = maximize(&f, &[0.2, 0.1], 0.2, 4000, 1e-12);
        assert!(result.best_value > 0.99, "value {}", result.best_value);
    }
}
