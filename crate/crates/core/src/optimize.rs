//! Derivative-free minimization: Nelder–Mead simplex search plus a seeded
//! multi-start driver.

use rand::Rng;
use rayon::prelude::*;

use crate::random::rng_from_seed;

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Cap on simplex iterations.
    pub max_iters: usize,
    /// Stop once `f_max - f_min` over the simplex drops to this.
    pub f_tol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub iters: usize,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

impl NelderMead {
    pub fn minimize<F: Fn(&[f64]) -> f64>(&self, f: &F, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64]| {
            evals += 1;
            f(x)
        };
        if n == 0 {
            let fx = eval(x0);
            return Minimum {
                x: vec![],
                f: fx,
                iters: 0,
                evals,
                converged: true,
            };
        }

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for k in 0..n {
            let mut v = x0.to_vec();
            v[k] += self.initial_step;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

        let mut iters = 0;
        let mut converged = false;
        while iters < self.max_iters {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            if values[n] - values[0] <= self.f_tol {
                converged = true;
                break;
            }
            iters += 1;

            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
                .collect();
            let toward = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = toward(REFLECT);
            let fr = eval(&xr);
            if fr < values[0] {
                let xe = toward(REFLECT * EXPAND);
                let fe = eval(&xe);
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
                continue;
            }
            // outside contraction if the reflection beat the worst point
            let (xc, fc) = if fr < values[n] {
                let xc = toward(REFLECT * CONTRACT);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc = toward(-CONTRACT);
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
            let best = simplex[0].clone();
            for i in 1..=n {
                for k in 0..n {
                    simplex[i][k] = best[k] + SHRINK * (simplex[i][k] - best[k]);
                }
                values[i] = eval(&simplex[i]);
            }
        }

        let best = (0..=n)
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap_or(0);
        Minimum {
            x: simplex[best].clone(),
            f: values[best],
            iters,
            evals,
            converged,
        }
    }
}

/// Outcome of a multi-start run.
#[derive(Debug, Clone)]
pub struct MultiStart {
    pub best: Minimum,
    /// Optimum of every restart, in restart order.
    pub optima: Vec<f64>,
}

/// Derives the seed of restart `index` from a base seed.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer over (seed, index)
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `restarts` independent Nelder–Mead searches from uniform random points
/// in `[0, 2 pi)^dim` and keeps the lowest value. Restart `r` depends only on
/// `(seed, r)`, so a run with more restarts never does worse than one with
/// fewer. Each search is re-seeded from its own optimum until it stops
/// improving by more than the tolerance.
pub fn multistart_minimize<F>(
    f: &F,
    dim: usize,
    restarts: usize,
    method: &NelderMead,
    seed: u64,
) -> MultiStart
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    const POLISH_ROUNDS: usize = 4;
    let runs: Vec<Minimum> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_from_seed(child_seed(seed, r as u64));
            let x0: Vec<f64> = (0..dim)
                .map(|_| rng.gen::<f64>() * std::f64::consts::TAU)
                .collect();
            let mut m = method.minimize(f, &x0);
            let polish = NelderMead {
                initial_step: method.initial_step * 0.1,
                ..*method
            };
            for _ in 0..POLISH_ROUNDS {
                let next = polish.minimize(f, &m.x);
                let gained = m.f - next.f;
                let evals = m.evals + next.evals;
                if next.f < m.f {
                    m = Minimum { evals, ..next };
                } else {
                    m.evals = evals;
                }
                if gained <= method.f_tol {
                    break;
                }
            }
            m
        })
        .collect();
    let optima = runs.iter().map(|m| m.f).collect();
    let best_index = (0..runs.len())
        .min_by(|&a, &b| runs[a].f.total_cmp(&runs[b].f).then(a.cmp(&b)))
        .unwrap_or(0);
    MultiStart {
        best: runs[best_index].clone(),
        optima,
    }
}
