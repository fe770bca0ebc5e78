//! Genetic search over the parameter sphere for the best Wiener filter.
//!
//! A genome is three hyperspherical angles for `(a, b, c, d)` plus `θ`.
//! Every candidate is scored on the same observed signal, so the search is
//! deterministic under the seed regardless of thread count.

use super::filter::{optimal_filter, FilterMask};
use crate::error::Result;
use crate::grid::{metrics, ComplexGrid};
use crate::params::ParamSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub mutation_sigma: f64,
    pub elitism: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population: 30,
            generations: 50,
            tournament: 3,
            mutation_sigma: 0.1,
            elitism: 2,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchSpace {
    /// The whole parameter sphere, seeded with the FT point.
    Full,
    /// A single fixed point; no search happens.
    Point(ParamSet),
}

#[derive(Debug, Clone)]
pub struct GaResult {
    pub params: ParamSet,
    pub mask: FilterMask,
    pub filtered: ComplexGrid,
    pub mse: f64,
    /// Best MSE after each generation.
    pub history: Vec<f64>,
}

type Genome = [f64; 4];

const FT_GENOME: Genome = [0.0, 0.0, 0.0, FRAC_PI_2];

fn decode(g: &Genome) -> Result<ParamSet> {
    let [p1, p2, p3, theta] = *g;
    ParamSet::new(
        p1.cos(),
        p1.sin() * p2.cos(),
        p1.sin() * p2.sin() * p3.cos(),
        p1.sin() * p2.sin() * p3.sin(),
        theta,
    )
}

/// Angles of a normalized Gaussian 4-vector, i.e. a uniform point on the
/// sphere, with `θ` uniform on `[0, π)`.
fn random_genome(rng: &mut ChaCha8Rng) -> Genome {
    let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = v.map(|x| x / n);
    let p1 = a.clamp(-1.0, 1.0).acos();
    let p2 = (c * c + d * d).sqrt().atan2(b);
    let p3 = d.atan2(c);
    [p1, p2, p3, rng.random_range(0.0..PI)]
}

fn fitness(
    g: &Genome,
    observed: &ComplexGrid,
    clean: &ComplexGrid,
    noise_var: f64,
) -> f64 {
    let eval = || -> Result<f64> {
        let p = decode(g)?;
        let (out, _) = optimal_filter(observed, clean, noise_var, &p)?;
        metrics::mse(&out, clean)
    };
    match eval() {
        Ok(m) if m.is_finite() => m,
        _ => f64::INFINITY,
    }
}

fn tournament<'a>(rng: &mut ChaCha8Rng, pop: &'a [(Genome, f64)], k: usize) -> &'a Genome {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..k {
        let c = &pop[rng.random_range(0..pop.len())];
        if c.1 < best.1 {
            best = c;
        }
    }
    &best.0
}

fn finish(
    p: ParamSet,
    observed: &ComplexGrid,
    clean: &ComplexGrid,
    noise_var: f64,
    history: Vec<f64>,
) -> Result<GaResult> {
    let (filtered, mask) = optimal_filter(observed, clean, noise_var, &p)?;
    let mse = metrics::mse(&filtered, clean)?;
    Ok(GaResult {
        params: p,
        mask,
        filtered,
        mse,
        history,
    })
}

/// Searches for the parameters whose Wiener filter best restores `clean`
/// from `observed`. The FT point is always in the initial population and
/// elitism keeps the best candidate, so the result is never worse than the
/// FT-domain filter.
pub fn ga_search(
    observed: &ComplexGrid,
    clean: &ComplexGrid,
    noise_var: f64,
    space: &SearchSpace,
    config: &GaConfig,
) -> Result<GaResult> {
    if let SearchSpace::Point(p) = space {
        return finish(*p, observed, clean, noise_var, Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let size = config.population.max(2);
    let mut genomes = vec![FT_GENOME];
    genomes.extend((1..size).map(|_| random_genome(&mut rng)));
    let score = |gs: Vec<Genome>| -> Vec<(Genome, f64)> {
        gs.into_par_iter()
            .map(|g| {
                let f = fitness(&g, observed, clean, noise_var);
                (g, f)
            })
            .collect()
    };
    let by_fitness = |a: &(Genome, f64), b: &(Genome, f64)| a.1.total_cmp(&b.1);
    let mut pop = score(genomes);
    pop.sort_by(by_fitness);
    let mut history = vec![pop[0].1];
    let mutation = Normal::new(0.0, config.mutation_sigma).expect("finite sigma");
    let elites = config.elitism.min(size);
    for _ in 1..config.generations.max(1) {
        let children: Vec<Genome> = (elites..size)
            .map(|_| {
                let x = tournament(&mut rng, &pop, config.tournament.max(1));
                let y = tournament(&mut rng, &pop, config.tournament.max(1));
                let w: f64 = rng.random();
                std::array::from_fn(|i| {
                    w * x[i] + (1.0 - w) * y[i] + mutation.sample(&mut rng)
                })
            })
            .collect();
        let mut next: Vec<(Genome, f64)> = pop[..elites].to_vec();
        next.extend(score(children));
        next.sort_by(by_fitness);
        pop = next;
        history.push(pop[0].1);
    }
    finish(decode(&pop[0].0)?, observed, clean, noise_var, history)
}
