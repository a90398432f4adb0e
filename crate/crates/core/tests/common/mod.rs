//! A deliberately naive reference engine, written directly from the
//! documented behavior and sharing no logic with the library, plus a random
//! instance generator used to cross-check the real engine against it. Each
//! test target that includes this file uses a subset of it.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use semantic_cells::{
    BaseVectors, CellPopulation, CoexistenceUnit, Corpus, DistanceMetric, EmbeddingTable,
    InfluenceMode, ModelConfig, OffSegmentSign, UnknownItemPolicy, VarianceMode,
};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum NaiveInfluence {
    Constant,
    InverseSquare,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum NaiveMetric {
    Euclidean,
    Cosine,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum NaiveSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum NaiveVariance {
    Population,
    Sample,
}

#[derive(Clone)]
pub struct NaiveParams {
    pub dimension: usize,
    pub chromosomes: usize,
    pub rounds: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub influence: NaiveInfluence,
    pub metric: NaiveMetric,
    pub sign: NaiveSign,
}

/// Chromosome i owns the 1-based gene positions k with
/// d*i < k*g <= d*(i+1); checked in integer arithmetic.
pub fn naive_init(base: &[f64], p: &NaiveParams) -> Vec<Vec<f64>> {
    let d = p.dimension;
    let g = p.chromosomes;
    let off = match p.sign {
        NaiveSign::Plus => p.epsilon / (g as f64 - 1.0),
        NaiveSign::Minus => -p.epsilon / (g as f64 - 1.0),
    };
    (0..g)
        .map(|i| {
            (1..=d)
                .map(|k| {
                    let owned = d * i < k * g && k * g <= d * (i + 1);
                    base[k - 1] + if owned { p.epsilon } else { off }
                })
                .collect()
        })
        .collect()
}

fn naive_distance(metric: NaiveMetric, a: &[f64], b: &[f64]) -> f64 {
    match metric {
        NaiveMetric::Euclidean => {
            let mut sum = 0.0;
            for k in 0..a.len() {
                sum += (a[k] - b[k]).powi(2);
            }
            sum.sqrt()
        }
        NaiveMetric::Cosine => {
            let dot: f64 = (0..a.len()).map(|k| a[k] * b[k]).sum();
            let na: f64 = (0..a.len()).map(|k| a[k] * a[k]).sum::<f64>().sqrt();
            let nb: f64 = (0..b.len()).map(|k| b[k] * b[k]).sum::<f64>().sqrt();
            if na == 0.0 && nb == 0.0 {
                0.0
            } else if na == 0.0 || nb == 0.0 {
                1.0
            } else {
                (1.0 - dot / (na * nb)).max(0.0)
            }
        }
    }
}

fn dedupe_first_occurrence(items: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for item in items {
        if !out.contains(item) {
            out.push(item.clone());
        }
    }
    out
}

/// Runs the full evolution the slow way and returns the final chromosome
/// populations per item. Every unit item must have a base vector.
pub fn naive_run(
    bases: &BTreeMap<String, Vec<f64>>,
    units: &[Vec<String>],
    p: &NaiveParams,
) -> BTreeMap<String, Vec<Vec<f64>>> {
    let mut cells: BTreeMap<String, Vec<Vec<f64>>> = bases
        .iter()
        .map(|(item, base)| (item.clone(), naive_init(base, p)))
        .collect();

    for _ in 0..p.rounds {
        for unit in units {
            let members = dedupe_first_occurrence(unit);

            // Centroid over all member chromosomes, gene by gene.
            let total: usize = members.iter().map(|m| cells[m].len()).sum();
            let centroid: Vec<f64> = (0..p.dimension)
                .map(|k| {
                    let mut sum = 0.0;
                    for m in &members {
                        for ch in &cells[m] {
                            sum += ch[k];
                        }
                    }
                    sum / total as f64
                })
                .collect();

            for m in &members {
                let chs = cells.get_mut(m).unwrap();
                let mut j = 0;
                for cand in 1..chs.len() {
                    if naive_distance(p.metric, &chs[cand], &centroid)
                        < naive_distance(p.metric, &chs[j], &centroid)
                    {
                        j = cand;
                    }
                }
                if p.alpha == 0.0 {
                    continue;
                }
                let a = match p.influence {
                    NaiveInfluence::Constant => p.alpha,
                    NaiveInfluence::InverseSquare => {
                        let r = naive_distance(p.metric, &chs[j], &centroid);
                        if r == 0.0 {
                            1.0
                        } else {
                            (p.alpha / (r * r)).min(1.0)
                        }
                    }
                };
                if a == 1.0 {
                    chs[j] = centroid.clone();
                } else {
                    // Evaluated as old + a * (centroid - old); that order is
                    // part of the documented arithmetic, and selection ties
                    // depend on it bit for bit.
                    chs[j] = (0..p.dimension)
                        .map(|k| chs[j][k] + a * (centroid[k] - chs[j][k]))
                        .collect();
                }
            }
        }
    }
    cells
}

pub fn naive_polysemy(chromosomes: &[Vec<f64>], variance: NaiveVariance) -> f64 {
    let g = chromosomes.len() as f64;
    let denom = match variance {
        NaiveVariance::Population => g,
        NaiveVariance::Sample => g - 1.0,
    };
    let d = chromosomes[0].len();
    (0..d)
        .map(|k| {
            let mean: f64 = chromosomes.iter().map(|ch| ch[k]).sum::<f64>() / g;
            chromosomes.iter().map(|ch| (ch[k] - mean).powi(2)).sum::<f64>() / denom
        })
        .sum()
}

/// A complete random problem: engine config, the equivalent naive parameters,
/// base vectors, and a unit stream.
pub struct Instance {
    pub config: ModelConfig,
    pub params: NaiveParams,
    pub bases: BTreeMap<String, Vec<f64>>,
    pub units: Vec<Vec<String>>,
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let chromosomes = rng.gen_range(2..=3usize);
    let dimension = chromosomes * rng.gen_range(1..=8 / chromosomes);
    let rounds = rng.gen_range(1..=2usize);
    let alpha = match rng.gen_range(0..5) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.gen_range(0.0..1.0),
    };
    let epsilon = rng.gen_range(0.001..0.5);
    let influence = if rng.gen_bool(0.5) {
        (InfluenceMode::Constant, NaiveInfluence::Constant)
    } else {
        (InfluenceMode::InverseSquare, NaiveInfluence::InverseSquare)
    };
    let metric = if rng.gen_bool(0.5) {
        (DistanceMetric::Euclidean, NaiveMetric::Euclidean)
    } else {
        (DistanceMetric::Cosine, NaiveMetric::Cosine)
    };
    let sign = if rng.gen_bool(0.5) {
        (OffSegmentSign::Positive, NaiveSign::Plus)
    } else {
        (OffSegmentSign::Negative, NaiveSign::Minus)
    };

    let pool: Vec<String> = (0..rng.gen_range(1..=6usize))
        .map(|i| format!("w{i}"))
        .collect();
    let bases: BTreeMap<String, Vec<f64>> = pool
        .iter()
        .map(|item| {
            let v: Vec<f64> = (0..dimension).map(|_| rng.gen_range(-1.0..1.0)).collect();
            (item.clone(), v)
        })
        .collect();
    let units: Vec<Vec<String>> = (0..rng.gen_range(1..=20usize))
        .map(|_| {
            (0..rng.gen_range(1..=4usize))
                .map(|_| pool.choose(rng).unwrap().clone())
                .collect()
        })
        .collect();

    Instance {
        config: ModelConfig {
            dimension,
            chromosomes,
            rounds,
            alpha,
            epsilon,
            influence_mode: influence.0,
            distance_metric: metric.0,
            variance_mode: VarianceMode::Population,
            off_segment_sign: sign.0,
            rng_seed: 0,
        },
        params: NaiveParams {
            dimension,
            chromosomes,
            rounds,
            alpha,
            epsilon,
            influence: influence.1,
            metric: metric.1,
            sign: sign.1,
        },
        bases,
        units,
    }
}

/// Runs the real engine on an instance and returns the final population.
pub fn engine_run(instance: &Instance) -> CellPopulation {
    let mut table = EmbeddingTable::new(instance.config.dimension).unwrap();
    for (item, base) in &instance.bases {
        table.insert(item.clone(), base.clone()).unwrap();
    }
    let base = BaseVectors::new(table, UnknownItemPolicy::Error, 0);
    let mut population = CellPopulation::initialize(
        base,
        instance.bases.keys().cloned(),
        instance.config.clone(),
    )
    .unwrap();
    let units: Vec<CoexistenceUnit> = instance
        .units
        .iter()
        .enumerate()
        .map(|(i, items)| CoexistenceUnit::new(i, items.iter().cloned()).unwrap())
        .collect();
    population.run(&Corpus::from_units(units), |_, _| {}).unwrap();
    population
}

/// Initial polysemy from the delta values alone; the base vector cancels.
pub fn initial_polysemy_closed_form(
    dimension: usize,
    chromosomes: usize,
    epsilon: f64,
    sign: NaiveSign,
    variance: NaiveVariance,
) -> f64 {
    let g = chromosomes as f64;
    let off = match sign {
        NaiveSign::Plus => epsilon / (g - 1.0),
        NaiveSign::Minus => -epsilon / (g - 1.0),
    };
    // Per dimension the gene values are one epsilon and (g - 1) off values.
    let mean = (epsilon + (g - 1.0) * off) / g;
    let ss = (epsilon - mean).powi(2) + (g - 1.0) * (off - mean).powi(2);
    let denom = match variance {
        NaiveVariance::Population => g,
        NaiveVariance::Sample => g - 1.0,
    };
    dimension as f64 * ss / denom
}
