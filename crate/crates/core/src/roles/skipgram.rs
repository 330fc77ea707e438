//! Skip-gram with negative sampling over node walks.
//!
//! Single-threaded, so a given seed always produces the same vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SkipGramConfig {
    pub dims: usize,
    pub window: usize,
    pub epochs: usize,
    pub negative: usize,
    pub learning_rate: f64,
    /// Floor of the linearly decayed learning rate, as a fraction of the start.
    pub min_rate_fraction: f64,
    /// Frequent-token downsampling threshold; 0 keeps every token.
    pub sample: f64,
    pub seed: u64,
}

impl Default for SkipGramConfig {
    fn default() -> Self {
        Self {
            dims: 128,
            window: 10,
            epochs: 5,
            negative: 5,
            learning_rate: 0.025,
            min_rate_fraction: 1e-4,
            sample: 1e-3,
            seed: 42,
        }
    }
}

/// Draws negatives from the unigram distribution raised to 3/4.
struct NoiseTable {
    cumulative: Vec<f64>,
}

impl NoiseTable {
    fn new(walks: &[Vec<usize>], vocab: usize) -> Self {
        let mut counts = vec![0usize; vocab];
        for w in walks {
            for &u in w {
                counts[u] += 1;
            }
        }
        let mut acc = 0.0;
        let cumulative = counts
            .iter()
            .map(|&c| {
                acc += (c as f64).powf(0.75);
                acc
            })
            .collect();
        Self { cumulative }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().unwrap();
        let r = rng.gen::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= r)
            .min(self.cumulative.len() - 1)
    }
}

/// Probability of keeping each occurrence of a token, as in word2vec:
/// `(sqrt(c / (t N)) + 1) * t N / c` for a token seen `c` times out of `N`.
fn keep_probabilities(walks: &[Vec<usize>], vocab: usize, sample: f64) -> Vec<f64> {
    let mut counts = vec![0usize; vocab];
    for w in walks {
        for &u in w {
            counts[u] += 1;
        }
    }
    if sample <= 0.0 {
        return vec![1.0; vocab];
    }
    let threshold = sample * counts.iter().sum::<usize>() as f64;
    counts
        .iter()
        .map(|&c| {
            if c == 0 {
                1.0
            } else {
                let c = c as f64;
                ((c / threshold).sqrt() + 1.0) * threshold / c
            }
        })
        .collect()
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// One vector per node id in `0..vocab`. Nodes that never occur in a walk
/// keep their random initialisation.
pub fn train_embeddings(
    walks: &[Vec<usize>],
    vocab: usize,
    config: &SkipGramConfig,
) -> Result<Vec<Vec<f64>>> {
    if config.dims < 2 {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension must be >= 2, got {}",
            config.dims
        )));
    }
    if !(config.sample.is_finite() && config.sample >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "downsampling threshold must be >= 0, got {}",
            config.sample
        )));
    }
    let tokens: usize = walks.iter().map(Vec::len).sum();
    if tokens == 0 {
        return Err(Error::Degenerate("empty walk corpus".into()));
    }
    if let Some(&bad) = walks.iter().flatten().find(|&&u| u >= vocab) {
        return Err(Error::InvalidParameter(format!(
            "walk node {bad} outside vocabulary of {vocab}"
        )));
    }

    let d = config.dims;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut input: Vec<Vec<f64>> = (0..vocab)
        .map(|_| {
            (0..d)
                .map(|_| (rng.gen::<f64>() - 0.5) / d as f64)
                .collect()
        })
        .collect();
    let mut output = vec![vec![0.0; d]; vocab];
    let noise = NoiseTable::new(walks, vocab);
    let keep = keep_probabilities(walks, vocab, config.sample);

    let total = (config.epochs * tokens) as f64;
    let mut seen = 0usize;
    let mut grad = vec![0.0; d];
    for _ in 0..config.epochs {
        for full in walks {
            let walk: Vec<usize> = full
                .iter()
                .copied()
                .filter(|&u| keep[u] >= 1.0 || rng.gen::<f64>() < keep[u])
                .collect();
            // dropped tokens still advance the learning-rate schedule
            seen += full.len() - walk.len();
            for (i, &center) in walk.iter().enumerate() {
                let rate = config.learning_rate
                    * (1.0 - seen as f64 / total).max(config.min_rate_fraction);
                seen += 1;
                // dynamic window: uniformly 1..=window
                let reach = if config.window == 0 {
                    0
                } else {
                    config.window - rng.gen_range(0..config.window)
                };
                let lo = i.saturating_sub(reach);
                let hi = (i + reach).min(walk.len() - 1);
                for (j, &context) in walk.iter().enumerate().take(hi + 1).skip(lo) {
                    if j == i {
                        continue;
                    }
                    // the context word's input vector predicts the centre
                    grad.iter_mut().for_each(|g| *g = 0.0);
                    for s in 0..=config.negative {
                        let (target, label) = if s == 0 {
                            (center, 1.0)
                        } else {
                            let t = noise.sample(&mut rng);
                            if t == center {
                                continue;
                            }
                            (t, 0.0)
                        };
                        let dot: f64 = input[context]
                            .iter()
                            .zip(&output[target])
                            .map(|(a, b)| a * b)
                            .sum();
                        let g = (label - sigmoid(dot)) * rate;
                        for k in 0..d {
                            grad[k] += g * output[target][k];
                            output[target][k] += g * input[context][k];
                        }
                    }
                    for k in 0..d {
                        input[context][k] += grad[k];
                    }
                }
            }
        }
    }
    Ok(input)
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}
