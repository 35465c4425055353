//! Batches of independent episodes.
//!
//! Episode `i` of a sweep runs with seed `first_seed + i` (wrapping). Results
//! always come back in seed order. With the `parallel` feature the episodes
//! are spread over the rayon pool; [`run_sweep_sequential`] is always
//! available.

use crate::brain::{Brain, BrainKind};
use crate::error::Result;
use crate::game::{run_episode_with, EpisodeResult, GameConfig, Status};

fn seeds(first_seed: u64, episodes: u64) -> impl Iterator<Item = u64> {
    (0..episodes).map(move |i| first_seed.wrapping_add(i))
}

pub fn run_sweep_sequential(config: &GameConfig, episodes: u64, kind: BrainKind) -> Result<Vec<EpisodeResult>> {
    config.validate()?;
    let brain = Brain::new(kind)?;
    seeds(config.seed, episodes)
        .map(|seed| run_episode_with(&config.clone().with_seed(seed), &brain))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn run_sweep_parallel(config: &GameConfig, episodes: u64, kind: BrainKind) -> Result<Vec<EpisodeResult>> {
    use rayon::prelude::*;

    config.validate()?;
    let brain = Brain::new(kind)?;
    let seeds: Vec<u64> = seeds(config.seed, episodes).collect();
    seeds
        .into_par_iter()
        .map(|seed| run_episode_with(&config.clone().with_seed(seed), &brain))
        .collect()
}

/// Runs `episodes` games starting at `config.seed`, in parallel when the
/// `parallel` feature is on.
pub fn run_sweep(config: &GameConfig, episodes: u64, kind: BrainKind) -> Result<Vec<EpisodeResult>> {
    #[cfg(feature = "parallel")]
    {
        run_sweep_parallel(config, episodes, kind)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_sequential(config, episodes, kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub episodes: u64,
    pub wins: u64,
    pub collisions: u64,
    pub timeouts: u64,
    pub mean_ticks: f64,
}

impl SweepSummary {
    pub fn of(results: &[EpisodeResult]) -> Self {
        let count = |s| results.iter().filter(|r| r.status == s).count() as u64;
        let total_ticks: u64 = results.iter().map(|r| r.ticks_elapsed).sum();
        let episodes = results.len() as u64;
        Self {
            episodes,
            wins: count(Status::Won),
            collisions: count(Status::Collided),
            timeouts: count(Status::TimedOut),
            mean_ticks: if episodes == 0 { 0.0 } else { total_ticks as f64 / episodes as f64 },
        }
    }

    /// `episodes=.. wins=.. collisions=.. timeouts=.. mean_ticks=..`
    pub fn line(&self) -> String {
        format!(
            "episodes={} wins={} collisions={} timeouts={} mean_ticks={:.3}",
            self.episodes, self.wins, self.collisions, self.timeouts, self.mean_ticks
        )
    }
}
