//! Exact uniform sampling by monotone coupling from the past.
//!
//! The chain picks a (component, direction) pair uniformly and applies that
//! flip when it is available. Twin chains started from the minimum and the
//! maximum height sandwich every other chain, so once they meet the common
//! state is an exact sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::components::{forced_components_of_height, ComponentError, ComponentGraph};
use crate::equilibrium::ArcWeights;
use crate::flips::{can_flip_values, shift_component, Flip, FlipDirection};
use crate::generate::ComponentOrder;
use crate::grid::{FigureGraph, GridVertex};
use crate::lattice::{max_height, min_height, Untileable};
use crate::tiling::{tiling_of_height, HeightFunction, Tiling};

/// Longest window tried before giving up.
pub const MAX_WINDOW: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error(transparent)]
    NotTileable(#[from] Untileable),
    #[error(transparent)]
    Components(#[from] ComponentError),
    #[error("chains did not coalesce within {0} steps")]
    WindowLimit(u64),
    #[error("sandwich violated at {vertex} at time -{time}")]
    SandwichViolation { vertex: GridVertex, time: u64 },
}

/// The random update used at each past time. Each time step gets its own
/// ChaCha stream, so the update at time `-t` does not depend on how many
/// other steps were drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomPlan {
    pub seed: u64,
}

impl RandomPlan {
    pub fn new(seed: u64) -> Self {
        RandomPlan { seed }
    }

    /// Index of the `(component, direction)` choice at time `-t`, in
    /// `0..choices`.
    pub fn choice_at(&self, t: u64, choices: u32) -> u32 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t);
        rng.random_range(0..choices)
    }

    pub fn update_at(&self, t: u64, order: &ComponentOrder) -> Option<Flip> {
        if order.is_empty() {
            return None;
        }
        let r = self.choice_at(t, 2 * order.len() as u32);
        let component = order.sequence()[(r / 2) as usize];
        let direction = if r.is_multiple_of(2) {
            FlipDirection::Up
        } else {
            FlipDirection::Down
        };
        Some(Flip {
            component,
            direction,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub height: HeightFunction,
    pub tiling: Tiling,
    /// Length of the window at which the twin chains met.
    pub window: u64,
    /// Number of sandwich checks performed (one per update per window).
    pub sandwich_checks: u64,
}

/// Reusable sampler for one figure: extremes and components are computed once.
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    graph: &'a FigureGraph,
    weights: &'a ArcWeights,
    components: ComponentGraph,
    order: ComponentOrder,
    low: HeightFunction,
    high: HeightFunction,
    max_window: u64,
}

impl<'a> Sampler<'a> {
    pub fn new(graph: &'a FigureGraph, weights: &'a ArcWeights) -> Result<Self, SampleError> {
        let low = min_height(graph, weights)?.height;
        let high = max_height(graph, weights)?.height;
        let components = forced_components_of_height(graph, weights, &low)?;
        let order = ComponentOrder::by_representative(&components);
        Ok(Sampler {
            graph,
            weights,
            components,
            order,
            low,
            high,
            max_window: MAX_WINDOW,
        })
    }

    pub fn with_max_window(mut self, max_window: u64) -> Self {
        self.max_window = max_window;
        self
    }

    pub fn components(&self) -> &ComponentGraph {
        &self.components
    }

    fn step(&self, h: &mut [i64], flip: Flip) {
        if can_flip_values(&self.components, self.graph, self.weights, h, flip) {
            shift_component(&self.components, h, flip);
        }
    }

    pub fn sample(&self, seed: u64) -> Result<Sample, SampleError> {
        let plan = RandomPlan::new(seed);
        let mut window = 1u64;
        let mut checks = 0u64;
        loop {
            let mut lo = self.low.values().to_vec();
            let mut hi = self.high.values().to_vec();
            if lo != hi {
                for t in (1..=window).rev() {
                    if let Some(flip) = plan.update_at(t, &self.order) {
                        self.step(&mut lo, flip);
                        self.step(&mut hi, flip);
                    }
                    checks += 1;
                    if let Some(v) = (0..lo.len()).find(|&v| lo[v] > hi[v]) {
                        return Err(SampleError::SandwichViolation {
                            vertex: self.graph.vertex(v),
                            time: t,
                        });
                    }
                }
            }
            if lo == hi {
                let height = HeightFunction::new(self.graph, lo);
                let tiling = tiling_of_height(self.graph, self.weights, &height)
                    .expect("chain states are height functions");
                return Ok(Sample {
                    height,
                    tiling,
                    window,
                    sandwich_checks: checks,
                });
            }
            if window >= self.max_window {
                return Err(SampleError::WindowLimit(window));
            }
            window *= 2;
        }
    }
}

pub fn sample_uniform(
    graph: &FigureGraph,
    weights: &ArcWeights,
    seed: u64,
) -> Result<Tiling, SampleError> {
    Ok(Sampler::new(graph, weights)?.sample(seed)?.tiling)
}
