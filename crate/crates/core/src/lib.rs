//! Domino tilings of figures with holes.
//!
//! A figure is a finite 4-connected set of unit cells, possibly with holes.
//! Its tilings are encoded by height functions on the vertices of the
//! figure; an equilibrium function built from cut lines between holes makes
//! heights well defined around every hole. On top of that the crate
//! provides:
//!
//! * the minimal and maximal tilings (worklist algorithm), with
//!   untileability detection;
//! * the distributive lattice of height functions (`inf`, `sup`);
//! * forced components and generalised flips, which raise or lower a whole
//!   component (for instance all dominoes around a hole) at once;
//! * flip distances and shortest flip paths;
//! * lexicographic enumeration of all tilings;
//! * exact uniform sampling by coupling from the past;
//! * a brute-force oracle used as ground truth in tests.
//!
//! [`Board`] bundles a figure with its derived structures:
//!
//! ```
//! use tiler::Board;
//!
//! let board = Board::parse("###\n#.#\n###").unwrap();
//! assert_eq!(board.count(), 2);
//! let lo = board.min_tiling().unwrap();
//! let hi = board.max_tiling().unwrap();
//! assert_eq!(board.flip_distance(&lo, &hi).unwrap(), 1);
//! ```

pub mod cli;
pub mod components;
pub mod equilibrium;
pub mod flips;
pub mod generate;
pub mod grid;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod sample;
pub mod tiling;

use thiserror::Error;

pub use components::{
    forced_components, forced_components_of_height, Component, ComponentError, ComponentGraph,
    ComponentKind,
};
pub use equilibrium::{build_equilibrium, verify_equilibrium, ArcWeights, EquilibriumFunction};
pub use flips::{
    apply_flip, available_flips, flip_distance, flip_path, local_flip_connected,
    local_flip_count, Flip, FlipDirection, FlipError,
};
pub use generate::{count, enumerate, ComponentOrder, Enumeration, GenerationError};
pub use grid::{build_graph, parse_figure, Cell, Figure, FigureError, FigureGraph, GridVertex};
pub use lattice::{
    compare, delta, inf, max_height, max_tiling, min_height, min_tiling, sup, LatticeError,
    OrderRelation, Untileable,
};
pub use oracle::{brute_enumerate, TilingSet};
pub use sample::{sample_uniform, RandomPlan, Sample, SampleError, Sampler};
pub use tiling::{
    height_of_tiling, tiling_of_height, validate_tiling, Domino, HeightFunction, Tiling,
    TilingError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Figure(#[from] FigureError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Untileable(#[from] Untileable),
    #[error(transparent)]
    Components(#[from] ComponentError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Flip(#[from] FlipError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

impl From<GenerationError> for Error {
    fn from(e: GenerationError) -> Self {
        match e {
            GenerationError::Untileable(u) => Error::Untileable(u),
            GenerationError::Components(c) => Error::Components(c),
        }
    }
}

impl Error {
    /// True when the error means the figure has no tiling.
    pub fn is_untileable(&self) -> bool {
        matches!(
            self,
            Error::Untileable(_) | Error::Sample(SampleError::NotTileable(_))
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A figure together with its graph, equilibrium function and arc weights.
#[derive(Debug, Clone)]
pub struct Board {
    graph: FigureGraph,
    equilibrium: EquilibriumFunction,
    weights: ArcWeights,
}

impl Board {
    pub fn new(figure: Figure) -> Self {
        let graph = FigureGraph::new(figure);
        let (equilibrium, weights) = build_equilibrium(&graph);
        Board {
            graph,
            equilibrium,
            weights,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Board::new(Figure::parse(text)?))
    }

    pub fn figure(&self) -> &Figure {
        self.graph.figure()
    }

    pub fn graph(&self) -> &FigureGraph {
        &self.graph
    }

    pub fn equilibrium(&self) -> &EquilibriumFunction {
        &self.equilibrium
    }

    pub fn weights(&self) -> &ArcWeights {
        &self.weights
    }

    pub fn min_height(&self) -> Result<HeightFunction> {
        Ok(min_height(&self.graph, &self.weights)?.height)
    }

    pub fn max_height(&self) -> Result<HeightFunction> {
        Ok(max_height(&self.graph, &self.weights)?.height)
    }

    pub fn min_tiling(&self) -> Result<Tiling> {
        Ok(min_tiling(&self.graph, &self.weights)?)
    }

    pub fn max_tiling(&self) -> Result<Tiling> {
        Ok(max_tiling(&self.graph, &self.weights)?)
    }

    pub fn is_tileable(&self) -> bool {
        min_height(&self.graph, &self.weights).is_ok()
    }

    pub fn height(&self, tiling: &Tiling) -> Result<HeightFunction> {
        Ok(height_of_tiling(&self.graph, &self.weights, tiling)?)
    }

    pub fn tiling(&self, h: &HeightFunction) -> Result<Tiling> {
        Ok(tiling_of_height(&self.graph, &self.weights, h)?)
    }

    /// Forced components, which do not depend on the tiling used to find them.
    pub fn components(&self) -> Result<ComponentGraph> {
        let h = self.min_height()?;
        Ok(forced_components_of_height(&self.graph, &self.weights, &h)?)
    }

    pub fn enumerate(&self) -> Result<Enumeration<'_>> {
        Ok(enumerate(&self.graph, &self.weights)?)
    }

    pub fn count(&self) -> u64 {
        count(&self.graph, &self.weights)
    }

    pub fn sampler(&self) -> Result<Sampler<'_>> {
        Ok(Sampler::new(&self.graph, &self.weights)?)
    }

    pub fn sample(&self, seed: u64) -> Result<Tiling> {
        Ok(self.sampler()?.sample(seed)?.tiling)
    }

    pub fn flip_distance(&self, a: &Tiling, b: &Tiling) -> Result<i64> {
        let cg = self.components()?;
        Ok(flip_distance(&self.height(a)?, &self.height(b)?, &cg)?)
    }

    pub fn flip_path(&self, a: &Tiling, b: &Tiling) -> Result<Vec<Flip>> {
        let cg = self.components()?;
        let (ha, hb) = (self.height(a)?, self.height(b)?);
        Ok(flip_path(&cg, &self.graph, &self.weights, &ha, &hb)?)
    }
}
