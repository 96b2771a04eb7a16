//! Exhaustive generation of tilings in lexicographic order.

use std::cmp::Ordering;

use thiserror::Error;

use crate::components::{forced_components_of_height, ComponentError, ComponentGraph};
use crate::equilibrium::ArcWeights;
use crate::flips::{can_flip, Flip};
use crate::grid::{FigureGraph, VertexId};
use crate::lattice::{max_height, min_height, min_height_pinned, Untileable};
use crate::tiling::{tiling_of_height, HeightFunction, Tiling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error(transparent)]
    Untileable(#[from] Untileable),
    #[error(transparent)]
    Components(#[from] ComponentError),
}

/// A fixed total order `U_1, ..., U_q` of the non-infinity components,
/// here by representative vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOrder {
    sequence: Vec<usize>,
}

impl ComponentOrder {
    pub fn by_representative(components: &ComponentGraph) -> Self {
        let mut sequence: Vec<usize> = components.free_components().map(|c| c.id).collect();
        sequence.sort_by_key(|&id| components.component(id).representative);
        ComponentOrder { sequence }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Lexicographic comparison of the representative heights.
    pub fn lex_cmp(
        &self,
        components: &ComponentGraph,
        h: &HeightFunction,
        k: &HeightFunction,
    ) -> Ordering {
        self.sequence
            .iter()
            .map(|&id| {
                let r = components.component(id).representative;
                h.get(r).cmp(&k.get(r))
            })
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

/// Height functions of all tilings, from `T_min` to `T_max` in increasing
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Heights<'a> {
    graph: &'a FigureGraph,
    weights: &'a ArcWeights,
    components: ComponentGraph,
    order: ComponentOrder,
    next: Option<HeightFunction>,
}

impl<'a> Heights<'a> {
    pub fn components(&self) -> &ComponentGraph {
        &self.components
    }

    pub fn order(&self) -> &ComponentOrder {
        &self.order
    }

    fn successor(&self, h: &HeightFunction) -> Option<HeightFunction> {
        let seq = self.order.sequence();
        let i = (0..seq.len())
            .rev()
            .find(|&i| can_flip(&self.components, self.graph, self.weights, h, Flip::up(seq[i])))?;
        let mut pins: Vec<(VertexId, i64)> = Vec::new();
        let fixed = std::iter::once(self.components.infinity()).chain(seq[..i].iter().copied());
        for id in fixed {
            pins.extend(self.components.component(id).vertices.iter().map(|&v| (v, h.get(v))));
        }
        pins.extend(
            self.components
                .component(seq[i])
                .vertices
                .iter()
                .map(|&v| (v, h.get(v) + 4)),
        );
        let run = min_height_pinned(self.graph, self.weights, &pins)
            .expect("an available up flip guarantees a pinned solution");
        Some(run.height)
    }
}

impl Iterator for Heights<'_> {
    type Item = HeightFunction;

    fn next(&mut self) -> Option<HeightFunction> {
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(current)
    }
}

/// Tilings of a figure in increasing lexicographic order of their heights.
#[derive(Debug, Clone)]
pub struct Enumeration<'a> {
    heights: Heights<'a>,
}

impl<'a> Enumeration<'a> {
    pub fn heights(self) -> Heights<'a> {
        self.heights
    }

    pub fn components(&self) -> &ComponentGraph {
        self.heights.components()
    }

    pub fn order(&self) -> &ComponentOrder {
        self.heights.order()
    }
}

impl Iterator for Enumeration<'_> {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        let h = self.heights.next()?;
        Some(
            tiling_of_height(self.heights.graph, self.heights.weights, &h)
                .expect("enumerated heights are height functions"),
        )
    }
}

pub fn enumerate_heights<'a>(
    graph: &'a FigureGraph,
    weights: &'a ArcWeights,
) -> Result<Heights<'a>, GenerationError> {
    let start = min_height(graph, weights)?.height;
    let components = forced_components_of_height(graph, weights, &start)?;
    let order = ComponentOrder::by_representative(&components);
    Ok(Heights {
        graph,
        weights,
        components,
        order,
        next: Some(start),
    })
}

pub fn enumerate<'a>(
    graph: &'a FigureGraph,
    weights: &'a ArcWeights,
) -> Result<Enumeration<'a>, GenerationError> {
    Ok(Enumeration {
        heights: enumerate_heights(graph, weights)?,
    })
}

/// Number of tilings; 0 when the figure is untileable.
pub fn count(graph: &FigureGraph, weights: &ArcWeights) -> u64 {
    match enumerate_heights(graph, weights) {
        Ok(h) => h.count() as u64,
        Err(_) => 0,
    }
}

/// Both extremes at once, for callers that need the whole lattice span.
pub fn extremes(
    graph: &FigureGraph,
    weights: &ArcWeights,
) -> Result<(HeightFunction, HeightFunction), Untileable> {
    Ok((min_height(graph, weights)?.height, max_height(graph, weights)?.height))
}
