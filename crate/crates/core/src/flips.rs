//! Generalised flips: raising or lowering a whole forced component by 4.
//!
//! A flip on a single-vertex component is the usual local flip (two dominoes
//! in a 2x2 square rotate); on a hole component it rearranges the dominoes
//! all around the hole at once.

use std::fmt;

use thiserror::Error;

use crate::components::ComponentGraph;
use crate::equilibrium::ArcWeights;
use crate::grid::FigureGraph;
use crate::lattice::{delta, inf, LatticeError};
use crate::tiling::HeightFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlipDirection {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flip {
    pub component: usize,
    pub direction: FlipDirection,
}

impl Flip {
    pub fn up(component: usize) -> Self {
        Flip {
            component,
            direction: FlipDirection::Up,
        }
    }

    pub fn down(component: usize) -> Self {
        Flip {
            component,
            direction: FlipDirection::Down,
        }
    }

    pub fn reversed(self) -> Self {
        match self.direction {
            FlipDirection::Up => Flip::down(self.component),
            FlipDirection::Down => Flip::up(self.component),
        }
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            FlipDirection::Up => "up",
            FlipDirection::Down => "down",
        };
        write!(f, "{d} {}", self.component)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipError {
    #[error("flip {0} is not available")]
    FlipNotAvailable(Flip),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Up is possible when every arc leaving the component sits at its top value
/// (no incoming arc in `G_h`); down when every such arc sits at its bottom.
pub fn can_flip(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
    flip: Flip,
) -> bool {
    can_flip_values(components, graph, weights, h.values(), flip)
}

pub(crate) fn can_flip_values(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &[i64],
    flip: Flip,
) -> bool {
    if flip.component == components.infinity() || flip.component >= components.len() {
        return false;
    }
    let bound = match flip.direction {
        FlipDirection::Up => &weights.t,
        FlipDirection::Down => &weights.b,
    };
    components.crossing_arcs(flip.component).iter().all(|&a| {
        let arc = graph.arc(a);
        h[arc.to] - h[arc.from] == bound[a]
    })
}

pub(crate) fn shift_component(components: &ComponentGraph, h: &mut [i64], flip: Flip) {
    let step = match flip.direction {
        FlipDirection::Up => 4,
        FlipDirection::Down => -4,
    };
    for &v in &components.component(flip.component).vertices {
        h[v] += step;
    }
}

pub fn available_flips(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> Vec<Flip> {
    let mut out = Vec::new();
    for c in components.free_components() {
        for flip in [Flip::up(c.id), Flip::down(c.id)] {
            if can_flip(components, graph, weights, h, flip) {
                out.push(flip);
            }
        }
    }
    out
}

pub fn apply_flip(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
    flip: Flip,
) -> Result<HeightFunction, FlipError> {
    if !can_flip(components, graph, weights, h, flip) {
        return Err(FlipError::FlipNotAvailable(flip));
    }
    let mut out = h.clone();
    shift_component(components, out.values_mut(), flip);
    Ok(out)
}

/// Minimum number of generalised flips between two height functions.
pub fn flip_distance(
    h: &HeightFunction,
    k: &HeightFunction,
    components: &ComponentGraph,
) -> Result<i64, LatticeError> {
    Ok(delta(h, k, components)? / 4)
}

/// A shortest flip sequence from `h` to `k`: down flips to `inf(h, k)`, then
/// up flips to `k`.
pub fn flip_path(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
    k: &HeightFunction,
) -> Result<Vec<Flip>, FlipError> {
    let meet = inf(h, k)?;
    let mut current = h.values().to_vec();
    let mut path = Vec::new();
    for (target, direction) in [(&meet, FlipDirection::Down), (k, FlipDirection::Up)] {
        loop {
            let pending = components.free_components().find(|c| {
                let r = c.representative;
                let differs = match direction {
                    FlipDirection::Down => current[r] > target.get(r),
                    FlipDirection::Up => current[r] < target.get(r),
                };
                differs
                    && can_flip_values(
                        components,
                        graph,
                        weights,
                        &current,
                        Flip {
                            component: c.id,
                            direction,
                        },
                    )
            });
            match pending {
                Some(c) => {
                    let flip = Flip {
                        component: c.id,
                        direction,
                    };
                    shift_component(components, &mut current, flip);
                    path.push(flip);
                }
                None => break,
            }
        }
        if current != target.values() {
            // Only reachable when the inputs are not height functions of
            // this component graph's figure.
            let stuck = components
                .free_components()
                .find(|c| current[c.representative] != target.get(c.representative))
                .map_or(components.infinity(), |c| c.id);
            return Err(FlipError::FlipNotAvailable(Flip {
                component: stuck,
                direction,
            }));
        }
    }
    Ok(path)
}

/// Replays a flip sequence, checking availability at every step.
pub fn replay(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
    path: &[Flip],
) -> Result<HeightFunction, FlipError> {
    let mut current = h.clone();
    for &flip in path {
        current = apply_flip(components, graph, weights, &current, flip)?;
    }
    Ok(current)
}

/// Two tilings are joined by local flips alone iff their heights agree on
/// every boundary vertex (outer contour and hole contours).
pub fn local_flip_connected(
    graph: &FigureGraph,
    h: &HeightFunction,
    k: &HeightFunction,
) -> Result<bool, LatticeError> {
    if !h.same_figure(k) {
        return Err(LatticeError::DifferentFigures);
    }
    Ok((0..graph.vertex_count())
        .filter(|&v| graph.is_boundary_vertex(v))
        .all(|v| h.get(v) == k.get(v)))
}

/// Number of local flips between two local-flip-connected tilings,
/// `Σ_v |h(v) - h'(v)| / 4`; `None` when they are not connected that way.
pub fn local_flip_count(
    graph: &FigureGraph,
    h: &HeightFunction,
    k: &HeightFunction,
) -> Result<Option<i64>, LatticeError> {
    if !local_flip_connected(graph, h, k)? {
        return Ok(None);
    }
    let total: i64 = h
        .values()
        .iter()
        .zip(k.values())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(Some(total / 4))
}
