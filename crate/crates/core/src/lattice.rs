//! The distributive lattice of height functions and the worklist algorithm
//! that computes its minimum and maximum.

use std::collections::VecDeque;

use thiserror::Error;

use crate::components::ComponentGraph;
use crate::equilibrium::ArcWeights;
use crate::grid::{FigureGraph, GridVertex, VertexId};
use crate::tiling::{tiling_of_height, HeightFunction, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("height functions belong to different figures")]
    DifferentFigures,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Untileable {
    #[error("untileable: heights around the outer contour sum to {sum}")]
    BoundaryMismatch { sum: i64 },
    #[error("untileable: height at {vertex} leaves its admissible range")]
    OutOfRange { vertex: GridVertex },
}

fn same(h: &HeightFunction, k: &HeightFunction) -> Result<(), LatticeError> {
    if h.same_figure(k) {
        Ok(())
    } else {
        Err(LatticeError::DifferentFigures)
    }
}

fn pointwise(
    h: &HeightFunction,
    k: &HeightFunction,
    f: fn(i64, i64) -> i64,
) -> Result<HeightFunction, LatticeError> {
    same(h, k)?;
    let values = h
        .values()
        .iter()
        .zip(k.values())
        .map(|(&a, &b)| f(a, b))
        .collect();
    Ok(HeightFunction::from_parts(h.figure_key(), values))
}

pub fn inf(h: &HeightFunction, k: &HeightFunction) -> Result<HeightFunction, LatticeError> {
    pointwise(h, k, i64::min)
}

pub fn sup(h: &HeightFunction, k: &HeightFunction) -> Result<HeightFunction, LatticeError> {
    pointwise(h, k, i64::max)
}

pub fn compare(h: &HeightFunction, k: &HeightFunction) -> Result<OrderRelation, LatticeError> {
    same(h, k)?;
    let mut below = false;
    let mut above = false;
    for (a, b) in h.values().iter().zip(k.values()) {
        below |= a < b;
        above |= a > b;
    }
    Ok(match (below, above) {
        (false, false) => OrderRelation::Equal,
        (true, false) => OrderRelation::Less,
        (false, true) => OrderRelation::Greater,
        (true, true) => OrderRelation::Incomparable,
    })
}

/// `Δ(h, h') = Σ_U |h(v_U) - h'(v_U)|` over forced components.
pub fn delta(
    h: &HeightFunction,
    k: &HeightFunction,
    components: &ComponentGraph,
) -> Result<i64, LatticeError> {
    same(h, k)?;
    Ok(components
        .components()
        .iter()
        .map(|c| (h.get(c.representative) - k.get(c.representative)).abs())
        .sum())
}

/// Result of a worklist run.
#[derive(Debug, Clone)]
pub struct ExtremalHeight {
    pub height: HeightFunction,
    /// Number of ±4 updates performed by the main loop.
    pub passes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extreme {
    Min,
    Max,
}

/// Bounds and current values of the worklist algorithm.
struct WorklistState<'a> {
    graph: &'a FigureGraph,
    weights: &'a ArcWeights,
    h: Vec<i64>,
    low: Vec<i64>,
    sup: Vec<i64>,
    queued: Vec<bool>,
    worklist: VecDeque<VertexId>,
    passes: u64,
}

impl<'a> WorklistState<'a> {
    fn init(
        graph: &'a FigureGraph,
        weights: &'a ArcWeights,
        pins: &[(VertexId, i64)],
        extreme: Extreme,
    ) -> Result<Self, Untileable> {
        let mut low = weights.tree.path_sums(graph, &weights.b);
        let mut sup = weights.tree.path_sums(graph, &weights.t);

        // Boundary arcs have a tiling-independent difference g_F = eq + sp,
        // which fixes every height on the outer contour.
        let contour = graph.outer_contour();
        let mut value = 0i64;
        low[contour.vertices[0]] = 0;
        sup[contour.vertices[0]] = 0;
        for w in contour.vertices.windows(2) {
            let a = graph.arc_between(w[0], w[1]).expect("contour arcs exist");
            value += weights.g_figure(graph, a);
            if w[1] == contour.vertices[0] {
                if value != 0 {
                    return Err(Untileable::BoundaryMismatch { sum: value });
                }
            } else {
                low[w[1]] = value;
                sup[w[1]] = value;
            }
        }
        for &(v, value) in pins {
            low[v] = value;
            sup[v] = value;
        }
        let h = match extreme {
            Extreme::Min => low.clone(),
            Extreme::Max => sup.clone(),
        };
        let n = graph.vertex_count();
        let mut state = WorklistState {
            graph,
            weights,
            h,
            low,
            sup,
            queued: vec![false; n],
            worklist: VecDeque::new(),
            passes: 0,
        };
        for v in 0..n {
            if state.violates(v, extreme) {
                state.queued[v] = true;
                state.worklist.push_back(v);
            }
        }
        Ok(state)
    }

    /// Min: some neighbour is more than `t` above `v`. Max: some neighbour is
    /// less than `b` above `v`.
    fn violates(&self, v: VertexId, extreme: Extreme) -> bool {
        self.graph.out_arcs(v).iter().any(|&a| {
            let w = self.graph.arc(a).to;
            match extreme {
                Extreme::Min => self.h[v] + self.weights.t[a] < self.h[w],
                Extreme::Max => self.h[v] + self.weights.b[a] > self.h[w],
            }
        })
    }

    fn run(mut self, extreme: Extreme) -> Result<ExtremalHeight, Untileable> {
        while let Some(v) = self.worklist.pop_front() {
            self.queued[v] = false;
            if !self.violates(v, extreme) {
                continue;
            }
            self.passes += 1;
            match extreme {
                Extreme::Min => {
                    self.h[v] += 4;
                    if self.h[v] > self.sup[v] {
                        return Err(self.out_of_range(v));
                    }
                }
                Extreme::Max => {
                    self.h[v] -= 4;
                    if self.h[v] < self.low[v] {
                        return Err(self.out_of_range(v));
                    }
                }
            }
            if self.violates(v, extreme) {
                self.enqueue(v);
            }
            for &a in self.graph.out_arcs(v) {
                let u = self.graph.arc(a).to;
                if !self.queued[u] && self.violates(u, extreme) {
                    self.enqueue(u);
                }
            }
        }
        Ok(ExtremalHeight {
            height: HeightFunction::new(self.graph, self.h),
            passes: self.passes,
        })
    }

    fn enqueue(&mut self, v: VertexId) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.worklist.push_back(v);
        }
    }

    fn out_of_range(&self, v: VertexId) -> Untileable {
        Untileable::OutOfRange {
            vertex: self.graph.vertex(v),
        }
    }
}

/// Height function of the minimal tiling.
pub fn min_height(graph: &FigureGraph, weights: &ArcWeights) -> Result<ExtremalHeight, Untileable> {
    min_height_pinned(graph, weights, &[])
}

/// Height function of the maximal tiling.
pub fn max_height(graph: &FigureGraph, weights: &ArcWeights) -> Result<ExtremalHeight, Untileable> {
    WorklistState::init(graph, weights, &[], Extreme::Max)?.run(Extreme::Max)
}

/// Lowest height function taking the given values on the pinned vertices.
pub fn min_height_pinned(
    graph: &FigureGraph,
    weights: &ArcWeights,
    pins: &[(VertexId, i64)],
) -> Result<ExtremalHeight, Untileable> {
    WorklistState::init(graph, weights, pins, Extreme::Min)?.run(Extreme::Min)
}

pub fn min_tiling(graph: &FigureGraph, weights: &ArcWeights) -> Result<Tiling, Untileable> {
    let run = min_height(graph, weights)?;
    Ok(tiling_of_height(graph, weights, &run.height).expect("worklist fixpoints are height functions"))
}

pub fn max_tiling(graph: &FigureGraph, weights: &ArcWeights) -> Result<Tiling, Untileable> {
    let run = max_height(graph, weights)?;
    Ok(tiling_of_height(graph, weights, &run.height).expect("worklist fixpoints are height functions"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::build_equilibrium;
    use crate::grid::{Cell, Figure};
    use crate::tiling::{height_of_tiling, validate_tiling};

    fn setup(text: &str) -> (FigureGraph, ArcWeights) {
        let g = FigureGraph::new(Figure::parse(text).unwrap());
        let (_, w) = build_equilibrium(&g);
        (g, w)
    }

    fn c(x: i32, y: i32) -> Cell {
        Cell::new(x, y)
    }

    #[test]
    fn square_min_and_max() {
        let (g, w) = setup("##\n##");
        let lo = min_height(&g, &w).unwrap();
        let hi = max_height(&g, &w).unwrap();
        assert_eq!(compare(&lo.height, &hi.height), Ok(OrderRelation::Less));
        assert_ne!(min_tiling(&g, &w).unwrap(), max_tiling(&g, &w).unwrap());
        assert!(lo.passes <= 16 && hi.passes <= 16);
        assert_eq!(inf(&lo.height, &hi.height).unwrap(), lo.height);
        assert_eq!(sup(&lo.height, &hi.height).unwrap(), hi.height);
        assert_eq!(inf(&lo.height, &lo.height).unwrap(), lo.height);
        assert_eq!(compare(&hi.height, &hi.height), Ok(OrderRelation::Equal));
        assert_eq!(compare(&hi.height, &lo.height), Ok(OrderRelation::Greater));
    }

    #[test]
    fn unique_tiling_has_equal_extremes() {
        let (g, w) = setup("##");
        assert_eq!(min_tiling(&g, &w).unwrap(), max_tiling(&g, &w).unwrap());
    }

    #[test]
    fn t_tetromino_is_untileable() {
        let (g, w) = setup(".#.\n###");
        assert!(matches!(
            min_tiling(&g, &w),
            Err(Untileable::BoundaryMismatch { .. })
        ));
        assert!(max_tiling(&g, &w).is_err());
    }

    #[test]
    fn balanced_but_untileable() {
        // Both (1,2) and (0,1) can only pair with (1,1).
        let (g, w) = setup(".#..\n####\n..#.");
        assert_eq!(g.figure().color_balance(), 0);
        assert!(matches!(
            min_tiling(&g, &w),
            Err(Untileable::OutOfRange { .. })
        ));
        assert!(matches!(
            max_tiling(&g, &w),
            Err(Untileable::OutOfRange { .. })
        ));
    }

    #[test]
    fn mixed_rectangle_tilings_are_incomparable() {
        let (g, w) = setup("###\n###");
        let f = g.figure();
        let a = validate_tiling(f, [(c(0, 0), c(0, 1)), (c(1, 0), c(2, 0)), (c(1, 1), c(2, 1))])
            .unwrap();
        let b = validate_tiling(f, [(c(0, 0), c(1, 0)), (c(0, 1), c(1, 1)), (c(2, 0), c(2, 1))])
            .unwrap();
        let ha = height_of_tiling(&g, &w, &a).unwrap();
        let hb = height_of_tiling(&g, &w, &b).unwrap();
        let lo = min_height(&g, &w).unwrap().height;
        let hi = max_height(&g, &w).unwrap().height;
        assert!(lo.values().iter().zip(ha.values()).all(|(x, y)| x <= y));
        assert!(hi.values().iter().zip(hb.values()).all(|(x, y)| x >= y));
        let rel = compare(&ha, &hb).unwrap();
        assert_ne!(rel, OrderRelation::Equal);
    }

    #[test]
    fn different_figures_are_rejected() {
        let (g1, w1) = setup("##");
        let (g2, w2) = setup("##\n##");
        let h1 = min_height(&g1, &w1).unwrap().height;
        let h2 = min_height(&g2, &w2).unwrap().height;
        assert_eq!(inf(&h1, &h2), Err(LatticeError::DifferentFigures));
        assert_eq!(compare(&h1, &h2), Err(LatticeError::DifferentFigures));
    }
}
