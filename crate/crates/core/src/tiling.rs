//! Tilings, their height-difference functions and height functions.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::equilibrium::ArcWeights;
use crate::grid::{ArcId, Cell, Figure, FigureGraph, GridVertex, Side, VertexId};

/// Two 4-adjacent cells, stored with the smaller cell first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domino {
    pub first: Cell,
    pub second: Cell,
}

impl Domino {
    /// Returns `None` unless the cells share an edge.
    pub fn new(a: Cell, b: Cell) -> Option<Domino> {
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        let adjacent = (second.x - first.x, second.y - first.y);
        matches!(adjacent, (1, 0) | (0, 1)).then_some(Domino { first, second })
    }

    pub fn is_horizontal(&self) -> bool {
        self.second.y == self.first.y
    }

    /// The side of `first` shared with `second` (the central axis).
    pub fn axis_side(&self) -> Side {
        if self.is_horizontal() {
            Side::Right
        } else {
            Side::Top
        }
    }

    pub fn cells(&self) -> [Cell; 2] {
        [self.first, self.second]
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first, self.second)
    }
}

/// A tiling, stored as its dominoes in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    dominoes: Vec<Domino>,
}

impl Tiling {
    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    /// Builds a tiling from dominoes already known to cover `figure` exactly.
    pub(crate) fn from_sorted_unchecked(mut dominoes: Vec<Domino>) -> Tiling {
        dominoes.sort();
        Tiling { dominoes }
    }

    /// `χ_T` on every arc: 1 when the arc's edge is a central axis.
    pub fn axis_indicator(&self, graph: &FigureGraph) -> Vec<bool> {
        let mut chi = vec![false; graph.arc_count()];
        for d in &self.dominoes {
            let a = graph.side_arc(d.first, d.axis_side());
            chi[a] = true;
            chi[FigureGraph::reverse(a)] = true;
        }
        chi
    }

    /// Cell → domino index lookup table over the figure's cells.
    pub fn cell_owner(&self, figure: &Figure) -> Vec<Option<usize>> {
        let mut owner = vec![None; figure.len()];
        for (i, d) in self.dominoes.iter().enumerate() {
            for c in d.cells() {
                if let Ok(k) = figure.cells().binary_search(&c) {
                    owner[k] = Some(i);
                }
            }
        }
        owner
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("cells {0} and {1} do not form a domino")]
    NotADomino(Cell, Cell),
    #[error("domino {0} leaves the figure")]
    DominoOutsideFigure(Domino),
    #[error("cell {0} is covered twice")]
    Overlap(Cell),
    #[error("cell {0} is not covered")]
    Gap(Cell),
    #[error("height differences are inconsistent around a cycle through {0}")]
    InconsistentCycle(GridVertex),
    #[error("difference on arc {0} -> {1} is outside {{b, t}}")]
    NotAHeightFunction(GridVertex, GridVertex),
    #[error("height function is not normalised at the base vertex")]
    NotNormalised,
    #[error("height function belongs to a different figure")]
    DifferentFigures,
}

/// Checks that the cell pairs are dominoes of the figure covering it exactly.
pub fn validate_tiling<I>(figure: &Figure, pairs: I) -> Result<Tiling, TilingError>
where
    I: IntoIterator<Item = (Cell, Cell)>,
{
    let mut dominoes = Vec::new();
    let mut covered = BTreeSet::new();
    for (a, b) in pairs {
        let d = Domino::new(a, b).ok_or(TilingError::NotADomino(a, b))?;
        if !figure.contains(d.first) || !figure.contains(d.second) {
            return Err(TilingError::DominoOutsideFigure(d));
        }
        for c in d.cells() {
            if !covered.insert(c) {
                return Err(TilingError::Overlap(c));
            }
        }
        dominoes.push(d);
    }
    if let Some(gap) = figure.cells().iter().find(|c| !covered.contains(c)) {
        return Err(TilingError::Gap(*gap));
    }
    Ok(Tiling::from_sorted_unchecked(dominoes))
}

/// An integer potential on the vertices of a figure graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    figure_key: u64,
    values: Vec<i64>,
}

impl HeightFunction {
    pub fn new(graph: &FigureGraph, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), graph.vertex_count());
        HeightFunction {
            figure_key: graph.figure().key(),
            values,
        }
    }

    pub(crate) fn from_parts(figure_key: u64, values: Vec<i64>) -> Self {
        HeightFunction { figure_key, values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [i64] {
        &mut self.values
    }

    pub fn get(&self, v: VertexId) -> i64 {
        self.values[v]
    }

    pub fn figure_key(&self) -> u64 {
        self.figure_key
    }

    pub fn same_figure(&self, other: &HeightFunction) -> bool {
        self.figure_key == other.figure_key && self.values.len() == other.values.len()
    }

    /// `D(h)(a) = h(to) - h(from)`.
    pub fn difference(&self, graph: &FigureGraph, a: ArcId) -> i64 {
        let arc = graph.arc(a);
        self.values[arc.to] - self.values[arc.from]
    }
}

/// `g_T(a) = eq_r(a) + 2 sp(a) (1 - 2 χ_T(a))` on every arc.
pub fn height_difference(graph: &FigureGraph, weights: &ArcWeights, tiling: &Tiling) -> Vec<i64> {
    let chi = tiling.axis_indicator(graph);
    (0..graph.arc_count())
        .map(|a| {
            let sign = if chi[a] { -1 } else { 1 };
            weights.eq_r[a] + 2 * graph.spin(a) * sign
        })
        .collect()
}

/// Integrates an arc function from the base vertex in breadth-first order and
/// checks that every arc agrees with the result.
pub fn integrate(graph: &FigureGraph, g: &[i64]) -> Result<Vec<i64>, TilingError> {
    let n = graph.vertex_count();
    let root = graph.base_vertex();
    let mut h = vec![0i64; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &a in graph.out_arcs(v) {
            let w = graph.arc(a).to;
            if !seen[w] {
                seen[w] = true;
                h[w] = h[v] + g[a];
                queue.push_back(w);
            }
        }
    }
    for (a, arc) in graph.arcs().iter().enumerate() {
        if h[arc.to] - h[arc.from] != g[a] {
            return Err(TilingError::InconsistentCycle(graph.vertex(arc.from)));
        }
    }
    Ok(h)
}

pub fn height_of_tiling(
    graph: &FigureGraph,
    weights: &ArcWeights,
    tiling: &Tiling,
) -> Result<HeightFunction, TilingError> {
    let g = height_difference(graph, weights, tiling);
    let h = integrate(graph, &g)?;
    Ok(HeightFunction::new(graph, h))
}

/// Checks `h(w0) = 0` and `D(h)(a) ∈ {b(a), t(a)}` on every arc.
pub fn check_height_function(
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> Result<(), TilingError> {
    if h.figure_key() != graph.figure().key() || h.values().len() != graph.vertex_count() {
        return Err(TilingError::DifferentFigures);
    }
    if h.get(graph.base_vertex()) != 0 {
        return Err(TilingError::NotNormalised);
    }
    for a in 0..graph.arc_count() {
        let d = h.difference(graph, a);
        if d != weights.t[a] && d != weights.b[a] {
            let arc = graph.arc(a);
            return Err(TilingError::NotAHeightFunction(
                graph.vertex(arc.from),
                graph.vertex(arc.to),
            ));
        }
    }
    Ok(())
}

/// The unique tiling whose height function is `h`: its central axes are the
/// edges where `D(h)(a) - eq_r(a) = -2 sp(a)`.
pub fn tiling_of_height(
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> Result<Tiling, TilingError> {
    check_height_function(graph, weights, h)?;
    let pairs = (0..graph.arc_count()).step_by(2).filter_map(|a| {
        let d = h.difference(graph, a);
        (d - weights.eq_r[a] == -2 * graph.spin(a))
            .then(|| (graph.left_cell(a), graph.right_cell(a)))
    });
    validate_tiling(graph.figure(), pairs)
}
