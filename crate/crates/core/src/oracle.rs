//! Brute-force ground truth for tests: backtracking enumeration of all domino
//! tilings and breadth-first search over the generalised flip graph.
//!
//! [`brute_enumerate`] deliberately uses nothing but the figure's cells.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::components::{forced_components_of_height, ComponentError, ComponentGraph};
use crate::equilibrium::ArcWeights;
use crate::flips::{apply_flip, available_flips};
use crate::grid::{Cell, Color, Figure, FigureGraph};
use crate::tiling::{height_of_tiling, tiling_of_height, Domino, HeightFunction, Tiling};

pub const DEFAULT_CELL_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("figure has {cells} cells, above the oracle cap of {cap}")]
    TooLarge { cells: usize, cap: usize },
    #[error("tiling {to} is unreachable from tiling {from}")]
    Unreachable { from: usize, to: usize },
    #[error("tiling is not in the enumerated set")]
    UnknownTiling,
    #[error("flip adjacency disagrees with the height criterion between tilings {0} and {1}")]
    AdjacencyMismatch(usize, usize),
    #[error(transparent)]
    Components(#[from] ComponentError),
}

/// Duplicate-free, sorted set of tilings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TilingSet {
    tilings: Vec<Tiling>,
}

impl TilingSet {
    pub fn from_tilings<I: IntoIterator<Item = Tiling>>(tilings: I) -> Self {
        let set: BTreeSet<Tiling> = tilings.into_iter().collect();
        TilingSet {
            tilings: set.into_iter().collect(),
        }
    }

    pub fn tilings(&self) -> &[Tiling] {
        &self.tilings
    }

    pub fn len(&self) -> usize {
        self.tilings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tilings.is_empty()
    }

    pub fn index_of(&self, t: &Tiling) -> Option<usize> {
        self.tilings.binary_search(t).ok()
    }

    pub fn contains(&self, t: &Tiling) -> bool {
        self.index_of(t).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tiling> {
        self.tilings.iter()
    }
}

impl<'a> IntoIterator for &'a TilingSet {
    type Item = &'a Tiling;
    type IntoIter = std::slice::Iter<'a, Tiling>;

    fn into_iter(self) -> Self::IntoIter {
        self.tilings.iter()
    }
}

pub fn brute_enumerate(figure: &Figure) -> Result<TilingSet, OracleError> {
    brute_enumerate_capped(figure, DEFAULT_CELL_CAP)
}

pub fn brute_enumerate_capped(figure: &Figure, cap: usize) -> Result<TilingSet, OracleError> {
    if figure.len() > cap {
        return Err(OracleError::TooLarge {
            cells: figure.len(),
            cap,
        });
    }
    let black = figure
        .cells()
        .iter()
        .filter(|c| c.color() == Color::Black)
        .count();
    if 2 * black != figure.len() {
        return Ok(TilingSet::default());
    }
    let mut covered: BTreeMap<Cell, bool> = figure.cells().iter().map(|&c| (c, false)).collect();
    let mut current = Vec::new();
    let mut found = Vec::new();
    branch(&mut covered, &mut current, &mut found);
    Ok(TilingSet::from_tilings(found))
}

fn branch(covered: &mut BTreeMap<Cell, bool>, current: &mut Vec<Domino>, found: &mut Vec<Tiling>) {
    let Some(first) = covered.iter().find(|(_, &c)| !c).map(|(&cell, _)| cell) else {
        found.push(Tiling::from_sorted_unchecked(current.clone()));
        return;
    };
    for partner in [first.offset(1, 0), first.offset(0, 1)] {
        if covered.get(&partner) == Some(&false) {
            covered.insert(first, true);
            covered.insert(partner, true);
            current.push(Domino::new(first, partner).expect("neighbours form a domino"));
            branch(covered, current, found);
            current.pop();
            covered.insert(first, false);
            covered.insert(partner, false);
        }
    }
}

/// The generalised flip graph on an enumerated set of tilings.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    set: TilingSet,
    heights: Vec<HeightFunction>,
    adjacency: Vec<Vec<usize>>,
}

impl FlipGraph {
    /// Builds edges from `available_flips`/`apply_flip` and checks them
    /// against the height criterion: two tilings are adjacent iff their
    /// heights differ by exactly 4 on one free component and agree elsewhere.
    pub fn build(
        graph: &FigureGraph,
        weights: &ArcWeights,
        set: TilingSet,
    ) -> Result<FlipGraph, OracleError> {
        let heights: Vec<HeightFunction> = set
            .iter()
            .map(|t| height_of_tiling(graph, weights, t).expect("oracle tilings are valid"))
            .collect();
        let Some(first) = heights.first() else {
            return Ok(FlipGraph {
                set,
                heights,
                adjacency: Vec::new(),
            });
        };
        let components = forced_components_of_height(graph, weights, first)?;
        let mut adjacency = vec![Vec::new(); set.len()];
        for (i, h) in heights.iter().enumerate() {
            for flip in available_flips(&components, graph, weights, h) {
                let k = apply_flip(&components, graph, weights, h, flip)
                    .expect("listed flips are available");
                let t = tiling_of_height(graph, weights, &k).expect("flips preserve heights");
                let j = set.index_of(&t).ok_or(OracleError::UnknownTiling)?;
                adjacency[i].push(j);
            }
            adjacency[i].sort_unstable();
            adjacency[i].dedup();
        }
        for i in 0..heights.len() {
            for j in 0..heights.len() {
                let by_height = differ_by_one_component(&components, &heights[i], &heights[j]);
                if by_height != adjacency[i].binary_search(&j).is_ok() {
                    return Err(OracleError::AdjacencyMismatch(i, j));
                }
            }
        }
        Ok(FlipGraph {
            set,
            heights,
            adjacency,
        })
    }

    pub fn set(&self) -> &TilingSet {
        &self.set
    }

    pub fn heights(&self) -> &[HeightFunction] {
        &self.heights
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// BFS distances from `from`; `None` for unreachable tilings.
    pub fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adjacency.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, from: usize, to: usize) -> Result<usize, OracleError> {
        self.distances_from(from)[to].ok_or(OracleError::Unreachable { from, to })
    }

    pub fn is_connected(&self) -> bool {
        self.adjacency.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }
}

fn differ_by_one_component(
    components: &ComponentGraph,
    h: &HeightFunction,
    k: &HeightFunction,
) -> bool {
    let mut moved = 0;
    for c in components.components() {
        let diffs: BTreeSet<i64> = c.vertices.iter().map(|&v| (h.get(v) - k.get(v)).abs()).collect();
        match diffs.into_iter().collect::<Vec<_>>().as_slice() {
            [0] => {}
            [4] => moved += 1,
            _ => return false,
        }
    }
    moved == 1
}

/// Shortest generalised-flip distance between two tilings of the set.
pub fn flip_graph_bfs(
    graph: &FigureGraph,
    weights: &ArcWeights,
    set: &TilingSet,
    from: &Tiling,
    to: &Tiling,
) -> Result<usize, OracleError> {
    let i = set.index_of(from).ok_or(OracleError::UnknownTiling)?;
    let j = set.index_of(to).ok_or(OracleError::UnknownTiling)?;
    FlipGraph::build(graph, weights, set.clone())?.distance(i, j)
}
