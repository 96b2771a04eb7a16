//! Critical cycles, the graph `G_T` of a tiling and the forced components
//! obtained as its strongly connected components.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::equilibrium::ArcWeights;
use crate::grid::{ArcId, Cycle, FigureGraph, GraphError, GridVertex, VertexId};
use crate::tiling::{height_difference, HeightFunction, Tiling};

/// Spanning subgraph of the figure graph: arc `a` belongs to it iff the
/// tiling's height difference on `a` equals `t(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingGraph {
    pub contains: Vec<bool>,
}

impl TilingGraph {
    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.contains
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(a, _)| a)
    }
}

pub fn tiling_graph(graph: &FigureGraph, weights: &ArcWeights, tiling: &Tiling) -> TilingGraph {
    let g = height_difference(graph, weights, tiling);
    TilingGraph {
        contains: (0..graph.arc_count()).map(|a| g[a] == weights.t[a]).collect(),
    }
}

pub fn tiling_graph_of_height(
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> TilingGraph {
    TilingGraph {
        contains: (0..graph.arc_count())
            .map(|a| h.difference(graph, a) == weights.t[a])
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// The component of the base vertex and of the whole outer boundary.
    Infinity,
    /// A single interior vertex.
    Single,
    /// Contains the contour of at least one hole.
    Hole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub kind: ComponentKind,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Smallest vertex of the component.
    pub representative: VertexId,
    /// Holes whose contour lies in this component.
    pub holes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    /// A component with several vertices touching no contour: its cycles are
    /// strongly critical and interior, which rules out any tiling.
    #[error("interior critical component at {0}")]
    InteriorCriticalComponent(GridVertex),
}

/// The forced components of a figure and the graph `Ĝ_F` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGraph {
    components: Vec<Component>,
    component_of: Vec<usize>,
    /// Both orientations of every edge of `Ĝ_F`.
    edges: BTreeSet<(usize, usize)>,
    /// Figure arcs leaving each component.
    crossing: Vec<Vec<ArcId>>,
    infinity: usize,
}

impl ComponentGraph {
    /// Components sorted by representative.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, id: usize) -> &Component {
        &self.components[id]
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v]
    }

    pub fn infinity(&self) -> usize {
        self.infinity
    }

    /// Ordered pairs `(U, U')` joined by some figure arc; symmetric.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((u, 0)..(u + 1, 0)).map(|&(_, w)| w)
    }

    /// Figure arcs from a vertex of `u` to a vertex outside `u`.
    pub fn crossing_arcs(&self, u: usize) -> &[ArcId] {
        &self.crossing[u]
    }

    /// Components other than the infinity component, in id order.
    pub fn free_components(&self) -> impl Iterator<Item = &Component> {
        self.components
            .iter()
            .filter(move |c| c.id != self.infinity)
    }

    /// Same partition of the vertices.
    pub fn same_partition(&self, other: &ComponentGraph) -> bool {
        self.component_of == other.component_of
    }
}

/// Tarjan's algorithm without recursion. Returns a component index per vertex.
pub(crate) fn strongly_connected(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let n = adjacency.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adjacency[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

pub fn forced_components(
    graph: &FigureGraph,
    weights: &ArcWeights,
    tiling: &Tiling,
) -> Result<ComponentGraph, ComponentError> {
    components_from(graph, &tiling_graph(graph, weights, tiling))
}

pub fn forced_components_of_height(
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> Result<ComponentGraph, ComponentError> {
    components_from(graph, &tiling_graph_of_height(graph, weights, h))
}

fn components_from(graph: &FigureGraph, gt: &TilingGraph) -> Result<ComponentGraph, ComponentError> {
    let n = graph.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for a in gt.arcs() {
        let arc = graph.arc(a);
        adjacency[arc.from].push(arc.to);
    }
    let raw = strongly_connected(&adjacency);
    let count = raw.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); count];
    for v in 0..n {
        members[raw[v]].push(v);
    }
    // Vertices are pushed in increasing order, so each member list is sorted
    // and starts with its representative.
    members.sort_by_key(|m| m[0]);
    let mut component_of = vec![0; n];
    for (id, m) in members.iter().enumerate() {
        for &v in m {
            component_of[v] = id;
        }
    }
    let infinity = component_of[graph.base_vertex()];
    let mut holes_of: Vec<Vec<usize>> = vec![Vec::new(); count];
    for hole in graph.holes() {
        holes_of[component_of[hole.clockwise_contour.vertices[0]]].push(hole.id);
    }
    let mut components = Vec::with_capacity(count);
    for (id, vertices) in members.into_iter().enumerate() {
        let holes = std::mem::take(&mut holes_of[id]);
        let kind = if id == infinity {
            ComponentKind::Infinity
        } else if !holes.is_empty() {
            ComponentKind::Hole
        } else if vertices.len() == 1 {
            ComponentKind::Single
        } else {
            return Err(ComponentError::InteriorCriticalComponent(
                graph.vertex(vertices[0]),
            ));
        };
        components.push(Component {
            id,
            kind,
            representative: vertices[0],
            vertices,
            holes,
        });
    }
    let mut edges = BTreeSet::new();
    let mut crossing = vec![Vec::new(); count];
    for (a, arc) in graph.arcs().iter().enumerate() {
        let (u, w) = (component_of[arc.from], component_of[arc.to]);
        if u != w {
            edges.insert((u, w));
            crossing[u].push(a);
        }
    }
    Ok(ComponentGraph {
        components,
        component_of,
        edges,
        crossing,
        infinity,
    })
}

/// `t(C) = 0` on an elementary cycle.
pub fn is_critical(
    graph: &FigureGraph,
    weights: &ArcWeights,
    cycle: &Cycle,
) -> Result<bool, GraphError> {
    let arcs = graph.cycle_arcs(cycle)?;
    if !graph.is_elementary(cycle) {
        return Err(GraphError::NotElementary);
    }
    Ok(arcs.iter().map(|&a| weights.t[a]).sum::<i64>() == 0)
}

/// Critical, and every interior arc of the cycle has spin +1.
pub fn is_strongly_critical(
    graph: &FigureGraph,
    weights: &ArcWeights,
    cycle: &Cycle,
) -> Result<bool, GraphError> {
    if !is_critical(graph, weights, cycle)? {
        return Ok(false);
    }
    Ok(graph
        .cycle_arcs(cycle)?
        .iter()
        .all(|&a| graph.is_boundary(a) || graph.spin(a) == 1))
}

/// A strongly critical cycle made only of interior edges proves that the
/// figure has no tiling.
pub fn proves_untileable(
    graph: &FigureGraph,
    weights: &ArcWeights,
    cycle: &Cycle,
) -> Result<bool, GraphError> {
    let interior = graph
        .cycle_arcs(cycle)?
        .iter()
        .all(|&a| !graph.is_boundary(a));
    Ok(interior && is_strongly_critical(graph, weights, cycle)?)
}

/// The component-level graph `G_h`: `(U, U')` is present when some arc from
/// `U` to `U'` lies in the graph of the tiling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    arcs: BTreeSet<(usize, usize)>,
    size: usize,
}

pub fn to_orientation(
    components: &ComponentGraph,
    graph: &FigureGraph,
    weights: &ArcWeights,
    h: &HeightFunction,
) -> Orientation {
    let mut arcs = BTreeSet::new();
    for u in 0..components.len() {
        for &a in components.crossing_arcs(u) {
            if h.difference(graph, a) == weights.t[a] {
                arcs.insert((u, components.component_of(graph.arc(a).to)));
            }
        }
    }
    Orientation {
        arcs,
        size: components.len(),
    }
}

impl Orientation {
    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn has_incoming(&self, u: usize) -> bool {
        self.arcs.iter().any(|&(_, w)| w == u)
    }

    pub fn has_outgoing(&self, u: usize) -> bool {
        self.arcs.range((u, 0)..(u + 1, 0)).next().is_some()
    }

    /// Exactly one direction of every edge of `Ĝ_F` is present.
    pub fn orients(&self, components: &ComponentGraph) -> bool {
        components
            .edges()
            .iter()
            .all(|&(u, w)| self.arcs.contains(&(u, w)) != self.arcs.contains(&(w, u)))
            && self.arcs.iter().all(|e| components.edges().contains(e))
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.size];
        for &(_, w) in &self.arcs {
            indegree[w] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.size).filter(|&u| indegree[u] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for &(_, w) in self.arcs.range((u, 0)..(u + 1, 0)) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == self.size
    }

    /// Components reachable from `start` along oriented arcs.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        self.search(start, false)
    }

    /// Components from which `target` is reachable.
    pub fn reaching(&self, target: usize) -> Vec<bool> {
        self.search(target, true)
    }

    fn search(&self, start: usize, backwards: bool) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(p, q) in &self.arcs {
                let (from, to) = if backwards { (q, p) } else { (p, q) };
                if from == u && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// Checks `|E(C) ∩ E(G_h)| = -b̂(C)/4` on a fundamental cycle basis of
    /// `Ĝ_F`, where each component-level cycle is lifted to the figure graph
    /// and the path inside a component contributes its forced difference.
    pub fn cycle_identity_holds(
        &self,
        components: &ComponentGraph,
        graph: &FigureGraph,
        weights: &ArcWeights,
        h: &HeightFunction,
    ) -> bool {
        let k = components.len();
        // One figure arc realising each component-level edge.
        let mut witness = std::collections::BTreeMap::new();
        for u in 0..k {
            for &a in components.crossing_arcs(u) {
                let w = components.component_of(graph.arc(a).to);
                witness.entry((u, w)).or_insert(a);
            }
        }
        let root = components.infinity();
        let mut parent: Vec<Option<usize>> = vec![None; k];
        let mut depth = vec![0usize; k];
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut tree = BTreeSet::new();
        while let Some(u) = queue.pop_front() {
            for w in components.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    tree.insert((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
        for &(u, w) in components.edges() {
            if u > w || tree.contains(&(u, w)) {
                continue;
            }
            // Component sequence u -> ... -> lca -> ... -> w -> u.
            let (mut up, mut down) = (vec![u], vec![w]);
            let (mut x, mut y) = (u, w);
            while x != y {
                if depth[x] >= depth[y] {
                    x = parent[x].expect("tree path");
                    up.push(x);
                } else {
                    y = parent[y].expect("tree path");
                    down.push(y);
                }
            }
            down.pop();
            let mut seq = up;
            seq.extend(down.into_iter().rev());
            seq.push(u);
            let steps: Vec<ArcId> = seq.windows(2).map(|s| witness[&(s[0], s[1])]).collect();
            let mut oriented = 0i64;
            let mut b_hat = 0i64;
            for (i, &a) in steps.iter().enumerate() {
                if self.arcs.contains(&(seq[i], seq[i + 1])) {
                    oriented += 1;
                }
                b_hat += weights.b[a];
                // Inside the next component, from this arc's head to the
                // next arc's tail.
                let next = steps[(i + 1) % steps.len()];
                b_hat += h.get(graph.arc(next).from) - h.get(graph.arc(a).to);
            }
            if 4 * oriented != -b_hat {
                return false;
            }
        }
        true
    }
}
