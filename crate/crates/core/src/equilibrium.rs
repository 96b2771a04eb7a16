//! Equilibrium functions: skew-symmetric arc weights that cancel the spin
//! carried around every hole, built from vertical cut lines and step values.

use std::collections::VecDeque;

use crate::grid::{ArcId, Cell, FigureGraph, Region, Side, VertexId};

/// A vertical segment from the centre of the highest (then leftmost) cell of
/// a hole up to the centre of the first cell above it that is not in the
/// figure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutLine {
    pub hole_id: usize,
    /// Column of cells the segment runs through; its abscissa is `column + 1/2`.
    pub column: i32,
    /// Row of the hole cell where the segment starts.
    pub start_row: i32,
    /// Row of the first non-figure cell, where the segment stops.
    pub end_row: i32,
    /// Complement region containing the stopping cell.
    pub predecessor: Region,
}

impl CutLine {
    pub fn x_half(&self) -> f64 {
        self.column as f64 + 0.5
    }

    pub fn y_start(&self) -> f64 {
        self.start_row as f64 + 0.5
    }

    pub fn y_end(&self) -> f64 {
        self.end_row as f64 + 0.5
    }

    /// Number of horizontal edges the segment crosses.
    pub fn len(&self) -> usize {
        (self.end_row - self.start_row) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// East-heading arcs of the crossed edges, bottom to top.
    pub fn crossed_arcs(&self, graph: &FigureGraph) -> Vec<ArcId> {
        (self.start_row + 1..=self.end_row)
            .map(|row| {
                let above = Cell::new(self.column, row);
                if graph.figure().contains(above) {
                    graph.side_arc(above, Side::Bottom)
                } else {
                    graph.side_arc(above.offset(0, -1), Side::Top)
                }
            })
            .collect()
    }
}

pub fn build_cut_lines(graph: &FigureGraph) -> Vec<CutLine> {
    let figure = graph.figure();
    graph
        .holes()
        .iter()
        .map(|hole| {
            let top = hole.top_cell();
            let mut row = top.y + 1;
            while figure.contains(Cell::new(top.x, row)) {
                row += 1;
            }
            // The stopping cell is adjacent (through the last crossed edge)
            // to a figure cell, so the graph knows its region.
            let last = graph.side_arc(Cell::new(top.x, row - 1), Side::Top);
            let predecessor = graph
                .boundary_region(last)
                .expect("the last crossed edge is on a contour");
            CutLine {
                hole_id: hole.id,
                column: top.x,
                start_row: top.y,
                end_row: row,
                predecessor,
            }
        })
        .collect()
}

/// Step value of every hole: the sum of its children's steps minus the spin
/// of its clockwise contour.
pub fn step_values(graph: &FigureGraph, cut_lines: &[CutLine]) -> Vec<i64> {
    let holes = graph.holes();
    let mut order: Vec<usize> = (0..holes.len()).collect();
    // A predecessor's top cell is strictly higher, so children come first.
    order.sort_by_key(|&i| cut_lines[i].start_row);
    let mut steps = vec![0i64; holes.len()];
    for i in order {
        let children: i64 = cut_lines
            .iter()
            .filter(|l| l.predecessor == Region::Hole(i))
            .map(|l| steps[l.hole_id])
            .sum();
        let spin = graph
            .cycle_sum(&holes[i].clockwise_contour, graph.spins())
            .expect("hole contours are cycles of the graph");
        steps[i] = children - spin;
    }
    steps
}

/// A spanning tree of the figure graph rooted at the base vertex.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    parent_arc: Vec<Option<ArcId>>,
    order: Vec<VertexId>,
}

impl SpanningTree {
    /// Breadth-first tree from the base vertex using only arcs where `eq` is
    /// zero; any vertex those arcs cannot reach is attached through arbitrary
    /// arcs afterwards.
    pub fn build(graph: &FigureGraph, eq: &[i64]) -> SpanningTree {
        let n = graph.vertex_count();
        let root = graph.base_vertex();
        let mut parent_arc = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        for zero_only in [true, false] {
            let mut queue: VecDeque<VertexId> = order.iter().copied().collect();
            while let Some(v) = queue.pop_front() {
                for &a in graph.out_arcs(v) {
                    let w = graph.arc(a).to;
                    if !seen[w] && (!zero_only || eq[a] == 0) {
                        seen[w] = true;
                        parent_arc[w] = Some(a);
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
            if order.len() == n {
                break;
            }
        }
        SpanningTree { parent_arc, order }
    }

    /// Arc from the parent, `None` for the root.
    pub fn parent_arc(&self, v: VertexId) -> Option<ArcId> {
        self.parent_arc[v]
    }

    /// Vertices in breadth-first order; parents precede children.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn spans(&self, graph: &FigureGraph) -> bool {
        self.order.len() == graph.vertex_count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.parent_arc.iter().flatten().copied()
    }

    /// Sum of `values` along the tree path from the root to every vertex.
    pub fn path_sums(&self, graph: &FigureGraph, values: &[i64]) -> Vec<i64> {
        let mut sums = vec![0; graph.vertex_count()];
        for &v in &self.order {
            if let Some(a) = self.parent_arc[v] {
                sums[v] = sums[graph.arc(a).from] + values[a];
            }
        }
        sums
    }
}

#[derive(Debug, Clone)]
pub struct EquilibriumFunction {
    pub eq: Vec<i64>,
    /// Step value per hole id; empty for figures built from a raw `eq`.
    pub steps: Vec<i64>,
    pub cut_lines: Vec<CutLine>,
}

impl EquilibriumFunction {
    pub fn from_values(eq: Vec<i64>) -> Self {
        EquilibriumFunction {
            eq,
            steps: Vec::new(),
            cut_lines: Vec::new(),
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.eq.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Arcs carrying a non-zero value, with the value.
    pub fn nonzero(&self) -> impl Iterator<Item = (ArcId, i64)> + '_ {
        self.eq
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(a, &v)| (a, v))
    }
}

/// Arc weights derived from an equilibrium function.
#[derive(Debug, Clone)]
pub struct ArcWeights {
    pub eq: Vec<i64>,
    pub eq_r: Vec<i64>,
    pub t: Vec<i64>,
    pub b: Vec<i64>,
    pub tree: SpanningTree,
}

impl ArcWeights {
    pub fn derive(graph: &FigureGraph, eq: &EquilibriumFunction) -> ArcWeights {
        let n = graph.arc_count();
        let mut eq_r = Vec::with_capacity(n);
        let mut t = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for a in 0..n {
            let e = eq.eq[a];
            let sp = graph.spin(a);
            eq_r.push(e - sp);
            if graph.is_boundary(a) {
                t.push(e + sp);
                b.push(e + sp);
            } else {
                t.push(e - sp + 2);
                b.push(e - sp - 2);
            }
        }
        ArcWeights {
            eq: eq.eq.clone(),
            eq_r,
            t,
            b,
            tree: SpanningTree::build(graph, &eq.eq),
        }
    }

    /// `g_F(a) = eq(a) + sp(a)`, the forced height difference on boundary arcs.
    pub fn g_figure(&self, graph: &FigureGraph, a: ArcId) -> i64 {
        self.eq[a] + graph.spin(a)
    }
}

/// Cut-line construction of an equilibrium function and its derived weights.
pub fn build_equilibrium(graph: &FigureGraph) -> (EquilibriumFunction, ArcWeights) {
    let cut_lines = build_cut_lines(graph);
    let steps = step_values(graph, &cut_lines);
    let mut eq = vec![0i64; graph.arc_count()];
    for line in &cut_lines {
        let step = steps[line.hole_id];
        for a in line.crossed_arcs(graph) {
            eq[a] = step;
            eq[FigureGraph::reverse(a)] = -step;
        }
    }
    let function = EquilibriumFunction {
        eq,
        steps,
        cut_lines,
    };
    let weights = ArcWeights::derive(graph, &function);
    (function, weights)
}

/// Checks skew-symmetry, zero sum around every cell and `eq(C) = -sp(C)` on
/// every clockwise hole contour.
pub fn verify_equilibrium(graph: &FigureGraph, eq: &[i64]) -> bool {
    if eq.len() != graph.arc_count() {
        return false;
    }
    let skew = (0..eq.len()).all(|a| eq[a] == -eq[FigureGraph::reverse(a)]);
    let faces = graph
        .figure()
        .cells()
        .iter()
        .all(|&c| graph.cycle_sum(&graph.face_cycle(c), eq) == Ok(0));
    let holes = graph.holes().iter().all(|h| {
        let c = &h.clockwise_contour;
        graph.cycle_sum(c, eq).ok() == graph.cycle_sum(c, graph.spins()).ok().map(|s| -s)
    });
    skew && faces && holes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Figure;

    fn graph(text: &str) -> FigureGraph {
        FigureGraph::new(Figure::parse(text).unwrap())
    }

    #[test]
    fn hole_free_figure_has_zero_eq() {
        let g = graph("###\n###");
        assert!(build_cut_lines(&g).is_empty());
        let (eq, w) = build_equilibrium(&g);
        assert!(eq.eq.iter().all(|&v| v == 0));
        assert!(verify_equilibrium(&g, &eq.eq));
        assert!(w.tree.spans(&g));
    }

    #[test]
    fn ring_cut_line() {
        let g = graph("###\n#.#\n###");
        let lines = build_cut_lines(&g);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert_eq!((l.column, l.start_row, l.end_row), (1, 1, 3));
        assert_eq!(l.predecessor, Region::Outer);
        assert_eq!(l.x_half(), 1.5);
        // One figure cell between the hole and the outside: two crossed edges.
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn ring_step_and_eq() {
        let g = graph("###\n#.#\n###");
        let (eq, w) = build_equilibrium(&g);
        // The hole cell (1,1) is black: its clockwise contour has spin +4.
        assert_eq!(eq.steps, vec![-4]);
        let crossed = eq.cut_lines[0].crossed_arcs(&g);
        let nonzero: Vec<_> = eq.nonzero().collect();
        assert_eq!(nonzero.len(), 4);
        for (a, v) in nonzero {
            let east = if crossed.contains(&a) { a } else { FigureGraph::reverse(a) };
            assert!(crossed.contains(&east));
            assert_eq!(v, if a == east { -4 } else { 4 });
        }
        assert!(verify_equilibrium(&g, &eq.eq));
        assert!(!verify_equilibrium(&g, &vec![0; g.arc_count()]));
        assert!(w.tree.spans(&g));
        assert!(w.tree.arcs().all(|a| eq.eq[a] == 0));
    }

    #[test]
    fn white_hole_has_positive_step() {
        // Hole at (2,1) is white.
        let g = graph("####\n##.#\n####");
        let (eq, _) = build_equilibrium(&g);
        assert_eq!(eq.steps, vec![4]);
    }

    #[test]
    fn stacked_holes_chain_to_outer() {
        let g = graph("###\n#.#\n###\n###\n#.#\n###");
        let lines = build_cut_lines(&g);
        assert_eq!(lines.len(), 2);
        let lower = lines.iter().find(|l| l.start_row == 1).unwrap();
        let upper = lines.iter().find(|l| l.start_row == 4).unwrap();
        assert_eq!(lower.predecessor, Region::Hole(upper.hole_id));
        assert_eq!(upper.predecessor, Region::Outer);
        assert_eq!(lower.end_row, 4);
        let steps = step_values(&g, &lines);
        // (1,1) is black, (1,4) is white.
        assert_eq!(steps[lower.hole_id], -4);
        assert_eq!(steps[upper.hole_id], -4 - (-4));
        let (eq, w) = build_equilibrium(&g);
        assert!(verify_equilibrium(&g, &eq.eq));
        assert!(w.tree.arcs().all(|a| eq.eq[a] == 0));
    }

    #[test]
    fn weights_follow_definition() {
        let g = graph("####\n#..#\n#..#\n####");
        let (eq, w) = build_equilibrium(&g);
        for a in 0..g.arc_count() {
            assert_eq!(w.eq_r[a], eq.eq[a] - g.spin(a));
            let gap = w.t[a] - w.b[a];
            if g.is_boundary(a) {
                assert_eq!(gap, 0);
                assert_eq!(w.t[a], eq.eq[a] + g.spin(a));
            } else {
                assert_eq!(gap, 4);
            }
        }
    }

    #[test]
    fn skew_violation_is_rejected() {
        let g = graph("##\n##");
        let mut eq = vec![0; g.arc_count()];
        eq[0] = 1;
        assert!(!verify_equilibrium(&g, &eq));
        assert!(!verify_equilibrium(&g, &[]));
    }
}
