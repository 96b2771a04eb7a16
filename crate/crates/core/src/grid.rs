//! Figures on the square grid and the duplicated-vertex graph built from them.
//!
//! A [`Figure`] is a finite, 4-connected set of unit cells. [`FigureGraph`] is
//! the symmetric directed graph whose vertices are cell corners and whose arcs
//! are both orientations of every cell side. A lattice point where the figure
//! only touches itself diagonally (a pinch point) is split into two vertex
//! copies, so that every contour of the figure is an elementary cycle.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Largest accepted bounding box side, in cells.
pub const MAX_SIDE: usize = 4096;

pub type VertexId = usize;
pub type ArcId = usize;

/// A unit cell, identified by its lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// Black iff `x + y` is even.
    pub fn color(self) -> Color {
        if (self.x + self.y).rem_euclid(2) == 0 {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Cell {
        Cell::new(self.x + dx, self.y + dy)
    }

    pub fn neighbours4(self) -> [Cell; 4] {
        [
            self.offset(1, 0),
            self.offset(0, 1),
            self.offset(-1, 0),
            self.offset(0, -1),
        ]
    }

    pub fn neighbours8(self) -> [Cell; 8] {
        [
            self.offset(1, 0),
            self.offset(1, 1),
            self.offset(0, 1),
            self.offset(-1, 1),
            self.offset(-1, 0),
            self.offset(-1, -1),
            self.offset(0, -1),
            self.offset(1, -1),
        ]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FigureError {
    #[error("line {line}, column {column}: unexpected character {found:?}")]
    Parse {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("line {line} has {found} columns, expected {expected}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("figure has no cells")]
    Empty,
    #[error("figure cells are not 4-connected")]
    NotConnected,
    #[error("bounding box {width}x{height} exceeds {MAX_SIDE}x{MAX_SIDE}")]
    TooLarge { width: usize, height: usize },
}

/// A finite, non-empty, 4-connected set of cells.
#[derive(Debug, Clone)]
pub struct Figure {
    cells: Vec<Cell>,
    min: Cell,
    width: usize,
    height: usize,
    occupied: Vec<bool>,
}

impl PartialEq for Figure {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Figure {}

impl Figure {
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Figure, FigureError> {
        let cells: Vec<Cell> = cells
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let first = *cells.first().ok_or(FigureError::Empty)?;
        let (mut lo, mut hi) = (first, first);
        for c in &cells {
            lo = Cell::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Cell::new(hi.x.max(c.x), hi.y.max(c.y));
        }
        let width = (hi.x - lo.x + 1) as usize;
        let height = (hi.y - lo.y + 1) as usize;
        if width > MAX_SIDE || height > MAX_SIDE {
            return Err(FigureError::TooLarge { width, height });
        }
        let mut occupied = vec![false; width * height];
        for c in &cells {
            occupied[(c.y - lo.y) as usize * width + (c.x - lo.x) as usize] = true;
        }
        let figure = Figure {
            cells,
            min: lo,
            width,
            height,
            occupied,
        };
        if !figure.is_connected() {
            return Err(FigureError::NotConnected);
        }
        Ok(figure)
    }

    /// Parses rows of `#` (cell) and `.` (no cell). The last row is `y = 0`.
    pub fn parse(text: &str) -> Result<Figure, FigureError> {
        let rows: Vec<&str> = text
            .lines()
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .collect();
        let rows: Vec<&str> = {
            // Trailing blank lines are tolerated, nothing else is.
            let end = rows
                .iter()
                .rposition(|r| !r.is_empty())
                .map_or(0, |i| i + 1);
            rows[..end].to_vec()
        };
        let expected = rows.first().map_or(0, |r| r.chars().count());
        let mut cells = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let found = row.chars().count();
            if found != expected {
                return Err(FigureError::Ragged {
                    line: r + 1,
                    expected,
                    found,
                });
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '#' => cells.push(Cell::new(c as i32, (rows.len() - 1 - r) as i32)),
                    '.' => {}
                    other => {
                        return Err(FigureError::Parse {
                            line: r + 1,
                            column: c + 1,
                            found: other,
                        })
                    }
                }
            }
        }
        Figure::from_cells(cells)
    }

    pub fn contains(&self, c: Cell) -> bool {
        let dx = c.x - self.min.x;
        let dy = c.y - self.min.y;
        if dx < 0 || dy < 0 || dx as usize >= self.width || dy as usize >= self.height {
            return false;
        }
        self.occupied[dy as usize * self.width + dx as usize]
    }

    /// Cells in increasing `(x, y)` order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Lower-left cell of the bounding box.
    pub fn origin(&self) -> Cell {
        self.min
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of black cells minus number of white cells.
    pub fn color_balance(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| match c.color() {
                Color::Black => 1,
                Color::White => -1,
            })
            .sum()
    }

    /// Stable fingerprint of the cell set.
    pub fn key(&self) -> u64 {
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.cells.hash(&mut hasher);
        hasher.finish()
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for dy in (0..self.height).rev() {
            for dx in 0..self.width {
                out.push(if self.occupied[dy * self.width + dx] {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    fn is_connected(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.cells[0]]);
        seen.insert(self.cells[0]);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbours4() {
                if self.contains(n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }
}

pub fn parse_figure(text: &str) -> Result<Figure, FigureError> {
    Figure::parse(text)
}

/// A cell corner. `copy` distinguishes the two vertices a pinch point is split
/// into; it is 0 everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridVertex {
    pub x: i32,
    pub y: i32,
    pub copy: u8,
}

impl GridVertex {
    pub const fn new(x: i32, y: i32, copy: u8) -> Self {
        GridVertex { x, y, copy }
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "({},{})", self.x, self.y)
        } else {
            write!(f, "({},{})'", self.x, self.y)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    East,
    North,
    West,
    South,
}

/// A side of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

/// A connected component of the complement of the figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Outer,
    Hole(usize),
}

/// A closed path given by its vertex list, first vertex repeated last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Cycle { vertices }
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reversed(&self) -> Cycle {
        Cycle::new(self.vertices.iter().rev().copied().collect())
    }
}

#[derive(Debug, Clone)]
pub struct Hole {
    pub id: usize,
    /// Cells of the hole in increasing `(x, y)` order.
    pub cells: Vec<Cell>,
    /// Contour traversed with the hole on the right-hand side.
    pub clockwise_contour: Cycle,
}

impl Hole {
    /// Highest cell of the hole, leftmost among ties.
    pub fn top_cell(&self) -> Cell {
        *self
            .cells
            .iter()
            .max_by_key(|c| (c.y, -c.x))
            .expect("holes are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arc {0} -> {1} is not a side of a figure cell")]
    ArcNotInFigure(GridVertex, GridVertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(GridVertex),
    #[error("vertex sequence is not a closed path of the figure graph")]
    NotACycle,
    #[error("cycle repeats a vertex")]
    NotElementary,
    #[error("cycle is not clockwise")]
    NotClockwise,
}

/// The symmetric directed graph of a figure, after pinch-point duplication.
///
/// Arcs come in reverse pairs: arc `2k` and arc `2k + 1` traverse the same
/// edge in opposite directions, so `reverse(a) == a ^ 1`.
#[derive(Debug, Clone)]
pub struct FigureGraph {
    figure: Figure,
    vertices: Vec<GridVertex>,
    vertex_index: HashMap<GridVertex, VertexId>,
    arcs: Vec<Arc>,
    arc_index: HashMap<(VertexId, VertexId), ArcId>,
    out_arcs: Vec<Vec<ArcId>>,
    heading: Vec<Heading>,
    spin: Vec<i64>,
    left_cell: Vec<Cell>,
    right_cell: Vec<Cell>,
    /// Complement region on the non-figure side of a boundary arc.
    boundary_region: Vec<Option<Region>>,
    holes: Vec<Hole>,
    outer_contour: Cycle,
    on_boundary: Vec<bool>,
    on_outer_boundary: Vec<bool>,
    base_vertex: VertexId,
}

impl FigureGraph {
    pub fn new(figure: Figure) -> FigureGraph {
        build_graph(figure)
    }

    pub fn figure(&self) -> &Figure {
        &self.figure
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> GridVertex {
        self.vertices[v]
    }

    pub fn vertex_id(&self, v: GridVertex) -> Option<VertexId> {
        self.vertex_index.get(&v).copied()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> Arc {
        self.arcs[a]
    }

    pub fn arc_between(&self, from: VertexId, to: VertexId) -> Option<ArcId> {
        self.arc_index.get(&(from, to)).copied()
    }

    pub fn reverse(a: ArcId) -> ArcId {
        a ^ 1
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn heading(&self, a: ArcId) -> Heading {
        self.heading[a]
    }

    /// +1 when the cell on the left of the move is white, -1 otherwise.
    pub fn spin(&self, a: ArcId) -> i64 {
        self.spin[a]
    }

    pub fn spins(&self) -> &[i64] {
        &self.spin
    }

    /// Spin of the arc between two grid vertices.
    pub fn spin_between(&self, from: GridVertex, to: GridVertex) -> Result<i64, GraphError> {
        let f = self.vertex_id(from);
        let t = self.vertex_id(to);
        match (f, t) {
            (Some(f), Some(t)) => self
                .arc_between(f, t)
                .map(|a| self.spin[a])
                .ok_or(GraphError::ArcNotInFigure(from, to)),
            _ => Err(GraphError::ArcNotInFigure(from, to)),
        }
    }

    pub fn left_cell(&self, a: ArcId) -> Cell {
        self.left_cell[a]
    }

    pub fn right_cell(&self, a: ArcId) -> Cell {
        self.right_cell[a]
    }

    /// True when the arc lies on the contour of the figure or of a hole.
    pub fn is_boundary(&self, a: ArcId) -> bool {
        self.boundary_region[a].is_some()
    }

    pub fn is_outer_boundary(&self, a: ArcId) -> bool {
        self.boundary_region[a] == Some(Region::Outer)
    }

    pub fn boundary_region(&self, a: ArcId) -> Option<Region> {
        self.boundary_region[a]
    }

    pub fn boundary_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arcs.len()).filter(|&a| self.is_boundary(a))
    }

    pub fn outer_boundary_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arcs.len()).filter(|&a| self.is_outer_boundary(a))
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.on_boundary[v]
    }

    pub fn is_outer_boundary_vertex(&self, v: VertexId) -> bool {
        self.on_outer_boundary[v]
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    /// Outer contour starting at the base vertex, figure on the left
    /// (counterclockwise around the figure).
    pub fn outer_contour(&self) -> &Cycle {
        &self.outer_contour
    }

    /// The base vertex `w0`: smallest `(x, y)` corner, always on the outer
    /// boundary.
    pub fn base_vertex(&self) -> VertexId {
        self.base_vertex
    }

    /// Vertex at a corner of a figure cell. `dx`, `dy` are 0 or 1.
    pub fn corner(&self, cell: Cell, dx: i32, dy: i32) -> VertexId {
        let gv = corner_vertex(&self.figure, cell, dx, dy);
        self.vertex_index[&gv]
    }

    /// The arc along a side of a figure cell, oriented East for horizontal
    /// sides and North for vertical ones.
    pub fn side_arc(&self, cell: Cell, side: Side) -> ArcId {
        let (a, b) = match side {
            Side::Bottom => (self.corner(cell, 0, 0), self.corner(cell, 1, 0)),
            Side::Top => (self.corner(cell, 0, 1), self.corner(cell, 1, 1)),
            Side::Left => (self.corner(cell, 0, 0), self.corner(cell, 0, 1)),
            Side::Right => (self.corner(cell, 1, 0), self.corner(cell, 1, 1)),
        };
        self.arc_index[&(a, b)]
    }

    /// Clockwise 4-cycle around a figure cell, starting at its lower-left
    /// corner.
    pub fn face_cycle(&self, cell: Cell) -> Cycle {
        let ll = self.corner(cell, 0, 0);
        Cycle::new(vec![
            ll,
            self.corner(cell, 0, 1),
            self.corner(cell, 1, 1),
            self.corner(cell, 1, 0),
            ll,
        ])
    }

    /// Arc ids along a closed vertex sequence.
    pub fn cycle_arcs(&self, cycle: &Cycle) -> Result<Vec<ArcId>, GraphError> {
        let vs = &cycle.vertices;
        if vs.len() < 2 || vs.first() != vs.last() {
            return Err(GraphError::NotACycle);
        }
        vs.windows(2)
            .map(|w| {
                if w[0] >= self.vertices.len() || w[1] >= self.vertices.len() {
                    return Err(GraphError::NotACycle);
                }
                self.arc_between(w[0], w[1]).ok_or(GraphError::NotACycle)
            })
            .collect()
    }

    /// Sum of an arc function along a cycle.
    pub fn cycle_sum(&self, cycle: &Cycle, values: &[i64]) -> Result<i64, GraphError> {
        Ok(self.cycle_arcs(cycle)?.iter().map(|&a| values[a]).sum())
    }

    /// Builds a [`Cycle`] from grid vertices.
    pub fn cycle_from_points(&self, points: &[GridVertex]) -> Result<Cycle, GraphError> {
        points
            .iter()
            .map(|p| self.vertex_id(*p).ok_or(GraphError::UnknownVertex(*p)))
            .collect::<Result<Vec<_>, _>>()
            .map(Cycle::new)
    }

    pub fn is_elementary(&self, cycle: &Cycle) -> bool {
        let vs = &cycle.vertices;
        if vs.len() < 2 {
            return false;
        }
        let body = &vs[..vs.len() - 1];
        let distinct: BTreeSet<_> = body.iter().collect();
        distinct.len() == body.len()
    }

    /// Twice the signed area enclosed by the cycle (negative when clockwise).
    pub fn signed_area2(&self, cycle: &Cycle) -> i64 {
        cycle
            .vertices
            .windows(2)
            .map(|w| {
                let p = self.vertices[w[0]];
                let q = self.vertices[w[1]];
                p.x as i64 * q.y as i64 - q.x as i64 * p.y as i64
            })
            .sum()
    }

    /// Figure cells enclosed by a closed polygonal cycle.
    pub fn enclosed_cells(&self, cycle: &Cycle) -> Vec<Cell> {
        // Horizontal ray from each cell centre towards +x; only vertical
        // edges strictly to the right of the centre can cross it.
        let verticals: Vec<(i32, i32, i32)> = cycle
            .vertices
            .windows(2)
            .filter_map(|w| {
                let p = self.vertices[w[0]];
                let q = self.vertices[w[1]];
                (p.x == q.x).then(|| (p.x, p.y.min(q.y), p.y.max(q.y)))
            })
            .collect();
        self.figure
            .cells()
            .iter()
            .copied()
            .filter(|c| {
                verticals
                    .iter()
                    .filter(|&&(x, y0, y1)| x > c.x && y0 <= c.y && c.y < y1)
                    .count()
                    % 2
                    == 1
            })
            .collect()
    }

    /// Black-minus-white count of figure cells enclosed by an elementary
    /// clockwise cycle. Hole cells are never counted.
    pub fn disequilibrium(&self, cycle: &Cycle) -> Result<i64, GraphError> {
        self.cycle_arcs(cycle)?;
        if !self.is_elementary(cycle) {
            return Err(GraphError::NotElementary);
        }
        if self.signed_area2(cycle) >= 0 {
            return Err(GraphError::NotClockwise);
        }
        Ok(self
            .enclosed_cells(cycle)
            .iter()
            .map(|c| match c.color() {
                Color::Black => 1,
                Color::White => -1,
            })
            .sum())
    }
}

pub fn build_graph(figure: Figure) -> FigureGraph {
    let mut corner_set = BTreeSet::new();
    let mut edge_set = BTreeSet::new();
    for &cell in figure.cells() {
        let ll = corner_vertex(&figure, cell, 0, 0);
        let lr = corner_vertex(&figure, cell, 1, 0);
        let ul = corner_vertex(&figure, cell, 0, 1);
        let ur = corner_vertex(&figure, cell, 1, 1);
        corner_set.extend([ll, lr, ul, ur]);
        edge_set.extend([(ll, lr), (ul, ur), (ll, ul), (lr, ur)]);
    }
    let vertices: Vec<GridVertex> = corner_set.into_iter().collect();
    let vertex_index: HashMap<GridVertex, VertexId> =
        vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();

    let mut arcs = Vec::with_capacity(edge_set.len() * 2);
    for (p, q) in edge_set {
        let (p, q) = (vertex_index[&p], vertex_index[&q]);
        arcs.push(Arc { from: p, to: q });
        arcs.push(Arc { from: q, to: p });
    }
    let arc_index: HashMap<(VertexId, VertexId), ArcId> = arcs
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.from, a.to), i))
        .collect();
    let mut out_arcs = vec![Vec::new(); vertices.len()];
    for (i, a) in arcs.iter().enumerate() {
        out_arcs[a.from].push(i);
    }

    let regions = ComplementRegions::new(&figure);

    let mut heading = Vec::with_capacity(arcs.len());
    let mut spin = Vec::with_capacity(arcs.len());
    let mut left_cell = Vec::with_capacity(arcs.len());
    let mut right_cell = Vec::with_capacity(arcs.len());
    let mut boundary_region = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let p = vertices[a.from];
        let q = vertices[a.to];
        let (h, left, right) = match (q.x - p.x, q.y - p.y) {
            (1, 0) => (Heading::East, Cell::new(p.x, p.y), Cell::new(p.x, p.y - 1)),
            (-1, 0) => (Heading::West, Cell::new(q.x, q.y - 1), Cell::new(q.x, q.y)),
            (0, 1) => (Heading::North, Cell::new(p.x - 1, p.y), Cell::new(p.x, p.y)),
            (0, -1) => (Heading::South, Cell::new(q.x, q.y), Cell::new(q.x - 1, q.y)),
            _ => unreachable!("arcs join axis-adjacent corners"),
        };
        heading.push(h);
        spin.push(if left.color() == Color::White { 1 } else { -1 });
        left_cell.push(left);
        right_cell.push(right);
        let region = match (figure.contains(left), figure.contains(right)) {
            (true, true) => None,
            (true, false) => Some(regions.region_of(right)),
            (false, true) => Some(regions.region_of(left)),
            (false, false) => unreachable!("every arc bounds a figure cell"),
        };
        boundary_region.push(region);
    }

    let mut on_boundary = vec![false; vertices.len()];
    let mut on_outer_boundary = vec![false; vertices.len()];
    // Boundary arcs with the figure on the left: each vertex has at most one
    // outgoing such arc, so they decompose into disjoint contours.
    let mut contour_out: Vec<Option<ArcId>> = vec![None; vertices.len()];
    for (i, a) in arcs.iter().enumerate() {
        if let Some(region) = boundary_region[i] {
            on_boundary[a.from] = true;
            if region == Region::Outer {
                on_outer_boundary[a.from] = true;
            }
            if figure.contains(left_cell[i]) {
                debug_assert!(contour_out[a.from].is_none());
                contour_out[a.from] = Some(i);
            }
        }
    }
    let trace = |start: VertexId| -> Cycle {
        let mut path = vec![start];
        let mut v = start;
        loop {
            let a = contour_out[v].expect("contour vertices have a successor");
            v = arcs[a].to;
            path.push(v);
            if v == start {
                break;
            }
        }
        Cycle::new(path)
    };

    let base_vertex = 0;
    debug_assert!(on_outer_boundary[base_vertex]);
    let outer_contour = trace(base_vertex);

    let holes = regions
        .holes
        .iter()
        .enumerate()
        .map(|(id, cells)| {
            let start = (0..vertices.len())
                .find(|&v| {
                    contour_out[v].is_some_and(|a| boundary_region[a] == Some(Region::Hole(id)))
                })
                .expect("every hole has a contour");
            Hole {
                id,
                cells: cells.clone(),
                clockwise_contour: trace(start),
            }
        })
        .collect();

    FigureGraph {
        figure,
        vertices,
        vertex_index,
        arcs,
        arc_index,
        out_arcs,
        heading,
        spin,
        left_cell,
        right_cell,
        boundary_region,
        holes,
        outer_contour,
        on_boundary,
        on_outer_boundary,
        base_vertex,
    }
}

/// A lattice point where the figure touches itself only diagonally.
fn is_pinch(figure: &Figure, x: i32, y: i32) -> bool {
    let ne = figure.contains(Cell::new(x, y));
    let nw = figure.contains(Cell::new(x - 1, y));
    let sw = figure.contains(Cell::new(x - 1, y - 1));
    let se = figure.contains(Cell::new(x, y - 1));
    (ne && sw && !nw && !se) || (nw && se && !ne && !sw)
}

/// At a pinch point copy 0 belongs to the cell above the point, copy 1 to the
/// cell below it.
fn corner_vertex(figure: &Figure, cell: Cell, dx: i32, dy: i32) -> GridVertex {
    let (x, y) = (cell.x + dx, cell.y + dy);
    let copy = if is_pinch(figure, x, y) { dy as u8 } else { 0 };
    GridVertex::new(x, y, copy)
}

/// 8-connected components of the complement, inside the bounding box padded
/// by one cell on every side.
struct ComplementRegions {
    origin: Cell,
    width: usize,
    /// `usize::MAX` for figure cells, 0 for the outer region, `k + 1` for hole `k`.
    label: Vec<usize>,
    holes: Vec<Vec<Cell>>,
}

impl ComplementRegions {
    fn new(figure: &Figure) -> Self {
        let origin = figure.origin().offset(-1, -1);
        let width = figure.width() + 2;
        let height = figure.height() + 2;
        let mut label = vec![usize::MAX - 1; width * height];
        let idx = |c: Cell| (c.y - origin.y) as usize * width + (c.x - origin.x) as usize;
        let inside = |c: Cell| {
            c.x >= origin.x
                && c.y >= origin.y
                && ((c.x - origin.x) as usize) < width
                && ((c.y - origin.y) as usize) < height
        };
        for c in figure.cells() {
            label[idx(*c)] = usize::MAX;
        }
        let mut holes = Vec::new();
        let mut next = 0;
        // Column-major scan: the first cell met in a region is its smallest.
        for dx in 0..width as i32 {
            for dy in 0..height as i32 {
                let start = origin.offset(dx, dy);
                if label[idx(start)] != usize::MAX - 1 {
                    continue;
                }
                let mut members = vec![start];
                label[idx(start)] = next;
                let mut queue = VecDeque::from([start]);
                while let Some(c) = queue.pop_front() {
                    for n in c.neighbours8() {
                        if inside(n) && label[idx(n)] == usize::MAX - 1 {
                            label[idx(n)] = next;
                            members.push(n);
                            queue.push_back(n);
                        }
                    }
                }
                if next > 0 {
                    members.sort();
                    holes.push(members);
                }
                next += 1;
            }
        }
        ComplementRegions {
            origin,
            width,
            label,
            holes,
        }
    }

    fn region_of(&self, c: Cell) -> Region {
        let dx = c.x - self.origin.x;
        let dy = c.y - self.origin.y;
        match self.label[dy as usize * self.width + dx as usize] {
            0 => Region::Outer,
            k => Region::Hole(k - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(text: &str) -> FigureGraph {
        FigureGraph::new(Figure::parse(text).unwrap())
    }

    #[test]
    fn parses_square_and_ring() {
        let sq = Figure::parse("##\n##").unwrap();
        assert_eq!(sq.len(), 4);
        let ring = Figure::parse("###\n#.#\n###\n").unwrap();
        assert_eq!(ring.len(), 8);
        assert!(!ring.contains(Cell::new(1, 1)));
        assert!(ring.contains(Cell::new(0, 2)));
        assert_eq!(ring.to_ascii(), "###\n#.#\n###\n");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Figure::parse("#.\n.#"), Err(FigureError::NotConnected));
        assert_eq!(Figure::parse("..\n.."), Err(FigureError::Empty));
        assert_eq!(Figure::parse(""), Err(FigureError::Empty));
        assert!(matches!(
            Figure::parse("##\n#"),
            Err(FigureError::Ragged { line: 2, .. })
        ));
        assert!(matches!(
            Figure::parse("#x"),
            Err(FigureError::Parse { found: 'x', .. })
        ));
    }

    #[test]
    fn rejects_oversized_box() {
        let cells = (0..=MAX_SIDE as i32).map(|x| Cell::new(x, 0));
        assert!(matches!(
            Figure::from_cells(cells),
            Err(FigureError::TooLarge { .. })
        ));
    }

    #[test]
    fn square_counts() {
        let g = graph("##\n##");
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.arc_count(), 24);
        assert!(g.holes().is_empty());
        assert_eq!(g.vertex(g.base_vertex()), GridVertex::new(0, 0, 0));
        assert_eq!(g.outer_contour().len(), 8);
        let centre = g.vertex_id(GridVertex::new(1, 1, 0)).unwrap();
        assert!(!g.is_boundary_vertex(centre));
    }

    #[test]
    fn ring_hole_contour() {
        let g = graph("###\n#.#\n###");
        assert_eq!(g.holes().len(), 1);
        let hole = &g.holes()[0];
        assert_eq!(hole.cells, vec![Cell::new(1, 1)]);
        assert_eq!(hole.clockwise_contour.len(), 4);
        assert!(g.signed_area2(&hole.clockwise_contour) < 0);
        assert_eq!(g.outer_contour().len(), 12);
        assert!(g.signed_area2(g.outer_contour()) > 0);
    }

    #[test]
    fn diagonal_complement_cells_are_outer() {
        // The missing cell at (1,1) touches the outside diagonally.
        let g = graph("###\n#.#\n##.");
        assert!(g.holes().is_empty());
    }

    #[test]
    fn pinch_point_is_duplicated() {
        // Two 2x2 blocks meeting at the corner (2,2), joined by an arm.
        let text = "..###\n..###\n##..#\n#####";
        let g = graph(text);
        let c0 = g.vertex_id(GridVertex::new(2, 2, 0)).unwrap();
        let c1 = g.vertex_id(GridVertex::new(2, 2, 1)).unwrap();
        assert_ne!(c0, c1);
        assert_eq!(g.out_arcs(c0).len(), 2);
        assert_eq!(g.out_arcs(c1).len(), 2);
        // Copy 0 bounds the upper block, copy 1 the lower one.
        let up = g.face_cycle(Cell::new(2, 2));
        let down = g.face_cycle(Cell::new(1, 1));
        assert!(up.vertices.contains(&c0) && !up.vertices.contains(&c1));
        assert!(down.vertices.contains(&c1) && !down.vertices.contains(&c0));
        assert!(g.is_elementary(g.outer_contour()));
        let on_outer = g.outer_contour().vertices.iter().filter(|&&v| v == c0 || v == c1);
        assert_eq!(on_outer.count(), 2);
    }

    #[test]
    fn diagonal_hole_cells_form_one_elementary_contour() {
        let g = graph("####\n##.#\n#.##\n####");
        assert_eq!(g.holes().len(), 1);
        let contour = &g.holes()[0].clockwise_contour;
        assert!(g.is_elementary(contour));
        assert_eq!(contour.len(), 8);
        assert!(g.vertex_id(GridVertex::new(2, 2, 1)).is_some());
    }

    #[test]
    fn spin_of_faces() {
        let g = graph("##\n##");
        for &cell in g.figure().cells() {
            let face = g.face_cycle(cell);
            let sp = g.cycle_sum(&face, g.spins()).unwrap();
            match cell.color() {
                Color::Black => assert_eq!(sp, 4),
                Color::White => assert_eq!(sp, -4),
            }
            assert_eq!(g.cycle_sum(&face.reversed(), g.spins()).unwrap(), -sp);
        }
        for a in 0..g.arc_count() {
            assert_eq!(g.spin(a), -g.spin(FigureGraph::reverse(a)));
        }
    }

    #[test]
    fn spin_between_rejects_foreign_arcs() {
        let g = graph("##\n##");
        let p = GridVertex::new(0, 0, 0);
        assert_eq!(g.spin_between(p, GridVertex::new(0, 1, 0)), Ok(1));
        assert!(matches!(
            g.spin_between(p, GridVertex::new(1, 1, 0)),
            Err(GraphError::ArcNotInFigure(..))
        ));
    }

    #[test]
    fn disequilibrium_examples() {
        let g = graph("###\n#.#\n###");
        let black = g.face_cycle(Cell::new(0, 0));
        assert_eq!(g.disequilibrium(&black), Ok(1));
        let white = g.face_cycle(Cell::new(1, 0));
        assert_eq!(g.disequilibrium(&white), Ok(-1));
        let hole = &g.holes()[0].clockwise_contour;
        assert_eq!(g.disequilibrium(hole), Ok(0));
        assert_eq!(
            g.disequilibrium(&hole.reversed()),
            Err(GraphError::NotClockwise)
        );

        let rect = graph("###\n###");
        let cw = rect.outer_contour().reversed();
        assert_eq!(rect.disequilibrium(&cw), Ok(0));
    }

    #[test]
    fn disequilibrium_rejects_bad_cycles() {
        let g = graph("###\n###");
        let v = |x, y| g.vertex_id(GridVertex::new(x, y, 0)).unwrap();
        let figure_eight = Cycle::new(vec![
            v(0, 0),
            v(0, 1),
            v(1, 1),
            v(1, 0),
            v(0, 0),
            v(0, 1),
            v(1, 1),
            v(1, 0),
            v(0, 0),
        ]);
        assert_eq!(g.disequilibrium(&figure_eight), Err(GraphError::NotElementary));
        let broken = Cycle::new(vec![v(0, 0), v(1, 1), v(0, 0)]);
        assert_eq!(g.disequilibrium(&broken), Err(GraphError::NotACycle));
    }
}
