//! Parse a figure and inspect its vertex/arc graph, holes and contours.

use tiler::grid::Color;
use tiler::{Board, GridVertex};

fn main() -> Result<(), tiler::Error> {
    // One hole at (1,1); the notch at (3,2) meets the outside at a pinch
    // point, so vertex (3,3) is duplicated.
    let board = Board::parse(
        "\
...###
...###
###.##
#.####
######",
    )?;
    let g = board.graph();
    let f = board.figure();
    let black = f.cells().iter().filter(|c| c.color() == Color::Black).count();
    println!("{} cells ({} black, {} white)", f.len(), black, f.len() - black);
    println!("{} vertices, {} arcs", g.vertex_count(), g.arc_count());
    println!("outer contour: {} arcs from {}", g.outer_contour().len(), g.vertex(0));

    for hole in g.holes() {
        let path: Vec<String> = hole
            .clockwise_contour
            .vertices
            .iter()
            .map(|&v| g.vertex(v).to_string())
            .collect();
        println!("hole {} (top cell {}): {}", hole.id, hole.top_cell(), path.join(" "));
    }

    let pinches: Vec<String> = g
        .vertices()
        .iter()
        .filter(|v| v.copy == 1)
        .map(GridVertex::to_string)
        .collect();
    println!("duplicated pinch vertices: {}", pinches.join(" "));

    let cell = f.cells()[0];
    let face = g.face_cycle(cell);
    println!(
        "spin around {cell}: {}, disequilibrium {}",
        g.cycle_sum(&face, g.spins()).unwrap(),
        g.disequilibrium(&face).unwrap()
    );
    Ok(())
}
