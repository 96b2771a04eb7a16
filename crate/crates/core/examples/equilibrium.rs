//! Cut lines, step values and the resulting equilibrium function.

use tiler::grid::Region;
use tiler::{verify_equilibrium, Board};

fn main() -> Result<(), tiler::Error> {
    // Two stacked single-cell holes: the lower cut line stops at the upper hole.
    let board = Board::parse("###\n#.#\n###\n###\n#.#\n###")?;
    let g = board.graph();
    let eq = board.equilibrium();

    for line in &eq.cut_lines {
        let to = match line.predecessor {
            Region::Outer => "the outside".to_string(),
            Region::Hole(i) => format!("hole {i}"),
        };
        println!(
            "hole {}: cut x={} from row {} to row {} ({} edges) ends in {to}, step {}",
            line.hole_id,
            line.x_half(),
            line.start_row,
            line.end_row,
            line.len(),
            eq.steps[line.hole_id]
        );
    }
    for (a, v) in eq.nonzero() {
        let arc = g.arc(a);
        println!("  {} -> {}: {v}", g.vertex(arc.from), g.vertex(arc.to));
    }
    println!("valid equilibrium: {}", verify_equilibrium(g, &eq.eq));
    println!("zero function valid: {}", verify_equilibrium(g, &vec![0; g.arc_count()]));
    Ok(())
}
