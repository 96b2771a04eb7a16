//! Generalised flips: the hole flip, flip distance and shortest flip paths.

use tiler::io::render_tiling;
use tiler::{available_flips, local_flip_count, Board};

fn main() -> Result<(), tiler::Error> {
    let board = Board::parse("####\n#..#\n#..#\n####")?;
    let g = board.graph();
    let cg = board.components()?;
    let lo = board.min_height()?;
    let hi = board.max_height()?;
    for flip in available_flips(&cg, g, board.weights(), &lo) {
        println!("available on min: {flip} ({:?})", cg.component(flip.component).kind);
    }
    println!("{}", render_tiling(board.figure(), &board.tiling(&lo)?));
    print!("{}", render_tiling(board.figure(), &board.tiling(&hi)?));
    println!(
        "generalised distance {}, local flips {:?}",
        tiler::flip_distance(&lo, &hi, &cg)?,
        local_flip_count(g, &lo, &hi)?
    );

    let rect = Board::parse("####\n####\n####")?;
    let a = rect.min_tiling()?;
    let b = rect.max_tiling()?;
    let path = rect.flip_path(&a, &b)?;
    println!("3x4 min to max: distance {}", rect.flip_distance(&a, &b)?);
    for flip in path {
        let rep = rect.components()?.component(flip.component).representative;
        println!("  {flip} at {}", rect.graph().vertex(rep));
    }
    Ok(())
}
