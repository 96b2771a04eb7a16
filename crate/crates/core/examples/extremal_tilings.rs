//! Minimal and maximal tilings, lattice operations and untileability.

use tiler::io::render_tiling;
use tiler::lattice::{max_height, min_height};
use tiler::{compare, inf, sup, Board};

fn main() -> Result<(), tiler::Error> {
    let board = Board::parse("######\n######\n####.#\n######\n#.####\n######")?;
    let lo = min_height(board.graph(), board.weights())?;
    let hi = max_height(board.graph(), board.weights())?;
    println!("minimal tiling ({} worklist passes):", lo.passes);
    print!("{}", render_tiling(board.figure(), &board.tiling(&lo.height)?));
    println!("maximal tiling ({} worklist passes):", hi.passes);
    print!("{}", render_tiling(board.figure(), &board.tiling(&hi.height)?));
    println!("min vs max: {:?}", compare(&lo.height, &hi.height)?);

    let sampler = board.sampler()?;
    let a = sampler.sample(1)?.height;
    let b = sampler.sample(2)?.height;
    println!("two samples compare as {:?}", compare(&a, &b)?);
    println!("their inf is a tiling: {}", board.tiling(&inf(&a, &b)?).is_ok());
    println!("their sup is a tiling: {}", board.tiling(&sup(&a, &b)?).is_ok());

    for text in [".#.\n###", "########\n########\n#####.##\n########\n########\n##.#####\n########\n########"] {
        let board = Board::parse(text)?;
        match board.min_tiling() {
            Ok(_) => println!("tileable"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(())
}
