//! Lexicographic enumeration of all tilings, checked against the oracle.

use tiler::io::render_tiling;
use tiler::oracle::brute_enumerate_capped;
use tiler::{Board, TilingSet};

fn main() -> Result<(), tiler::Error> {
    let board = Board::parse("####\n####")?;
    for (i, t) in board.enumerate()?.enumerate() {
        println!("#{i}");
        print!("{}", render_tiling(board.figure(), &t));
    }

    for text in ["###\n#.#\n###\n###\n#.#\n###", "######\n######\n####.#\n######\n#.####\n######"] {
        let board = Board::parse(text)?;
        let mine = TilingSet::from_tilings(board.enumerate()?);
        let oracle = brute_enumerate_capped(board.figure(), 40).expect("small figure");
        println!("{} tilings, oracle agrees: {}", mine.len(), mine == oracle);
    }
    Ok(())
}
