#![allow(dead_code)]

use tiler::oracle::{brute_enumerate_capped, TilingSet};
use tiler::Board;

pub struct CorpusFigure {
    pub name: &'static str,
    pub text: &'static str,
    /// Expected number of tilings, as counted by the oracle.
    pub tilings: usize,
}

impl CorpusFigure {
    pub fn board(&self) -> Board {
        Board::parse(self.text).expect("corpus figures parse")
    }

    pub fn oracle(&self, board: &Board) -> TilingSet {
        brute_enumerate_capped(board.figure(), 64).expect("corpus figures fit the oracle")
    }
}

/// Rows are listed top first.
pub const CORPUS: &[CorpusFigure] = &[
    CorpusFigure { name: "1x2", text: "##", tilings: 1 },
    CorpusFigure { name: "2x2", text: "##\n##", tilings: 2 },
    CorpusFigure { name: "2x3", text: "###\n###", tilings: 3 },
    CorpusFigure { name: "2x4", text: "####\n####", tilings: 5 },
    CorpusFigure { name: "3x3-ring", text: "###\n#.#\n###", tilings: 2 },
    CorpusFigure { name: "3x4", text: "####\n####\n####", tilings: 11 },
    CorpusFigure { name: "4x4", text: "####\n####\n####\n####", tilings: 36 },
    CorpusFigure { name: "4x4-minus-2x2", text: "####\n#..#\n#..#\n####", tilings: 2 },
    CorpusFigure {
        name: "8x8-two-holes",
        text: "########\n########\n#####.##\n########\n########\n##.#####\n########\n########",
        tilings: 0,
    },
    CorpusFigure { name: "T-tetromino", text: ".#.\n###", tilings: 0 },
    CorpusFigure { name: "L-tromino", text: "#.\n##", tilings: 0 },
    CorpusFigure {
        name: "stacked-holes",
        text: "###\n#.#\n###\n###\n#.#\n###",
        tilings: 6,
    },
    CorpusFigure {
        name: "6x6-two-holes",
        text: "######\n######\n####.#\n######\n#.####\n######",
        tilings: 500,
    },
];

pub fn corpus() -> impl Iterator<Item = &'static CorpusFigure> {
    CORPUS.iter()
}
