//! Exact uniform sampling by coupling from the past.

use tiler::io::render_tiling;
use tiler::Board;

fn main() -> Result<(), tiler::Error> {
    let board = Board::parse("####\n####")?;
    let all: Vec<_> = board.enumerate()?.collect();
    let sampler = board.sampler()?;
    let mut hits = vec![0u32; all.len()];
    let n = 5000;
    for seed in 0..n {
        let t = sampler.sample(seed)?.tiling;
        hits[all.iter().position(|x| *x == t).expect("sample is a tiling")] += 1;
    }
    for (t, h) in all.iter().zip(&hits) {
        println!("{h:5} ({:.3})", *h as f64 / n as f64);
        print!("{}", render_tiling(board.figure(), t));
    }

    let big = Board::parse(&"##########\n".repeat(10))?;
    let s = big.sampler()?.sample(2024)?;
    println!("10x10 sample, chains met after a window of {}:", s.window);
    print!("{}", render_tiling(big.figure(), &s.tiling));
    Ok(())
}
