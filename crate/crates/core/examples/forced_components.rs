//! Forced components: strongly connected parts of the tiling graph that
//! every tiling shares.

use tiler::components::{is_strongly_critical, to_orientation};
use tiler::Board;

fn main() -> Result<(), tiler::Error> {
    let board = Board::parse("######\n#..###\n#..###\n######\n######")?;
    let g = board.graph();
    let cg = board.components()?;
    for c in cg.components() {
        println!(
            "component {} {:?}: {} vertices, representative {}, holes {:?}",
            c.id,
            c.kind,
            c.vertices.len(),
            g.vertex(c.representative),
            c.holes
        );
    }
    let contour = &g.holes()[0].clockwise_contour;
    println!(
        "hole contour strongly critical: {}",
        is_strongly_critical(g, board.weights(), contour).unwrap()
    );

    let lo = to_orientation(&cg, g, board.weights(), &board.min_height()?);
    let hi = to_orientation(&cg, g, board.weights(), &board.max_height()?);
    println!("orientation of min is acyclic: {}", lo.is_acyclic());
    println!(
        "every component reaches infinity in min: {}",
        lo.reaching(cg.infinity()).iter().all(|&r| r)
    );
    println!(
        "every component is reached from infinity in max: {}",
        hi.reachable_from(cg.infinity()).iter().all(|&r| r)
    );
    Ok(())
}
