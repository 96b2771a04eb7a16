//! Acceptance criteria 1 to 9 over the corpus. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, CorpusFigure};
use tiler::equilibrium::SpanningTree;
use tiler::flips::replay;
use tiler::lattice::{max_height, min_height};
use tiler::oracle::{FlipGraph, TilingSet};
use tiler::tiling::{check_height_function, height_difference};
use tiler::{
    flip_distance, flip_path, inf, local_flip_connected, sup, verify_equilibrium, Board,
    HeightFunction, Tiling,
};

/// Triples checked per figure for distributivity.
const TRIPLE_CAP: usize = 10_000;
/// Pairs per figure whose flip path is replayed; all pairs when fewer.
const PATH_PAIR_CAP: usize = 20_000;
/// 2x2 square: samples and accepted frequency band.
const SQUARE_SAMPLES: u64 = 10_000;
const SQUARE_BAND: (f64, f64) = (0.48, 0.52);
/// 2x4 rectangle: samples and chi-square critical value (4 d.o.f., alpha 0.001).
const RECT_SAMPLES: u64 = 5_000;
const CHI2_CRITICAL: f64 = 18.47;

type Check = Result<String, String>;
type Criterion = (&'static str, fn(&[Loaded]) -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Loaded {
    fig: &'static CorpusFigure,
    board: Board,
    set: TilingSet,
    heights: Vec<HeightFunction>,
}

fn load() -> Vec<Loaded> {
    corpus()
        .map(|fig| {
            let board = fig.board();
            let set = fig.oracle(&board);
            let heights = set.iter().map(|t| board.height(t).unwrap()).collect();
            Loaded {
                fig,
                board,
                set,
                heights,
            }
        })
        .collect()
}

fn enumeration_equals_oracle(corpus: &[Loaded]) -> Check {
    for l in corpus {
        let mine: Vec<Tiling> = match l.board.enumerate() {
            Ok(e) => e.collect(),
            Err(e) if e.is_untileable() => Vec::new(),
            Err(e) => return Err(format!("{}: {e}", l.fig.name)),
        };
        let distinct = mine.len();
        let set = TilingSet::from_tilings(mine);
        ensure(set.len() == distinct, || format!("{}: duplicates", l.fig.name))?;
        ensure(set == l.set, || format!("{}: set differs from oracle", l.fig.name))?;
        ensure(set.len() == l.fig.tilings, || {
            format!("{}: {} tilings, expected {}", l.fig.name, set.len(), l.fig.tilings)
        })?;
    }
    let counts: Vec<String> = corpus
        .iter()
        .map(|l| format!("{}={}", l.fig.name, l.set.len()))
        .collect();
    Ok(counts.join(" "))
}

fn lattice_laws(corpus: &[Loaded]) -> Check {
    let mut triples = 0usize;
    let mut pairs = 0usize;
    for l in corpus.iter().filter(|l| !l.heights.is_empty()) {
        let hs = &l.heights;
        let known: BTreeSet<&[i64]> = hs.iter().map(|h| h.values()).collect();
        let name = l.fig.name;
        for x in hs {
            for y in hs {
                let (m, j) = (inf(x, y).unwrap(), sup(x, y).unwrap());
                ensure(known.contains(m.values()) && known.contains(j.values()), || {
                    format!("{name}: inf/sup not closed")
                })?;
                ensure(sup(x, &m).unwrap() == *x && inf(x, &j).unwrap() == *x, || {
                    format!("{name}: absorption fails")
                })?;
                pairs += 1;
            }
        }
        let n = hs.len();
        let mut picks: Vec<(usize, usize, usize)> = Vec::new();
        if n * n * n <= TRIPLE_CAP {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        picks.push((a, b, c));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..TRIPLE_CAP {
                picks.push((rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)));
            }
        }
        for (a, b, c) in picks {
            let (x, y, z) = (&hs[a], &hs[b], &hs[c]);
            let lhs = inf(x, &sup(y, z).unwrap()).unwrap();
            let rhs = sup(&inf(x, y).unwrap(), &inf(x, z).unwrap()).unwrap();
            let lhs2 = sup(x, &inf(y, z).unwrap()).unwrap();
            let rhs2 = inf(&sup(x, y).unwrap(), &sup(x, z).unwrap()).unwrap();
            ensure(lhs == rhs && lhs2 == rhs2, || format!("{name}: distributivity fails"))?;
            triples += 1;
        }
        let lo = hs.iter().skip(1).fold(hs[0].clone(), |m, h| inf(&m, h).unwrap());
        let hi = hs.iter().skip(1).fold(hs[0].clone(), |m, h| sup(&m, h).unwrap());
        ensure(l.board.min_height().unwrap() == lo, || format!("{name}: min_tiling is not the pointwise min"))?;
        ensure(l.board.max_height().unwrap() == hi, || format!("{name}: max_tiling is not the pointwise max"))?;
    }
    Ok(format!("{pairs} pairs, {triples} triples"))
}

fn height_invariants(corpus: &[Loaded]) -> Check {
    let mut tilings = 0;
    for l in corpus.iter().filter(|l| !l.heights.is_empty()) {
        let g = l.board.graph();
        let w = l.board.weights();
        let name = l.fig.name;
        let reference = &l.heights[0];
        for (t, h) in l.set.iter().zip(&l.heights) {
            let gt = height_difference(g, w, t);
            for &c in l.board.figure().cells() {
                ensure(g.cycle_sum(&g.face_cycle(c), &gt) == Ok(0), || {
                    format!("{name}: g_T does not close around {c}")
                })?;
            }
            for hole in g.holes() {
                ensure(g.cycle_sum(&hole.clockwise_contour, &gt) == Ok(0), || {
                    format!("{name}: g_T does not close around hole {}", hole.id)
                })?;
            }
            ensure(check_height_function(g, w, h).is_ok(), || format!("{name}: invalid height"))?;
            ensure(l.board.tiling(h).as_ref() == Ok(t), || format!("{name}: round trip fails"))?;
            for v in 0..g.vertex_count() {
                ensure((h.get(v) - reference.get(v)).rem_euclid(4) == 0, || {
                    format!("{name}: heights not congruent mod 4 at {}", g.vertex(v))
                })?;
                if g.is_outer_boundary_vertex(v) {
                    ensure(h.get(v) == reference.get(v), || {
                        format!("{name}: boundary height varies at {}", g.vertex(v))
                    })?;
                }
            }
            tilings += 1;
        }
    }
    Ok(format!("{tilings} tilings"))
}

fn flip_distance_equals_bfs(corpus: &[Loaded]) -> Check {
    let mut checked = 0usize;
    let mut replayed = 0usize;
    for l in corpus.iter().filter(|l| !l.heights.is_empty()) {
        let g = l.board.graph();
        let w = l.board.weights();
        let name = l.fig.name;
        let cg = l.board.components().map_err(|e| format!("{name}: {e}"))?;
        let fg = FlipGraph::build(g, w, l.set.clone()).map_err(|e| format!("{name}: {e}"))?;
        let hs = fg.heights();
        let n = hs.len();
        let stride = (n * n).div_ceil(PATH_PAIR_CAP).max(1);
        for i in 0..n {
            let bfs = fg.distances_from(i);
            for j in 0..n {
                let d = flip_distance(&hs[i], &hs[j], &cg).unwrap();
                ensure(bfs[j] == Some(d as usize), || {
                    format!("{name}: distance {d} but BFS {:?} for pair ({i},{j})", bfs[j])
                })?;
                checked += 1;
                if (i * n + j) % stride == 0 {
                    let path = flip_path(&cg, g, w, &hs[i], &hs[j]).map_err(|e| format!("{name}: {e}"))?;
                    ensure(path.len() as i64 == d, || format!("{name}: path length differs"))?;
                    let end = replay(&cg, g, w, &hs[i], &path).map_err(|e| format!("{name}: {e}"))?;
                    ensure(end == hs[j], || format!("{name}: path replays elsewhere"))?;
                    replayed += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs, {replayed} paths replayed"))
}

fn hole_flip(corpus: &[Loaded]) -> Check {
    let l = corpus
        .iter()
        .find(|l| l.fig.name == "4x4-minus-2x2")
        .ok_or("ring missing from corpus")?;
    let g = l.board.graph();
    ensure(l.heights.len() == 2, || "ring does not have 2 tilings".into())?;
    let (a, b) = (&l.heights[0], &l.heights[1]);
    ensure(local_flip_connected(g, a, b) == Ok(false), || "ring tilings are local-flip connected".into())?;
    let contour = &g.holes()[0].clockwise_contour;
    ensure(contour.vertices.iter().any(|&v| a.get(v) != b.get(v)), || {
        "hole contour heights agree".into()
    })?;
    let cg = l.board.components().map_err(|e| e.to_string())?;
    let d = flip_distance(a, b, &cg).unwrap();
    ensure(d == 1, || format!("generalised flip distance {d}"))?;
    let fg = FlipGraph::build(g, l.board.weights(), l.set.clone()).map_err(|e| e.to_string())?;
    ensure(fg.distance(0, 1) == Ok(1), || "oracle BFS distance is not 1".into())?;
    Ok("not local-flip connected, distance 1".into())
}

fn rigidity(corpus: &[Loaded]) -> Check {
    for l in corpus.iter().filter(|l| !l.heights.is_empty()) {
        let g = l.board.graph();
        let name = l.fig.name;
        let cg = l.board.components().map_err(|e| format!("{name}: {e}"))?;
        let hs = &l.heights;
        for v in 0..g.vertex_count() {
            let constant = hs.iter().all(|h| h.get(v) == hs[0].get(v));
            ensure(constant == (cg.component_of(v) == cg.infinity()), || {
                format!("{name}: rigidity mismatch at {}", g.vertex(v))
            })?;
        }
        let lo = l.board.min_height().unwrap();
        let hi = l.board.max_height().unwrap();
        for u in cg.free_components() {
            ensure(lo.get(u.representative) != hi.get(u.representative), || {
                format!("{name}: component {} does not move", u.id)
            })?;
        }
    }
    Ok("infinity component = rigid vertices on every figure".into())
}

fn worklist_bound(corpus: &[Loaded]) -> Check {
    let mut worst = (0u64, 0u64);
    for l in corpus {
        let g = l.board.graph();
        let w = l.board.weights();
        let n = l.board.figure().len() as u64;
        let name = l.fig.name;
        match (min_height(g, w), max_height(g, w)) {
            (Ok(lo), Ok(hi)) => {
                ensure(!l.set.is_empty(), || format!("{name}: tileable but oracle is empty"))?;
                for p in [lo.passes, hi.passes] {
                    ensure(p <= n * n, || format!("{name}: {p} passes > n^2 = {}", n * n))?;
                    if p * worst.1 >= worst.0 * n * n {
                        worst = (p, n * n);
                    }
                }
            }
            (Err(_), Err(_)) => {
                ensure(l.set.is_empty(), || format!("{name}: untileable but oracle has tilings"))?;
            }
            _ => return Err(format!("{name}: min and max disagree on tileability")),
        }
    }
    Ok(format!("worst passes/n^2 = {}/{}", worst.0, worst.1))
}

fn cftp(corpus: &[Loaded]) -> Check {
    let find = |name: &str| corpus.iter().find(|l| l.fig.name == name).unwrap();
    let mut checks = 0u64;

    let sq = find("2x2");
    let sampler = sq.board.sampler().map_err(|e| e.to_string())?;
    let mut counts = vec![0u64; sq.set.len()];
    for seed in 0..SQUARE_SAMPLES {
        let s = sampler.sample(seed).map_err(|e| e.to_string())?;
        checks += s.sandwich_checks;
        counts[sq.set.index_of(&s.tiling).ok_or("sample outside support")?] += 1;
    }
    let freqs: Vec<f64> = counts.iter().map(|&c| c as f64 / SQUARE_SAMPLES as f64).collect();
    ensure(freqs.iter().all(|f| (SQUARE_BAND.0..=SQUARE_BAND.1).contains(f)), || {
        format!("2x2 frequencies {freqs:?}")
    })?;

    let rect = find("2x4");
    let sampler = rect.board.sampler().map_err(|e| e.to_string())?;
    let mut counts = vec![0u64; rect.set.len()];
    for seed in 0..RECT_SAMPLES {
        let s = sampler.sample(seed).map_err(|e| e.to_string())?;
        checks += s.sandwich_checks;
        counts[rect.set.index_of(&s.tiling).ok_or("sample outside support")?] += 1;
    }
    let expected = RECT_SAMPLES as f64 / counts.len() as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    ensure(counts.len() == 5 && chi2 < CHI2_CRITICAL, || {
        format!("2x4 chi-square {chi2:.3} >= {CHI2_CRITICAL}")
    })?;

    for l in corpus.iter().filter(|l| !l.heights.is_empty()) {
        let sampler = l.board.sampler().map_err(|e| e.to_string())?;
        for seed in [0u64, 7, u64::MAX] {
            let a = sampler.sample(seed).map_err(|e| e.to_string())?;
            let b = sampler.sample(seed).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{}: seed {seed} not reproducible", l.fig.name))?;
            ensure(l.set.contains(&a.tiling), || format!("{}: sample outside support", l.fig.name))?;
        }
    }
    Ok(format!(
        "2x2 freq {:.4}/{:.4}, 2x4 chi2 {chi2:.3} < {CHI2_CRITICAL}, {checks} sandwich checks",
        freqs[0], freqs[1]
    ))
}

fn equilibrium_validity(corpus: &[Loaded]) -> Check {
    let mut worst = 0;
    for l in corpus {
        let g = l.board.graph();
        let eq = l.board.equilibrium();
        let n = l.board.figure().len() as i64;
        let name = l.fig.name;
        ensure(verify_equilibrium(g, &eq.eq), || format!("{name}: not an equilibrium function"))?;
        ensure(eq.max_abs() <= 4 * n, || format!("{name}: max |eq| = {} > 4n", eq.max_abs()))?;
        ensure(SpanningTree::build(g, &eq.eq).spans(g), || format!("{name}: tree does not span"))?;
        worst = worst.max(eq.max_abs());
    }
    Ok(format!("max |eq| over corpus = {worst}"))
}

fn main() -> ExitCode {
    let corpus = load();
    let criteria: [Criterion; 9] = [
        ("enumeration equals oracle", enumeration_equals_oracle),
        ("lattice laws", lattice_laws),
        ("height invariants", height_invariants),
        ("flip distance equals BFS", flip_distance_equals_bfs),
        ("hole-flip phenomenon", hole_flip),
        ("forced-component rigidity", rigidity),
        ("worklist bound and untileability", worklist_bound),
        ("CFTP exactness", cftp),
        ("equilibrium validity", equilibrium_validity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check(&corpus);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
