//! Brute-force reference refinement and the search for non-zero starts that
//! break the refinement order.
//!
//! [`naive_refine`] shares no code with [`crate::refine`]: it classifies
//! vertices by sorted lists of neighbor labels and names each class after
//! its smallest member, instead of counting over a palette and ranking.

use crate::analysis::{is_refinement, Partition};
use crate::graph::{random_graph, Graph};
use crate::refine::{default_max_iters, refine_to_fixpoint, Coloring};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Runs the recoloring process from `initial` by direct signature
/// comparison until the induced partition stops changing.
///
/// From non-zero starts the sequence of partitions may in principle cycle;
/// the loop gives up after `4n + 8` rounds and returns the last partition.
pub fn naive_refine(g: &Graph, initial: &Coloring) -> Partition {
    let n = g.vertex_count();
    let mut labels: Vec<usize> = initial.colors().to_vec();
    let mut current = classes_by_label(&labels);
    for _ in 0..(4 * n + 8) {
        let signatures: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut sig: Vec<usize> = (0..n)
                    .filter(|&u| g.has_edge(v, u))
                    .map(|u| labels[u])
                    .collect();
                sig.sort_unstable();
                sig
            })
            .collect();
        // label = smallest vertex with an identical signature
        let next: Vec<usize> = (0..n)
            .map(|v| (0..=v).find(|&u| signatures[u] == signatures[v]).unwrap())
            .collect();
        let next_classes = classes_by_label(&next);
        let stable = next_classes == current;
        labels = next;
        current = next_classes;
        if stable {
            break;
        }
    }
    current
}

/// Groups vertices by label by pairwise comparison. Classes come out in
/// order of their smallest member because vertices are scanned in order.
fn classes_by_label(labels: &[usize]) -> Partition {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (v, label) in labels.iter().enumerate() {
        match classes.iter_mut().find(|cls| labels[cls[0]] == *label) {
            Some(cls) => cls.push(v),
            None => classes.push(vec![v]),
        }
    }
    Partition { classes }
}

/// Every labeled simple graph on `n` vertices, in order of the bitmask over
/// the pairs `(u, v)`, `u < v`, taken lexicographically. Only sensible for
/// small `n`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many labeled graphs to enumerate");
    (0u32..(1u32 << pairs.len())).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).expect("enumerated pairs are valid")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two vertices with different colors at `t` share a color at `t + 1`.
    RefinementFailure,
    /// The palette strictly shrinks from `t` to `t + 1`.
    PaletteDecrease,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleWitness {
    pub graph: Graph,
    pub initial: Coloring,
    pub step: usize,
    pub merged_pair: (usize, usize),
    pub kind: ViolationKind,
}

impl CounterexampleWitness {
    /// Re-runs the engine and checks the recorded violation is reproduced.
    pub fn replays(&self) -> bool {
        find_violation(&self.graph, &self.initial, self.kind).as_ref() == Some(self)
    }
}

/// Runs the engine from `initial` and reports the first step that violates
/// the given property.
pub fn find_violation(
    g: &Graph,
    initial: &Coloring,
    kind: ViolationKind,
) -> Option<CounterexampleWitness> {
    let trace = refine_to_fixpoint(g, initial, default_max_iters(g.vertex_count())).ok()?;
    let step = trace.colorings.windows(2).position(|w| match kind {
        ViolationKind::RefinementFailure => !is_refinement(&w[0], &w[1]).expect("same size"),
        ViolationKind::PaletteDecrease => w[1].palette_size() < w[0].palette_size(),
    })?;
    let (before, after) = (&trace.colorings[step], &trace.colorings[step + 1]);
    let n = g.vertex_count();
    let merged_pair = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .find(|&(u, v)| after.color(u) == after.color(v) && before.color(u) != before.color(v))
        .expect("a violating step always merges some pair");
    Some(CounterexampleWitness {
        graph: g.clone(),
        initial: trace.colorings[0].clone(),
        step,
        merged_pair,
        kind,
    })
}

/// Which initial colorings the search draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartSpace {
    Zero,
    /// Random colorings using at least two colors.
    RandomNonZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_n: usize,
    pub seed: u64,
    pub attempts: usize,
    pub start: StartSpace,
    pub kind: ViolationKind,
}

impl SearchConfig {
    pub fn new(max_n: usize, seed: u64, attempts: usize) -> Self {
        SearchConfig {
            max_n,
            seed,
            attempts,
            start: StartSpace::RandomNonZero,
            kind: ViolationKind::RefinementFailure,
        }
    }
}

const EXHAUSTIVE_MAX_N: usize = 5;

/// Searches connected graphs for a start that violates `config.kind`.
///
/// Each round visits every connected labeled graph with
/// `2 <= n <= min(max_n, 5)` and one random `G(n, 1/2)` graph for each
/// larger `n <= max_n`, pairing each with a freshly drawn initial coloring.
/// Rounds repeat until `attempts` engine runs have been made. Disconnected
/// random graphs are skipped but still spend an attempt.
pub fn search(config: &SearchConfig) -> Option<CounterexampleWitness> {
    if config.max_n < 2 || config.attempts == 0 {
        return None;
    }
    let small: Vec<Graph> = (2..=config.max_n.min(EXHAUSTIVE_MAX_N))
        .flat_map(labeled_graphs)
        .filter(Graph::is_connected)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut remaining = config.attempts;
    loop {
        for g in &small {
            let initial = draw_start(g.vertex_count(), config.start, &mut rng);
            if let Some(w) = find_violation(g, &initial, config.kind) {
                return Some(w);
            }
            remaining -= 1;
            if remaining == 0 {
                return None;
            }
        }
        for n in (EXHAUSTIVE_MAX_N + 1)..=config.max_n {
            let g = random_graph(n, 0.5, rng.gen()).expect("probability is in range");
            if g.is_connected() {
                let initial = draw_start(n, config.start, &mut rng);
                if let Some(w) = find_violation(&g, &initial, config.kind) {
                    return Some(w);
                }
            }
            remaining -= 1;
            if remaining == 0 {
                return None;
            }
        }
        if config.start == StartSpace::Zero && config.max_n <= EXHAUSTIVE_MAX_N {
            // every candidate has been tried with its only start
            return None;
        }
    }
}

/// Looks for a refinement-order violation from random non-zero starts.
pub fn search_lemma2_counterexample(
    max_n: usize,
    seed: u64,
    attempts: usize,
) -> Option<CounterexampleWitness> {
    search(&SearchConfig::new(max_n, seed, attempts))
}

fn draw_start(n: usize, space: StartSpace, rng: &mut ChaCha8Rng) -> Coloring {
    match space {
        StartSpace::Zero => Coloring::zero(n),
        StartSpace::RandomNonZero => loop {
            let k = rng.gen_range(2..=n);
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let c = Coloring::compact(&labels);
            if c.palette_size() >= 2 {
                break c;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(colors: &[usize]) -> Coloring {
        Coloring::new(colors.to_vec()).unwrap()
    }

    #[test]
    fn naive_path_of_five() {
        let g = Graph::path(5);
        assert_eq!(
            naive_refine(&g, &Coloring::zero(5)).classes,
            vec![vec![0, 4], vec![1, 3], vec![2]]
        );
    }

    #[test]
    fn naive_regular_graphs_stay_whole() {
        for g in [Graph::cycle(7), Graph::complete(5), Graph::edgeless(4)] {
            let n = g.vertex_count();
            assert_eq!(
                naive_refine(&g, &Coloring::zero(n)).classes,
                vec![(0..n).collect::<Vec<_>>()]
            );
        }
    }

    #[test]
    fn naive_k2_from_two_colors() {
        let g = Graph::path(2);
        assert_eq!(
            naive_refine(&g, &c(&[0, 1])).classes,
            vec![vec![0], vec![1]]
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(labeled_graphs(0).count(), 1);
        assert_eq!(labeled_graphs(3).count(), 8);
        assert_eq!(labeled_graphs(5).count(), 1024);
        // connected labeled graphs on 4 vertices (OEIS A001187)
        assert_eq!(labeled_graphs(4).filter(Graph::is_connected).count(), 38);
    }

    #[test]
    fn c4_witness_replays() {
        let w = find_violation(
            &Graph::cycle(4),
            &c(&[0, 1, 1, 1]),
            ViolationKind::RefinementFailure,
        )
        .unwrap();
        assert_eq!(w.step, 0);
        assert_eq!(w.merged_pair, (0, 2));
        assert!(w.replays());
    }

    #[test]
    fn search_finds_a_witness() {
        let w = search_lemma2_counterexample(5, 0, 10_000).unwrap();
        assert!(w.replays());
        assert!(w.graph.is_connected());
        assert!(!w.initial.is_uniform());
    }

    #[test]
    fn search_reports_nothing_when_it_should() {
        let zero = SearchConfig {
            start: StartSpace::Zero,
            ..SearchConfig::new(2, 0, 100)
        };
        assert_eq!(search(&zero), None);
        assert_eq!(search_lemma2_counterexample(2, 0, 10), None);
        assert_eq!(search_lemma2_counterexample(5, 0, 0), None);
    }

    #[test]
    fn palette_decrease_is_searched_separately() {
        let star = find_violation(
            &Graph::star(3),
            &c(&[0, 1, 2, 3]),
            ViolationKind::PaletteDecrease,
        )
        .unwrap();
        assert_eq!(star.step, 0);
        assert_eq!(star.merged_pair, (1, 2));
        let cfg = SearchConfig {
            kind: ViolationKind::PaletteDecrease,
            ..SearchConfig::new(5, 3, 10_000)
        };
        let w = search(&cfg).unwrap();
        assert!(w.replays());
    }
}
