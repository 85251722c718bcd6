//! The iterative recoloring process: every vertex is simultaneously
//! recolored by the rank of its neighborhood portrait, the vector counting
//! its neighbors of each color.

use crate::analysis::colorings_isomorphic;
use crate::graph::Graph;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    SizeMismatch { graph: usize, coloring: usize },
    #[error("vertex {id} out of range for {vertex_count} vertices")]
    VertexOutOfRange { id: usize, vertex_count: usize },
    #[error("portraits have mixed lengths ({first} and {other})")]
    MixedPortraitLengths { first: usize, other: usize },
    #[error("color {color} is unused or outside the palette 0..{palette_size}")]
    NotCompact { color: usize, palette_size: usize },
    #[error("max_iters must be at least 1")]
    ZeroIterations,
}

/// A vertex coloring over the compact palette `0..palette_size`: every color
/// in the palette is used by at least one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl Coloring {
    /// Accepts `colors` only if they already form a compact palette.
    pub fn new(colors: Vec<usize>) -> Result<Self, RefineError> {
        let palette_size = colors.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; palette_size];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(color) = used.iter().position(|&u| !u) {
            return Err(RefineError::NotCompact {
                color,
                palette_size,
            });
        }
        Ok(Coloring {
            colors,
            palette_size,
        })
    }

    /// Relabels arbitrary color labels onto `0..K`, assigning new ids in
    /// increasing order of the original labels.
    pub fn compact(labels: &[usize]) -> Self {
        let mut distinct = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = labels
            .iter()
            .map(|l| distinct.binary_search(l).expect("label is present"))
            .collect();
        Coloring {
            colors,
            palette_size: distinct.len(),
        }
    }

    pub fn zero(vertex_count: usize) -> Self {
        Coloring {
            colors: vec![0; vertex_count],
            palette_size: usize::from(vertex_count > 0),
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// True when at most one color is in use.
    pub fn is_uniform(&self) -> bool {
        self.palette_size <= 1
    }

    fn check_against(&self, g: &Graph) -> Result<(), RefineError> {
        if self.len() != g.vertex_count() {
            return Err(RefineError::SizeMismatch {
                graph: g.vertex_count(),
                coloring: self.len(),
            });
        }
        Ok(())
    }
}

/// Counts of a vertex's neighbors per color; `counts[j]` is the number of
/// neighbors colored `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Portrait(Vec<usize>);

impl Portrait {
    pub fn new(counts: Vec<usize>) -> Self {
        Portrait(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// The all-zero starting coloring.
pub fn zero_coloring(g: &Graph) -> Coloring {
    Coloring::zero(g.vertex_count())
}

/// Starting portraits `(deg(v))`, the counts over the single color 0.
pub fn initial_portraits(g: &Graph) -> Vec<Portrait> {
    g.adjacency()
        .iter()
        .map(|list| Portrait(vec![list.len()]))
        .collect()
}

pub fn compute_portrait(g: &Graph, c: &Coloring, v: usize) -> Result<Portrait, RefineError> {
    c.check_against(g)?;
    let neighbors = g.neighbors(v).map_err(|_| RefineError::VertexOutOfRange {
        id: v,
        vertex_count: g.vertex_count(),
    })?;
    Ok(portrait_of(neighbors, c))
}

fn portrait_of(neighbors: &[usize], c: &Coloring) -> Portrait {
    let mut counts = vec![0; c.palette_size()];
    for &u in neighbors {
        counts[c.color(u)] += 1;
    }
    Portrait(counts)
}

/// Assigns each vertex the lexicographic rank of its portrait among the
/// distinct portraits present.
pub fn index_portraits(portraits: &[Portrait]) -> Result<Coloring, RefineError> {
    if let Some(first) = portraits.first() {
        if let Some(other) = portraits.iter().find(|p| p.len() != first.len()) {
            return Err(RefineError::MixedPortraitLengths {
                first: first.len(),
                other: other.len(),
            });
        }
    }
    Ok(rank_by(portraits, Ord::cmp))
}

/// Colors each item by the rank of its equivalence class under `cmp`.
fn rank_by<T>(items: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Coloring {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| cmp(&items[a], &items[b]));

    let mut colors = vec![0; items.len()];
    let mut rank = 0;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && cmp(&items[order[i - 1]], &items[v]) != Ordering::Equal {
            rank += 1;
        }
        colors[v] = rank;
    }
    Coloring {
        colors,
        palette_size: if items.is_empty() { 0 } else { rank + 1 },
    }
}

/// Nonzero entries of a portrait as `(color, count)` pairs, color ascending.
fn sparse_portrait(neighbors: &[usize], c: &Coloring) -> Vec<(usize, usize)> {
    let mut colors: Vec<usize> = neighbors.iter().map(|&u| c.color(u)).collect();
    colors.sort_unstable();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for color in colors {
        match runs.last_mut() {
            Some((last, count)) if *last == color => *count += 1,
            _ => runs.push((color, 1)),
        }
    }
    runs
}

/// Orders sparse portraits exactly as their dense count vectors would be
/// ordered lexicographically.
fn cmp_sparse(a: &[(usize, usize)], b: &[(usize, usize)]) -> Ordering {
    for (&(ca, na), &(cb, nb)) in a.iter().zip(b) {
        if ca != cb {
            // the side with the smaller color has a nonzero entry where the
            // other has zero
            return cb.cmp(&ca);
        }
        if na != nb {
            return na.cmp(&nb);
        }
    }
    a.len().cmp(&b.len())
}

/// One simultaneous recoloring of every vertex. Equivalent to
/// [`index_portraits`] over every [`compute_portrait`], but ranks sparse
/// portraits so the cost is linear in the edge count rather than in
/// `n * K`.
pub fn refine_step(g: &Graph, c: &Coloring) -> Result<Coloring, RefineError> {
    c.check_against(g)?;
    let portraits: Vec<Vec<(usize, usize)>> = g
        .adjacency()
        .iter()
        .map(|list| sparse_portrait(list, c))
        .collect();
    Ok(rank_by(&portraits, |a, b| cmp_sparse(a, b)))
}

/// Full history of a refinement run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    /// `colorings[t]` is the coloring after `t` steps; index 0 is the
    /// compacted initial coloring.
    pub colorings: Vec<Coloring>,
    pub palette_sizes: Vec<usize>,
    /// Smallest `t >= 1` with `colorings[t - 1]` isomorphic to
    /// `colorings[t]`, or `None` if the step cap was reached first.
    pub converged_at: Option<usize>,
}

impl RefinementTrace {
    pub fn initial(&self) -> &Coloring {
        &self.colorings[0]
    }

    pub fn final_coloring(&self) -> &Coloring {
        self.colorings.last().expect("trace is never empty")
    }

    pub fn steps(&self) -> usize {
        self.colorings.len() - 1
    }

    pub fn converged(&self) -> bool {
        self.converged_at.is_some()
    }

    /// First `t >= 1` at which the palette size stopped growing. From the
    /// zero start this coincides with `converged_at`; from other starts it
    /// can fire early.
    pub fn palette_plateau(&self) -> Option<usize> {
        self.palette_sizes
            .windows(2)
            .position(|w| w[0] == w[1])
            .map(|i| i + 1)
    }
}

/// Step cap used when none is given: one more than the detecting step.
pub fn default_max_iters(vertex_count: usize) -> usize {
    vertex_count + 2
}

/// Runs refinement from `initial` until two consecutive colorings are
/// isomorphic, or until `max_iters` steps have been taken.
pub fn refine_to_fixpoint(
    g: &Graph,
    initial: &Coloring,
    max_iters: usize,
) -> Result<RefinementTrace, RefineError> {
    initial.check_against(g)?;
    if max_iters == 0 {
        return Err(RefineError::ZeroIterations);
    }
    let start = Coloring::compact(initial.colors());
    if g.is_empty() {
        return Ok(RefinementTrace {
            palette_sizes: vec![0],
            colorings: vec![start],
            converged_at: Some(1),
        });
    }

    let first = if start.is_uniform() {
        index_portraits(&initial_portraits(g))?
    } else {
        refine_step(g, &start)?
    };
    let mut colorings = vec![start, first];
    let mut converged_at = None;
    loop {
        let t = colorings.len() - 1;
        if colorings_isomorphic(&colorings[t - 1], &colorings[t])
            .expect("trace colorings share a vertex set")
            .is_some()
        {
            converged_at = Some(t);
            break;
        }
        if t >= max_iters {
            break;
        }
        let next = refine_step(g, &colorings[t])?;
        colorings.push(next);
    }
    let palette_sizes = colorings.iter().map(Coloring::palette_size).collect();
    Ok(RefinementTrace {
        colorings,
        palette_sizes,
        converged_at,
    })
}

/// Refinement from the zero coloring with the default step cap.
pub fn refine(g: &Graph) -> RefinementTrace {
    refine_to_fixpoint(g, &zero_coloring(g), default_max_iters(g.vertex_count()))
        .expect("zero coloring always matches its graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(colors: &[usize]) -> Coloring {
        Coloring::new(colors.to_vec()).unwrap()
    }

    fn p(counts: &[usize]) -> Portrait {
        Portrait::new(counts.to_vec())
    }

    /// Neighbor-by-neighbor tally, independent of `portrait_of`.
    fn brute_portrait(g: &Graph, col: &Coloring, v: usize) -> Vec<usize> {
        (0..col.palette_size())
            .map(|j| {
                (0..g.vertex_count())
                    .filter(|&u| g.has_edge(v, u) && col.color(u) == j)
                    .count()
            })
            .collect()
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::new(vec![0, 2]).is_err());
        assert_eq!(c(&[1, 0, 1]).palette_size(), 2);
        assert_eq!(Coloring::compact(&[7, 7, 9]).colors(), &[0, 0, 1]);
        assert_eq!(Coloring::compact(&[]).palette_size(), 0);
    }

    #[test]
    fn zero_colorings() {
        let z = zero_coloring(&Graph::path(4));
        assert_eq!(z.colors(), &[0, 0, 0, 0]);
        assert_eq!(z.palette_size(), 1);
        assert_eq!(zero_coloring(&Graph::edgeless(0)).palette_size(), 0);
        assert_eq!(zero_coloring(&Graph::complete(5)).colors(), &[0; 5]);
    }

    #[test]
    fn degree_portraits() {
        assert_eq!(
            initial_portraits(&Graph::path(4)),
            vec![p(&[1]), p(&[2]), p(&[2]), p(&[1])]
        );
        assert!(initial_portraits(&Graph::cycle(6))
            .iter()
            .all(|q| q == &p(&[2])));
        assert_eq!(
            initial_portraits(&Graph::star(3)),
            vec![p(&[3]), p(&[1]), p(&[1]), p(&[1])]
        );
    }

    #[test]
    fn portrait_counts_match_brute_force() {
        let g = Graph::cycle(4);
        let col = c(&[0, 1, 1, 1]);
        let expected = brute_portrait(&g, &col, 0);
        assert_eq!(expected, vec![0, 2]);
        assert_eq!(compute_portrait(&g, &col, 0).unwrap(), p(&expected));

        let g = Graph::star(4);
        for v in 0..5 {
            assert_eq!(
                compute_portrait(&g, &zero_coloring(&g), v).unwrap(),
                p(&[g.degree(v).unwrap()])
            );
        }

        let g = Graph::new(4, &[(0, 1), (1, 2)]).unwrap();
        let col = c(&[0, 1, 2, 0]);
        assert_eq!(compute_portrait(&g, &col, 3).unwrap(), p(&[0, 0, 0]));
        assert!(compute_portrait(&g, &col, 4).is_err());
    }

    #[test]
    fn indexing_ranks_lexicographically() {
        let col = index_portraits(&[p(&[1]), p(&[2]), p(&[2]), p(&[1])]).unwrap();
        assert_eq!(col, c(&[0, 1, 1, 0]));
        let col = index_portraits(&[p(&[3]), p(&[3])]).unwrap();
        assert_eq!(col, c(&[0, 0]));
        let col = index_portraits(&[p(&[0, 2]), p(&[1, 1]), p(&[0, 2]), p(&[1, 1])]).unwrap();
        assert_eq!(col, c(&[0, 1, 0, 1]));
        assert!(matches!(
            index_portraits(&[p(&[1]), p(&[1, 0])]),
            Err(RefineError::MixedPortraitLengths { .. })
        ));
    }

    #[test]
    fn sparse_order_matches_dense_order() {
        type Case<'a> = (&'a [(usize, usize)], &'a [usize]);
        let cases: &[Case] = &[
            (&[], &[0, 0, 0]),
            (&[(0, 1)], &[1, 0, 0]),
            (&[(0, 1), (2, 1)], &[1, 0, 1]),
            (&[(1, 2)], &[0, 2, 0]),
            (&[(2, 3)], &[0, 0, 3]),
            (&[(0, 2)], &[2, 0, 0]),
            (&[(1, 1), (2, 1)], &[0, 1, 1]),
        ];
        for (sa, da) in cases {
            for (sb, db) in cases {
                assert_eq!(cmp_sparse(sa, sb), da.cmp(db), "{da:?} vs {db:?}");
            }
        }
    }

    #[test]
    fn single_steps() {
        let g = Graph::path(4);
        assert_eq!(
            refine_step(&g, &zero_coloring(&g)).unwrap(),
            c(&[0, 1, 1, 0])
        );
        let g = Graph::path(5);
        // ends (0,1); v1,v3 (1,1); center (0,2). Lexicographic rank puts
        // the center before v1,v3; the classes are those of (0,1,2,1,0).
        let step = refine_step(&g, &c(&[0, 1, 1, 1, 0])).unwrap();
        assert_eq!(step, c(&[0, 2, 1, 2, 0]));
        assert!(colorings_isomorphic(&step, &c(&[0, 1, 2, 1, 0]))
            .unwrap()
            .is_some());
        let g = Graph::cycle(4);
        assert_eq!(
            refine_step(&g, &c(&[0, 1, 1, 1])).unwrap(),
            c(&[0, 1, 0, 1])
        );
        assert!(refine_step(&g, &c(&[0, 1])).is_err());
    }

    #[test]
    fn complete_graph_converges_immediately() {
        let t = refine(&Graph::complete(4));
        assert_eq!(t.converged_at, Some(1));
        assert_eq!(t.palette_sizes, vec![1, 1]);
    }

    #[test]
    fn path_of_five_trace() {
        let t = refine(&Graph::path(5));
        assert_eq!(t.palette_sizes, vec![1, 2, 3, 3]);
        assert_eq!(t.converged_at, Some(3));
        assert_eq!(t.final_coloring(), &c(&[0, 2, 1, 2, 0]));
        assert_eq!(t.palette_plateau(), Some(3));
    }

    #[test]
    fn c4_from_nonzero_start_merges() {
        let g = Graph::cycle(4);
        let t = refine_to_fixpoint(&g, &c(&[0, 1, 1, 1]), 10).unwrap();
        assert_eq!(t.colorings[1], c(&[0, 1, 0, 1]));
        assert_eq!(t.colorings[2], c(&[0, 1, 0, 1]));
        assert_eq!(t.converged_at, Some(2));
        assert_eq!(t.palette_sizes, vec![2, 2, 2]);
        // the palette-size shortcut fires too early here
        assert_eq!(t.palette_plateau(), Some(1));
    }

    #[test]
    fn empty_graph_convention() {
        let t = refine(&Graph::edgeless(0));
        assert_eq!(t.colorings.len(), 1);
        assert_eq!(t.palette_sizes, vec![0]);
        assert_eq!(t.converged_at, Some(1));
    }

    #[test]
    fn nonzero_start_is_compacted() {
        let g = Graph::path(3);
        let raw = Coloring::compact(&[5, 9, 5]);
        let t = refine_to_fixpoint(&g, &raw, 5).unwrap();
        assert_eq!(t.initial(), &c(&[0, 1, 0]));
        assert_eq!(t.converged_at, Some(1));
    }

    #[test]
    fn cap_is_reported_not_raised() {
        let g = Graph::path(5);
        let t = refine_to_fixpoint(&g, &zero_coloring(&g), 1).unwrap();
        assert_eq!(t.converged_at, None);
        assert_eq!(t.steps(), 1);
        let t = refine_to_fixpoint(&g, &zero_coloring(&g), 2).unwrap();
        assert_eq!(t.converged_at, None);
        assert_eq!(t.steps(), 2);
        assert!(refine_to_fixpoint(&g, &zero_coloring(&g), 0).is_err());
        assert!(refine_to_fixpoint(&g, &Coloring::zero(4), 3).is_err());
    }

    #[test]
    fn expanded_triangle_stays_uniform() {
        let x = Graph::cycle(3).expand_edges();
        let t = refine(&x.graph);
        assert_eq!(t.converged_at, Some(1));
        assert_eq!(t.final_coloring().palette_size(), 1);
    }
}
