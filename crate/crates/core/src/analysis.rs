//! Predicates over colorings: isomorphism, refinement order, equitability,
//! and the color classes themselves.

use crate::graph::Graph;
use crate::refine::{compute_portrait, Coloring, Portrait};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("colorings cover {left} and {right} vertices")]
pub struct SizeMismatch {
    pub left: usize,
    pub right: usize,
}

fn same_size(a: &Coloring, b: &Coloring) -> Result<(), SizeMismatch> {
    if a.len() != b.len() {
        return Err(SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// A bijection between two palettes carrying one coloring onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorBijection {
    forward: Vec<usize>,
}

impl ColorBijection {
    pub fn identity(palette_size: usize) -> Self {
        ColorBijection {
            forward: (0..palette_size).collect(),
        }
    }

    pub fn apply(&self, color: usize) -> usize {
        self.forward[color]
    }

    /// `forward[c]` is the image of color `c`.
    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut back = vec![0; self.forward.len()];
        for (from, &to) in self.forward.iter().enumerate() {
            back[to] = from;
        }
        ColorBijection { forward: back }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &ColorBijection) -> Self {
        ColorBijection {
            forward: self.forward.iter().map(|&c| then.apply(c)).collect(),
        }
    }
}

/// Returns the palette bijection `phi` with `phi(first(v)) = second(v)` for
/// every vertex, if one exists.
pub fn colorings_isomorphic(
    first: &Coloring,
    second: &Coloring,
) -> Result<Option<ColorBijection>, SizeMismatch> {
    same_size(first, second)?;
    if first.palette_size() != second.palette_size() {
        return Ok(None);
    }
    let k = first.palette_size();
    let mut forward: Vec<Option<usize>> = vec![None; k];
    let mut taken = vec![false; k];
    for (&a, &b) in first.colors().iter().zip(second.colors()) {
        match forward[a] {
            Some(image) if image != b => return Ok(None),
            Some(_) => {}
            None => {
                if taken[b] {
                    return Ok(None);
                }
                taken[b] = true;
                forward[a] = Some(b);
            }
        }
    }
    // Compact palettes make the map total and onto.
    Ok(Some(ColorBijection {
        forward: forward
            .into_iter()
            .map(|c| c.expect("every palette color is used"))
            .collect(),
    }))
}

/// True when vertices sharing a color in `fine` always share one in
/// `coarse`.
pub fn is_refinement(coarse: &Coloring, fine: &Coloring) -> Result<bool, SizeMismatch> {
    same_size(coarse, fine)?;
    let mut image: Vec<Option<usize>> = vec![None; fine.palette_size()];
    for (&f, &c) in fine.colors().iter().zip(coarse.colors()) {
        match image[f] {
            Some(seen) if seen != c => return Ok(false),
            Some(_) => {}
            None => image[f] = Some(c),
        }
    }
    Ok(true)
}

/// First pair `(u, v)`, `u < v`, with equal colors but different
/// portraits. `u` is always the smallest member of its color class.
pub fn equitable_violation(g: &Graph, c: &Coloring) -> Option<(usize, usize)> {
    let portrait = |v| compute_portrait(g, c, v).expect("coloring matches graph");
    let mut representative: Vec<Option<(usize, Portrait)>> = vec![None; c.palette_size()];
    for v in 0..c.len() {
        let p = portrait(v);
        match &representative[c.color(v)] {
            Some((u, q)) if *q != p => return Some((*u, v)),
            Some(_) => {}
            None => representative[c.color(v)] = Some((v, p)),
        }
    }
    None
}

/// True when every color class is equitable: same-colored vertices have
/// identical neighbor counts in every class. `c` must cover `g`.
pub fn verify_equitable(g: &Graph, c: &Coloring) -> bool {
    equitable_violation(g, c).is_none()
}

/// Color classes as sorted vertex lists, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn partition_of(c: &Coloring) -> Partition {
    let mut slot: Vec<Option<usize>> = vec![None; c.palette_size()];
    let mut classes: Vec<Vec<usize>> = Vec::with_capacity(c.palette_size());
    for (v, &color) in c.colors().iter().enumerate() {
        let i = *slot[color].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[i].push(v);
    }
    Partition { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::refine;

    fn c(colors: &[usize]) -> Coloring {
        Coloring::new(colors.to_vec()).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        let w = colorings_isomorphic(&c(&[0, 1, 0]), &c(&[1, 0, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(w.forward(), &[1, 0]);
        assert_eq!(
            colorings_isomorphic(&c(&[0, 0, 1]), &c(&[0, 1, 1])).unwrap(),
            None
        );
        let x = c(&[2, 0, 1, 0]);
        assert_eq!(
            colorings_isomorphic(&x, &x).unwrap(),
            Some(ColorBijection::identity(3))
        );
        assert!(colorings_isomorphic(&c(&[0]), &c(&[0, 0])).is_err());
    }

    #[test]
    fn injectivity_is_checked() {
        // (0,1) -> (0,0) is single-valued but not injective
        assert_eq!(
            colorings_isomorphic(&c(&[0, 1]), &c(&[0, 0])).unwrap(),
            None
        );
    }

    #[test]
    fn refinement_examples() {
        assert!(is_refinement(&c(&[0, 0, 0, 0]), &c(&[0, 1, 1, 0])).unwrap());
        assert!(!is_refinement(&c(&[0, 1, 1, 1]), &c(&[0, 1, 0, 1])).unwrap());
        let x = c(&[0, 1, 2, 1]);
        assert!(is_refinement(&x, &x).unwrap());
        assert!(is_refinement(&c(&[0]), &c(&[0, 1])).is_err());
    }

    #[test]
    fn equitable_examples() {
        let g = Graph::cycle(6);
        assert!(verify_equitable(&g, &Coloring::zero(6)));
        let g = Graph::path(3);
        assert!(!verify_equitable(&g, &Coloring::zero(3)));
        assert_eq!(equitable_violation(&g, &Coloring::zero(3)), Some((0, 1)));
        let g = Graph::path(5);
        assert!(verify_equitable(&g, &c(&[0, 1, 2, 1, 0])));
        assert!(verify_equitable(&g, refine(&g).final_coloring()));
        assert!(verify_equitable(&Graph::edgeless(0), &Coloring::zero(0)));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            partition_of(&c(&[0, 1, 1, 0])).classes,
            vec![vec![0, 3], vec![1, 2]]
        );
        assert_eq!(partition_of(&c(&[0, 0, 0])).classes, vec![vec![0, 1, 2]]);
        assert_eq!(
            partition_of(&c(&[2, 0, 1])).classes,
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn witnesses_invert_and_compose() {
        let a = c(&[0, 1, 2, 0]);
        let b = c(&[2, 0, 1, 2]);
        let d = c(&[1, 2, 0, 1]);
        let ab = colorings_isomorphic(&a, &b).unwrap().unwrap();
        let bd = colorings_isomorphic(&b, &d).unwrap().unwrap();
        assert_eq!(colorings_isomorphic(&b, &a).unwrap().unwrap(), ab.inverse());
        assert_eq!(
            colorings_isomorphic(&a, &d).unwrap().unwrap(),
            ab.compose(&bd)
        );
    }
}
