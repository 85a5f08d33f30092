//! The cycle graph `G(π)`: black edges `(-p_i, +p_(i-1))` for `1 <= i <= n+1`
//! (with `p_0 = 0`, `p_(n+1) = n+1`), gray edges `(+i, -(i+1))`. Cycles are
//! listed by black-edge labels, starting at the largest label.
//!
//! The solver never reads this; it exists to cross-check the algebraic layer.

use std::fmt::Write as _;

use crate::algebra::{extend, sigma_pi_inv};
use crate::perm::{CyclePerm, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGraph {
    pub n: usize,
    /// `(-p_i, +p_(i-1))` for label `i = 1..=n+1`, stored at index `i-1`.
    pub black_edges: Vec<(i64, i64)>,
    /// `(+i, -(i+1))` for `i = 0..=n`.
    pub gray_edges: Vec<(i64, i64)>,
    /// Alternating cycles as black-edge label sequences, canonical rotation,
    /// sorted by first label descending.
    pub cycles: Vec<Vec<usize>>,
    ext: Vec<usize>,
}

impl CycleGraph {
    pub fn build(pi: &Permutation) -> Self {
        let n = pi.len();
        let mut ext = Vec::with_capacity(n + 2);
        ext.push(0);
        ext.extend_from_slice(pi.as_slice());
        ext.push(n + 1);
        let mut pos = vec![0; n + 2];
        for (i, &v) in ext.iter().enumerate() {
            pos[v] = i;
        }
        let black_edges = (1..=n + 1).map(|i| (-(ext[i] as i64), ext[i - 1] as i64)).collect();
        let gray_edges = (0..=n).map(|i| (i as i64, -(i as i64 + 1))).collect();

        // Black edge i leaves +p_(i-1); its gray edge enters -(p_(i-1)+1),
        // which is the tail of black edge pos[p_(i-1)+1].
        let mut seen = vec![false; n + 2];
        let mut cycles = Vec::new();
        for start in (1..=n + 1).rev() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = pos[ext[i - 1] + 1];
            }
            cycles.push(cyc);
        }
        Self { n, black_edges, gray_edges, cycles, ext }
    }

    /// Number of cycles with an odd number of black edges.
    pub fn c_odd(&self) -> usize {
        self.cycles.iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// Symbol of the vertex a gray edge enters after black edge `label`, with
    /// `n+1` read as 0.
    pub fn entry_symbol(&self, label: usize) -> usize {
        (self.ext[label - 1] + 1) % (self.n + 1)
    }

    /// The algebraic cycles obtained from the graph cycles.
    pub fn to_algebraic(&self) -> CyclePerm {
        let cycles: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|&l| self.entry_symbol(l)).collect())
            .collect();
        CyclePerm::from_cycles(self.n + 1, &cycles).expect("graph cycles partition the labels")
    }

    /// DOT rendering; black edges bold, gray edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n  rankdir=LR;\n");
        let name = |v: i64| if v < 0 { format!("\"−{}\"", -v) } else { format!("\"+{v}\"") };
        for &(a, b) in &self.black_edges {
            let _ = writeln!(out, "  {} -> {} [style=bold];", name(a), name(b));
        }
        for &(a, b) in &self.gray_edges {
            let _ = writeln!(out, "  {} -> {} [style=dashed, color=gray];", name(a), name(b));
        }
        out.push_str("}\n");
        out
    }
}

/// Unoriented iff the canonical label sequence is decreasing.
pub fn is_oriented(labels: &[usize]) -> bool {
    labels.windows(2).any(|w| w[0] < w[1])
}

fn pairs(c: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let l = c.len();
    (0..l).filter(move |_| l >= 2).map(move |i| (c[i], c[(i + 1) % l]))
}

fn triples(c: &[usize]) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    let l = c.len();
    (0..l).filter(move |_| l >= 3).map(move |i| (c[i], c[(i + 1) % l], c[(i + 2) % l]))
}

/// Pairs `(a,b)` of `c` and `(e,f)` of `d` with `a > e > b > f` or `e > a > f > b`.
pub fn intersects(c: &[usize], d: &[usize]) -> bool {
    if c == d {
        return false;
    }
    pairs(c).any(|(a, b)| pairs(d).any(|(e, f)| (a > e && e > b && b > f) || (e > a && a > f && f > b)))
}

/// Triples `(a,b,c)` and `(d,e,f)` with `a > d > b > e > c > f` or
/// `d > a > e > b > f > c`.
pub fn interleaves(c: &[usize], d: &[usize]) -> bool {
    if c == d {
        return false;
    }
    triples(c).any(|(a, b, cc)| {
        triples(d).any(|(dd, e, f)| {
            (a > dd && dd > b && b > e && e > cc && cc > f) || (dd > a && a > e && e > b && b > f && f > cc)
        })
    })
}

/// The graph's cycles, relabeled by gray-edge entry symbols, coincide with
/// the cycles of `σ̄π̄⁻¹`.
pub fn correspondence_check(pi: &Permutation) -> bool {
    let graph = CycleGraph::build(pi);
    let spi = sigma_pi_inv(&extend(pi));
    graph.to_algebraic() == spi.value && graph.c_odd() == crate::algebra::c_odd_count(&spi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let g = CycleGraph::build(&p("4 3 2 1 8 7 6 5"));
        // Listed elsewhere as (9,6,8,2,4,1,3,5,7), i.e. the same cycle walked
        // against the edge direction used for every other example.
        assert_eq!(g.cycles, vec![vec![9, 7, 5, 3, 1, 4, 2, 8, 6]]);
        assert_eq!(g.black_edges.len(), 9);
        assert_eq!(g.gray_edges.len(), 9);

        let g = CycleGraph::build(&Permutation::identity(5));
        assert_eq!(g.cycles.len(), 6);
        assert!(g.cycles.iter().all(|c| c.len() == 1));

        let g = CycleGraph::build(&p("6 5 3 2 1 8 7 4 9 14 13 12 11 10"));
        let mut got = g.cycles.clone();
        got.sort();
        let mut want = vec![vec![5, 3, 1], vec![8, 6, 4], vec![9, 2, 7], vec![14, 12, 10], vec![15, 13, 11]];
        want.sort();
        assert_eq!(got, want);

        let g = CycleGraph::build(&p("4 8 3 7 2 6 1 5 9 14 13 12 11 10"));
        for c in [vec![7, 4, 1], vec![8, 5, 2], vec![9, 6, 3], vec![14, 12, 10], vec![15, 13, 11]] {
            assert!(g.cycles.contains(&c), "{c:?}");
        }
    }

    #[test]
    fn orientation_examples() {
        assert!(is_oriented(&[9, 2, 7]));
        assert!(!is_oriented(&[5, 3, 1]));
        assert!(!is_oriented(&[4]));
    }

    #[test]
    fn relation_examples() {
        assert!(intersects(&[5, 3, 1], &[8, 6, 4]));
        assert!(interleaves(&[15, 13, 11], &[14, 12, 10]));
        assert!(!intersects(&[5, 3, 1], &[5, 3, 1]));
        assert!(!interleaves(&[5, 3, 1], &[5, 3, 1]));
    }

    #[test]
    fn correspondence_examples() {
        let pi = p("4 8 3 7 2 6 1 5 9 14 13 12 11 10");
        assert!(correspondence_check(&pi));
        let want = CyclePerm::parse("(0 11 13)(1 7 4)(2 8 5)(3 9 6)(10 12 14)", None).unwrap();
        assert_eq!(CycleGraph::build(&pi).to_algebraic(), want);
        assert!(correspondence_check(&Permutation::identity(6)));
    }

    #[test]
    fn dot_mentions_every_edge() {
        let dot = CycleGraph::build(&p("2 1")).to_dot();
        assert_eq!(dot.matches("->").count(), 6);
    }
}
