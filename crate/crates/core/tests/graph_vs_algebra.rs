use sbt_core::algebra::{c_odd_count, extend, is_oriented_cycle, sigma_pi_inv};
use sbt_core::cycle_graph::{self, correspondence_check, CycleGraph};
use sbt_core::structures::{interleave_segments, intersect_segments, Segment};
use sbt_core::Permutation;

fn next_perm(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn for_all(n: usize, mut f: impl FnMut(Permutation)) {
    let mut v: Vec<usize> = (1..=n).collect();
    loop {
        f(Permutation::new(v.clone()).unwrap());
        if !next_perm(&mut v) {
            break;
        }
    }
}

#[test]
fn correspondence_exhaustive_up_to_7() {
    for n in 1..=7 {
        for_all(n, |pi| {
            assert!(correspondence_check(&pi), "{pi}");
            let g = CycleGraph::build(&pi);
            assert_eq!(g.c_odd(), c_odd_count(&sigma_pi_inv(&extend(&pi))));
        });
    }
}

#[test]
fn relations_agree_exhaustive_up_to_7() {
    for n in 1..=7 {
        for_all(n, |pi| {
            let g = CycleGraph::build(&pi);
            let pibar = extend(&pi);
            let alg: Vec<Vec<usize>> =
                g.cycles.iter().map(|c| c.iter().map(|&l| g.entry_symbol(l)).collect()).collect();
            for (i, c) in g.cycles.iter().enumerate() {
                if c.len() >= 3 {
                    assert_eq!(cycle_graph::is_oriented(c), is_oriented_cycle(&pibar, &alg[i]), "{pi} {c:?}");
                }
                for (j, d) in g.cycles.iter().enumerate().skip(i + 1) {
                    // Label comparisons are not rotation invariant, so the two
                    // readings only coincide on unoriented cycles.
                    if cycle_graph::is_oriented(c) || cycle_graph::is_oriented(d) || c.len() < 2 || d.len() < 2 {
                        continue;
                    }
                    let (s, t) = (Segment::new(alg[i].clone(), i), Segment::new(alg[j].clone(), j));
                    let graph_x = cycle_graph::intersects(c, d) || cycle_graph::intersects(d, c);
                    assert_eq!(graph_x, intersect_segments(&s, &t, &pibar), "{pi} {c:?} {d:?}");
                    let graph_i = cycle_graph::interleaves(c, d) || cycle_graph::interleaves(d, c);
                    assert_eq!(graph_i, interleave_segments(&s, &t, &pibar), "{pi} {c:?} {d:?}");
                }
            }
        });
    }
}
