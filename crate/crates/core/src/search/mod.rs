//! Sequence finders: 2-moves, the (2,2) look-ahead, the fixed sequences for
//! oriented cycles, 3/2-sequences, and bounded searches for a/b-sequences
//! restricted to a set of symbols.

mod audit;

pub use audit::{audit_cases, check_union, realizable_union, AuditRecord, AuditReport, Verdict};

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::algebra::{is_oriented_cycle, Cycles, State, ThreeCycle};
use crate::error::{Error, Result};
use crate::perm::TranspositionDesc;
use crate::structures::{interleave_segments, intersect_segments, Configuration, Segment};
#[cfg(test)]
use crate::structures::is_bad_oriented_5cycle;

/// Default node budget for bounded searches.
pub const NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveSequence {
    pub steps: Vec<ThreeCycle>,
    pub rho_steps: Vec<TranspositionDesc>,
    pub x: usize,
    /// Number of 2-moves, recomputed by replay.
    pub y: usize,
}

impl MoveSequence {
    /// Replays `steps` from `start`, recomputing the one-line form of each
    /// step and the 2-move count.
    pub fn replay(start: &State, steps: &[ThreeCycle]) -> Result<Self> {
        let mut st = start.clone();
        let mut rho_steps = Vec::with_capacity(steps.len());
        let mut y = 0;
        for &t in steps {
            if !st.is_applicable(t) {
                return Err(Error::NotApplicable(t));
            }
            if st.cycles().delta(t) == 2 {
                y += 1;
            }
            rho_steps.push(st.pibar().to_rho(t)?);
            st.apply(t)?;
        }
        Ok(Self { steps: steps.to_vec(), rho_steps, x: steps.len(), y })
    }

    pub fn profile(&self) -> (usize, usize) {
        (self.x, self.y)
    }

    /// `x ≤ a` and `x/y ≤ a/b`.
    pub fn is_ratio(&self, a: usize, b: usize) -> bool {
        self.y > 0 && self.x <= a && b * self.x <= a * self.y
    }

    pub fn is_eleven_eighths(&self) -> bool {
        self.is_ratio(11, 8)
    }

    pub fn final_state(&self, start: &State) -> Result<State> {
        let mut st = start.clone();
        for &t in &self.steps {
            st.apply(t)?;
        }
        Ok(st)
    }

    pub fn truncated(&self, start: &State, len: usize) -> Result<Self> {
        Self::replay(start, &self.steps[..len.min(self.x)])
    }
}

fn internal(what: &str, st: &State) -> Error {
    Error::Internal(format!("{what}; pibar={} spi={}", st.pibar(), st.sigma_pi_inv().value))
}

/// Calls `f` on every 2-move coming from an oriented triplet of cycle `id`,
/// triplets in lexicographic index order. Stops when `f` returns true.
fn oriented_two_moves(st: &State, cyc: &Cycles, id: usize, f: &mut dyn FnMut(ThreeCycle) -> bool) -> bool {
    let g = &cyc.list[id];
    let l = g.len();
    if l < 3 || !is_oriented_cycle(st.pibar(), g) {
        return false;
    }
    // A break of γ into pieces of lengths j-i, k-j, l-(k-i) gains two odd
    // cycles when all three are odd (l odd) or exactly two are (l even).
    let want = (l & 1) + 2;
    let p = st.pibar();
    for i in 0..l {
        for j in i + 1..l {
            for k in j + 1..l {
                let odd = ((j - i) & 1) + ((k - j) & 1) + ((l - k + i) & 1);
                if odd == want && p.in_order(g[i], g[j], g[k]) && f(ThreeCycle::raw(g[i], g[j], g[k])) {
                    return true;
                }
            }
        }
    }
    false
}

/// 2-moves taking two symbols from even-length cycle `gid` and one from
/// even-length cycle `did`.
fn even_pair_two_moves(
    st: &State,
    cyc: &Cycles,
    gid: usize,
    did: usize,
    f: &mut dyn FnMut(ThreeCycle) -> bool,
) -> bool {
    let (g, d) = (&cyc.list[gid], &cyc.list[did]);
    let p = st.pibar();
    let lg = g.len();
    // Adjacent pairs first: one of them always works.
    for gap in 1..lg {
        for i in 0..lg {
            let j = (i + gap) % lg;
            if gap * 2 > lg || (gap * 2 == lg && j < i) {
                continue;
            }
            for &z in d {
                let t = p.orient(g[i], g[j], z);
                if cyc.delta(t) == 2 && f(t) {
                    return true;
                }
            }
        }
    }
    false
}

fn even_cycles(cyc: &Cycles) -> Vec<usize> {
    (0..cyc.list.len()).filter(|&i| cyc.list[i].len() % 2 == 0).collect()
}

/// Every 2-move of the state: oriented triplets of each cycle in canonical
/// order, then triples drawn from pairs of even-length cycles. Stops early
/// when `f` returns true; returns whether it stopped.
pub fn for_each_2move(st: &State, cyc: &Cycles, f: &mut dyn FnMut(ThreeCycle) -> bool) -> bool {
    for id in 0..cyc.list.len() {
        if oriented_two_moves(st, cyc, id, f) {
            return true;
        }
    }
    let evens = even_cycles(cyc);
    for &g in &evens {
        for &d in &evens {
            if g != d && even_pair_two_moves(st, cyc, g, d, f) {
                return true;
            }
        }
    }
    false
}

/// First 2-move among the oriented cycles accepted by `allow`.
pub fn find_oriented_2move(st: &State, cyc: &Cycles, allow: &dyn Fn(usize) -> bool) -> Option<ThreeCycle> {
    let mut found = None;
    for id in 0..cyc.list.len() {
        if allow(id)
            && oriented_two_moves(st, cyc, id, &mut |t| {
                found = Some(t);
                true
            })
        {
            break;
        }
    }
    found
}

/// A 2-move from the first two even-length cycles, if there are two.
pub fn find_even_pair_2move(st: &State, cyc: &Cycles) -> Option<ThreeCycle> {
    let evens = even_cycles(cyc);
    if evens.len() < 2 {
        return None;
    }
    let mut found = None;
    even_pair_two_moves(st, cyc, evens[0], evens[1], &mut |t| {
        found = Some(t);
        true
    });
    found
}

pub fn find_2move(st: &State) -> Option<ThreeCycle> {
    let cyc = st.cycles();
    find_oriented_2move(st, &cyc, &|_| true).or_else(|| find_even_pair_2move(st, &cyc))
}

/// Two consecutive 2-moves, trying every first 2-move.
pub fn find_22_sequence(st: &State) -> Option<MoveSequence> {
    let cyc = st.cycles();
    let mut found = None;
    for_each_2move(st, &cyc, &mut |t| {
        let Ok(next) = st.applied(t) else { return false };
        match find_2move(&next) {
            Some(t2) => {
                found = Some([t, t2]);
                true
            }
            None => false,
        }
    });
    found.map(|s| MoveSequence::replay(st, &s).expect("steps were applied during the search"))
}

/// Sequence for an oriented 5-cycle `γ`: a listed 2-move, or the
/// (3,2)-sequence when `γ` has the form without one.
pub fn seq_for_bad_oriented_5cycle(st: &State, cycle: &[usize]) -> Result<MoveSequence> {
    if cycle.len() != 5 {
        return Err(internal("not a 5-cycle", st));
    }
    let p = st.pibar();
    let m = p.len();
    let mut three_two = None;
    for r in 0..5 {
        let g = |i: usize| cycle[(r + i) % 5];
        let (a, d, b, e, c) = (g(0), g(1), g(2), g(3), g(4));
        if !p.in_order(a, b, c) {
            continue;
        }
        let mut order = [a, b, c, d, e];
        order.sort_by_key(|&x| (p.position(x) + m - p.position(a)) % m);
        let t = |x, y, z| ThreeCycle::raw(x, y, z);
        let steps = if order == [a, b, c, d, e] {
            three_two.get_or_insert(vec![t(a, b, c), t(b, c, d), t(c, d, e)]);
            continue;
        } else if order == [a, b, c, e, d] {
            vec![t(b, e, d)]
        } else if order == [a, b, e, c, d] {
            vec![t(a, e, c)]
        } else if order == [a, e, b, d, c] || order == [a, b, e, d, c] {
            vec![t(a, d, c)]
        } else if order == [a, d, b, e, c] {
            vec![t(a, d, b)]
        } else {
            continue;
        };
        if let Ok(seq) = MoveSequence::replay(st, &steps) {
            if seq.profile() == (1, 1) {
                return Ok(seq);
            }
        }
    }
    // Every oriented triplet spaced (1,1,3) along γ breaks it into odd pieces.
    let cyc = st.cycles();
    let id = cyc.cycle_of[cycle[0]];
    if let Some(t) = find_oriented_2move(st, &cyc, &|i| i == id) {
        return MoveSequence::replay(st, &[t]);
    }
    if let Some(steps) = three_two {
        let seq = MoveSequence::replay(st, &steps)?;
        if seq.profile() == (3, 2) {
            return Ok(seq);
        }
    }
    Err(internal("oriented 5-cycle matches no form", st))
}

/// A 2-move or a (4,3)-sequence for an oriented odd-length cycle of length
/// at least 7.
pub fn seq_43_for_even_oriented_ge7(st: &State, cycle: &[usize]) -> Result<MoveSequence> {
    let l = cycle.len();
    if l < 7 || l % 2 == 0 {
        return Err(internal("not an odd-length cycle of length >= 7", st));
    }
    let cyc = st.cycles();
    let id = cyc.cycle_of[cycle[0]];
    if let Some(t) = find_oriented_2move(st, &cyc, &|i| i == id) {
        return MoveSequence::replay(st, &[t]);
    }
    let p = st.pibar();
    let g = &cyc.list[id];
    let next = |x: usize| g[(cyc.index[x] + 1) % l];
    let mut skeletons = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for k in j + 1..l {
                if !p.in_order(g[i], g[j], g[k]) {
                    continue;
                }
                let pieces = [(g[i], j - i), (g[j], k - j), (g[k], l - k + i)];
                for r in 0..3 {
                    let (a, p1) = pieces[r];
                    let (b, p2) = pieces[(r + 1) % 3];
                    let (c, p3) = pieces[(r + 2) % 3];
                    if p1 < 3 || p1 % 2 == 0 || p2 % 2 == 1 || p3 % 2 == 1 {
                        continue;
                    }
                    let (d, f, gg) = (next(a), next(b), next(c));
                    let e = next(d);
                    let mut order = [a, e, f, gg, d, b, c];
                    let want = order;
                    order.sort_by_key(|&x| (p.position(x) + p.len() - p.position(a)) % p.len());
                    if order == want {
                        let t = ThreeCycle::raw;
                        let steps = [t(a, e, f), t(d, e, f), t(b, f, d), t(a, c, gg)];
                        if let Ok(seq) = MoveSequence::replay(st, &steps) {
                            if seq.y >= 3 {
                                return Ok(seq);
                            }
                        }
                    }
                    skeletons.push(vec![a, d, e, b, f, c, gg]);
                }
            }
        }
    }
    let accept = |x: usize, y: usize| x <= 4 && 3 * x <= 4 * y;
    for mut syms in skeletons.into_iter().take(64) {
        syms.sort_unstable();
        if let SearchOutcome::Found(seq) = search_sequence(st, &syms, 4, &accept, NODE_BUDGET) {
            return Ok(seq);
        }
    }
    if l <= 25 {
        if let SearchOutcome::Found(seq) = search_sequence(st, g, 4, &accept, NODE_BUDGET) {
            return Ok(seq);
        }
    }
    Err(internal("no (4,3)-sequence for a long oriented cycle", st))
}

/// Consecutive 3-symbol segments of `cycle`, as segments owned by `owner`.
fn three_segments(cycle: &[usize], owner: usize) -> Vec<Segment> {
    let l = cycle.len();
    (0..l).map(|r| Segment::new(vec![cycle[r], cycle[(r + 1) % l], cycle[(r + 2) % l]], owner)).collect()
}

/// A 2-move or (3,2)-sequence; always exists while `σ̄π̄⁻¹ ≠ ι`.
pub fn find_32_sequence(st: &State) -> Result<MoveSequence> {
    if st.is_sorted() {
        return Err(internal("find_32_sequence on a sorted state", st));
    }
    let cyc = st.cycles();
    if let Some(t) = find_oriented_2move(st, &cyc, &|_| true).or_else(|| find_even_pair_2move(st, &cyc)) {
        return MoveSequence::replay(st, &[t]);
    }
    for c in &cyc.list {
        if c.len() < 5 || !is_oriented_cycle(st.pibar(), c) {
            continue;
        }
        if c.len() == 5 {
            return seq_for_bad_oriented_5cycle(st, c);
        }
        let seq = seq_43_for_even_oriented_ge7(st, c)?;
        let head = seq.truncated(st, 3)?;
        if head.is_ratio(3, 2) {
            return Ok(head);
        }
    }

    let nontrivial: Vec<(usize, &Vec<usize>)> = cyc.list.iter().enumerate().filter(|(_, c)| c.len() >= 3).collect();
    let p = st.pibar();
    let m = p.len();
    // Interleaving unoriented segments (a b c), (d e f) with
    // π̄ = (a..f..c..e..b..d..).
    for (ia, (ga, ca)) in nontrivial.iter().enumerate() {
        for (gb, cb) in nontrivial.iter().skip(ia + 1) {
            for sa in three_segments(ca, *ga) {
                for sb in three_segments(cb, *gb) {
                    if !interleave_segments(&sa, &sb, p) {
                        continue;
                    }
                    for (s1, s2) in [(&sa, &sb), (&sb, &sa)] {
                        let [a, b, c] = [s1.symbols[0], s1.symbols[1], s1.symbols[2]];
                        for r in 0..3 {
                            let d = s2.symbols[r];
                            let e = s2.symbols[(r + 1) % 3];
                            let f = s2.symbols[(r + 2) % 3];
                            let want = [a, f, c, e, b, d];
                            let mut order = want;
                            order.sort_by_key(|&x| (p.position(x) + m - p.position(a)) % m);
                            if order != want {
                                continue;
                            }
                            let t = ThreeCycle::raw;
                            let steps = [t(a, c, b), t(d, e, f), t(a, c, b)];
                            if let Ok(seq) = MoveSequence::replay(st, &steps) {
                                if seq.profile() == (3, 2) {
                                    return Ok(seq);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // A segment together with up to two segments related to it.
    let accept = |x: usize, y: usize| x <= 3 && 2 * x <= 3 * y;
    for (ga, ca) in &nontrivial {
        for sa in three_segments(ca, *ga) {
            let related: Vec<Segment> = nontrivial
                .iter()
                .filter(|(gb, _)| gb != ga)
                .flat_map(|(gb, cb)| three_segments(cb, *gb))
                .filter(|sb| intersect_segments(&sa, sb, p) || interleave_segments(&sa, sb, p))
                .collect();
            for i in 0..related.len() {
                for j in i..related.len() {
                    let mut syms = sa.symbols.clone();
                    syms.extend(&related[i].symbols);
                    syms.extend(&related[j].symbols);
                    syms.sort_unstable();
                    syms.dedup();
                    if let SearchOutcome::Found(seq) = search_sequence(st, &syms, 3, &accept, NODE_BUDGET) {
                        return Ok(seq);
                    }
                }
            }
        }
    }
    let mut all: Vec<usize> = nontrivial.iter().flat_map(|(_, c)| c.iter().copied()).collect();
    all.sort_unstable();
    if let SearchOutcome::Found(seq) = search_sequence(st, &all, 3, &accept, NODE_BUDGET) {
        return Ok(seq);
    }
    Err(internal("no 3/2-sequence", st))
}

/// The state restricted to a symbol set: cycles touching the set are kept
/// with each run of outside symbols replaced by one dummy when the run has
/// odd length and dropped otherwise, which preserves every length parity a
/// move over the set can observe.
struct Board {
    state: State,
    /// Real symbol of each local symbol `< s`; local ids follow the real
    /// symbols in ascending order.
    real: Vec<usize>,
    s: usize,
}

impl Board {
    fn new(st: &State, symbols: &[usize]) -> Self {
        let s = symbols.len();
        let mut local = vec![usize::MAX; st.size()];
        for (i, &x) in symbols.iter().enumerate() {
            local[x] = i;
        }
        let spi = st.spi();
        let mut images = vec![usize::MAX; s];
        for &x in symbols {
            let mut y = spi[x];
            let mut gap = 0;
            while local[y] == usize::MAX {
                y = spi[y];
                gap += 1;
            }
            if gap % 2 == 1 {
                let dummy = images.len();
                images.push(local[y]);
                images[local[x]] = dummy;
            } else {
                images[local[x]] = local[y];
            }
        }
        let p = st.pibar();
        let mut order: Vec<usize> = symbols.to_vec();
        order.sort_by_key(|&x| p.position(x));
        let mut seq: Vec<usize> = order.iter().map(|&x| local[x]).collect();
        seq.extend(s..images.len());
        let pibar = crate::algebra::ExtendedCycle::from_order(seq).expect("local ids are a bijection");
        let state = State::from_parts(pibar, images).expect("restricted product is a bijection");
        Self { state, real: symbols.to_vec(), s }
    }

    fn to_real(&self, t: ThreeCycle) -> ThreeCycle {
        ThreeCycle::raw(self.real[t.a], self.real[t.b], self.real[t.c])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(MoveSequence),
    Exhausted,
    OutOfBudget,
}

impl SearchOutcome {
    pub fn found(self) -> Option<MoveSequence> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

struct Dfs<'a> {
    triples: &'a [[usize; 3]],
    s: usize,
    target: usize,
    zeros: usize,
    need: usize,
    path: Vec<ThreeCycle>,
    failed: HashSet<u64>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Dfs<'_> {
    fn key(&self, st: &State, z: usize) -> u64 {
        let mut h = DefaultHasher::new();
        for &x in st.pibar().seq() {
            if x < self.s {
                x.hash(&mut h);
            }
        }
        st.spi().hash(&mut h);
        (self.path.len(), z).hash(&mut h);
        h.finish()
    }

    fn go(&mut self, st: &State, y: usize, z: usize) -> bool {
        let k = self.path.len();
        if k == self.target {
            return y >= self.need;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return false;
        }
        let cyc = st.cycles();
        let pot = (st.size() - cyc.odd_count()) / 2;
        let rem = self.target - k;
        let twos_needed = rem.saturating_sub(self.zeros - z);
        if twos_needed > pot {
            return false;
        }
        let key = self.key(st, z);
        if self.failed.contains(&key) {
            return false;
        }
        // 2-moves before 0-moves, each group in lexicographic order.
        let allow_zero = z < self.zeros;
        for want in [2, 0] {
            if want == 0 && !allow_zero {
                break;
            }
            for &[a, b, c] in self.triples {
                let t = st.pibar().orient(a, b, c);
                if cyc.delta(t) != want {
                    continue;
                }
                let (ny, nz) = if want == 2 { (y + 1, z) } else { (y, z + 1) };
                let next = st.applied(t).expect("oriented 3-cycle is applicable");
                self.path.push(t);
                if self.go(&next, ny, nz) {
                    return true;
                }
                self.path.pop();
                if self.out_of_budget {
                    return false;
                }
            }
        }
        self.failed.insert(key);
        false
    }
}

/// Shortest sequence of 0- and 2-moves over `symbols` (sorted, distinct)
/// with `accept(x, y)`, at most `max_x` steps. At each step 2-moves are
/// tried before 0-moves, each in lexicographic order of the symbol triple.
pub fn search_sequence(
    st: &State,
    symbols: &[usize],
    max_x: usize,
    accept: &dyn Fn(usize, usize) -> bool,
    budget: u64,
) -> SearchOutcome {
    let board = Board::new(st, symbols);
    search_on_board(st, &board, max_x, accept, budget)
}

fn search_on_board(
    st: &State,
    board: &Board,
    max_x: usize,
    accept: &dyn Fn(usize, usize) -> bool,
    budget: u64,
) -> SearchOutcome {
    let s = board.s;
    let mut triples = Vec::with_capacity(s * s * s / 6);
    for a in 0..s {
        for b in a + 1..s {
            for c in b + 1..s {
                triples.push([a, b, c]);
            }
        }
    }
    let mut spent = 0;
    for x in 1..=max_x {
        let Some(need) = (0..=x).find(|&y| accept(x, y)) else { continue };
        let mut dfs = Dfs {
            triples: &triples,
            s,
            target: x,
            zeros: x - need,
            need,
            path: Vec::with_capacity(x),
            failed: HashSet::new(),
            nodes: 0,
            budget: budget - spent,
            out_of_budget: false,
        };
        if dfs.go(&board.state, 0, 0) {
            let steps: Vec<ThreeCycle> = dfs.path.iter().map(|&t| board.to_real(t)).collect();
            let seq = MoveSequence::replay(st, &steps).expect("board moves replay on the real state");
            debug_assert!(accept(seq.x, seq.y), "replayed profile differs from the search");
            return SearchOutcome::Found(seq);
        }
        if dfs.out_of_budget {
            return SearchOutcome::OutOfBudget;
        }
        spent += dfs.nodes;
    }
    SearchOutcome::Exhausted
}

/// The 3-norm of `σ̄π̄⁻¹` restricted to `symbols`.
pub fn restricted_norm(st: &State, symbols: &[usize]) -> usize {
    Board::new(st, symbols).state.norm()
}

/// An 11/8-sequence over `Supp(Γ)` whose blocks also satisfy `accept`.
pub fn find_sequence_for(
    g: &Configuration,
    st: &State,
    accept: &dyn Fn(usize, usize) -> bool,
    budget: u64,
) -> SearchOutcome {
    let support = g.support();
    let board = Board::new(st, &support);
    let max_x = 11.min(11 * board.state.norm() / 8);
    let both = |x: usize, y: usize| x <= 11 && 8 * x <= 11 * y && accept(x, y);
    search_on_board(st, &board, max_x, &both, budget)
}

/// First minimal-length 11/8-sequence over `Supp(Γ)`.
pub fn find_eleven_eighths(g: &Configuration, st: &State) -> Option<MoveSequence> {
    find_sequence_for(g, st, &|_, _| true, NODE_BUDGET).found()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExtendedCycle;
    use crate::perm::Permutation;
    use crate::structures::AbstractConfig;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn tc(a: usize, b: usize, c: usize) -> ThreeCycle {
        ThreeCycle::new(a, b, c).unwrap()
    }

    fn all_orders(m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0]];
        for k in 1..m {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (1..=v.len()).map(move |at| {
                        let mut w = v.clone();
                        w.insert(at, k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn brute_2move(st: &State) -> bool {
        let cyc = st.cycles();
        let m = st.size();
        (0..m).any(|a| {
            (a + 1..m).any(|b| (b + 1..m).any(|c| cyc.delta(st.pibar().orient(a, b, c)) == 2))
        })
    }

    #[test]
    fn find_2move_is_complete_up_to_7() {
        for n in 1..=7 {
            for order in all_orders(n + 1) {
                let st = State::from_extended(ExtendedCycle::from_order(order).unwrap());
                let got = find_2move(&st);
                assert_eq!(got.is_some(), brute_2move(&st), "{}", st.pibar());
                if let Some(t) = got {
                    assert!(st.is_applicable(t));
                    assert_eq!(st.cycles().delta(t), 2);
                }
            }
        }
        assert!(find_2move(&State::new(&Permutation::identity(5))).is_none());
    }

    #[test]
    fn find_2move_oriented_three_cycle() {
        // π̄ = (0 2 1): σ̄π̄⁻¹ = (0 1 2) is oriented.
        let st = State::new(&p("2 1"));
        let t = find_2move(&st).unwrap();
        assert!(t.same_cycle(&tc(0, 1, 2)) || t.same_cycle(&tc(0, 2, 1)));
        assert!(st.applied(t).unwrap().is_sorted());
    }

    #[test]
    fn two_two_examples() {
        let st = State::new(&p("4 3 2 1 8 7 6 5"));
        let seq = find_22_sequence(&st).unwrap();
        assert_eq!(seq.profile(), (2, 2));
        assert!(find_22_sequence(&State::new(&p("5 4 3 2 1 6 11 10 9 8 7"))).is_none());
        assert!(find_22_sequence(&State::new(&Permutation::identity(4))).is_none());
    }

    /// Two-ply brute force over all applicable 3-cycles.
    fn brute_22(st: &State) -> bool {
        let m = st.size();
        let cyc = st.cycles();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let t = st.pibar().orient(a, b, c);
                    if cyc.delta(t) == 2 && brute_2move(&st.applied(t).unwrap()) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn find_22_is_complete_up_to_6() {
        for n in 1..=6 {
            for order in all_orders(n + 1) {
                let st = State::from_extended(ExtendedCycle::from_order(order).unwrap());
                assert_eq!(find_22_sequence(&st).is_some(), brute_22(&st), "{}", st.pibar());
            }
        }
    }

    fn abstract_cycle_states(l: usize) -> Vec<State> {
        let cycle: Vec<usize> = (0..l).collect();
        let mut spi = vec![0; l];
        for i in 0..l {
            spi[cycle[i]] = cycle[(i + 1) % l];
        }
        all_orders(l)
            .into_iter()
            .map(|o| State::from_parts(ExtendedCycle::from_order(o).unwrap(), spi.clone()).unwrap())
            .collect()
    }

    #[test]
    fn oriented_five_cycles_exhaustive() {
        let gamma: Vec<usize> = (0..5).collect();
        let mut bad = 0;
        for st in abstract_cycle_states(5) {
            if !is_oriented_cycle(st.pibar(), &gamma) {
                continue;
            }
            let seq = seq_for_bad_oriented_5cycle(&st, &gamma).unwrap();
            let has_2move = brute_2move(&st);
            if has_2move {
                assert_eq!(seq.profile(), (1, 1));
            } else {
                bad += 1;
                assert_eq!(seq.profile(), (3, 2));
                assert!(is_bad_oriented_5cycle(&gamma, st.pibar()));
            }
            assert_eq!(is_bad_oriented_5cycle(&gamma, st.pibar()), !has_2move);
        }
        assert!(bad > 0);
    }

    #[test]
    fn bad_five_cycle_form_one() {
        let g = AbstractConfig::bad_oriented_5cycle();
        let st = g.to_state().unwrap();
        let seq = seq_for_bad_oriented_5cycle(&st, &g.config.segments[0].symbols).unwrap();
        let (a, d, b, e, c) = (0, 3, 1, 4, 2);
        assert_eq!(seq.steps, vec![tc(a, b, c), tc(b, c, d), tc(c, d, e)]);
    }

    #[test]
    fn long_oriented_cycles_exhaustive() {
        for l in [7, 9] {
            let gamma: Vec<usize> = (0..l).collect();
            let mut count = 0;
            for (i, st) in abstract_cycle_states(l).into_iter().enumerate() {
                if l == 9 && i % 7 != 0 {
                    continue;
                }
                if !is_oriented_cycle(st.pibar(), &gamma) {
                    continue;
                }
                let seq = seq_43_for_even_oriented_ge7(&st, &gamma).unwrap();
                assert!(seq.profile() == (1, 1) || (seq.x == 4 && seq.y >= 3), "{}", st.pibar());
                count += 1;
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn three_two_on_necklace() {
        let pi = p("14 13 3 2 1 6 5 4 9 8 7 12 11 10");
        let mut st = State::new(&pi);
        let mut profiles = Vec::new();
        while !st.is_sorted() {
            let seq = find_32_sequence(&st).unwrap();
            assert!(seq.is_ratio(3, 2));
            profiles.push(seq.profile());
            st = seq.final_state(&st).unwrap();
        }
        profiles.sort();
        assert_eq!(profiles, vec![(1, 1), (3, 2), (3, 2)]);
    }

    #[test]
    fn three_two_interleaving_pair() {
        let g = AbstractConfig::unoriented_interleaving_pair();
        let st = g.to_state().unwrap();
        let seq = find_32_sequence(&st).unwrap();
        assert_eq!(seq.profile(), (3, 2));
        assert_eq!(seq.steps[0], seq.steps[2]);
    }

    #[test]
    fn three_two_always_exists_up_to_7() {
        for n in 1..=7 {
            for order in all_orders(n + 1) {
                let st = State::from_extended(ExtendedCycle::from_order(order).unwrap());
                if st.is_sorted() {
                    assert!(find_32_sequence(&st).is_err());
                    continue;
                }
                let seq = find_32_sequence(&st).unwrap();
                assert!(seq.is_ratio(3, 2), "{}", st.pibar());
            }
        }
    }

    #[test]
    fn eleven_eighths_example() {
        let st = State::new(&p("4 8 3 7 2 6 1 5 9 14 13 12 11 10"));
        let segs = [vec![1, 7, 4], vec![2, 8, 5], vec![3, 9, 6]];
        let g = Configuration::new(segs.iter().enumerate().map(|(i, s)| Segment::new(s.clone(), i)).collect());
        let seq = find_eleven_eighths(&g, &st).unwrap();
        assert_eq!(seq.profile(), (4, 3));
        assert!(seq.is_eleven_eighths());
        // The printed sequence is one of the (4,3)-sequences of this component.
        let printed = MoveSequence::replay(&st, &[tc(1, 4, 7), tc(2, 8, 5), tc(1, 4, 7), tc(3, 9, 6)]).unwrap();
        assert_eq!(printed.profile(), (4, 3));
    }

    #[test]
    fn bad_small_components_have_no_sequence() {
        for g in [AbstractConfig::unoriented_interleaving_pair(), AbstractConfig::bad_oriented_5cycle()] {
            let st = g.to_state().unwrap();
            assert!(find_eleven_eighths(&g.config, &st).is_none());
        }
    }

    #[test]
    fn board_preserves_deltas() {
        let st = State::new(&p("9 4 7 2 10 5 1 8 3 6"));
        let syms = vec![1, 3, 4, 7, 9];
        let board = Board::new(&st, &syms);
        let (cyc, bcyc) = (st.cycles(), board.state.cycles());
        for a in 0..syms.len() {
            for b in a + 1..syms.len() {
                for c in b + 1..syms.len() {
                    let lt = board.state.pibar().orient(a, b, c);
                    let rt = board.to_real(lt);
                    assert!(st.is_applicable(rt));
                    assert_eq!(bcyc.delta(lt), cyc.delta(rt));
                }
            }
        }
    }
}
