//! The 1.375-approximation: look-ahead for a (2,2)-sequence, 2-moves on
//! even-length cycles, the main loop over unmarked cycles with 11/8-sequences
//! and the pool of bad small components, and the 3/2 tail.

use std::fmt;

use crate::algebra::{is_oriented_cycle, lower_bound, Cycles, State, ThreeCycle};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::{
    find_22_sequence, find_32_sequence, find_even_pair_2move, find_oriented_2move, find_sequence_for,
    seq_43_for_even_oriented_ge7, MoveSequence, SearchOutcome, NODE_BUDGET,
};
use crate::structures::{
    classify_component, is_bad_oriented_5cycle, open_gates, pairs_intersect, related, ComponentKind, Configuration,
    Segment,
};

/// Which part of the algorithm produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Pre22,
    Odd2Move,
    Oriented2Move,
    Four3,
    Eleven8Big,
    Eleven8Allowed,
    Eleven8Pool,
    Tail32,
}

impl Phase {
    pub fn tag(&self) -> &'static str {
        match self {
            Phase::Pre22 => "pre22",
            Phase::Odd2Move => "odd2move",
            Phase::Oriented2Move => "oriented2move",
            Phase::Four3 => "four3",
            Phase::Eleven8Big => "eleven8_big",
            Phase::Eleven8Allowed => "eleven8_allowed",
            Phase::Eleven8Pool => "eleven8_pool",
            Phase::Tail32 => "tail32",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct SortResult {
    pub distance: usize,
    pub sequence: MoveSequence,
    /// Phase of each step.
    pub trace: Vec<Phase>,
    pub lower: usize,
    pub upper: usize,
}

impl SortResult {
    /// Applies the one-line steps to `pi` and checks the result is sorted.
    pub fn verify(&self, pi: &Permutation) -> bool {
        let mut cur = pi.clone();
        for &r in &self.sequence.rho_steps {
            match cur.apply_transposition(r) {
                Ok(next) => cur = next,
                Err(_) => return false,
            }
        }
        cur.is_identity() && self.sequence.x == self.distance
    }
}

/// `11⌊x/8⌋ + ⌊3(x mod 8)/2⌋`.
pub fn f(x: usize) -> usize {
    11 * (x / 8) + 3 * (x % 8) / 2
}

fn g16(m: usize) -> usize {
    11 * (m / 16) + 3 * (m % 16) / 4
}

/// `11⌊m/16⌋ + ⌊3(m mod 16)/4⌋` with `m = n + 1 − c_odd(π)`.
pub fn upper_bound(pi: &Permutation) -> usize {
    let st = State::new(pi);
    g16(st.size() - st.cycles().odd_count())
}

/// Bound on the transposition diameter of `S_n`.
pub fn diameter_bound(n: usize) -> usize {
    g16(n)
}

/// A segment given as a run of consecutive symbols of a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Run {
    owner: usize,
    start: usize,
    len: usize,
}

struct Solver {
    st: State,
    steps: Vec<ThreeCycle>,
    trace: Vec<Phase>,
    marked: Vec<bool>,
    /// Total steps the bound allows for the whole run.
    allowance: usize,
}

impl Solver {
    fn cycle_by_owner<'c>(&self, cyc: &'c Cycles, owner: usize) -> &'c [usize] {
        &cyc.list[cyc.cycle_of[owner]]
    }

    fn run_symbols(&self, cyc: &Cycles, r: &Run) -> Vec<usize> {
        let c = self.cycle_by_owner(cyc, r.owner);
        (0..r.len).map(|i| c[(r.start + i) % c.len()]).collect()
    }

    fn config(&self, cyc: &Cycles, runs: &[Run]) -> Configuration {
        Configuration::new(runs.iter().map(|r| Segment::new(self.run_symbols(cyc, r), r.owner)).collect())
    }

    fn apply(&mut self, seq: &MoveSequence, phase: Phase) -> Result<()> {
        for &t in &seq.steps {
            self.st.apply(t)?;
            self.steps.push(t);
            self.trace.push(phase);
        }
        Ok(())
    }

    fn apply_one(&mut self, t: ThreeCycle, phase: Phase) -> Result<()> {
        self.st.apply(t)?;
        self.steps.push(t);
        self.trace.push(phase);
        Ok(())
    }

    /// Steps still available before the bound `f(norm)` would be exceeded.
    fn slack(&self) -> isize {
        self.allowance as isize - self.steps.len() as isize - f(self.st.norm()) as isize
    }

    /// Accepts an (x,y) block when the remaining bound can still be met.
    fn within_bound(&self) -> impl Fn(usize, usize) -> bool {
        let slack = self.slack();
        let n = self.st.norm();
        move |x: usize, y: usize| y <= n && (x as isize) <= slack + (f(n) - f(n - y)) as isize
    }

    fn is_marked(&self, cyc: &Cycles, id: usize) -> bool {
        self.marked[cyc.list[id][0]]
    }

    fn theta(&self, cyc: &Cycles) -> Vec<usize> {
        let mut ids: Vec<usize> =
            (0..cyc.list.len()).filter(|&i| cyc.list[i].len() > 1 && !self.is_marked(cyc, i)).collect();
        ids.sort_by_key(|&i| cyc.list[i][0]);
        ids
    }

    fn mark(&mut self, cyc: &Cycles, owners: &[usize]) {
        for &o in owners {
            for &x in self.cycle_by_owner(cyc, o) {
                self.marked[x] = true;
            }
        }
    }

    fn marked_config(&self, cyc: &Cycles) -> Configuration {
        Configuration::new(
            cyc.list
                .iter()
                .filter(|c| c.len() > 1 && self.marked[c[0]])
                .map(|c| Segment::new(c.clone(), c[0]))
                .collect(),
        )
    }

    fn search(&self, g: &Configuration) -> Option<MoveSequence> {
        let strict = self.within_bound();
        if let SearchOutcome::Found(seq) = find_sequence_for(g, &self.st, &strict, NODE_BUDGET) {
            return Some(seq);
        }
        find_sequence_for(g, &self.st, &|_, _| true, NODE_BUDGET).found()
    }

    /// Grows `Γ` from a seed by up to eight sufficient extensions.
    fn grow(&self, cyc: &Cycles, theta: &[usize]) -> Vec<Run> {
        let p = self.st.pibar();
        let seed = theta[0];
        let c = &cyc.list[seed];
        let mut runs = if is_bad_oriented_5cycle(c, p) {
            vec![Run { owner: c[0], start: 0, len: 5 }]
        } else {
            vec![Run { owner: c[0], start: 0, len: 3.min(c.len()) }]
        };
        for _ in 0..8 {
            let g = self.config(cyc, &runs);
            if g.norm().unwrap_or(0) >= 9 {
                break;
            }
            match self.extension(cyc, theta, &runs, &g) {
                Some(next) => runs = next,
                None => break,
            }
        }
        runs
    }

    fn extension(&self, cyc: &Cycles, theta: &[usize], runs: &[Run], g: &Configuration) -> Option<Vec<Run>> {
        let p = self.st.pibar();
        let gates = open_gates(g, p);
        let used: Vec<usize> = runs.iter().map(|r| r.owner).collect();

        // A new unoriented 3-segment from another cycle.
        for &id in theta {
            let c = &cyc.list[id];
            if c.len() < 3 || used.contains(&c[0]) {
                continue;
            }
            for start in 0..c.len() {
                let run = Run { owner: c[0], start, len: 3 };
                let seg = Segment::new(self.run_symbols(cyc, &run), c[0]);
                if is_oriented_cycle(p, &seg.symbols) {
                    continue;
                }
                let ok = if gates.is_empty() {
                    g.segments.iter().any(|s| related(s, &seg, p))
                } else {
                    gates.iter().any(|&gate| seg.pairs().any(|q| pairs_intersect(p, gate, q)))
                };
                if ok {
                    let mut next = runs.to_vec();
                    next.push(run);
                    return Some(next);
                }
            }
        }

        // Lengthen a segment by two symbols of its own cycle.
        for (i, r) in runs.iter().enumerate() {
            let c = self.cycle_by_owner(cyc, r.owner);
            let l = c.len();
            if r.len + 2 > l {
                continue;
            }
            for shift in 0..=2 {
                let run = Run { owner: r.owner, start: (r.start + l - shift) % l, len: r.len + 2 };
                let syms = self.run_symbols(cyc, &run);
                let bad5 = l == 5 && is_bad_oriented_5cycle(&syms, p);
                if !bad5 && is_oriented_cycle(p, &syms) {
                    continue;
                }
                let mut next = runs.to_vec();
                next[i] = run;
                let after = open_gates(&self.config(cyc, &next), p);
                let ok = bad5
                    || if gates.is_empty() {
                        after.len() <= 2
                    } else {
                        gates.iter().any(|x| !after.contains(x))
                    };
                if ok {
                    return Some(next);
                }
            }
        }
        None
    }

    fn flush_pool(&mut self) -> Result<()> {
        let cyc = self.st.cycles();
        let pool = self.marked_config(&cyc);
        if pool.segments.is_empty() || pool.norm()? < 8 {
            return Ok(());
        }
        self.marked.iter_mut().for_each(|m| *m = false);
        match self.search(&pool) {
            Some(seq) => self.apply(&seq, Phase::Eleven8Pool),
            None => {
                let seq = find_32_sequence(&self.st)?;
                self.apply(&seq, Phase::Tail32)
            }
        }
    }

    fn main_loop(&mut self) -> Result<()> {
        loop {
            let cyc = self.st.cycles();
            if let Some(t) = find_even_pair_2move(&self.st, &cyc) {
                self.apply_one(t, Phase::Odd2Move)?;
                continue;
            }
            let theta = self.theta(&cyc);
            if theta.is_empty() {
                return Ok(());
            }
            let in_theta = |id: usize| theta.contains(&id);
            if let Some(t) = find_oriented_2move(&self.st, &cyc, &in_theta) {
                self.apply_one(t, Phase::Oriented2Move)?;
            } else if let Some(&id) =
                theta.iter().find(|&&id| cyc.list[id].len() >= 7 && is_oriented_cycle(self.st.pibar(), &cyc.list[id]))
            {
                let seq = self.four_three(&cyc, id)?;
                self.apply(&seq, Phase::Four3)?;
            } else {
                let runs = self.grow(&cyc, &theta);
                let g = self.config(&cyc, &runs);
                let norm = g.norm()?;
                let owners: Vec<usize> = runs.iter().map(|r| r.owner).collect();
                if norm >= 9 {
                    match self.search(&g) {
                        Some(seq) => self.apply(&seq, Phase::Eleven8Big)?,
                        None => return Err(Error::Internal(format!("big configuration {g} without 11/8-sequence"))),
                    }
                } else {
                    let whole = runs.iter().all(|r| r.len == cyc.list[cyc.cycle_of[r.owner]].len());
                    let kind = if whole { classify_component(&g, self.st.pibar()) } else { ComponentKind::NotBad };
                    let found = if kind.is_bad() { None } else { self.search(&g) };
                    match found {
                        Some(seq) => self.apply(&seq, Phase::Eleven8Allowed)?,
                        None => self.mark(&cyc, &owners),
                    }
                }
            }
            self.flush_pool()?;
        }
    }

    /// The (4,3)-sequence, or when its block would break the bound, a search
    /// over the cycle for a block that keeps it.
    fn four_three(&self, cyc: &Cycles, id: usize) -> Result<MoveSequence> {
        let c = &cyc.list[id];
        let seq = seq_43_for_even_oriented_ge7(&self.st, c)?;
        if (self.within_bound())(seq.x, seq.y) {
            return Ok(seq);
        }
        let g = Configuration::new(vec![Segment::new(c.clone(), c[0])]);
        if c.len() <= 15 {
            let strict = self.within_bound();
            if let SearchOutcome::Found(alt) = find_sequence_for(&g, &self.st, &strict, NODE_BUDGET) {
                return Ok(alt);
            }
        }
        Ok(seq)
    }

    fn finish(mut self, pi: &Permutation) -> Result<SortResult> {
        while !self.st.is_sorted() {
            let seq = find_32_sequence(&self.st)?;
            self.apply(&seq, Phase::Tail32)?;
        }
        let start = State::new(pi);
        let sequence = MoveSequence::replay(&start, &self.steps)?;
        if !sequence.final_state(&start)?.is_sorted() {
            return Err(Error::Internal(format!("sequence for {pi} does not sort")));
        }
        Ok(SortResult {
            distance: sequence.x,
            sequence,
            trace: self.trace,
            lower: lower_bound(pi),
            upper: upper_bound(pi),
        })
    }
}

pub fn sbt1375(pi: &Permutation) -> Result<SortResult> {
    let st = State::new(pi);
    let n0 = st.norm();
    let mut solver = Solver { marked: vec![false; st.size()], st, steps: Vec::new(), trace: Vec::new(), allowance: f(n0) };
    if let Some(seq) = find_22_sequence(&solver.st) {
        solver.allowance = 2 + f(n0 - 2);
        solver.apply(&seq, Phase::Pre22)?;
    }
    loop {
        let cyc = solver.st.cycles();
        match find_even_pair_2move(&solver.st, &cyc) {
            Some(t) => solver.apply_one(t, Phase::Odd2Move)?,
            None => break,
        }
    }
    solver.main_loop()?;
    solver.finish(pi)
}

/// Sorts `σ⁻¹∘π`; the steps, applied to `π`, turn it into `σ`.
pub fn distance(pi: &Permutation, sigma: &Permutation) -> Result<SortResult> {
    if pi.len() != sigma.len() {
        return Err(Error::LengthMismatch { left: pi.len(), right: sigma.len() });
    }
    let rel = sigma.inverse().compose(pi)?;
    sbt1375(&rel)
}
