//! The algebraic model: `π̄ = (0 p1 .. pn)`, the state `σ̄π̄⁻¹` with `σ̄ = ῑ`,
//! applicable 3-cycles, the 3-norm and move classification.
//!
//! A 3-cycle `τ` is applicable when its symbols occur in `π̄` in the same cyclic
//! order; applying it replaces `π̄` by `τπ̄` and the state by `σ̄π̄⁻¹τ⁻¹`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{CyclePerm, Permutation, TranspositionDesc};

/// The 3-cycle `(a b c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeCycle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl ThreeCycle {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(Error::Parse(format!("3-cycle symbols must be distinct: ({a} {b} {c})")));
        }
        Ok(Self { a, b, c })
    }

    pub(crate) const fn raw(a: usize, b: usize, c: usize) -> Self {
        Self { a, b, c }
    }

    pub fn symbols(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.a, b: self.c, c: self.b }
    }

    /// Same cycle, rotated so the smallest symbol comes first.
    pub fn normalized(&self) -> Self {
        let m = self.a.min(self.b).min(self.c);
        if m == self.a {
            *self
        } else if m == self.b {
            Self { a: self.b, b: self.c, c: self.a }
        } else {
            Self { a: self.c, b: self.a, c: self.b }
        }
    }

    pub fn same_cycle(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn to_cycle_perm(&self, size: usize) -> Result<CyclePerm> {
        CyclePerm::from_cycles(size, &[vec![self.a, self.b, self.c]])
    }
}

impl fmt::Display for ThreeCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for ThreeCycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = CyclePerm::parse(s, None)?;
        let cycles = c.nontrivial_cycles();
        match cycles.as_slice() {
            [cyc] if cyc.len() == 3 => {
                // Recover the written rotation rather than the canonical one.
                let first: usize = s
                    .trim()
                    .trim_start_matches('(')
                    .split(|ch: char| ch == ',' || ch.is_whitespace())
                    .find(|p| !p.is_empty())
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad 3-cycle {s:?}")))?;
                let second = c.apply(first);
                Self::new(first, second, c.apply(second))
            }
            _ => Err(Error::Parse(format!("expected a single 3-cycle, got {s:?}"))),
        }
    }
}

/// A cyclic arrangement of the symbols `0..len`. For a permutation this is
/// `π̄ = (0 p1 .. pn)` with `seq[0] = 0`; `seq[0]` never moves under `apply`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedCycle {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl ExtendedCycle {
    /// Builds from an arrangement that lists every symbol of `0..seq.len()` once.
    pub fn from_order(seq: Vec<usize>) -> Result<Self> {
        let m = seq.len();
        let mut pos = vec![usize::MAX; m];
        for (p, &x) in seq.iter().enumerate() {
            if x >= m || pos[x] != usize::MAX {
                return Err(Error::NotBijection(format!("symbol {x} repeated or out of range")));
            }
            pos[x] = p;
        }
        Ok(Self { seq, pos })
    }

    /// Number of symbols, `n + 1` for a permutation of length `n`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Position of `x` along the cycle, counted from `seq[0]`.
    pub fn position(&self, x: usize) -> usize {
        self.pos[x]
    }

    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    /// Successor of `x` in the cycle.
    pub fn next(&self, x: usize) -> usize {
        self.seq[(self.pos[x] + 1) % self.seq.len()]
    }

    /// Predecessor of `x`, i.e. `π̄⁻¹(x)`.
    pub fn prev(&self, x: usize) -> usize {
        let m = self.seq.len();
        self.seq[(self.pos[x] + m - 1) % m]
    }

    /// One-line form, read from symbol 0.
    pub fn to_permutation(&self) -> Permutation {
        let start = self.pos[0];
        let m = self.seq.len();
        let image = (1..m).map(|d| self.seq[(start + d) % m]).collect();
        Permutation::new(image).expect("cycle lists every symbol once")
    }

    pub fn to_cycle_perm(&self) -> CyclePerm {
        CyclePerm::from_cycles(self.seq.len(), &[self.seq.clone()]).expect("cycle lists every symbol once")
    }

    /// True iff `a`, `b`, `c` occur in this cyclic order.
    #[inline]
    pub fn in_order(&self, a: usize, b: usize, c: usize) -> bool {
        let m = self.seq.len();
        let pa = self.pos[a];
        let db = (self.pos[b] + m - pa) % m;
        let dc = (self.pos[c] + m - pa) % m;
        db < dc
    }

    #[inline]
    pub fn is_applicable(&self, t: ThreeCycle) -> bool {
        t.a != t.b && t.b != t.c && t.a != t.c && self.in_order(t.a, t.b, t.c)
    }

    /// The applicable orientation of the three symbols.
    #[inline]
    pub fn orient(&self, x: usize, y: usize, z: usize) -> ThreeCycle {
        if self.in_order(x, y, z) {
            ThreeCycle::raw(x, y, z)
        } else {
            ThreeCycle::raw(x, z, y)
        }
    }

    /// Positions of the three symbols, rotated so they increase.
    fn sorted_positions(&self, t: ThreeCycle) -> (usize, usize, usize) {
        let (pa, pb, pc) = (self.pos[t.a], self.pos[t.b], self.pos[t.c]);
        if pa < pb && pb < pc {
            (pa, pb, pc)
        } else if pb < pc && pc < pa {
            (pb, pc, pa)
        } else {
            (pc, pa, pb)
        }
    }

    /// Replaces the cycle by `τπ̄`.
    pub fn apply(&mut self, t: ThreeCycle) -> Result<()> {
        if !self.is_applicable(t) {
            return Err(Error::NotApplicable(t));
        }
        let (p1, p2, p3) = self.sorted_positions(t);
        let m = self.seq.len();
        // τπ̄ swaps the arcs [p1,p2) and [p2,p3); when p1 = 0 the equivalent
        // swap of [p2,p3) and [p3,m) keeps seq[0] in place.
        let (lo, mid, hi) = if p1 > 0 { (p1, p2, p3) } else { (p2, p3, m) };
        let mut moved = Vec::with_capacity(hi - lo);
        moved.extend_from_slice(&self.seq[mid..hi]);
        moved.extend_from_slice(&self.seq[lo..mid]);
        for (off, &x) in moved.iter().enumerate() {
            self.seq[lo + off] = x;
            self.pos[x] = lo + off;
        }
        Ok(())
    }

    pub fn applied(&self, t: ThreeCycle) -> Result<Self> {
        let mut next = self.clone();
        next.apply(t)?;
        Ok(next)
    }

    /// The one-line transposition equivalent to applying `t`. Requires the
    /// arrangement to start at symbol 0.
    pub fn to_rho(&self, t: ThreeCycle) -> Result<TranspositionDesc> {
        if !self.is_applicable(t) {
            return Err(Error::NotApplicable(t));
        }
        let m = self.seq.len();
        let rel = |x: usize| (self.pos[x] + m - self.pos[0]) % m;
        let mut ps = [rel(t.a), rel(t.b), rel(t.c)];
        ps.sort_unstable();
        let [p1, p2, p3] = ps;
        let rho = if p1 > 0 {
            TranspositionDesc { i: p1, j: p2, k: p3 }
        } else {
            TranspositionDesc { i: p2, j: p3, k: m }
        };
        Ok(rho)
    }
}

impl fmt::Display for ExtendedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let start = self.pos.first().copied().unwrap_or(0);
        let m = self.seq.len();
        let body: Vec<String> = (0..m).map(|d| self.seq[(start + d) % m].to_string()).collect();
        write!(f, "({})", body.join(" "))
    }
}

/// `π̄ = (0 p1 .. pn)`.
pub fn extend(pi: &Permutation) -> ExtendedCycle {
    let mut seq = Vec::with_capacity(pi.len() + 1);
    seq.push(0);
    seq.extend_from_slice(pi.as_slice());
    ExtendedCycle::from_order(seq).expect("valid permutation")
}

/// `σ̄π̄⁻¹` as a function table, with `σ̄ = ῑ`.
pub fn spi_images(pibar: &ExtendedCycle) -> Vec<usize> {
    let m = pibar.len();
    (0..m).map(|x| (pibar.prev(x) + 1) % m).collect()
}

/// `σ̄π̄⁻¹` with per-cycle orientation flags and solver marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPiInv {
    pub value: CyclePerm,
    /// Canonical cycles of `value`, fixed points included.
    pub cycles: Vec<Vec<usize>>,
    pub oriented: Vec<bool>,
    pub marks: Vec<bool>,
}

impl SigmaPiInv {
    pub fn from_images(images: Vec<usize>, pibar: &ExtendedCycle) -> Self {
        let value = crate::perm::decompose(&images).expect("state is a bijection");
        let cycles = value.cycles();
        let oriented = cycles.iter().map(|c| is_oriented_cycle(pibar, c)).collect();
        let marks = vec![false; cycles.len()];
        Self { value, cycles, oriented, marks }
    }

    pub fn is_identity(&self) -> bool {
        self.value.is_identity()
    }
}

pub fn sigma_pi_inv(pibar: &ExtendedCycle) -> SigmaPiInv {
    SigmaPiInv::from_images(spi_images(pibar), pibar)
}

pub fn c_odd_count(s: &SigmaPiInv) -> usize {
    s.cycles.iter().filter(|c| c.len() % 2 == 1).count()
}

pub fn three_norm(s: &SigmaPiInv) -> usize {
    (s.value.ground_size() - c_odd_count(s)) / 2
}

pub fn lower_bound(pi: &Permutation) -> usize {
    three_norm(&sigma_pi_inv(&extend(pi)))
}

pub fn is_applicable(t: ThreeCycle, pibar: &ExtendedCycle) -> bool {
    pibar.is_applicable(t)
}

pub fn apply_3cycle(t: ThreeCycle, pibar: &ExtendedCycle) -> Result<ExtendedCycle> {
    pibar.applied(t)
}

pub fn to_rho(t: ThreeCycle, pibar: &ExtendedCycle) -> Result<TranspositionDesc> {
    pibar.to_rho(t)
}

/// Change in the number of odd-length cycles of the state when `t` is applied.
pub fn move_type(t: ThreeCycle, pibar: &ExtendedCycle) -> Result<i32> {
    if !pibar.is_applicable(t) {
        return Err(Error::NotApplicable(t));
    }
    let st = State::from_extended(pibar.clone());
    Ok(st.cycles().delta(t))
}

/// True iff the cyclic order of `cycle` differs from the order its symbols
/// take in `π̄⁻¹`, i.e. some triplet of it is oriented.
pub fn is_oriented_cycle(pibar: &ExtendedCycle, cycle: &[usize]) -> bool {
    let l = cycle.len();
    if l < 3 {
        return false;
    }
    let m = pibar.len();
    let inv_pos = |x: usize| (m - pibar.position(x)) % m;
    let mut descents = 0;
    for i in 0..l {
        if inv_pos(cycle[(i + 1) % l]) < inv_pos(cycle[i]) {
            descents += 1;
        }
    }
    descents > 1
}

/// Cycle structure of a state: canonical cycle list plus, for every symbol,
/// its cycle id and its index within that cycle.
#[derive(Clone, Debug)]
pub struct Cycles {
    pub list: Vec<Vec<usize>>,
    pub cycle_of: Vec<usize>,
    pub index: Vec<usize>,
}

#[inline]
fn odd(x: usize) -> i32 {
    (x & 1) as i32
}

impl Cycles {
    pub fn of_images(images: &[usize]) -> Self {
        let m = images.len();
        let mut cycle_of = vec![usize::MAX; m];
        let mut index = vec![0; m];
        let mut list = Vec::new();
        for start in (0..m).rev() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = list.len();
            let mut cyc = Vec::new();
            let mut x = start;
            loop {
                cycle_of[x] = id;
                index[x] = cyc.len();
                cyc.push(x);
                x = images[x];
                if x == start {
                    break;
                }
            }
            list.push(cyc);
        }
        Self { list, cycle_of, index }
    }

    pub fn len_of(&self, x: usize) -> usize {
        self.list[self.cycle_of[x]].len()
    }

    pub fn odd_count(&self) -> usize {
        self.list.iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// Change in the odd-length cycle count caused by applying `t`.
    pub fn delta(&self, t: ThreeCycle) -> i32 {
        let (x, y, z) = (t.a, t.b, t.c);
        let (cx, cy, cz) = (self.cycle_of[x], self.cycle_of[y], self.cycle_of[z]);
        if cx == cy && cy == cz {
            let l = self.list[cx].len();
            let (ix, iy, iz) = (self.index[x], self.index[y], self.index[z]);
            let d1 = (iy + l - ix) % l;
            let d2 = (iz + l - ix) % l;
            if d1 < d2 {
                odd(d1) + odd(d2 - d1) + odd(l - d2) - odd(l)
            } else {
                0
            }
        } else if cx == cy || cy == cz || cz == cx {
            let (p, q, r) = if cx == cy {
                (x, y, z)
            } else if cy == cz {
                (y, z, x)
            } else {
                (z, x, y)
            };
            let lg = self.len_of(p);
            let ld = self.len_of(r);
            let l1 = (self.index[q] + lg - self.index[p]) % lg;
            let l2 = lg + ld - l1;
            odd(l1) + odd(l2) - odd(lg) - odd(ld)
        } else {
            let (a, b, c) = (self.len_of(x), self.len_of(y), self.len_of(z));
            odd(a + b + c) - odd(a) - odd(b) - odd(c)
        }
    }
}

/// Mutable working state: `π̄` together with the function table of `σ̄π̄⁻¹`.
/// Also used for abstract configurations, where the arrangement and the
/// product are given directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pibar: ExtendedCycle,
    spi: Vec<usize>,
}

impl State {
    pub fn new(pi: &Permutation) -> Self {
        Self::from_extended(extend(pi))
    }

    pub fn from_extended(pibar: ExtendedCycle) -> Self {
        let spi = spi_images(&pibar);
        Self { pibar, spi }
    }

    /// An arbitrary arrangement paired with an arbitrary product on the same
    /// symbols.
    pub fn from_parts(pibar: ExtendedCycle, spi: Vec<usize>) -> Result<Self> {
        if spi.len() != pibar.len() {
            return Err(Error::GroundMismatch { left: pibar.len(), right: spi.len() });
        }
        crate::perm::decompose(&spi)?;
        Ok(Self { pibar, spi })
    }

    pub fn pibar(&self) -> &ExtendedCycle {
        &self.pibar
    }

    pub fn spi(&self) -> &[usize] {
        &self.spi
    }

    pub fn size(&self) -> usize {
        self.spi.len()
    }

    pub fn cycles(&self) -> Cycles {
        Cycles::of_images(&self.spi)
    }

    pub fn sigma_pi_inv(&self) -> SigmaPiInv {
        SigmaPiInv::from_images(self.spi.clone(), &self.pibar)
    }

    pub fn is_sorted(&self) -> bool {
        self.spi.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn norm(&self) -> usize {
        (self.size() - self.cycles().odd_count()) / 2
    }

    pub fn is_applicable(&self, t: ThreeCycle) -> bool {
        self.pibar.is_applicable(t)
    }

    /// Applies `t`: `π̄ ← τπ̄` and `σ̄π̄⁻¹ ← σ̄π̄⁻¹τ⁻¹`.
    pub fn apply(&mut self, t: ThreeCycle) -> Result<()> {
        self.pibar.apply(t)?;
        let (sa, sb, sc) = (self.spi[t.a], self.spi[t.b], self.spi[t.c]);
        self.spi[t.a] = sc;
        self.spi[t.b] = sa;
        self.spi[t.c] = sb;
        Ok(())
    }

    pub fn applied(&self, t: ThreeCycle) -> Result<Self> {
        let mut next = self.clone();
        next.apply(t)?;
        Ok(next)
    }

    pub fn to_permutation(&self) -> Permutation {
        self.pibar.to_permutation()
    }
}
