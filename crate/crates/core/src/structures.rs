//! Configurations of `σ̄π̄⁻¹`: products of cycle segments, their intersection
//! and interleaving structure, open gates, 3-norm, component classification
//! and the three sufficient extensions used by the case audit.
//!
//! All relations are read off the cyclic order of `π̄⁻¹`.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::{ExtendedCycle, SigmaPiInv, State};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A cycle segment `(η1 .. ηk)`, treated as a cycle in its own right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub symbols: Vec<usize>,
    /// Identifies the cycle of the state the segment was taken from.
    pub owner: usize,
}

impl Segment {
    pub fn new(symbols: Vec<usize>, owner: usize) -> Self {
        Self { symbols, owner }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Consecutive pairs, wrapping around.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let s = &self.symbols;
        let l = s.len();
        (0..l).filter(move |_| l >= 2).map(move |i| (s[i], s[(i + 1) % l]))
    }

    /// Consecutive triples, wrapping around.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let s = &self.symbols;
        let l = s.len();
        (0..l).filter(move |_| l >= 3).map(move |i| (s[i], s[(i + 1) % l], s[(i + 2) % l]))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::perm::fmt_cycle(&self.symbols))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub segments: Vec<Segment>,
}

impl Configuration {
    pub fn new(segments: Vec<Segment>) -> Self {
        Self { segments }
    }

    /// Sorted support.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.segments.iter().flat_map(|g| g.symbols.iter().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn symbol_count(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn norm(&self) -> Result<usize> {
        config_norm(self)
    }

    pub fn is_big(&self) -> bool {
        matches!(self.norm(), Ok(k) if k > 8)
    }

    /// Product of the segments as a function table on `0..size`.
    pub fn product(&self, size: usize) -> Result<Vec<usize>> {
        let cycles: Vec<Vec<usize>> = self.segments.iter().map(|s| s.symbols.clone()).collect();
        Ok(crate::perm::CyclePerm::from_cycles(size, &cycles)?.images().to_vec())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.segments {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    BadOriented5Cycle,
    UnorientedInterleavingPair,
    Necklace4,
    Necklace5,
    Necklace6,
    TwistedNecklace4,
    NotBad,
}

impl ComponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentKind::BadOriented5Cycle => "bad_oriented_5cycle",
            ComponentKind::UnorientedInterleavingPair => "unoriented_interleaving_pair",
            ComponentKind::Necklace4 => "necklace_4",
            ComponentKind::Necklace5 => "necklace_5",
            ComponentKind::Necklace6 => "necklace_6",
            ComponentKind::TwistedNecklace4 => "twisted_necklace_4",
            ComponentKind::NotBad => "not_bad",
        }
    }

    pub fn is_bad(&self) -> bool {
        *self != ComponentKind::NotBad
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True iff `xs` occur in this cyclic order along `π̄⁻¹`.
pub fn inv_order(pibar: &ExtendedCycle, xs: &[usize]) -> bool {
    let m = pibar.len();
    let base = pibar.position(xs[0]);
    // π̄⁻¹ walks π̄ backwards.
    let mut last = 0;
    for &x in &xs[1..] {
        let r = (base + m - pibar.position(x)) % m;
        if r <= last {
            return false;
        }
        last = r;
    }
    true
}

/// For `γ = (a .. b .. c ..)`: oriented iff `π̄⁻¹ = (a .. c .. b ..)`.
pub fn oriented_triplet(a: usize, b: usize, c: usize, pibar: &ExtendedCycle) -> bool {
    pibar.in_order(a, b, c)
}

fn pair_cross(pibar: &ExtendedCycle, (a, b): (usize, usize), (d, e): (usize, usize)) -> bool {
    inv_order(pibar, &[a, e, b, d])
}

pub fn pairs_intersect(pibar: &ExtendedCycle, p: (usize, usize), q: (usize, usize)) -> bool {
    pair_cross(pibar, p, q) || pair_cross(pibar, q, p)
}

/// Some pair `(a,b)` of one and `(d,e)` of the other with `π̄⁻¹ = (a..e..b..d..)`.
pub fn intersect_segments(s1: &Segment, s2: &Segment, pibar: &ExtendedCycle) -> bool {
    if s1.owner == s2.owner {
        return false;
    }
    s1.pairs().any(|p| s2.pairs().any(|q| pairs_intersect(pibar, p, q)))
}

/// Some triple `(a,b,c)` of one and `(d,e,f)` of the other with
/// `π̄⁻¹ = (a..e..b..f..c..d..)`.
pub fn interleave_segments(s1: &Segment, s2: &Segment, pibar: &ExtendedCycle) -> bool {
    if s1.owner == s2.owner {
        return false;
    }
    let cross = |x: &Segment, y: &Segment| {
        x.triples()
            .any(|(a, b, c)| y.triples().any(|(d, e, f)| inv_order(pibar, &[a, e, b, f, c, d])))
    };
    cross(s1, s2) || cross(s2, s1)
}

pub fn related(s1: &Segment, s2: &Segment, pibar: &ExtendedCycle) -> bool {
    intersect_segments(s1, s2, pibar) || interleave_segments(s1, s2, pibar)
}

/// Maximal connected configurations of whole non-trivial cycles.
pub fn components(s: &SigmaPiInv, pibar: &ExtendedCycle) -> Vec<Configuration> {
    let segs: Vec<Segment> = s
        .cycles
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| Segment::new(c.clone(), c[0]))
        .collect();
    group_connected(segs, pibar)
}

/// Partitions segments into connected groups, each in input order; groups are
/// ordered by their first member.
pub fn group_connected(segs: Vec<Segment>, pibar: &ExtendedCycle) -> Vec<Configuration> {
    let k = segs.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            if find(&mut parent, i) != find(&mut parent, j) && related(&segs[i], &segs[j], pibar) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Segment>)> = Vec::new();
    for (i, seg) in segs.into_iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(seg),
            None => groups.push((r, vec![seg])),
        }
    }
    groups.into_iter().map(|(_, g)| Configuration::new(g)).collect()
}

/// Segment-leading pairs `(a,b)` not crossed by a pair of another segment and
/// with no `e` of the same segment between `a` and `b` in `π̄⁻¹`.
pub fn open_gates(g: &Configuration, pibar: &ExtendedCycle) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, seg) in g.segments.iter().enumerate() {
        for (a, b) in seg.pairs() {
            let crossed = g
                .segments
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other.pairs().any(|q| pairs_intersect(pibar, (a, b), q)));
            if crossed {
                continue;
            }
            let oriented = seg.symbols.iter().any(|&e| e != a && e != b && inv_order(pibar, &[a, e, b]));
            if !oriented {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn config_norm(g: &Configuration) -> Result<usize> {
    if let Some(s) = g.segments.iter().find(|s| s.len() % 2 == 0) {
        return Err(Error::EvenSegment(s.len()));
    }
    Ok((g.symbol_count() - g.segments.len()) / 2)
}

/// True iff some rotation `(a d b e c)` of the 5-cycle has `(a,b,c)` oriented
/// and `π̄ = (a..b..c..d..e..)`.
pub fn is_bad_oriented_5cycle(cycle: &[usize], pibar: &ExtendedCycle) -> bool {
    if cycle.len() != 5 {
        return false;
    }
    (0..5).any(|r| {
        let g = |i: usize| cycle[(r + i) % 5];
        let (a, d, b, e, c) = (g(0), g(1), g(2), g(3), g(4));
        pibar.in_order(a, b, c) && pibar.in_order(b, c, d) && pibar.in_order(c, d, e) && pibar.in_order(a, c, e)
    })
}

fn is_unoriented_segment(seg: &Segment, pibar: &ExtendedCycle) -> bool {
    !crate::algebra::is_oriented_cycle(pibar, &seg.symbols)
}

/// Structural recognition of the bad small components.
pub fn classify_component(g: &Configuration, pibar: &ExtendedCycle) -> ComponentKind {
    let segs = &g.segments;
    if segs.len() == 1 && is_bad_oriented_5cycle(&segs[0].symbols, pibar) {
        return ComponentKind::BadOriented5Cycle;
    }
    let all_unoriented_triples = segs.iter().all(|s| s.len() == 3 && is_unoriented_segment(s, pibar));
    if !all_unoriented_triples || segs.len() < 2 {
        return ComponentKind::NotBad;
    }
    let k = segs.len();
    let mut degree = vec![0usize; k];
    for i in 0..k {
        for j in i + 1..k {
            if intersect_segments(&segs[i], &segs[j], pibar) {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    if group_connected(segs.clone(), pibar).len() != 1 {
        return ComponentKind::NotBad;
    }
    if k == 2 {
        return if interleave_segments(&segs[0], &segs[1], pibar) {
            ComponentKind::UnorientedInterleavingPair
        } else {
            ComponentKind::NotBad
        };
    }
    let mut sorted = degree.clone();
    sorted.sort_unstable();
    match (k, sorted.as_slice()) {
        (4, [2, 2, 2, 2]) => ComponentKind::Necklace4,
        (5, [2, 2, 2, 2, 2]) => ComponentKind::Necklace5,
        (6, [2, 2, 2, 2, 2, 2]) => ComponentKind::Necklace6,
        (4, [2, 2, 3, 3]) => ComponentKind::TwistedNecklace4,
        _ => ComponentKind::NotBad,
    }
}

/// A configuration standing on its own: its symbols are exactly `0..s` and
/// `pibar` is their cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractConfig {
    pub pibar: ExtendedCycle,
    pub config: Configuration,
}

impl AbstractConfig {
    /// Builds from the cyclic order along `π̄⁻¹` and the segments.
    pub fn from_inverse_order(inv: &[usize], segments: Vec<Vec<usize>>) -> Result<Self> {
        let mut seq = vec![inv[0]];
        seq.extend(inv[1..].iter().rev());
        let pibar = ExtendedCycle::from_order(seq)?;
        let segments = segments
            .into_iter()
            .enumerate()
            .map(|(i, s)| Segment::new(s, i))
            .collect();
        Ok(Self { pibar, config: Configuration::new(segments) })
    }

    pub fn size(&self) -> usize {
        self.pibar.len()
    }

    pub fn norm(&self) -> usize {
        config_norm(&self.config).unwrap_or(usize::MAX)
    }

    /// Symbols in `π̄⁻¹` order starting at `seq[0]`.
    pub fn inverse_order(&self) -> Vec<usize> {
        let seq = self.pibar.seq();
        let mut out = vec![seq[0]];
        out.extend(seq[1..].iter().rev());
        out
    }

    pub fn to_state(&self) -> Result<State> {
        State::from_parts(self.pibar.clone(), self.config.product(self.size())?)
    }

    pub fn open_gates(&self) -> Vec<(usize, usize)> {
        open_gates(&self.config, &self.pibar)
    }

    pub fn is_full(&self) -> bool {
        self.open_gates().is_empty()
    }

    pub fn classify(&self) -> ComponentKind {
        classify_component(&self.config, &self.pibar)
    }

    /// Canonical relabeling: symbols renamed by their index along `π̄⁻¹` from
    /// the start that minimises the segment list; segments rotated to start
    /// at their smallest label and sorted.
    pub fn canonical(&self) -> Self {
        let inv = self.inverse_order();
        let s = inv.len();
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut rank = vec![0; s];
        for r in 0..s {
            for (i, &x) in inv.iter().enumerate() {
                rank[x] = (i + s - r) % s;
            }
            let mut segs: Vec<Vec<usize>> = self
                .config
                .segments
                .iter()
                .map(|seg| {
                    let lab: Vec<usize> = seg.symbols.iter().map(|&x| rank[x]).collect();
                    let m = (0..lab.len()).min_by_key(|&i| lab[i]).unwrap_or(0);
                    (0..lab.len()).map(|i| lab[(m + i) % lab.len()]).collect()
                })
                .collect();
            segs.sort();
            if best.as_ref().is_none_or(|b| segs < *b) {
                best = Some(segs);
            }
        }
        let segs = best.unwrap_or_default();
        let inv: Vec<usize> = (0..s).collect();
        Self::from_inverse_order(&inv, segs).expect("relabeling is a bijection")
    }

    /// Dedup key; equal for configurations related by a relabeling that
    /// preserves the cyclic order.
    pub fn key(&self) -> Vec<Vec<usize>> {
        let c = self.canonical();
        let mut k: Vec<Vec<usize>> = c.config.segments.iter().map(|s| s.symbols.clone()).collect();
        k.push(vec![c.size()]);
        k
    }

    pub fn bad_oriented_5cycle() -> Self {
        // (a d b e c) with π̄ = (a b c d e); a..e = 0..4.
        let seq = vec![0, 1, 2, 3, 4];
        let pibar = ExtendedCycle::from_order(seq).expect("valid order");
        Self { pibar, config: Configuration::new(vec![Segment::new(vec![0, 3, 1, 4, 2], 0)]) }
    }

    /// `(a b c)(d e f)` with `π̄⁻¹ = (a f b c d e)`.
    pub fn unoriented_intersecting_pair() -> Self {
        let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
        Self::from_inverse_order(&[a, f, b, c, d, e], vec![vec![a, b, c], vec![d, e, f]]).expect("valid")
    }

    /// `(a b c)(d e f)` with `π̄⁻¹ = (a e b f c d)`.
    pub fn unoriented_interleaving_pair() -> Self {
        let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
        Self::from_inverse_order(&[a, e, b, f, c, d], vec![vec![a, b, c], vec![d, e, f]]).expect("valid")
    }

    /// The permutation whose `σ̄π̄⁻¹` is this configuration up to relabeling,
    /// if `σ̄ = απ̄` is a single cycle.
    pub fn realize(&self) -> Option<Permutation> {
        let st = self.to_state().ok()?;
        let m = st.size();
        let pb = st.pibar();
        let sigma: Vec<usize> = (0..m).map(|x| st.spi()[pb.next(x)]).collect();
        // phi renames σ̄ to (0 1 ... m-1).
        let mut phi = vec![usize::MAX; m];
        let mut x = 0;
        for k in 0..m {
            if phi[x] != usize::MAX {
                return None;
            }
            phi[x] = k;
            x = sigma[x];
        }
        let mut image = Vec::with_capacity(m - 1);
        let mut y = pb.next(0);
        while y != 0 {
            image.push(phi[y]);
            y = pb.next(y);
        }
        Permutation::new(image).ok()
    }

    /// Segments placed side by side along `π̄⁻¹`, each keeping its own order.
    pub fn juxtapose(parts: &[AbstractConfig]) -> Self {
        let mut inv = Vec::new();
        let mut segs = Vec::new();
        let mut offset = 0;
        for p in parts {
            inv.extend(p.inverse_order().into_iter().map(|x| x + offset));
            segs.extend(p.config.segments.iter().map(|s| s.symbols.iter().map(|&x| x + offset).collect()));
            offset += p.size();
        }
        Self::from_inverse_order(&inv, segs).expect("disjoint relabeling")
    }
}

impl fmt::Display for AbstractConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv: Vec<String> = self.inverse_order().iter().map(|x| x.to_string()).collect();
        write!(f, "{} inv=({})", self.config, inv.join(" "))
    }
}

/// Every placement of `k` new symbols `s..s+k` into the cyclic order `inv`,
/// with `inv[0]` kept first. Each result lists the new `π̄⁻¹` order.
fn placements(inv: &[usize], k: usize) -> Vec<Vec<usize>> {
    let s = inv.len();
    let total = s + k;
    let mut out = Vec::new();
    let mut slots = vec![0usize; k];
    // Ordered choice of k distinct positions in 1..total for the new symbols.
    fn rec(
        depth: usize,
        k: usize,
        total: usize,
        slots: &mut Vec<usize>,
        inv: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == k {
            let mut seq = vec![usize::MAX; total];
            for (i, &p) in slots.iter().enumerate() {
                seq[p] = inv.len() + i;
            }
            let mut it = inv.iter();
            for x in seq.iter_mut() {
                if *x == usize::MAX {
                    *x = *it.next().expect("enough old symbols");
                }
            }
            out.push(seq);
            return;
        }
        for p in 1..total {
            if slots[..depth].contains(&p) {
                continue;
            }
            slots[depth] = p;
            rec(depth + 1, k, total, slots, inv, out);
        }
    }
    rec(0, k, total, &mut slots, inv, &mut out);
    out
}

fn closes_a_gate(before: &[(usize, usize)], after: &[(usize, usize)]) -> bool {
    before.iter().any(|g| !after.contains(g))
}

/// All configurations one 3-norm step larger, by the three sufficient
/// extensions, deduplicated by canonical form.
pub fn extend(g: &AbstractConfig) -> Vec<AbstractConfig> {
    let gates = g.open_gates();
    let inv = g.inverse_order();
    let s = inv.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |cand: AbstractConfig, out: &mut Vec<AbstractConfig>| {
        let c = cand.canonical();
        if seen.insert(c.key()) {
            out.push(c);
        }
    };

    // Extensions 1 and 2: a new unoriented 3-cycle segment. Only placements
    // with the three new symbols in increasing order are needed, because the
    // segment is named by its π̄⁻¹ order.
    for order in placements(&inv, 3) {
        let idx: Vec<usize> = (s..s + 3).map(|x| order.iter().position(|&y| y == x).unwrap()).collect();
        if !(idx[0] < idx[1] && idx[1] < idx[2]) {
            continue;
        }
        let mut segs: Vec<Vec<usize>> = g.config.segments.iter().map(|x| x.symbols.clone()).collect();
        segs.push(vec![s, s + 1, s + 2]);
        let Ok(cand) = AbstractConfig::from_inverse_order(&order, segs) else { continue };
        let ok = if gates.is_empty() {
            let new_seg = cand.config.segments.last().expect("just pushed");
            cand.config.segments[..cand.config.segments.len() - 1]
                .iter()
                .any(|old| related(old, new_seg, &cand.pibar))
        } else {
            closes_a_gate(&gates, &cand.open_gates())
        };
        if ok {
            push(cand, &mut out);
        }
    }

    // Extension 3: lengthen one segment by two new symbols.
    for (si, seg) in g.config.segments.iter().enumerate() {
        let k = seg.len();
        for order in placements(&inv, 2) {
            for p in 0..k {
                for q in 0..=k {
                    // Insert s after position p and s+1 at offset q of the result.
                    let mut lengthened: Vec<usize> = seg.symbols.clone();
                    lengthened.insert(p + 1, s);
                    if q > lengthened.len() {
                        continue;
                    }
                    lengthened.insert(q.min(lengthened.len()), s + 1);
                    let mut segs: Vec<Vec<usize>> = g.config.segments.iter().map(|x| x.symbols.clone()).collect();
                    segs[si] = lengthened;
                    let Ok(cand) = AbstractConfig::from_inverse_order(&order, segs) else { continue };
                    let new_seg = &cand.config.segments[si];
                    let bad5 = k == 3 && is_bad_oriented_5cycle(&new_seg.symbols, &cand.pibar);
                    let ok = if bad5 {
                        true
                    } else if is_unoriented_segment(new_seg, &cand.pibar) {
                        let after = cand.open_gates();
                        if gates.is_empty() {
                            after.len() <= 2
                        } else {
                            closes_a_gate(&gates, &after)
                        }
                    } else {
                        false
                    };
                    if ok {
                        push(cand, &mut out);
                    }
                }
            }
        }
    }
    out
}
