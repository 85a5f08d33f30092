//! Re-derivation of the case analysis: grow the basic configurations by the
//! sufficient extensions and check that every branch either admits an
//! 11/8-sequence or stays a bad small component.

use std::collections::HashSet;
use std::fmt;

use super::{find_eleven_eighths, MoveSequence};
use crate::error::Result;
use crate::structures::{extend, AbstractConfig, ComponentKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    SequenceFound { x: usize, y: usize },
    Extended,
    BadSmall(ComponentKind),
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SequenceFound { x, y } => write!(f, "sequence_found({x},{y})"),
            Verdict::Extended => f.write_str("extended"),
            Verdict::BadSmall(kind) => write!(f, "bad_small({kind})"),
            Verdict::Counterexample => f.write_str("counterexample"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditRecord {
    pub norm: usize,
    pub config: AbstractConfig,
    pub verdict: Verdict,
}

impl fmt::Display for AuditRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "norm={} config={} verdict={}", self.norm, self.config, self.verdict)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    /// Unions of bad small components with 3-norm at least 8.
    pub unions: Vec<AuditRecord>,
    /// Unions with no side-by-side order that is the cycle graph of a permutation.
    pub unrealizable_unions: usize,
}

impl AuditReport {
    pub fn counterexamples(&self) -> usize {
        self.records.iter().chain(&self.unions).filter(|r| r.verdict == Verdict::Counterexample).count()
    }

    /// `(norm, kind)` of every configuration found to be bad and small.
    pub fn bad_small(&self) -> Vec<(usize, ComponentKind)> {
        let mut out: Vec<(usize, ComponentKind)> = self
            .records
            .iter()
            .filter_map(|r| match r.verdict {
                Verdict::BadSmall(k) => Some((r.norm, k)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.records.iter().map(|r| r.to_string()).collect();
        out.extend(self.unions.iter().map(|r| format!("union {r}")));
        out
    }
}

fn record_for(config: AbstractConfig, norm_limit: usize, out: &mut Vec<AbstractConfig>) -> Result<AuditRecord> {
    let norm = config.norm();
    let st = config.to_state()?;
    let verdict = match find_eleven_eighths(&config.config, &st) {
        Some(seq) => Verdict::SequenceFound { x: seq.x, y: seq.y },
        None if norm >= 9 => Verdict::Counterexample,
        None => {
            if norm < norm_limit {
                out.extend(extend(&config));
            }
            if config.is_full() {
                Verdict::BadSmall(config.classify())
            } else {
                Verdict::Extended
            }
        }
    };
    Ok(AuditRecord { norm, config, verdict })
}

/// Depth-first over canonical configurations up to `norm_limit`, then the
/// unions of the bad small components found whose 3-norm lies in
/// `[8, norm_limit]`.
pub fn audit_cases(norm_limit: usize) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    let mut seen = HashSet::new();
    let mut stack: Vec<AbstractConfig> = vec![
        AbstractConfig::unoriented_interleaving_pair(),
        AbstractConfig::unoriented_intersecting_pair(),
        AbstractConfig::bad_oriented_5cycle(),
    ];
    for g in stack.iter_mut() {
        *g = g.canonical();
    }
    while let Some(g) = stack.pop() {
        if !seen.insert(g.key()) {
            continue;
        }
        let mut children = Vec::new();
        let rec = record_for(g, norm_limit, &mut children)?;
        report.records.push(rec);
        children.reverse();
        stack.extend(children);
    }

    let catalog: Vec<AbstractConfig> = report
        .records
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::BadSmall(k) if k.is_bad()))
        .map(|r| r.config.clone())
        .collect();
    let mut chosen = Vec::new();
    unions(&catalog, 0, 0, norm_limit, &mut chosen, &mut |parts| {
        let Some(union) = realizable_union(parts) else {
            report.unrealizable_unions += 1;
            return;
        };
        let norm = union.norm();
        let verdict = match check_union(parts) {
            Some(seq) => Verdict::SequenceFound { x: seq.x, y: seq.y },
            None => Verdict::Counterexample,
        };
        report.unions.push(AuditRecord { norm, config: union, verdict });
    });
    Ok(report)
}

fn unions(
    catalog: &[AbstractConfig],
    from: usize,
    norm: usize,
    limit: usize,
    chosen: &mut Vec<AbstractConfig>,
    f: &mut dyn FnMut(&[AbstractConfig]),
) {
    if norm >= 8 {
        f(chosen);
        return;
    }
    for i in from..catalog.len() {
        let k = catalog[i].norm();
        if norm + k > limit {
            continue;
        }
        chosen.push(catalog[i].clone());
        unions(catalog, i, norm + k, limit, chosen, f);
        chosen.pop();
    }
}

/// The first ordering of `parts` (in lexicographic order of part indices)
/// whose side-by-side placement is realized by a permutation.
pub fn realizable_union(parts: &[AbstractConfig]) -> Option<AbstractConfig> {
    let mut order: Vec<usize> = (0..parts.len()).collect();
    let mut seen = HashSet::new();
    loop {
        let keys: Vec<_> = order.iter().map(|&i| parts[i].key()).collect();
        if seen.insert(keys) {
            let placed: Vec<AbstractConfig> = order.iter().map(|&i| parts[i].clone()).collect();
            let union = AbstractConfig::juxtapose(&placed);
            if union.realize().is_some() {
                return Some(union);
            }
        }
        if !next_order(&mut order) {
            return None;
        }
    }
}

fn next_order(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An 11/8-sequence for bad small components placed side by side, using
/// the first realizable ordering.
pub fn check_union(parts: &[AbstractConfig]) -> Option<MoveSequence> {
    let union = realizable_union(parts)?;
    let st = union.to_state().ok()?;
    find_eleven_eighths(&union.config, &st)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_two_covers_the_basic_configurations() {
        let report = audit_cases(2).unwrap();
        assert_eq!(report.records.len(), 3);
        assert_eq!(report.counterexamples(), 0);
        assert!(report.unions.is_empty());
    }

    fn bad_catalog() -> Vec<AbstractConfig> {
        let report = audit_cases(4).unwrap();
        report
            .records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::BadSmall(_)))
            .map(|r| r.config.clone())
            .collect()
    }

    #[test]
    fn two_pairs_and_a_necklace() {
        let cat = bad_catalog();
        let pair = AbstractConfig::unoriented_interleaving_pair().canonical();
        let necklaces: Vec<&AbstractConfig> =
            cat.iter().filter(|c| c.classify() == ComponentKind::Necklace4).collect();
        assert_eq!(necklaces.len(), 2);
        let realizable: Vec<&AbstractConfig> = necklaces.iter().copied().filter(|c| c.realize().is_some()).collect();
        assert_eq!(realizable.len(), 1);
        let parts = vec![pair.clone(), pair, realizable[0].clone()];
        assert_eq!(realizable_union(&parts).unwrap().norm(), 8);
        let seq = check_union(&parts).expect("sequence");
        assert!(seq.is_eleven_eighths());
        let st = realizable_union(&parts).unwrap().to_state().unwrap();
        assert_eq!(MoveSequence::replay(&st, &seq.steps).unwrap().profile(), seq.profile());
    }

    #[test]
    fn realized_pair_is_the_reversal() {
        let pair = AbstractConfig::unoriented_interleaving_pair();
        assert_eq!(pair.realize().unwrap().as_slice(), &[5, 4, 3, 2, 1]);
    }

    #[test]
    fn limit_three_has_no_counterexamples() {
        let report = audit_cases(3).unwrap();
        assert_eq!(report.counterexamples(), 0);
        assert!(report.records.iter().any(|r| r.norm == 3));
    }
}
