//! Exact transposition distances: breadth-first tables over all of Sn for
//! small n and iterative deepening with the 3-norm bound for the rest.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU8, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Permutation, TranspositionDesc};

/// Largest n built without an explicit opt-in.
pub const DEFAULT_TABLE_CAP: usize = 10;
/// Largest n ever built (n! bytes, about 40 MB).
pub const MAX_TABLE_N: usize = 11;

const MAGIC: &[u8; 4] = b"TDPT";
const VERSION: u32 = 1;
const UNSEEN: u8 = u8::MAX;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer-code rank of a one-line permutation of `1..=n`, n ≤ 16.
pub fn rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut unused: u32 = (1u32 << (n + 1)) - 2;
    let mut r = 0;
    for (i, &v) in p.iter().enumerate() {
        let below = unused & ((1u32 << v) - 1);
        r = r * (n - i) + below.count_ones() as usize;
        unused &= !(1u32 << v);
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(mut r: usize, n: usize, out: &mut [u8]) {
    let mut digits = [0usize; 16];
    for i in (0..n).rev() {
        digits[i] = r % (n - i);
        r /= n - i;
    }
    let mut unused: u32 = (1u32 << (n + 1)) - 2;
    for i in 0..n {
        let mut m = unused;
        for _ in 0..digits[i] {
            m &= m - 1;
        }
        let v = m.trailing_zeros();
        out[i] = v as u8;
        unused &= !(1u32 << v);
    }
}

fn block_swap(src: &[u8], i: usize, j: usize, k: usize, dst: &mut [u8]) {
    dst[..i].copy_from_slice(&src[..i]);
    let mut w = i;
    for &v in src[j..k].iter().chain(&src[i..j]) {
        dst[w] = v;
        w += 1;
    }
    dst[k..].copy_from_slice(&src[k..]);
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..=n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Distances from ι to every permutation of one length, indexed by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn distances(&self) -> &[u8] {
        &self.dist
    }

    pub fn get(&self, pi: &Permutation) -> Result<usize> {
        if pi.len() != self.n {
            return Err(Error::LengthMismatch { left: pi.len(), right: self.n });
        }
        let p: Vec<u8> = pi.as_slice().iter().map(|&v| v as u8).collect();
        Ok(self.dist[rank(&p)] as usize)
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    /// Number of permutations at each distance.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.diameter() + 1];
        for &d in &self.dist {
            h[d as usize] += 1;
        }
        h
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&0u32.to_le_bytes())?;
        w.write_all(&self.dist)?;
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header).map_err(|_| Error::TableFormat("short header".into()))?;
        if &header[..4] != MAGIC {
            return Err(Error::TableFormat("bad magic".into()));
        }
        let word = |i: usize| u32::from_le_bytes(header[i..i + 4].try_into().unwrap());
        if word(4) != VERSION {
            return Err(Error::TableFormat(format!("unsupported version {}", word(4))));
        }
        let n = word(8) as usize;
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::TableFormat(format!("n = {n} out of range")));
        }
        let mut dist = Vec::with_capacity(factorial(n));
        r.read_to_end(&mut dist)?;
        if dist.len() != factorial(n) {
            return Err(Error::TableFormat(format!("expected {} entries, found {}", factorial(n), dist.len())));
        }
        if dist.iter().any(|&d| d == UNSEEN) {
            return Err(Error::TableFormat("incomplete table".into()));
        }
        Ok(Self { n, dist })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(fs::File::create(path)?);
        self.write_to(&mut f)?;
        f.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut f = std::io::BufReader::new(fs::File::open(path)?);
        Self::read_from(&mut f)
    }
}

/// Table for `n ≤ DEFAULT_TABLE_CAP`.
pub fn build_table(n: usize) -> Result<DistanceTable> {
    build_table_capped(n, DEFAULT_TABLE_CAP)
}

/// Level-synchronous BFS from ι; `cap` may be raised up to [`MAX_TABLE_N`].
pub fn build_table_capped(n: usize, cap: usize) -> Result<DistanceTable> {
    if n == 0 || n > cap.min(MAX_TABLE_N) {
        return Err(Error::ResourceLimit(format!("distance table for n = {n} (cap {})", cap.min(MAX_TABLE_N))));
    }
    let total = factorial(n);
    let dist: Vec<AtomicU8> = (0..total).map(|_| AtomicU8::new(UNSEEN)).collect();
    dist[0].store(0, Ordering::Relaxed);
    let moves = triples(n);
    let mut level = 0u8;
    loop {
        let found: usize = (0..total)
            .into_par_iter()
            .with_min_len(4096)
            .map_init(
                || (vec![0u8; n], vec![0u8; n]),
                |(cur, next), r| {
                    if dist[r].load(Ordering::Relaxed) != level {
                        return 0;
                    }
                    unrank(r, n, cur);
                    let mut hits = 0;
                    for &(i, j, k) in &moves {
                        block_swap(cur, i, j, k, next);
                        let q = rank(next);
                        if dist[q].compare_exchange(UNSEEN, level + 1, Ordering::Relaxed, Ordering::Relaxed).is_ok() {
                            hits += 1;
                        }
                    }
                    hits
                },
            )
            .sum();
        if found == 0 {
            break;
        }
        level += 1;
    }
    Ok(DistanceTable { n, dist: dist.into_iter().map(AtomicU8::into_inner).collect() })
}

/// 3-norm of a one-line permutation: `(n + 1 - c_odd) / 2`.
fn norm_of_line(p: &[u8]) -> usize {
    let m = p.len() + 1;
    // pred[x] is the symbol before x in (0 p1 ... pn).
    let mut pred = [0usize; 256];
    let mut prev = 0usize;
    for &v in p {
        pred[v as usize] = prev;
        prev = v as usize;
    }
    pred[0] = prev;
    let mut seen = [false; 256];
    let mut odd = 0;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = (pred[x] + 1) % m;
        }
        odd += len % 2;
    }
    (m - odd) / 2
}

struct Ida {
    moves: Vec<(usize, usize, usize)>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
    bufs: Vec<Vec<u8>>,
}

impl Ida {
    fn go(&mut self, depth: usize, g: usize, bound: usize) -> bool {
        let h = norm_of_line(&self.bufs[depth]);
        if h == 0 {
            return true;
        }
        if g + h > bound {
            return false;
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && Instant::now() > self.deadline {
            self.timed_out = true;
            return false;
        }
        for m in 0..self.moves.len() {
            let (i, j, k) = self.moves[m];
            let (head, tail) = self.bufs.split_at_mut(depth + 1);
            block_swap(&head[depth], i, j, k, &mut tail[0]);
            if self.go(depth + 1, g + 1, bound) {
                return true;
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Exact distance: table lookup when `table` covers `pi`, otherwise
/// iterative deepening from the 3-norm bound until `timeout`.
pub fn exact_distance(pi: &Permutation, table: Option<&DistanceTable>, timeout: Duration) -> Result<usize> {
    if let Some(t) = table.filter(|t| t.n() == pi.len()) {
        return t.get(pi);
    }
    if pi.len() > 255 {
        return Err(Error::ResourceLimit(format!("exact search for n = {}", pi.len())));
    }
    let line: Vec<u8> = pi.as_slice().iter().map(|&v| v as u8).collect();
    let lower = norm_of_line(&line);
    let mut ida = Ida {
        moves: triples(pi.len()),
        deadline: Instant::now() + timeout,
        nodes: 0,
        timed_out: false,
        bufs: Vec::new(),
    };
    let mut bound = lower;
    loop {
        ida.bufs = vec![line.clone(); bound + 1];
        if ida.go(0, 0, bound) {
            return Ok(bound);
        }
        if ida.timed_out {
            let upper = crate::solver::sbt1375(pi).map(|r| r.distance).unwrap_or(usize::MAX);
            return Err(Error::Timeout { lower: bound, upper });
        }
        bound += 1;
    }
}

/// Lazily built tables for every n up to a cap, with search beyond.
#[derive(Debug, Default)]
pub struct Oracle {
    tables: BTreeMap<usize, DistanceTable>,
    cap: usize,
    pub timeout: Option<Duration>,
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Self { tables: BTreeMap::new(), cap, timeout: None }
    }

    pub fn insert(&mut self, table: DistanceTable) {
        self.tables.insert(table.n(), table);
    }

    pub fn table(&mut self, n: usize) -> Result<&DistanceTable> {
        if !self.tables.contains_key(&n) {
            let t = build_table_capped(n, self.cap)?;
            self.tables.insert(n, t);
        }
        Ok(&self.tables[&n])
    }

    pub fn distance(&mut self, pi: &Permutation) -> Result<usize> {
        let n = pi.len();
        if n == 0 {
            return Ok(0);
        }
        if n <= self.cap {
            return self.table(n)?.get(pi);
        }
        exact_distance(pi, None, self.timeout.unwrap_or(Duration::from_secs(60)))
    }
}

/// Applies a one-line transposition given 1-based block boundaries.
pub fn apply_desc(p: &[u8], t: TranspositionDesc) -> Vec<u8> {
    let mut out = vec![0; p.len()];
    block_swap(p, t.i - 1, t.j - 1, t.k - 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lower_bound;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_round_trip() {
        let mut buf = [0u8; 6];
        for r in 0..720 {
            unrank(r, 6, &mut buf);
            assert_eq!(rank(&buf), r);
        }
        assert_eq!(rank(&[1, 2, 3, 4]), 0);
        assert_eq!(rank(&[4, 3, 2, 1]), 23);
    }

    #[test]
    fn norm_of_line_matches_lower_bound() {
        let mut buf = [0u8; 6];
        for r in 0..720 {
            unrank(r, 6, &mut buf);
            let p = Permutation::new(buf.iter().map(|&v| v as usize).collect()).unwrap();
            assert_eq!(norm_of_line(&buf), lower_bound(&p));
        }
    }

    #[test]
    fn small_diameters() {
        let d: Vec<usize> = (2..=7).map(|n| build_table(n).unwrap().diameter()).collect();
        assert_eq!(d, vec![1, 2, 3, 3, 4, 4]);
        let rev = perm(&[7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(exact_distance(&rev, None, Duration::from_secs(30)).unwrap(), 4);
    }

    #[test]
    fn table_agrees_with_search() {
        let t = build_table(6).unwrap();
        let mut buf = [0u8; 6];
        for r in (0..720).step_by(7) {
            unrank(r, 6, &mut buf);
            let p = Permutation::new(buf.iter().map(|&v| v as usize).collect()).unwrap();
            assert_eq!(exact_distance(&p, None, Duration::from_secs(10)).unwrap(), t.get(&p).unwrap());
        }
    }

    #[test]
    fn one_step_permutations() {
        let t = build_table(5).unwrap();
        let id: Vec<u8> = (1..=5).collect();
        for d in TranspositionDesc::all(5) {
            let q = apply_desc(&id, d);
            assert_eq!(t.distances()[rank(&q)], 1, "{d}");
        }
        assert_eq!(t.histogram().iter().sum::<usize>(), 120);
    }

    #[test]
    fn fixture_distances() {
        assert_eq!(exact_distance(&perm(&[4, 3, 2, 1, 8, 7, 6, 5]), None, Duration::from_secs(30)).unwrap(), 4);
        assert_eq!(exact_distance(&perm(&[3, 6, 2, 5, 1, 4, 10, 9, 8, 7]), None, Duration::from_secs(60)).unwrap(), 5);
    }

    #[test]
    fn file_round_trip_and_rejects() {
        let t = build_table(4).unwrap();
        let mut bytes = Vec::new();
        t.write_to(&mut bytes).unwrap();
        assert_eq!(&bytes[..4], b"TDPT");
        assert_eq!(bytes.len(), 16 + 24);
        assert_eq!(DistanceTable::read_from(&mut bytes.as_slice()).unwrap(), t);
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(DistanceTable::read_from(&mut bad.as_slice()), Err(Error::TableFormat(_))));
        assert!(DistanceTable::read_from(&mut bytes[..30].as_ref()).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(build_table(11), Err(Error::ResourceLimit(_))));
        assert!(matches!(build_table(0), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn timeout_reports_bounds() {
        let p = perm(&[4, 8, 3, 7, 2, 6, 1, 5, 9, 14, 13, 12, 11, 10]);
        match exact_distance(&p, None, Duration::from_millis(0)) {
            Err(Error::Timeout { lower, upper }) => assert!(lower <= upper),
            Ok(d) => assert_eq!(d, 7),
            Err(e) => panic!("{e}"),
        }
    }
}
