//! Permutations in one-line form, permutations in disjoint-cycle form, and the
//! block transposition `rho(i,j,k)`.
//!
//! The one-line layer is 1-based (`[p1 .. pn]` over `1..=n`); the cycle layer
//! works on the 0-based ground set `0..size`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation `[p1 .. pn]` of `1..=n` in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotBijection(format!(
                    "value {v} out of range or repeated in length {n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.image
    }

    /// Value at 1-based position `i`.
    pub fn get(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { image: inv }
    }

    /// Function composition `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(Self { image: other.image.iter().map(|&v| self.image[v - 1]).collect() })
    }

    /// Returns `[p1..p(i-1) pj..p(k-1) pi..p(j-1) pk..pn]`.
    pub fn apply_transposition(&self, t: TranspositionDesc) -> Result<Self> {
        t.check(self.len())?;
        let (i, j, k) = (t.i - 1, t.j - 1, t.k - 1);
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.image[..i]);
        out.extend_from_slice(&self.image[j..k]);
        out.extend_from_slice(&self.image[i..j]);
        out.extend_from_slice(&self.image[k..]);
        Ok(Self { image: out })
    }

    /// Applies a whole sequence, failing on the first invalid descriptor.
    pub fn apply_all(&self, steps: &[TranspositionDesc]) -> Result<Self> {
        let mut p = self.clone();
        for &t in steps {
            p = p.apply_transposition(t)?;
        }
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace or comma separated values, optionally in brackets.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|c| if c == ',' || c == '[' || c == ']' { ' ' } else { c })
            .collect();
        let image = cleaned
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| Error::Parse(format!("bad value {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

/// The block transposition `rho(i,j,k)` with `1 <= i < j < k <= n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionDesc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl TranspositionDesc {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(1 <= i && i < j && j < k) {
            return Err(Error::IndexViolation { i, j, k, n: 0 });
        }
        Ok(Self { i, j, k })
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if 1 <= self.i && self.i < self.j && self.j < self.k && self.k <= n + 1 {
            Ok(())
        } else {
            Err(Error::IndexViolation { i: self.i, j: self.j, k: self.k, n })
        }
    }

    /// The transposition that swaps the two blocks back.
    pub fn undo(&self) -> Self {
        Self { i: self.i, j: self.i + (self.k - self.j), k: self.k }
    }

    /// Every valid descriptor for length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                for k in j + 1..=n + 1 {
                    out.push(Self { i, j, k });
                }
            }
        }
        out
    }
}

impl fmt::Display for TranspositionDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho({},{},{})", self.i, self.j, self.k)
    }
}

impl FromStr for TranspositionDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches("rho")
            .trim_start_matches('ρ')
            .trim_start_matches('(')
            .trim_end_matches(')');
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [i, j, k] => Self::new(i, j, k),
            _ => Err(Error::Parse(format!("expected three indices in {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A permutation of `0..size`, stored as its function table. Cycle views are
/// produced in canonical form: each cycle starts at its maximum, cycles sorted
/// by maximum descending, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclePerm {
    images: Vec<usize>,
}

impl CyclePerm {
    pub fn identity(size: usize) -> Self {
        Self { images: (0..size).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Builds from cycles; symbols not mentioned are fixed.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..size).collect();
        let mut seen = vec![false; size];
        for cyc in cycles {
            for (idx, &x) in cyc.iter().enumerate() {
                if x >= size || seen[x] {
                    return Err(Error::NotBijection(format!(
                        "symbol {x} repeated or outside ground set of size {size}"
                    )));
                }
                seen[x] = true;
                images[x] = cyc[(idx + 1) % cyc.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses `"(0 11 13)(1 7 4)"`; commas are accepted as separators. The
    /// ground set defaults to one past the largest symbol.
    pub fn parse(text: &str, size: Option<usize>) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let cyc = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad symbol {p:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cyc);
            rest = open[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let size = size.unwrap_or(max);
        if size < max {
            return Err(Error::Parse(format!("symbol outside ground set of size {size}")));
        }
        Self::from_cycles(size, &cycles)
    }

    /// Canonical cycles, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in (0..n).rev() {
            if seen[start] {
                continue;
            }
            // Scanning from the top means `start` is the maximum of its cycle.
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Canonical cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&x| self.images[x] != x).collect()
    }

    /// `self ∘ other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ground_size() != other.ground_size() {
            return Err(Error::GroundMismatch { left: self.ground_size(), right: other.ground_size() });
        }
        Ok(Self { images: other.images.iter().map(|&y| self.images[y]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn parity(&self) -> Parity {
        parity(self)
    }

    /// Number of odd-length cycles, fixed points included.
    pub fn odd_cycle_count(&self) -> usize {
        self.cycles().iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// Canonical text without fixed points; `()` for the identity.
    pub fn to_compact_string(&self) -> String {
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles.iter().map(|c| fmt_cycle(c)).collect()
    }
}

/// Decomposes a function table on `0..f.len()` into canonical cycles.
pub fn decompose(f: &[usize]) -> Result<CyclePerm> {
    let n = f.len();
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || seen[y] {
            return Err(Error::NotBijection(format!("value {y} repeated or out of range")));
        }
        seen[y] = true;
    }
    Ok(CyclePerm { images: f.to_vec() })
}

pub fn parity(a: &CyclePerm) -> Parity {
    let transpositions: usize = a.cycles().iter().map(|c| c.len() - 1).sum();
    if transpositions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub(crate) fn fmt_cycle(c: &[usize]) -> String {
    let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(" "))
}

impl fmt::Display for CyclePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            f.write_str(&fmt_cycle(&c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rho(i: usize, j: usize, k: usize) -> TranspositionDesc {
        TranspositionDesc::new(i, j, k).unwrap()
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(p("4 3 2 1 8 7 6 5").apply_transposition(rho(4, 6, 9)).unwrap(), p("4 3 2 7 6 5 1 8"));
        assert_eq!(p("1 2 3").apply_transposition(rho(1, 2, 3)).unwrap(), p("2 1 3"));
        assert_eq!(
            p("3 6 2 5 1 4 10 9 8 7").apply_transposition(rho(6, 8, 11)).unwrap(),
            p("3 6 2 5 1 9 8 7 4 10")
        );
    }

    #[test]
    fn transposition_range_errors() {
        assert!(TranspositionDesc::new(2, 2, 3).is_err());
        assert!(matches!(
            p("1 2 3").apply_transposition(rho(1, 2, 5)),
            Err(Error::IndexViolation { .. })
        ));
    }

    #[test]
    fn figure_sequences_sort() {
        let steps: Vec<_> = [(4, 6, 9), (3, 5, 8), (2, 4, 7), (1, 3, 6)].iter().map(|&(i, j, k)| rho(i, j, k)).collect();
        assert!(p("4 3 2 1 8 7 6 5").apply_all(&steps).unwrap().is_identity());
        let steps: Vec<_> = [(6, 8, 11), (5, 7, 10), (3, 6, 9), (2, 4, 8), (1, 3, 5)]
            .iter()
            .map(|&(i, j, k)| rho(i, j, k))
            .collect();
        assert!(p("3 6 2 5 1 4 10 9 8 7").apply_all(&steps).unwrap().is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!("1 x".parse::<Permutation>().is_err());
        assert!(decompose(&[0, 0]).is_err());
    }

    #[test]
    fn compose_examples() {
        let tau = CyclePerm::parse("(0 2 7)", Some(9)).unwrap();
        let pibar = CyclePerm::parse("(0 4 3 2 1 8 7 6 5)", None).unwrap();
        let want = CyclePerm::parse("(0 4 3 7 6 5 2 1 8)", None).unwrap();
        assert_eq!(tau.compose(&pibar).unwrap(), want);

        // (0 1 2) is not applicable; its product splits the 9-cycle.
        let tau = CyclePerm::parse("(0 1 2)", Some(9)).unwrap();
        let want = CyclePerm::parse("(0 4 3)(1 8 7 6 5)(2)", None).unwrap();
        assert_eq!(tau.compose(&pibar).unwrap(), want);
        let tau = CyclePerm::parse("(1 2 7)", Some(9)).unwrap();
        let want = CyclePerm::parse("(0 4 3 7 6 5)(1 8)(2)", None).unwrap();
        assert_eq!(tau.compose(&pibar).unwrap(), want);

        assert_eq!(CyclePerm::identity(9).compose(&pibar).unwrap(), pibar);
        assert!(matches!(
            CyclePerm::identity(3).compose(&pibar),
            Err(Error::GroundMismatch { .. })
        ));
    }

    #[test]
    fn canonical_text() {
        let c = CyclePerm::parse("(0 4 3 7 6 5)(1 8)(2)", None).unwrap();
        assert_eq!(c.to_string(), "(8 1)(7 6 5 0 4 3)(2)");
        assert_eq!(c.to_compact_string(), "(8 1)(7 6 5 0 4 3)");
        assert_eq!(CyclePerm::identity(3).to_string(), "(2)(1)(0)");
        assert_eq!(CyclePerm::identity(3).to_compact_string(), "()");
    }

    #[test]
    fn inverse_examples() {
        let c = CyclePerm::parse("(0 1 2)", None).unwrap();
        assert_eq!(c.inverse(), CyclePerm::parse("(0 2 1)", None).unwrap());
        assert_eq!(CyclePerm::identity(4).inverse(), CyclePerm::identity(4));
        let big = CyclePerm::parse("(0 4 3 2 1 8 7 6 5)", None).unwrap();
        assert!(big.inverse().compose(&big).unwrap().is_identity());
    }

    #[test]
    fn decompose_one_line_example() {
        // [4 8 3 7 2 6 1 5] as i -> p_i on 1..=8; symbol 0 is padding.
        let f = [0, 4, 8, 3, 7, 2, 6, 1, 5];
        let c = decompose(&f).unwrap();
        let want = CyclePerm::parse("(1 4 7)(3)(2 8 5)", Some(9)).unwrap();
        assert_eq!(c, want);
        assert!(c.cycles().contains(&vec![3]));
        assert_eq!(decompose(&[0, 1, 2, 3]).unwrap().cycles().len(), 4);
    }

    #[test]
    fn parity_examples() {
        let c = CyclePerm::parse("(1 4 7)(2 8 5)", None).unwrap();
        assert_eq!(c.parity(), Parity::Even);
        let t = CyclePerm::parse("(3 5)", None).unwrap();
        assert_eq!(t.parity(), Parity::Odd);
    }

    #[test]
    fn kcycle_parity_exhaustive() {
        for k in 1..=12 {
            let c = CyclePerm::from_cycles(12, &[(0..k).collect()]).unwrap();
            let want = if k % 2 == 1 { Parity::Even } else { Parity::Odd };
            assert_eq!(c.parity(), want, "k = {k}");
        }
    }

    #[test]
    fn rho_text_round_trip() {
        let t = rho(2, 5, 9);
        assert_eq!(t.to_string(), "rho(2,5,9)");
        assert_eq!(t.to_string().parse::<TranspositionDesc>().unwrap(), t);
        assert_eq!("ρ(1,3,6)".parse::<TranspositionDesc>().unwrap(), rho(1, 3, 6));
    }
}
