use std::fmt;

use crate::arith::units;
use crate::error::{Error, Result};
use crate::residue::ZnMultiset;

/// `Dih(n, X, Y)`: the Cayley digraph of D_n with connection set `x^X ∪ x^Y a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dihedrant {
    n: usize,
    x: ZnMultiset,
    y: ZnMultiset,
}

impl Dihedrant {
    /// Both sets must be plain subsets of Z_n and 0 ∉ X.
    pub fn new(x: ZnMultiset, y: ZnMultiset) -> Result<Self> {
        let n = x.modulus();
        if y.modulus() != n {
            return Err(Error::ModulusMismatch { left: n, right: y.modulus() });
        }
        for s in [&x, &y] {
            if let Some(e) = (0..n).find(|&i| s.count(i) > 1) {
                return Err(Error::NotAPlainSet { element: e, count: s.count(e) });
            }
        }
        if x.contains(0) {
            return Err(Error::Loop);
        }
        Ok(Self { n, x, y })
    }

    pub fn from_elements(n: usize, x: &[i64], y: &[i64]) -> Result<Self> {
        Self::new(ZnMultiset::plain(n, x.iter().copied())?, ZnMultiset::plain(n, y.iter().copied())?)
    }

    /// Parses comma-separated element lists, e.g. `Dihedrant::parse(9, "1,4,7", "0,1")`.
    pub fn parse(n: usize, x: &str, y: &str) -> Result<Self> {
        Self::new(ZnMultiset::parse_plain(n, x)?, ZnMultiset::parse_plain(n, y)?)
    }

    pub fn from_masks(n: usize, x: u64, y: u64) -> Result<Self> {
        Self::new(ZnMultiset::from_mask(n, x)?, ZnMultiset::from_mask(n, y)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &ZnMultiset {
        &self.x
    }

    pub fn y(&self) -> &ZnMultiset {
        &self.y
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn degree(&self) -> usize {
        (self.x.size() + self.y.size()) as usize
    }

    /// `Dih(n, bX, b' + bY)`, isomorphic to `self` for every unit `b`.
    pub fn transform(&self, b: i64, shift: i64) -> Result<Self> {
        let x = self.x.dilate_unit(b)?;
        let y = self.y.dilate_unit(b)?.translate(shift);
        Ok(Self { n: self.n, x, y })
    }

    /// `Dih(n, Z_n∖{0}∖X, Z_n∖Y)`.
    pub fn complement(&self) -> Self {
        let mut x = self.x.complement();
        x = x.msdiff(&ZnMultiset::singleton(self.n, 0).expect("valid modulus")).expect("same modulus");
        Self { n: self.n, x, y: self.y.complement() }
    }

    /// Lexicographically least `(mask(bX), mask(b' + bY))` over all transforms.
    pub fn canonical_form(&self) -> Result<(u64, u64)> {
        let n = self.n;
        if n > 64 {
            return Err(Error::InvalidArgument(format!("canonical forms need n <= 64, got {n}")));
        }
        let xs: Vec<usize> = self.x.support();
        let ys: Vec<usize> = self.y.support();
        let mut best = (u64::MAX, u64::MAX);
        for b in units(n) {
            let bx = xs.iter().fold(0u64, |m, &e| m | 1 << (e * b % n));
            if bx > best.0 {
                continue;
            }
            let by: Vec<usize> = ys.iter().map(|&e| e * b % n).collect();
            for shift in 0..n {
                let m = by.iter().fold(0u64, |m, &e| m | 1 << ((e + shift) % n));
                best = best.min((bx, m));
            }
        }
        Ok(best)
    }

    pub fn is_canonical(&self) -> Result<bool> {
        let own = (self.x.to_mask().expect("plain"), self.y.to_mask().expect("plain"));
        Ok(self.canonical_form()? == own)
    }

    /// All distinct `(mask X, mask Y)` in the transform orbit, sorted.
    pub fn transform_orbit(&self) -> Result<Vec<(u64, u64)>> {
        let n = self.n;
        if n > 64 {
            return Err(Error::InvalidArgument(format!("bitmask orbits need n <= 64, got {n}")));
        }
        let mut out = Vec::new();
        for b in units(n) {
            for shift in 0..n {
                let d = self.transform(b as i64, shift as i64)?;
                out.push((d.x.to_mask().expect("plain"), d.y.to_mask().expect("plain")));
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        AdjacencyMatrix::of(self)
    }
}

pub fn transform(d: &Dihedrant, b: i64, shift: i64) -> Result<Dihedrant> {
    d.transform(b, shift)
}

pub fn canonical_form(d: &Dihedrant) -> Result<(u64, u64)> {
    d.canonical_form()
}

pub fn complement_dihedrant(d: &Dihedrant) -> Dihedrant {
    d.complement()
}

impl fmt::Display for Dihedrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dih({},{{{}}},{{{}}})", self.n, self.x, self.y)
    }
}

impl fmt::Debug for Dihedrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A 0/1 matrix stored as row and column bitsets, so that `(A²)_{ij}` is one
/// popcount per word.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    size: usize,
    words: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn zeros(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        Self { size, words, rows: vec![0; size * words], cols: vec![0; size * words] }
    }

    /// Vertex `i < n` is `x^i`, vertex `n + i` is `x^i a`.
    pub fn of(d: &Dihedrant) -> Self {
        let n = d.n;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let fwd = (j + n - i) % n;
                let back = (i + n - j) % n;
                if d.x.contains(fwd) {
                    m.set(i, j);
                }
                if d.y.contains(fwd) {
                    m.set(i, n + j);
                }
                if d.y.contains(back) {
                    m.set(n + i, j);
                }
                if d.x.contains(back) {
                    m.set(n + i, n + j);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), rows.len(), "matrix must be square");
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j);
                }
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.cols[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn col(&self, j: usize) -> &[u64] {
        &self.cols[j * self.words..(j + 1) * self.words]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        self.col(j).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(A²)_{ij}`: the number of directed 2-paths from i to j.
    pub fn square_entry(&self, i: usize, j: usize) -> usize {
        self.row(i).iter().zip(self.col(j)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn square(&self) -> Vec<Vec<i64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.square_entry(i, j) as i64).collect())
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.size).map(|i| (0..self.size).map(|j| u8::from(self.get(i, j))).collect()).collect()
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let line: String = (0..self.size).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dih(n: usize, x: &[i64], y: &[i64]) -> Dihedrant {
        Dihedrant::from_elements(n, x, y).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert_eq!(Dihedrant::from_elements(3, &[0, 1], &[1]), Err(Error::Loop));
        assert!(matches!(
            Dihedrant::from_elements(3, &[1, 4], &[1]),
            Err(Error::DuplicateElement { element: 1 })
        ));
        let d = dih(9, &[1, 4, 7], &[0, 1]);
        assert_eq!((d.vertex_count(), d.degree()), (18, 5));
        assert_eq!(d.to_string(), "Dih(9,{1,4,7},{0,1})");
    }

    #[test]
    fn adjacency_small() {
        let a = dih(3, &[1], &[1]).adjacency();
        let row0: Vec<usize> = (0..6).filter(|&j| a.get(0, j)).collect();
        assert_eq!(row0, vec![1, 4]);
        for i in 0..6 {
            assert_eq!((a.row_sum(i), a.col_sum(i)), (2, 2));
        }
        // A² = I + (J − I − A) for (6,2,1,0,1)
        let sq = a.square();
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i == j { 1 } else if a.get(i, j) { 0 } else { 1 };
                assert_eq!(sq[i][j], expected);
            }
        }
        assert!(a.to_string().starts_with("010010\n"));
    }

    #[test]
    fn wide_matrices_use_several_words() {
        let d = dih(40, &[1, 2, 39], &[0, 5]);
        let a = d.adjacency();
        let rows = a.to_rows();
        assert_eq!(AdjacencyMatrix::from_rows(&rows), a);
        for i in 0..80 {
            assert_eq!(a.row_sum(i), 5);
            assert_eq!(a.col_sum(i), 5);
        }
        let brute: usize = (0..80).map(|k| usize::from(rows[3][k] == 1 && rows[k][77] == 1)).sum();
        assert_eq!(a.square_entry(3, 77), brute);
    }

    #[test]
    fn transforms_and_canonical_forms() {
        let d = dih(3, &[1], &[1]);
        assert_eq!(d.transform(2, 0).unwrap(), dih(3, &[2], &[2]));
        assert!(matches!(d.transform(3, 0), Err(Error::NotAUnit { .. })));
        assert_eq!(d.canonical_form().unwrap(), dih(3, &[2], &[2]).canonical_form().unwrap());
        assert_eq!(d.canonical_form().unwrap(), (0b010, 0b001));
        assert!(!d.is_canonical().unwrap());
        assert!(dih(3, &[1], &[0]).is_canonical().unwrap());
        assert_eq!(d.transform_orbit().unwrap().len(), 6);
    }

    #[test]
    fn complements() {
        let d = dih(3, &[1], &[1]);
        assert_eq!(d.complement(), dih(3, &[2], &[0, 2]));
        assert_eq!(d.complement().complement(), d);
    }
}
