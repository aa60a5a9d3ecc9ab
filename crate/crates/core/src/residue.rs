//! Multisets over Z_n, the Z_n^*-orbits, and the maps between Z_n and its quotients.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::arith::{gcd, is_unit, modulo, totient};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_MODULUS: usize = 1 << 20;

static MAX_MODULUS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_MODULUS);

/// Largest modulus accepted when constructing multisets.
pub fn max_modulus() -> usize {
    MAX_MODULUS.load(Ordering::Relaxed)
}

pub fn set_max_modulus(cap: usize) {
    MAX_MODULUS.store(cap.max(1), Ordering::Relaxed);
}

fn check_modulus(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let cap = max_modulus();
    if n > cap {
        return Err(Error::ModulusTooLarge { n, cap });
    }
    Ok(())
}

/// A multiset over Z_n stored as its multiplicity function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnMultiset {
    n: usize,
    counts: Vec<u64>,
}

impl ZnMultiset {
    pub fn empty(n: usize) -> Result<Self> {
        check_modulus(n)?;
        Ok(Self { n, counts: vec![0; n] })
    }

    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let n = counts.len();
        check_modulus(n)?;
        Ok(Self { n, counts })
    }

    /// Multiset with the given elements (reduced mod n); repeats accumulate.
    pub fn from_elements<I: IntoIterator<Item = i64>>(n: usize, elements: I) -> Result<Self> {
        let mut out = Self::empty(n)?;
        for e in elements {
            out.counts[modulo(e, n)] += 1;
        }
        Ok(out)
    }

    /// Plain set with the given elements (reduced mod n); a repeated element is an error.
    pub fn plain<I: IntoIterator<Item = i64>>(n: usize, elements: I) -> Result<Self> {
        let mut out = Self::empty(n)?;
        for e in elements {
            let i = modulo(e, n);
            if out.counts[i] > 0 {
                return Err(Error::DuplicateElement { element: i });
            }
            out.counts[i] = 1;
        }
        Ok(out)
    }

    /// Z_n itself.
    pub fn whole(n: usize) -> Result<Self> {
        check_modulus(n)?;
        Ok(Self { n, counts: vec![1; n] })
    }

    /// The subgroup rZ_n = {0, r, 2r, ...} of order n/r.
    pub fn subgroup(n: usize, r: usize) -> Result<Self> {
        if r == 0 || n % r != 0 {
            return Err(Error::NotADivisor { divisor: r, n });
        }
        let mut out = Self::empty(n)?;
        for i in (0..n).step_by(r) {
            out.counts[i] = 1;
        }
        Ok(out)
    }

    pub fn singleton(n: usize, i: usize) -> Result<Self> {
        let mut out = Self::empty(n)?;
        out.counts[i % n] = 1;
        Ok(out)
    }

    /// Plain set from a bitmask (bit i set iff i ∈ A); requires n ≤ 64.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidArgument(format!("bitmask sets need n <= 64, got {n}")));
        }
        let mut out = Self::empty(n)?;
        for (i, c) in out.counts.iter_mut().enumerate() {
            *c = (mask >> i) & 1;
        }
        Ok(out)
    }

    /// Bitmask of a plain set; `None` for proper multisets or n > 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.n > 64 || !self.is_plain() {
            return None;
        }
        Some(
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 1)
                .fold(0u64, |m, (i, _)| m | (1 << i)),
        )
    }

    /// Parses "1,1,2,3" (whitespace tolerated, empty string is the empty multiset).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        Self::from_elements(n, parse_list(s)?)
    }

    /// Parses a comma-separated plain set, rejecting repeats after reduction mod n.
    pub fn parse_plain(n: usize, s: &str) -> Result<Self> {
        Self::plain(n, parse_list(s)?)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts[i % self.n]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn contains(&self, i: usize) -> bool {
        self.count(i) > 0
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn is_plain(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.counts[i] > 0).collect()
    }

    /// Elements in increasing order, repeated according to multiplicity.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
    }

    /// Drop multiplicities: the underlying set.
    pub fn to_set(&self) -> Self {
        Self {
            n: self.n,
            counts: self.counts.iter().map(|&c| u64::from(c > 0)).collect(),
        }
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.same_modulus(other)?;
        let counts = self.counts.iter().zip(&other.counts).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { n: self.n, counts })
    }

    /// A ⊎ B.
    pub fn uplus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    /// m ⊕ A.
    pub fn scalar_mul(&self, m: u64) -> Self {
        Self { n: self.n, counts: self.counts.iter().map(|&c| c * m).collect() }
    }

    /// A ∖ B with truncation at zero.
    pub fn msdiff(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    /// Pointwise max; the usual union on plain sets.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, u64::max)
    }

    /// Pointwise min; the usual intersection on plain sets.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, u64::min)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b))
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self.counts.iter().zip(&other.counts).all(|(&a, &b)| a == 0 || b == 0))
    }

    /// A + B: cyclic convolution of multiplicity functions.
    pub fn mssum(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let n = self.n;
        let mut counts = vec![0u64; n];
        for (i, &a) in self.counts.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.counts.iter().enumerate().filter(|(_, &b)| b != 0) {
                counts[(i + j) % n] += a * b;
            }
        }
        Ok(Self { n, counts })
    }

    /// −A.
    pub fn negate(&self) -> Self {
        let n = self.n;
        let counts = (0..n).map(|i| self.counts[(n - i) % n]).collect();
        Self { n, counts }
    }

    /// i + A.
    pub fn translate(&self, i: i64) -> Self {
        let n = self.n;
        let shift = modulo(i, n);
        let mut counts = vec![0; n];
        for (a, &c) in self.counts.iter().enumerate() {
            counts[(a + shift) % n] += c;
        }
        Self { n, counts }
    }

    /// cA as a multiset image; c need not be a unit.
    pub fn dilate(&self, c: i64) -> Self {
        let n = self.n;
        let c = modulo(c, n);
        let mut counts = vec![0; n];
        for (a, &m) in self.counts.iter().enumerate() {
            counts[(a * c) % n] += m;
        }
        Self { n, counts }
    }

    /// cA for a unit c, as used by dihedrant isomorphisms.
    pub fn dilate_unit(&self, c: i64) -> Result<Self> {
        let b = modulo(c, self.n);
        if !is_unit(b, self.n) {
            return Err(Error::NotAUnit { b, n: self.n });
        }
        Ok(self.dilate(c))
    }

    /// Complement of a plain set inside Z_n.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            counts: self.counts.iter().map(|&c| u64::from(c == 0)).collect(),
        }
    }
}

impl fmt::Display for ZnMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ZnMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}} ⊆ Z_{}", self.n)
    }
}

/// Parses a comma-separated list of integers; empty input gives an empty list.
pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<i64>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: format!("{tok:?}: {e}"),
            })
        })
        .collect()
}

/// The Z_n^*-orbit O_r of all elements of additive order r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub n: usize,
    pub r: usize,
    pub elements: Vec<usize>,
}

impl Orbit {
    pub fn as_multiset(&self) -> ZnMultiset {
        let mut counts = vec![0; self.n];
        for &e in &self.elements {
            counts[e] = 1;
        }
        ZnMultiset { n: self.n, counts }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// O_r = { c·(n/r) : 1 ≤ c ≤ r, gcd(r, c) = 1 }, sorted.
pub fn orbit(n: usize, r: usize) -> Result<Orbit> {
    check_modulus(n)?;
    if r == 0 || n % r != 0 {
        return Err(Error::NotADivisor { divisor: r, n });
    }
    let step = n / r;
    let mut elements: Vec<usize> = (1..=r)
        .filter(|&c| gcd(r, c) == 1)
        .map(|c| (c * step) % n)
        .collect();
    elements.sort_unstable();
    debug_assert_eq!(elements.len(), totient(r));
    Ok(Orbit { n, r, elements })
}

/// All orbits, ordered by increasing divisor r.
pub fn all_orbits(n: usize) -> Result<Vec<Orbit>> {
    check_modulus(n)?;
    crate::arith::divisors(n).into_iter().map(|r| orbit(n, r)).collect()
}

/// Additive order of z in Z_n, i.e. the r with z ∈ O_r.
pub fn additive_order(n: usize, z: usize) -> usize {
    n / gcd(n, z % n)
}

/// ν_p(z) for z ∈ Z_{p^α}: the largest e ≤ α with p^e | z, and ν_p(0) = α.
pub fn nu_p(p: usize, alpha: u32, z: usize) -> u32 {
    let modulus = p.pow(alpha);
    let mut z = z % modulus;
    if z == 0 {
        return alpha;
    }
    let mut e = 0;
    while z % p == 0 {
        z /= p;
        e += 1;
    }
    e
}

fn check_divides(n: usize, v: usize) -> Result<()> {
    if v == 0 || n % v != 0 {
        return Err(Error::NotADivisor { divisor: v, n });
    }
    Ok(())
}

/// ψ_{n,v}: Z_n → Z_v, reduction mod v.
pub fn psi(n: usize, v: usize, z: usize) -> Result<usize> {
    check_divides(n, v)?;
    Ok((z % n) % v)
}

/// ψ_{n,v}^{-1}(H) = H + vZ_n with multiplicities inherited from H.
pub fn psi_preimage(n: usize, v: usize, h: &ZnMultiset) -> Result<ZnMultiset> {
    check_divides(n, v)?;
    if h.modulus() != v {
        return Err(Error::ModulusMismatch { left: h.modulus(), right: v });
    }
    let counts = (0..n).map(|z| h.counts[z % v]).collect();
    ZnMultiset::from_counts(counts)
}

/// Push-forward of a multiset on Z_n along ψ_{n,v}, summing multiplicities.
pub fn psi_image(v: usize, a: &ZnMultiset) -> Result<ZnMultiset> {
    check_divides(a.modulus(), v)?;
    let mut counts = vec![0; v];
    for (z, &c) in a.counts.iter().enumerate() {
        counts[z % v] += c;
    }
    ZnMultiset::from_counts(counts)
}

/// φ_v: Z_v → (n/v)Z_n, z ↦ (n/v)·z.
pub fn phi(n: usize, v: usize, z: usize) -> Result<usize> {
    check_divides(n, v)?;
    Ok(((n / v) * (z % v)) % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ms(n: usize, e: &[i64]) -> ZnMultiset {
        ZnMultiset::from_elements(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn multiset_calculus_examples() {
        let a = ms(4, &[1, 2]);
        let b = ms(4, &[1, 3]);
        assert_eq!(a.uplus(&b).unwrap(), ms(4, &[1, 1, 2, 3]));
        assert_eq!(a.scalar_mul(2), ms(4, &[1, 1, 2, 2]));
        assert_eq!(ms(4, &[1, 1, 2, 2]).msdiff(&b).unwrap(), ms(4, &[1, 2, 2]));
        assert_eq!(a.msdiff(&b).unwrap(), ms(4, &[2]));
        assert_eq!(a.union(&b).unwrap(), ms(4, &[1, 2, 3]));
        assert_eq!(ms(3, &[1, 1]).uplus(&ms(3, &[1])).unwrap(), ms(3, &[1, 1, 1]));

        let empty = ZnMultiset::empty(4).unwrap();
        assert_eq!(empty.uplus(&b).unwrap(), b);
        assert_eq!(a.scalar_mul(0), empty);
        assert_eq!(a.scalar_mul(1), a);
        assert_eq!(a.msdiff(&empty).unwrap(), a);
        assert!(a.msdiff(&a).unwrap().is_empty());
    }

    #[test]
    fn sums_and_transforms() {
        assert_eq!(ms(5, &[1]).mssum(&ms(5, &[2])).unwrap(), ms(5, &[3]));
        let s = ms(2, &[0, 1]).mssum(&ms(2, &[0, 1])).unwrap();
        assert_eq!(s.counts(), &[2, 2]);
        assert_eq!(ms(9, &[1, 4, 7]).negate(), ms(9, &[2, 5, 8]));
        assert_eq!(ms(3, &[0, 1]).translate(1), ms(3, &[1, 2]));
        assert_eq!(ms(9, &[1, 4, 7]).dilate(2), ms(9, &[2, 8, 5]));
        assert_eq!(ms(9, &[1]).dilate_unit(3), Err(Error::NotAUnit { b: 3, n: 9 }));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let err = ms(4, &[1]).uplus(&ms(5, &[1])).unwrap_err();
        assert_eq!(err, Error::ModulusMismatch { left: 4, right: 5 });
        assert!(ms(4, &[1]).mssum(&ms(3, &[1])).is_err());
        assert!(ms(4, &[1]).msdiff(&ms(3, &[1])).is_err());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit(9, 3).unwrap().elements, vec![3, 6]);
        assert_eq!(orbit(9, 9).unwrap().elements, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(orbit(9, 1).unwrap().elements, vec![0]);
        assert!(orbit(9, 2).is_err());
    }

    #[test]
    fn orbits_partition_zn() {
        for n in 1..=120 {
            let orbits = all_orbits(n).unwrap();
            let mut seen = vec![0u32; n];
            for o in &orbits {
                assert_eq!(o.len(), totient(o.r));
                for &e in &o.elements {
                    seen[e] += 1;
                    assert_eq!(additive_order(n, e), o.r);
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "n={n}");
        }
    }

    #[test]
    fn nu_p_examples() {
        assert_eq!(nu_p(3, 2, 6), 1);
        assert_eq!(nu_p(3, 2, 0), 2);
        assert_eq!(nu_p(2, 4, 12), 2);
        assert_eq!(nu_p(5, 1, 3), 0);
    }

    #[test]
    fn subgroup_is_union_of_low_orbits() {
        // p^{α−β}Z_{p^α} = O_{p^0} ∪ … ∪ O_{p^β}
        for (p, alpha) in [(2usize, 4u32), (3, 3), (5, 2)] {
            let n = p.pow(alpha);
            for beta in 0..=alpha {
                let sub = ZnMultiset::subgroup(n, p.pow(alpha - beta)).unwrap();
                let mut union = ZnMultiset::empty(n).unwrap();
                for i in 0..=beta {
                    union = union.uplus(&orbit(n, p.pow(i)).unwrap().as_multiset()).unwrap();
                }
                assert_eq!(sub, union, "p={p} alpha={alpha} beta={beta}");
            }
        }
    }

    #[test]
    fn quotient_maps() {
        assert_eq!(psi_preimage(9, 3, &ms(3, &[1])).unwrap(), ms(9, &[1, 4, 7]));
        assert_eq!(psi(9, 3, 7).unwrap(), 1);
        assert_eq!(phi(9, 3, 2).unwrap(), 6);
        assert!(psi(9, 2, 1).is_err());
        assert!(phi(9, 4, 1).is_err());
        let h = ms(3, &[0, 1, 1]);
        assert_eq!(psi_preimage(9, 3, &h).unwrap().counts(), &[1, 2, 0, 1, 2, 0, 1, 2, 0]);
    }

    #[test]
    fn masks_and_parsing() {
        let a = ZnMultiset::parse_plain(9, "1, 4,7").unwrap();
        assert_eq!(a.to_mask(), Some(0b1001_0010));
        assert_eq!(ZnMultiset::from_mask(9, 0b1001_0010).unwrap(), a);
        assert_eq!(a.to_string(), "1,4,7");
        assert_eq!(ZnMultiset::parse(4, "1,1,2,3").unwrap().to_string(), "1,1,2,3");
        assert_eq!(ZnMultiset::parse_plain(5, "-1").unwrap(), ms(5, &[4]));
        assert_eq!(
            ZnMultiset::parse_plain(5, "1,6"),
            Err(Error::DuplicateElement { element: 1 })
        );
        assert!(ZnMultiset::parse(5, "1,x").is_err());
        assert!(ZnMultiset::parse(5, "").unwrap().is_empty());
        assert_eq!(ms(3, &[1, 1]).to_mask(), None);
    }

    #[test]
    fn modulus_cap_is_enforced() {
        assert_eq!(ZnMultiset::empty(0), Err(Error::ZeroModulus));
        assert!(matches!(
            ZnMultiset::empty(DEFAULT_MAX_MODULUS + 1),
            Err(Error::ModulusTooLarge { .. })
        ));
    }

    fn arb_multiset(n: usize) -> impl Strategy<Value = ZnMultiset> {
        proptest::collection::vec(0u64..4, n).prop_map(|c| ZnMultiset::from_counts(c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (ZnMultiset, ZnMultiset, ZnMultiset)> {
        (1usize..16).prop_flat_map(|n| (arb_multiset(n), arb_multiset(n), arb_multiset(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5EED_0001),
            ..ProptestConfig::default()
        })]

        #[test]
        fn mssum_is_commutative_associative_with_unit((a, b, c) in arb_triple()) {
            let zero = ZnMultiset::singleton(a.modulus(), 0).unwrap();
            prop_assert_eq!(a.mssum(&b).unwrap(), b.mssum(&a).unwrap());
            prop_assert_eq!(
                a.mssum(&b).unwrap().mssum(&c).unwrap(),
                a.mssum(&b.mssum(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mssum(&zero).unwrap(), a.clone());
            prop_assert_eq!(a.mssum(&b).unwrap().size(), a.size() * b.size());
        }

        #[test]
        fn negation_and_dilation_compose((a, _, _) in arb_triple(), c in 0i64..50, d in 0i64..50) {
            let n = a.modulus() as i64;
            prop_assert_eq!(a.negate().negate(), a.clone());
            prop_assert_eq!(a.dilate(d).dilate(c), a.dilate((c * d).rem_euclid(n)));
        }

        #[test]
        fn psi_roundtrip_scales_by_index(v in 1usize..10, l in 1usize..6, counts in proptest::collection::vec(0u64..3, 10)) {
            let n = v * l;
            let h = ZnMultiset::from_counts(counts[..v].to_vec()).unwrap();
            let pre = psi_preimage(n, v, &h).unwrap();
            prop_assert_eq!(psi_image(v, &pre).unwrap(), h.scalar_mul(l as u64));
        }
    }
}
