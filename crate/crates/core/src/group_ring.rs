//! The group rings Z[C_n] and Z[D_n] over an exact scalar type.
//!
//! `D_n = <x, a | x^n = a^2 = 1, ax = x^{-1}a>`; an element `r + s·a` stores
//! the coefficient of `x^i` in `rot[i]` and of `x^i a` in `refl[i]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::{fourier_at_values, Cyclotomic};
use crate::error::{Error, Result};
use crate::residue::ZnMultiset;
use crate::Scalar;

/// `Σ coeffs[i]·x^i` in the group ring of C_n.
#[derive(Clone, PartialEq)]
pub struct CyclicRingElem<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> CyclicRingElem<T> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "group order must be positive");
        Self { n, coeffs: vec![T::zero(); n] }
    }

    /// The identity e = x^0 scaled by `c`.
    pub fn scalar(n: usize, c: T) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = c;
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    /// x^k.
    pub fn monomial(n: usize, k: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[k.rem_euclid(n as i64) as usize] = T::one();
        out
    }

    /// The all-ones element \overline{C_n}.
    pub fn whole(n: usize) -> Self {
        Self { n, coeffs: vec![T::one(); n] }
    }

    /// \overline{x^A} for a multiset A.
    pub fn from_multiset(a: &ZnMultiset) -> Self {
        Self {
            n: a.modulus(),
            coeffs: a.counts().iter().map(|&c| T::from_u64(c).expect("count fits scalar")).collect(),
        }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "group order must be positive");
        Self { n: coeffs.len(), coeffs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// h^{(-1)}: x^i ↦ x^{-i}.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        Self { n, coeffs: (0..n).map(|i| self.coeffs[(n - i) % n].clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// χ_z applied linearly: x^i ↦ ζ_n^{iz}.
    pub fn character(&self, z: usize) -> Cyclotomic<T> {
        fourier_at_values(&self.coeffs, z)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let k = (i + j) % n;
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { n, coeffs })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { n: self.n, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }
}

/// Cyclic convolution.
pub fn cn_mul<T: Scalar>(f: &CyclicRingElem<T>, g: &CyclicRingElem<T>) -> Result<CyclicRingElem<T>> {
    f.try_mul(g)
}

impl<T: Scalar> Add for &CyclicRingElem<T> {
    type Output = CyclicRingElem<T>;
    fn add(self, rhs: Self) -> CyclicRingElem<T> {
        self.try_add(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> Sub for &CyclicRingElem<T> {
    type Output = CyclicRingElem<T>;
    fn sub(self, rhs: Self) -> CyclicRingElem<T> {
        self.try_sub(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> Mul for &CyclicRingElem<T> {
    type Output = CyclicRingElem<T>;
    fn mul(self, rhs: Self) -> CyclicRingElem<T> {
        self.try_mul(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> Neg for &CyclicRingElem<T> {
    type Output = CyclicRingElem<T>;
    fn neg(self) -> CyclicRingElem<T> {
        CyclicRingElem { n: self.n, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

fn fmt_terms<T: Scalar>(f: &mut fmt::Formatter<'_>, coeffs: &[T], suffix: &str, first: &mut bool) -> fmt::Result {
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        if !*first {
            f.write_str(" + ")?;
        }
        *first = false;
        if c.is_one() {
            write!(f, "x^{i}{suffix}")?;
        } else {
            write!(f, "{c}·x^{i}{suffix}")?;
        }
    }
    Ok(())
}

impl<T: Scalar> fmt::Debug for CyclicRingElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_terms(f, &self.coeffs, "", &mut first)?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `rot + refl·a` in the group ring of D_n.
#[derive(Clone, PartialEq)]
pub struct DihedralRingElem<T> {
    pub rot: CyclicRingElem<T>,
    pub refl: CyclicRingElem<T>,
}

impl<T: Scalar> DihedralRingElem<T> {
    pub fn new(rot: CyclicRingElem<T>, refl: CyclicRingElem<T>) -> Result<Self> {
        rot.check(&refl)?;
        Ok(Self { rot, refl })
    }

    pub fn zero(n: usize) -> Self {
        Self { rot: CyclicRingElem::zero(n), refl: CyclicRingElem::zero(n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { rot: CyclicRingElem::identity(n), refl: CyclicRingElem::zero(n) }
    }

    /// x^i a^j for j ∈ {0, 1}.
    pub fn element(n: usize, i: i64, reflection: bool) -> Self {
        let m = CyclicRingElem::monomial(n, i);
        if reflection {
            Self { rot: CyclicRingElem::zero(n), refl: m }
        } else {
            Self { rot: m, refl: CyclicRingElem::zero(n) }
        }
    }

    /// \overline{D_n}.
    pub fn whole(n: usize) -> Self {
        Self { rot: CyclicRingElem::whole(n), refl: CyclicRingElem::whole(n) }
    }

    pub fn order(&self) -> usize {
        self.rot.n
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { rot: self.rot.scale(c), refl: self.refl.scale(c) }
    }

    /// (r1 + s1 a)(r2 + s2 a) = (r1 r2 + s1 s2^{(-1)}) + (r1 s2 + s1 r2^{(-1)}) a.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.rot.check(&other.rot)?;
        let rot = &(&self.rot * &other.rot) + &(&self.refl * &other.refl.reversed());
        let refl = &(&self.rot * &other.refl) + &(&self.refl * &other.rot.reversed());
        Ok(Self { rot, refl })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Self { rot: self.rot.try_add(&other.rot)?, refl: self.refl.try_add(&other.refl)? })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { rot: self.rot.try_sub(&other.rot)?, refl: self.refl.try_sub(&other.refl)? })
    }
}

pub fn dn_mul<T: Scalar>(
    f: &DihedralRingElem<T>,
    g: &DihedralRingElem<T>,
) -> Result<DihedralRingElem<T>> {
    f.try_mul(g)
}

impl<T: Scalar> Add for &DihedralRingElem<T> {
    type Output = DihedralRingElem<T>;
    fn add(self, rhs: Self) -> DihedralRingElem<T> {
        self.try_add(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> Sub for &DihedralRingElem<T> {
    type Output = DihedralRingElem<T>;
    fn sub(self, rhs: Self) -> DihedralRingElem<T> {
        self.try_sub(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> Mul for &DihedralRingElem<T> {
    type Output = DihedralRingElem<T>;
    fn mul(self, rhs: Self) -> DihedralRingElem<T> {
        self.try_mul(rhs).expect("group order mismatch")
    }
}

impl<T: Scalar> fmt::Debug for DihedralRingElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_terms(f, &self.rot.coeffs, "", &mut first)?;
        fmt_terms(f, &self.refl.coeffs, "a", &mut first)?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// \overline{S} for S = x^X ∪ x^Y a.
pub fn sbar(x: &ZnMultiset, y: &ZnMultiset) -> Result<DihedralRingElem<i64>> {
    DihedralRingElem::new(CyclicRingElem::from_multiset(x), CyclicRingElem::from_multiset(y))
}

/// Δ1 = \overline{x^X} + \overline{x^{-X}}.
pub fn delta1(x: &ZnMultiset) -> CyclicRingElem<i64> {
    let xb = CyclicRingElem::from_multiset(x);
    &xb + &xb.reversed()
}

/// Δ2 = \overline{x^Y}·\overline{x^{-Y}} − \overline{x^X}·\overline{x^{-X}}.
pub fn delta2(x: &ZnMultiset, y: &ZnMultiset) -> Result<CyclicRingElem<i64>> {
    let xb = CyclicRingElem::from_multiset(x);
    let yb = CyclicRingElem::from_multiset(y);
    (&yb * &yb.reversed()).try_sub(&(&xb * &xb.reversed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Cn = CyclicRingElem<i64>;
    type Dn = DihedralRingElem<i64>;

    fn set(n: usize, e: &[i64]) -> ZnMultiset {
        ZnMultiset::plain(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn cyclic_products() {
        assert_eq!(cn_mul(&Cn::monomial(5, 1), &Cn::monomial(5, 2)).unwrap(), Cn::monomial(5, 3));
        assert_eq!(&Cn::whole(6) * &Cn::whole(6), Cn::whole(6).scale(&6));
        let p = &Cn::from_multiset(&set(4, &[1])) * &Cn::from_multiset(&set(4, &[1, 2]));
        assert_eq!(p.coeffs(), &[0, 0, 1, 1]);
        assert!(cn_mul(&Cn::whole(3), &Cn::whole(4)).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let xa = Dn::element(3, 1, true);
        assert_eq!(&xa * &xa, Dn::identity(3));
        let a = Dn::element(3, 0, true);
        let x = Dn::element(3, 1, false);
        assert_eq!(&a * &x, Dn::element(3, 2, true));
        assert!(dn_mul(&Dn::zero(3), &Dn::zero(4)).is_err());
    }

    #[test]
    fn sbar_square_of_smallest_dsrg() {
        // (6,2,1,0,1): S̄² = t·e + λ·S̄ + μ(D̄ − e − S̄)
        let s = sbar(&set(3, &[1]), &set(3, &[1])).unwrap();
        let e = Dn::identity(3);
        let rhs = &e + &(&Dn::whole(3) - &(&e + &s));
        assert_eq!(&s * &s, rhs);
    }

    #[test]
    fn deltas() {
        assert_eq!(delta1(&set(3, &[1])).coeffs(), &[0, 1, 1]);
        assert!(delta2(&set(3, &[1]), &set(3, &[1])).unwrap().is_zero());
        // Y = X ∪ {0} with U_X = Z_9 ⊎ 3Z_9 ∖ {0,0}: Δ2 = Δ1 + e.
        let x = set(9, &[1, 3, 4, 6, 7]);
        let y = set(9, &[0, 1, 3, 4, 6, 7]);
        let d2 = delta2(&x, &y).unwrap();
        assert_eq!(d2, &delta1(&x) + &Cn::identity(9));
        assert_eq!(d2.coeffs(), &[1, 1, 1, 2, 1, 1, 2, 1, 1]);
    }

    #[test]
    fn characters_match_fourier() {
        let a = ZnMultiset::from_elements(8, [1, 1, 3, 6]).unwrap();
        let elem = Cn::from_multiset(&a);
        for z in 0..8 {
            assert!(elem.character(z).try_eq(&crate::cyclotomic::fourier_at(&a, z)).unwrap());
        }
    }

    fn arb_dn(n: usize) -> impl Strategy<Value = Dn> {
        (proptest::collection::vec(-3i64..4, n), proptest::collection::vec(-3i64..4, n)).prop_map(
            |(r, s)| Dn::new(Cn::from_coeffs(r), Cn::from_coeffs(s)).unwrap(),
        )
    }

    fn arb_triple() -> impl Strategy<Value = (Dn, Dn, Dn)> {
        (1usize..9).prop_flat_map(|n| (arb_dn(n), arb_dn(n), arb_dn(n)))
    }

    fn arb_sets() -> impl Strategy<Value = (ZnMultiset, ZnMultiset)> {
        (1usize..14).prop_flat_map(|n| {
            (proptest::collection::vec(0u64..2, n), proptest::collection::vec(0u64..2, n)).prop_map(
                |(x, y)| (ZnMultiset::from_counts(x).unwrap(), ZnMultiset::from_counts(y).unwrap()),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5EED_0002),
            ..ProptestConfig::default()
        })]

        #[test]
        fn dn_mul_is_associative_with_unit((f, g, h) in arb_triple()) {
            let e = Dn::identity(f.order());
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&e * &f, f.clone());
            prop_assert_eq!(&f * &e, f.clone());
        }

        #[test]
        fn whole_group_absorbs((f, _, _) in arb_triple()) {
            let n = f.order();
            let total: i64 = f.rot.coeffs().iter().chain(f.refl.coeffs()).sum();
            let w = Dn::whole(n);
            prop_assert_eq!(&f * &w, w.scale(&total));
            prop_assert_eq!(&w * &f, w.scale(&total));
        }

        #[test]
        fn square_of_connection_set_expands((x, y) in arb_sets()) {
            // S̄² = X̄Δ1 + Δ2 + (ȲΔ1)a, using X̄² + ȲȲ^{(-1)} = X̄(X̄ + X̄^{(-1)}) + Δ2.
            let s = sbar(&x, &y).unwrap();
            let xb = Cn::from_multiset(&x);
            let yb = Cn::from_multiset(&y);
            let d1 = delta1(&x);
            let sq = &s * &s;
            prop_assert_eq!(sq.rot, &(&xb * &d1) + &delta2(&x, &y).unwrap());
            prop_assert_eq!(sq.refl, &yb * &d1);
        }
    }
}
