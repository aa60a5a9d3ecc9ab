//! Exact arithmetic in `Z[ζ_n]` (or `Q(ζ_n)`), the Fourier transform on `Z_n`,
//! and Ramanujan sums.
//!
//! Values are stored modulo `x^n − 1`, one coefficient per power of `ζ_n`.
//! This representation is not unique; equality and rationality tests reduce
//! modulo the cyclotomic polynomial `Φ_n` first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{divisors, gcd, mobius, totient};
use crate::error::{Error, Result};
use crate::residue::ZnMultiset;
use crate::Scalar;

static PHI_CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();

/// Φ_n as coefficients in ascending degree, via exact division of
/// `x^n − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = exact_div_monic(&num, &cyclotomic_poly(d));
    }
    let poly = Arc::new(num);
    cache.write().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

/// `Σ coeffs[i]·ζ_n^i`.
#[derive(Clone, Debug)]
pub struct Cyclotomic<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclotomic<T> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "conductor must be positive");
        Self { n, coeffs: vec![T::zero(); n] }
    }

    pub fn constant(n: usize, c: T) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = c;
        out
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, T::from_int(c))
    }

    /// ζ_n^k.
    pub fn root_power(n: usize, k: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[k.rem_euclid(n as i64) as usize] = T::one();
        out
    }

    /// Coefficients are read modulo `x^n − 1`: index `i` adds to `ζ^{i mod n}`.
    pub fn from_coeffs(n: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut out = Self::zero(n);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.coeffs[i % n] = out.coeffs[i % n].clone() + c;
        }
        out
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    /// Raw coefficients modulo `x^n − 1` (length n).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Complex conjugation: ζ^i ↦ ζ^{−i}.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        Self { n, coeffs: (0..n).map(|i| self.coeffs[(n - i) % n].clone()).collect() }
    }

    /// Multiplication by ζ^k.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.n;
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![T::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c.clone();
        }
        Self { n, coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// View in `Z[ζ_m]` for a multiple `m` of the conductor, via ζ_n ↦ ζ_m^{m/n}.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m == 0 || m % self.n != 0 {
            return Err(Error::NotADivisor { divisor: self.n, n: m });
        }
        let step = m / self.n;
        let mut coeffs = vec![T::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(Self { n: m, coeffs })
    }

    /// Remainder modulo Φ_n: the unique representative of degree < φ(n).
    pub fn canonical(&self) -> Vec<T> {
        let phi = cyclotomic_poly(self.n);
        let deg = phi.len() - 1;
        let phi: Vec<T> = phi.iter().map(|&c| T::from_int(c)).collect();
        let mut rem = self.coeffs.clone();
        for top in (deg..self.n).rev() {
            let c = std::mem::replace(&mut rem[top], T::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let off = top - deg + j;
                rem[off] = rem[off].clone() - c.clone() * phi[j].clone();
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// Equality in the field; errors when conductors differ.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch { left: self.n, right: other.n });
        }
        Ok((self - other).is_zero())
    }

    /// The rational value when this element lies in the prime field.
    pub fn as_scalar(&self) -> Option<T> {
        let mut canon = self.canonical().into_iter();
        let c0 = canon.next().unwrap_or_else(T::zero);
        canon.all(|c| c.is_zero()).then_some(c0)
    }

    /// True iff the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        (self - &self.conjugate()).is_zero()
    }

    fn check_conductor(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cyclotomic conductor mismatch");
    }
}

pub fn cyc_equal<T: Scalar>(f: &Cyclotomic<T>, g: &Cyclotomic<T>) -> Result<bool> {
    f.try_eq(g)
}

pub fn as_integer(f: &Cyclotomic<i64>) -> Option<i64> {
    f.as_scalar()
}

pub fn conjugate<T: Scalar>(f: &Cyclotomic<T>) -> Cyclotomic<T> {
    f.conjugate()
}

impl<T: Scalar> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl<T: Scalar> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: Self) -> Cyclotomic<T> {
        self.check_conductor(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Cyclotomic { n: self.n, coeffs }
    }
}

impl<T: Scalar> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        self.check_conductor(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Cyclotomic { n: self.n, coeffs }
    }
}

impl<T: Scalar> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        self.check_conductor(rhs);
        let n = self.n;
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let k = (i + j) % n;
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        Cyclotomic { n, coeffs }
    }
}

impl<T: Scalar> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $m(self, rhs: Self) -> Cyclotomic<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_scalar() {
            return write!(f, "{c}");
        }
        let parts: Vec<String> = self.canonical().iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `(F f)(z)` for every `z ∈ Z_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Scalar> {
    pub n: usize,
    pub values: Vec<Cyclotomic<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn at(&self, z: usize) -> &Cyclotomic<T> {
        &self.values[z % self.n]
    }

    /// Every value as a rational scalar, or `None` if some value is irrational.
    pub fn as_scalars(&self) -> Option<Vec<T>> {
        self.values.iter().map(Cyclotomic::as_scalar).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.as_scalar().is_some())
    }
}

/// `(F f)(z) = Σ_i f(i) ζ_n^{iz}` for a function given by its values on `0..n`.
pub fn fourier_at_values<T: Scalar>(f: &[T], z: usize) -> Cyclotomic<T> {
    let n = f.len();
    let mut out: Cyclotomic<T> = Cyclotomic::zero(n);
    for (i, c) in f.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let k = (i * (z % n)) % n;
        out.coeffs[k] = out.coeffs[k].clone() + c.clone();
    }
    out
}

pub fn fourier_values<T: Scalar>(f: &[T]) -> Spectrum<T> {
    let n = f.len();
    Spectrum { n, values: (0..n).map(|z| fourier_at_values(f, z)).collect() }
}

fn multiplicities(f: &ZnMultiset) -> Vec<i64> {
    f.counts().iter().map(|&c| c as i64).collect()
}

pub fn fourier_at(f: &ZnMultiset, z: usize) -> Cyclotomic<i64> {
    fourier_at_values(&multiplicities(f), z)
}

/// Fourier transform of a multiplicity function Δ_A.
pub fn fourier(f: &ZnMultiset) -> Spectrum<i64> {
    fourier_values(&multiplicities(f))
}

/// Transform of a `Z[ζ_n]`-valued function; used to apply F twice.
pub fn fourier_cyclotomic<T: Scalar>(f: &[Cyclotomic<T>]) -> Spectrum<T> {
    let n = f.len();
    let values = (0..n)
        .map(|z| {
            f.iter().enumerate().fold(Cyclotomic::zero(n), |acc, (i, g)| {
                &acc + &g.shift((i * z % n) as i64)
            })
        })
        .collect();
    Spectrum { n, values }
}

/// Ramanujan sum `(F Δ_{O_r})(z) = μ(r/(r,z)) · φ(r) / φ(r/(r,z))`.
pub fn ramanujan(n: usize, r: usize, z: usize) -> Result<i64> {
    if r == 0 || n % r != 0 {
        return Err(Error::NotADivisor { divisor: r, n });
    }
    let q = r / gcd(r, z % n);
    Ok(mobius(q) * (totient(r) / totient(q)) as i64)
}

/// `(F Δ_{ψ^{-1}(H)})(φ_v(z))` computed on the quotient: it equals
/// `(n/v) · (F^{(v)} Δ_H)(z)` read inside `Z[ζ_n]`.
pub fn lift_quotient_value(n: usize, v: usize, h: &ZnMultiset, z: usize) -> Result<Cyclotomic<i64>> {
    if v == 0 || n % v != 0 {
        return Err(Error::NotADivisor { divisor: v, n });
    }
    if h.modulus() != v {
        return Err(Error::ModulusMismatch { left: h.modulus(), right: v });
    }
    let small = fourier_at(h, z % v);
    Ok(small.embed(n)?.scale(&((n / v) as i64)))
}
