//! Structural detectors on Z_{p^α}: the orbit decomposition of
//! U_X = X ⊎ (−X), coset structure, and the shape predicates that the
//! characterization theorems predict for directed strongly regular dihedrants.

use serde::Serialize;

use crate::arith::{divisors, is_prime, prime_power};
use crate::cyclotomic::{fourier, fourier_at};
use crate::error::{Error, Result};
use crate::residue::{nu_p, orbit, ZnMultiset};

fn power_of(p: usize, alpha: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    p.checked_pow(alpha)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{alpha} overflows")))
}

fn check_modulus(a: &ZnMultiset, n: usize) -> Result<()> {
    if a.modulus() != n {
        return Err(Error::ModulusMismatch { left: a.modulus(), right: n });
    }
    Ok(())
}

/// q(z) = (FΔ_{X⊎(−X)})(z) for every z, or `None` where it is irrational.
pub fn q_values(x: &ZnMultiset) -> Vec<Option<i64>> {
    let u = x.uplus(&x.negate()).expect("same modulus");
    fourier(&u).values.iter().map(|v| v.as_scalar()).collect()
}

/// 0 ∉ X, X ≠ −X, and q(z) ∈ {0, −m} for every z ≠ 0.
pub fn condition_a(p: usize, alpha: u32, x: &ZnMultiset, m: i64) -> Result<bool> {
    let n = power_of(p, alpha)?;
    check_modulus(x, n)?;
    if m <= 0 || x.contains(0) || *x == x.negate() {
        return Ok(false);
    }
    Ok(q_values(x)[1..].iter().all(|q| matches!(q, Some(v) if *v == 0 || *v == -m)))
}

/// Δ_{U_X} written as Σ α_i Δ_{O_i} over the orbits O_i of elements of order p^i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UxDecomposition {
    pub p: usize,
    pub alpha: u32,
    /// α_i for i = 0..=α, when the multiplicities are constant on every orbit.
    pub coefficients: Option<Vec<u64>>,
    /// −m: the unique negative value of q off zero, if there is one.
    pub negative_value: Option<i64>,
    /// min ν_p(z) over Γ = { z : q(z) = −m }.
    pub beta: Option<u32>,
    /// Orbit exponents with α_i = 2.
    pub i1: Vec<u32>,
    /// Orbit exponents with α_i = 1.
    pub i2: Vec<u32>,
    /// Coefficients lie in {0,1,2}, α_0 = 0, β exists and I1 ⊔ I2 = {β+1, …, α}.
    pub valid: bool,
}

pub fn decompose_ux(p: usize, alpha: u32, x: &ZnMultiset) -> Result<UxDecomposition> {
    let n = power_of(p, alpha)?;
    check_modulus(x, n)?;
    let u = x.uplus(&x.negate())?;
    let mut out = UxDecomposition {
        p,
        alpha,
        coefficients: None,
        negative_value: None,
        beta: None,
        i1: Vec::new(),
        i2: Vec::new(),
        valid: false,
    };

    let mut coeffs = Vec::with_capacity(alpha as usize + 1);
    for i in 0..=alpha {
        let o = orbit(n, p.pow(i))?;
        let c = u.count(o.elements[0]);
        if o.elements.iter().any(|&e| u.count(e) != c) {
            return Ok(out);
        }
        coeffs.push(c);
    }
    for (i, &c) in coeffs.iter().enumerate() {
        match c {
            2 => out.i1.push(i as u32),
            1 => out.i2.push(i as u32),
            _ => {}
        }
    }
    out.coefficients = Some(coeffs.clone());

    // Orbit-constant multiplicities make every q(z) a rational integer.
    let q: Vec<i64> = fourier(&u).values.iter().map(|v| v.as_scalar().expect("orbit sum")).collect();
    let mut negatives: Vec<i64> = q[1..].iter().copied().filter(|&v| v < 0).collect();
    negatives.sort_unstable();
    negatives.dedup();
    if let [neg] = negatives[..] {
        out.negative_value = Some(neg);
        out.beta = (1..n).filter(|&z| q[z] == neg).map(|z| nu_p(p, alpha, z)).min();
    }

    if let Some(beta) = out.beta {
        let shape_ok = coeffs.iter().enumerate().all(|(i, &c)| {
            let i = i as u32;
            if i <= beta {
                c == 0
            } else {
                c == 1 || c == 2
            }
        });
        out.valid = shape_ok;
    }
    Ok(out)
}

/// The largest subgroup G = vZ_n with X + G = X, and H = ψ_{n,v}(X) as a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetStructure {
    pub v: usize,
    pub h: ZnMultiset,
}

pub fn coset_structure(x: &ZnMultiset) -> CosetStructure {
    let n = x.modulus();
    let v = divisors(n)
        .into_iter()
        .find(|&d| x.translate(d as i64) == *x)
        .expect("n stabilizes every multiset");
    let mut counts = vec![0u64; v];
    for z in x.support() {
        counts[z % v] = 1;
    }
    CosetStructure { v, h: ZnMultiset::from_counts(counts).expect("v <= n") }
}

/// γ with v = p^γ.
fn exponent(p: usize, v: usize) -> Option<u32> {
    if v == 1 {
        return Some(0);
    }
    match prime_power(v) {
        Some((q, g)) if q == p => Some(g),
        _ => None,
    }
}

fn ms(n: usize, e: impl IntoIterator<Item = usize>) -> ZnMultiset {
    ZnMultiset::from_elements(n, e.into_iter().map(|i| i as i64)).expect("valid modulus")
}

/// X = ψ_γ^{-1}(H) with H ⊎ (−H) = Z_{p^γ}∖{0} and H ∩ (−H) = ∅, p odd.
pub fn shape_t14(p: usize, alpha: u32, x: &ZnMultiset) -> Result<bool> {
    let n = power_of(p, alpha)?;
    check_modulus(x, n)?;
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    let CosetStructure { v, h } = coset_structure(x);
    let Some(gamma) = exponent(p, v) else { return Ok(false) };
    if gamma < 1 {
        return Ok(false);
    }
    let neg = h.negate();
    Ok(h.uplus(&neg)? == ms(v, 1..v) && h.is_disjoint(&neg)?)
}

/// X = ψ_γ^{-1}(H), 2 ≤ γ ≤ α, H ⊎ (−H) = (Z_{2^γ}∖{0}) ⊎ {2^{γ−1}}, H ∩ (2^{γ−1} + H) = ∅.
pub fn shape_t15(alpha: u32, x: &ZnMultiset) -> Result<bool> {
    let n = power_of(2, alpha)?;
    check_modulus(x, n)?;
    let CosetStructure { v, h } = coset_structure(x);
    let Some(gamma) = exponent(2, v) else { return Ok(false) };
    if gamma < 2 {
        return Ok(false);
    }
    let half = v / 2;
    let target = ms(v, (1..v).chain([half]));
    Ok(h.uplus(&h.negate())? == target && h.is_disjoint(&h.translate(half as i64))?)
}

/// Y = ψ_γ^{-1}(H), 1 ≤ γ ≤ α, H ⊎ (−H) = Z_{p^γ} ⊎ {0}, and X = Y∖{0} or X = Y∖p^γZ_{p^α}.
pub fn shape_t16(p: usize, alpha: u32, x: &ZnMultiset, y: &ZnMultiset) -> Result<bool> {
    let n = power_of(p, alpha)?;
    check_modulus(x, n)?;
    check_modulus(y, n)?;
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    let CosetStructure { v, h } = coset_structure(y);
    let Some(gamma) = exponent(p, v) else { return Ok(false) };
    if gamma < 1 || h.uplus(&h.negate())? != ms(v, (0..v).chain([0])) {
        return Ok(false);
    }
    let minus_zero = y.msdiff(&ZnMultiset::singleton(n, 0)?)?;
    let minus_subgroup = y.msdiff(&ZnMultiset::subgroup(n, v)?)?;
    Ok(*x == minus_zero || *x == minus_subgroup)
}

/// Whether w = FΔ_X − FΔ_Y is real everywhere, and whether Y∖X is a union of Z_n^*-orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WRealness {
    pub real: bool,
    pub orbit_union: bool,
}

pub fn w_realness(x: &ZnMultiset, y: &ZnMultiset) -> Result<WRealness> {
    let n = x.modulus();
    check_modulus(y, n)?;
    if !x.is_subset(y)? {
        return Err(Error::InvalidArgument(format!("{{{x}}} is not contained in {{{y}}}")));
    }
    let real = (0..n).all(|z| {
        let w = &fourier_at(x, z) - &fourier_at(y, z);
        w.is_real()
    });
    Ok(WRealness { real, orbit_union: is_orbit_union(&y.msdiff(x)?)? })
}

/// True iff A is a plain set that is a union of whole Z_n^*-orbits.
pub fn is_orbit_union(a: &ZnMultiset) -> Result<bool> {
    let n = a.modulus();
    if !a.is_plain() {
        return Ok(false);
    }
    for r in divisors(n) {
        let o = orbit(n, r)?;
        let first = a.contains(o.elements[0]);
        if o.elements.iter().any(|&e| a.contains(e) != first) {
            return Ok(false);
        }
    }
    Ok(true)
}
