//! The construction families for directed strongly regular dihedrants.
//!
//! Each builder evaluates its hypotheses literally as multiset identities
//! and returns the dihedrant together with the parameters the family
//! promises. The enumerators list every admissible H for given (n, v).

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dsrg::{verify_matrix, Dihedrant, DsrgParams};
use crate::error::{Error, Result};
use crate::group_ring::CyclicRingElem;
use crate::residue::{psi_preimage, ZnMultiset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// n odd, X ⊎ (−X) = Z_n∖{0}, Y Y^{(−1)} − X X^{(−1)} = ε C_n.
    T11,
    /// n even, X ⊎ (−X) = Z_n∖{0, n/2}, X + n/2 = −X, Y ∈ {X, −X}, realized with 0 added to Y.
    T13,
    /// X = Y = H + vZ_n, v odd, X ⊎ (−X) = Z_n∖vZ_n.
    C51,
    /// X = Y = H + vZ_n, v > 2 even, X ⊎ (−X) = (Z_n∖vZ_n) ⊎ (v/2 + vZ_n), X ∪ (v/2 + X) = Z_n.
    C52,
    /// Y = H + vZ_n ∋ 0, X = Y∖{0}, Y ⊎ (−Y) = Z_n ⊎ vZ_n.
    C53,
    /// Y = H + vZ_n ∋ 0, X = Y∖vZ_n, Y ⊎ (−Y) = Z_n ⊎ vZ_n.
    C54,
}

impl Family {
    pub const ALL: [Family; 6] = [Self::T11, Self::T13, Self::C51, Self::C52, Self::C53, Self::C54];

    /// Short tag used in search records.
    pub fn tag(self) -> &'static str {
        match self {
            Self::T11 => "T1.1",
            Self::T13 => "T1.3",
            Self::C51 => "C5.1",
            Self::C52 => "C5.2",
            Self::C53 => "C5.3",
            Self::C54 => "C5.4",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::T11 => "t11",
            Self::T13 => "t13",
            Self::C51 => "c51",
            Self::C52 => "c52",
            Self::C53 => "c53",
            Self::C54 => "c54",
        }
    }

    /// Whether instances are indexed by a divisor v of n and a subset H of Z_v.
    pub fn uses_quotient(self) -> bool {
        !matches!(self, Self::T11 | Self::T13)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Parse { input: s.into(), reason: "unknown family".into() })
    }
}

/// A dihedrant produced by one of the families, with the promised parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub n: usize,
    pub v: Option<usize>,
    pub h: Option<ZnMultiset>,
    pub epsilon: Option<u8>,
    pub dihedrant: Dihedrant,
    pub params: DsrgParams,
}

impl Serialize for FamilyInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FamilyInstance", 8)?;
        st.serialize_field("family", self.family.name())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("v", &self.v)?;
        st.serialize_field("H", &self.h.as_ref().map(|h| h.support()))?;
        st.serialize_field("epsilon", &self.epsilon)?;
        st.serialize_field("X", &self.dihedrant.x().support())?;
        st.serialize_field("Y", &self.dihedrant.y().support())?;
        st.serialize_field("params", &self.params)?;
        st.end()
    }
}

fn inadmissible(msg: impl Into<String>) -> Error {
    Error::Inadmissible(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(inadmissible(msg()))
    }
}

fn ms(n: usize, e: impl IntoIterator<Item = usize>) -> ZnMultiset {
    ZnMultiset::from_elements(n, e.into_iter().map(|i| i as i64)).expect("modulus already checked")
}

/// Z_n ∖ vZ_n.
fn outside_subgroup(n: usize, v: usize) -> ZnMultiset {
    ms(n, (0..n).filter(|i| i % v != 0))
}

fn uplus_neg(a: &ZnMultiset) -> ZnMultiset {
    a.uplus(&a.negate()).expect("same modulus")
}

/// Parameters promised by a family. `v` is ignored for T1.1/T1.3 and
/// `epsilon` is used by T1.1 only.
pub fn family_params(family: Family, n: usize, v: usize, epsilon: u8) -> Result<DsrgParams> {
    let n_i = n as i64;
    let q = |v: usize| -> Result<i64> {
        if v == 0 || n % v != 0 {
            return Err(Error::NotADivisor { divisor: v, n });
        }
        Ok((n / v) as i64)
    };
    let p = match family {
        Family::T11 => {
            ensure(n % 2 == 1, || format!("n = {n} must be odd"))?;
            ensure(epsilon <= 1, || format!("epsilon = {epsilon} must be 0 or 1"))?;
            let e = epsilon as i64;
            DsrgParams::new(2 * n_i, n_i - 1 + e, (n_i - 1) / 2 + e, (n_i - 3) / 2 + e, (n_i - 1) / 2 + e)
        }
        Family::T13 => {
            ensure(n % 2 == 0, || format!("n = {n} must be even"))?;
            DsrgParams::new(2 * n_i, n_i - 1, n_i / 2 - 1, n_i / 2 - 1, n_i / 2)
        }
        Family::C51 => {
            let l = q(v)?;
            let h = (n_i - l) / 2;
            DsrgParams::new(2 * n_i, n_i - l, h, h - l, h)
        }
        Family::C52 => {
            let l = q(v)?;
            ensure(n % 2 == 0, || format!("n = {n} must be even"))?;
            DsrgParams::new(2 * n_i, n_i, n_i / 2 + l, n_i / 2 - l, n_i / 2 + l)
        }
        Family::C53 => {
            let l = q(v)?;
            DsrgParams::new(2 * n_i, n_i + l - 1, (n_i + l) / 2, (n_i + 3 * l) / 2 - 2, (n_i + 3 * l) / 2 - 1)
        }
        Family::C54 => {
            let l = q(v)?;
            DsrgParams::new(2 * n_i, n_i, (n_i + l) / 2, (n_i - l) / 2, (n_i + l) / 2)
        }
    };
    Ok(p)
}

/// Which element Y is built from in the constructive form of T1.1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T11Variant {
    /// Y = g + X.
    Translate,
    /// Y = g − X.
    NegateTranslate,
}

fn check_odd(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be odd")));
    }
    Ok(())
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be even")));
    }
    Ok(())
}

/// X̄ + X̄^{(−1)} equals C̄_n minus the listed elements.
fn skew_half(x: &ZnMultiset, removed: &[usize]) -> bool {
    let n = x.modulus();
    let lhs = CyclicRingElem::<i64>::from_multiset(&uplus_neg(x));
    let rhs = CyclicRingElem::<i64>::from_multiset(&ms(n, (0..n).filter(|i| !removed.contains(i))));
    lhs == rhs
}

/// Checks the T1.1 hypotheses for n odd and returns ε when they hold.
pub fn validate_t11(x: &ZnMultiset, y: &ZnMultiset) -> Result<Option<u8>> {
    let n = x.modulus();
    check_odd(n)?;
    if y.modulus() != n {
        return Err(Error::ModulusMismatch { left: n, right: y.modulus() });
    }
    if !x.is_plain() || !y.is_plain() || !skew_half(x, &[0]) {
        return Ok(None);
    }
    let xb = CyclicRingElem::<i64>::from_multiset(x);
    let yb = CyclicRingElem::<i64>::from_multiset(y);
    let diff = &(&yb * &yb.reversed()) - &(&xb * &xb.reversed());
    let eps = (0..=1u8).find(|&e| diff == CyclicRingElem::whole(n).scale(&(e as i64)));
    Ok(eps)
}

pub fn build_t11(x: &ZnMultiset, g: i64, variant: T11Variant) -> Result<FamilyInstance> {
    let n = x.modulus();
    check_odd(n)?;
    ensure(x.is_plain() && skew_half(x, &[0]), || format!("{{{x}}} ⊎ -{{{x}}} is not Z_{n}∖{{0}}"))?;
    let y = match variant {
        T11Variant::Translate => x.translate(g),
        T11Variant::NegateTranslate => x.negate().translate(g),
    };
    let epsilon = validate_t11(x, &y)?.ok_or_else(|| inadmissible("T1.1 condition (ii) fails"))?;
    Ok(FamilyInstance {
        family: Family::T11,
        n,
        v: None,
        h: None,
        epsilon: Some(epsilon),
        dihedrant: Dihedrant::new(x.clone(), y)?,
        params: family_params(Family::T11, n, 0, epsilon)?,
    })
}

/// Checks the T1.3 hypotheses for n even with involution c = n/2.
pub fn validate_t13(x: &ZnMultiset, y: &ZnMultiset) -> Result<bool> {
    let n = x.modulus();
    check_even(n)?;
    if y.modulus() != n {
        return Err(Error::ModulusMismatch { left: n, right: y.modulus() });
    }
    let c = n / 2;
    Ok(x.is_plain()
        && skew_half(x, &[0, c])
        && (y == x || *y == x.negate())
        && x.translate(c as i64) == x.negate())
}

/// T1.3 instance, realized as Dih(n, X, Y ∪ {0}) so the degree is n − 1.
pub fn build_t13(x: &ZnMultiset, y: &ZnMultiset) -> Result<FamilyInstance> {
    let n = x.modulus();
    ensure(validate_t13(x, y)?, || format!("T1.3 conditions fail for X = {{{x}}}, Y = {{{y}}}"))?;
    let y0 = y.union(&ZnMultiset::singleton(n, 0)?)?;
    Ok(FamilyInstance {
        family: Family::T13,
        n,
        v: None,
        h: None,
        epsilon: None,
        dihedrant: Dihedrant::new(x.clone(), y0)?,
        params: family_params(Family::T13, n, 0, 0)?,
    })
}

fn quotient_setup(n: usize, v: usize, h: &ZnMultiset) -> Result<ZnMultiset> {
    if v == 0 || n % v != 0 {
        return Err(Error::NotADivisor { divisor: v, n });
    }
    if h.modulus() != v {
        return Err(Error::ModulusMismatch { left: h.modulus(), right: v });
    }
    ensure(h.is_plain(), || format!("H = {{{h}}} is not a plain set"))?;
    psi_preimage(n, v, h)
}

fn instance(family: Family, n: usize, v: usize, h: &ZnMultiset, x: ZnMultiset, y: ZnMultiset) -> Result<FamilyInstance> {
    Ok(FamilyInstance {
        family,
        n,
        v: Some(v),
        h: Some(h.clone()),
        epsilon: None,
        dihedrant: Dihedrant::new(x, y)?,
        params: family_params(family, n, v, 0)?,
    })
}

pub fn build_c51(n: usize, v: usize, h: &ZnMultiset) -> Result<FamilyInstance> {
    let x = quotient_setup(n, v, h)?;
    ensure(v % 2 == 1 && v > 1, || format!("v = {v} must be an odd divisor greater than 1"))?;
    ensure(!h.contains(0), || "0 must not lie in H".into())?;
    let neg = x.negate();
    ensure(x.union(&neg)? == outside_subgroup(n, v), || format!("X ∪ -X ≠ Z_{n}∖{v}Z_{n}"))?;
    ensure(x.is_disjoint(&neg)?, || "X meets -X".into())?;
    instance(Family::C51, n, v, h, x.clone(), x)
}

pub fn build_c52(n: usize, v: usize, h: &ZnMultiset) -> Result<FamilyInstance> {
    let x = quotient_setup(n, v, h)?;
    ensure(v % 2 == 0 && v > 2, || format!("v = {v} must be an even divisor greater than 2"))?;
    ensure(!h.contains(0), || "0 must not lie in H".into())?;
    let half = v / 2;
    let target = outside_subgroup(n, v).uplus(&ms(n, (half..n).step_by(v)))?;
    ensure(uplus_neg(&x) == target, || format!("X ⊎ -X ≠ (Z_{n}∖{v}Z_{n}) ⊎ ({half}+{v}Z_{n})"))?;
    ensure(x.union(&x.translate(half as i64))? == ZnMultiset::whole(n)?, || {
        format!("X ∪ ({half}+X) ≠ Z_{n}")
    })?;
    instance(Family::C52, n, v, h, x.clone(), x)
}

fn c53_c54_common(n: usize, v: usize, h: &ZnMultiset) -> Result<ZnMultiset> {
    let y = quotient_setup(n, v, h)?;
    ensure(v % 2 == 1, || format!("v = {v} must be odd"))?;
    ensure(h.contains(0), || "0 must lie in H".into())?;
    let target = ZnMultiset::whole(n)?.uplus(&ZnMultiset::subgroup(n, v)?)?;
    ensure(uplus_neg(&y) == target, || format!("Y ⊎ -Y ≠ Z_{n} ⊎ {v}Z_{n}"))?;
    Ok(y)
}

pub fn build_c53(n: usize, v: usize, h: &ZnMultiset) -> Result<FamilyInstance> {
    let y = c53_c54_common(n, v, h)?;
    let x = y.msdiff(&ZnMultiset::singleton(n, 0)?)?;
    instance(Family::C53, n, v, h, x, y)
}

pub fn build_c54(n: usize, v: usize, h: &ZnMultiset) -> Result<FamilyInstance> {
    let y = c53_c54_common(n, v, h)?;
    let x = y.msdiff(&ZnMultiset::subgroup(n, v)?)?;
    instance(Family::C54, n, v, h, x, y)
}

/// Dispatches to the quotient-indexed builders.
pub fn build(family: Family, n: usize, v: usize, h: &ZnMultiset) -> Result<FamilyInstance> {
    match family {
        Family::C51 => build_c51(n, v, h),
        Family::C52 => build_c52(n, v, h),
        Family::C53 => build_c53(n, v, h),
        Family::C54 => build_c54(n, v, h),
        Family::T11 | Family::T13 => Err(Error::InvalidArgument(format!(
            "{family} is not indexed by (v, H); use its own builder"
        ))),
    }
}

/// Target multiplicity of each element of Z_m in H ⊎ (−H).
fn symmetric_target(family: Family, m: usize) -> Vec<u64> {
    (0..m)
        .map(|i| match family {
            Family::C51 | Family::T11 => u64::from(i != 0),
            Family::C52 => u64::from(i != 0) + u64::from(2 * i == m),
            Family::C53 | Family::C54 => 1 + u64::from(i == 0),
            Family::T13 => u64::from(i != 0 && 2 * i != m),
        })
        .collect()
}

/// Every plain H ⊆ Z_m with H ⊎ (−H) equal to `target`, by choosing per
/// ±-class; classes whose target count is unreachable yield nothing.
fn symmetric_subsets(m: usize, target: &[u64]) -> Vec<ZnMultiset> {
    let mut options: Vec<Vec<Vec<usize>>> = Vec::new();
    for i in 0..m {
        let j = (m - i) % m;
        if j < i {
            continue;
        }
        let opts: Vec<Vec<usize>> = if i == j {
            match target[i] {
                0 => vec![vec![]],
                2 => vec![vec![i]],
                _ => return Vec::new(),
            }
        } else {
            match (target[i], target[j]) {
                (0, 0) => vec![vec![]],
                (1, 1) => vec![vec![i], vec![j]],
                (2, 2) => vec![vec![i, j]],
                _ => return Vec::new(),
            }
        };
        options.push(opts);
    }
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|base: Vec<usize>| {
                opts.iter().map(move |o| base.iter().chain(o).copied().collect::<Vec<usize>>())
            })
            .collect();
    }
    out.into_iter().map(|e| ms(m, e)).collect()
}

fn sort_key(inst: &FamilyInstance) -> (Option<Vec<usize>>, Vec<usize>, Vec<usize>) {
    (
        inst.h.as_ref().map(ZnMultiset::support),
        inst.dihedrant.x().support(),
        inst.dihedrant.y().support(),
    )
}

fn check_divisor(family: Family, n: usize, v: usize) -> Result<()> {
    if v == 0 || n % v != 0 {
        return Err(Error::NotADivisor { divisor: v, n });
    }
    let ok = match family {
        Family::C51 => v % 2 == 1 && v > 1,
        Family::C52 => v % 2 == 0 && v > 2,
        _ => v % 2 == 1,
    };
    if !ok {
        return Err(Error::InvalidArgument(format!("v = {v} is not admissible for {family}")));
    }
    Ok(())
}

/// Largest n accepted by the T1.1/T1.3 enumerators.
pub const MAX_ENUMERATE_N: usize = 41;

/// All instances of a family at (n, v). For the quotient families the
/// candidates for H are generated per ±-class of Z_v and then validated
/// literally; each result is also checked with the matrix verifier. For
/// T1.1 and T1.3 `v` is ignored and every constructive (X, Y) is listed.
pub fn enumerate_family(family: Family, n: usize, v: usize) -> Result<Vec<FamilyInstance>> {
    let mut out = match family {
        Family::T11 | Family::T13 => enumerate_theorem_family(family, n)?,
        _ => {
            check_divisor(family, n, v)?;
            symmetric_subsets(v, &symmetric_target(family, v))
                .iter()
                .filter_map(|h| build(family, n, v, h).ok())
                .collect()
        }
    };
    for inst in &out {
        confirm(inst)?;
    }
    out.sort_by_cached_key(sort_key);
    out.dedup_by(|a, b| a.dihedrant == b.dihedrant);
    Ok(out)
}

/// Brute force over all 2^v subsets H of Z_v; the oracle for [`enumerate_family`].
pub fn enumerate_family_exhaustive(family: Family, n: usize, v: usize) -> Result<Vec<FamilyInstance>> {
    if !family.uses_quotient() {
        return Err(Error::InvalidArgument(format!("{family} is not indexed by H")));
    }
    if v > 24 {
        return Err(Error::SearchTooLarge(format!("2^{v} subsets")));
    }
    check_divisor(family, n, v)?;
    let mut out = Vec::new();
    for mask in 0u64..1 << v {
        let h = ZnMultiset::from_mask(v, mask)?;
        if let Ok(inst) = build(family, n, v, &h) {
            confirm(&inst)?;
            out.push(inst);
        }
    }
    out.sort_by_cached_key(sort_key);
    Ok(out)
}

fn enumerate_theorem_family(family: Family, n: usize) -> Result<Vec<FamilyInstance>> {
    if n > MAX_ENUMERATE_N {
        return Err(Error::SearchTooLarge(format!("n = {n} exceeds {MAX_ENUMERATE_N}")));
    }
    let mut out = Vec::new();
    match family {
        Family::T11 => {
            check_odd(n)?;
            for x in symmetric_subsets(n, &symmetric_target(Family::T11, n)) {
                for g in 0..n as i64 {
                    for variant in [T11Variant::Translate, T11Variant::NegateTranslate] {
                        out.push(build_t11(&x, g, variant)?);
                    }
                }
            }
        }
        _ => {
            check_even(n)?;
            for x in symmetric_subsets(n, &symmetric_target(Family::T13, n)) {
                for y in [x.clone(), x.negate()] {
                    if validate_t13(&x, &y)? {
                        out.push(build_t13(&x, &y)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Matrix-verifies an instance against its promised parameters.
pub fn confirm(inst: &FamilyInstance) -> Result<()> {
    match verify_matrix(&inst.dihedrant) {
        Ok(p) if p == inst.params => Ok(()),
        Ok(p) => Err(inadmissible(format!(
            "{} verifies with {p}, family promises {}",
            inst.dihedrant, inst.params
        ))),
        Err(v) => Err(inadmissible(format!("{} is not a DSRG: {v}", inst.dihedrant))),
    }
}
