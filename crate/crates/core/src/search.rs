//! Exhaustive search for directed strongly regular dihedrants on Z_{p^α}.
//!
//! Candidates are bitmasks. The space is cut into ranges by fixed high-bit
//! prefixes, each range is scanned independently, and results are
//! concatenated in prefix order, so the output does not depend on the
//! number of worker threads.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, units};
use crate::constructions::{build, validate_t11, validate_t13, Family};
use crate::dsrg::{verify_matrix, Dihedrant, DsrgParams};
use crate::error::{Error, Result};
use crate::residue::{orbit, ZnMultiset};
use crate::structure::{decompose_ux, is_orbit_union, shape_t14, shape_t15, shape_t16};

/// A verified directed strongly regular dihedrant found by a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
    pub params: DsrgParams,
    /// Least element of its transform orbit within the searched space.
    pub canonical: bool,
    pub matched: Vec<String>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub genuine: bool,
    /// Pair searches only: X ⊊ Y and Y∖X is a union of Z_n^*-orbits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested_orbit_union: Option<bool>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl SearchRecord {
    pub fn dihedrant(&self) -> Result<Dihedrant> {
        let conv = |v: &[usize]| v.iter().map(|&e| e as i64).collect::<Vec<_>>();
        Dihedrant::from_elements(self.n, &conv(&self.x), &conv(&self.y))
    }

    pub fn x_set(&self) -> ZnMultiset {
        ZnMultiset::from_elements(self.n, self.x.iter().map(|&e| e as i64)).expect("valid record")
    }

    pub fn y_set(&self) -> ZnMultiset {
        ZnMultiset::from_elements(self.n, self.y.iter().map(|&e| e as i64)).expect("valid record")
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.matched.iter().any(|t| t == tag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Matrix-verify every candidate.
    Exhaustive,
    /// Keep only X whose U_X is a {0,1,2}-combination of orbits with a valid
    /// decomposition (necessary for any DSRG Dih(p^α, X, X)), then verify.
    Filtered,
}

/// Largest n accepted by each search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub exhaustive_xx: usize,
    pub filtered_xx: usize,
    pub xy: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { exhaustive_xx: 16, filtered_xx: 27, xy: 9 }
    }
}

impl SearchLimits {
    /// One cap for every mode; bitmasks still require n ≤ 63 (xx) or n ≤ 31 (xy).
    pub fn uniform(n: usize) -> Self {
        Self { exhaustive_xx: n.min(63), filtered_xx: n.min(63), xy: n.min(31) }
    }
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub include_non_genuine: bool,
    pub limits: SearchLimits,
}


fn modulus(p: usize, alpha: u32) -> Result<usize> {
    if !is_prime(p) || alpha == 0 {
        return Err(Error::NotAPrimePower(p.saturating_pow(alpha)));
    }
    p.checked_pow(alpha).ok_or_else(|| Error::SearchTooLarge(format!("{p}^{alpha}")))
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Mask of −A for a mask of A ⊆ Z_n.
pub fn negate_mask(mask: u64, n: usize) -> u64 {
    let rest = (mask & !1).reverse_bits() >> (63 - n);
    (rest & full(n)) | (mask & 1)
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Runs `scan` on `2^prefix_bits` disjoint ranges of `[0, 2^bits)` and
/// concatenates the results in range order.
fn partitioned<T, F>(bits: u32, jobs: usize, scan: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Vec<T> + Sync,
{
    let prefix_bits = bits.min(10);
    let chunks = 1u64 << prefix_bits;
    let width = 1u64 << (bits - prefix_bits);
    let run = || -> Vec<T> {
        (0..chunks)
            .into_par_iter()
            .map(|c| scan(c * width, (c + 1) * width))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    if jobs == 0 {
        return Ok(run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(run))
}

/// Orbit masks O_{p^i} for i = 0..=α.
fn orbit_masks(p: usize, alpha: u32) -> Vec<u64> {
    let n = p.pow(alpha);
    (0..=alpha)
        .map(|i| orbit(n, p.pow(i)).expect("divisor").elements.iter().fold(0, |m, &e| m | 1 << e))
        .collect()
}

/// U_X has constant multiplicity on each orbit.
fn orbit_constant(x: u64, neg: u64, orbits: &[u64]) -> bool {
    orbits.iter().all(|&o| {
        let a = x & o;
        let b = neg & o;
        a == 0 || a == o || (a & b == 0 && a | b == o)
    })
}

/// Tags of every construction or characterization this dihedrant matches literally.
pub fn match_tags(d: &Dihedrant) -> Vec<String> {
    let n = d.n();
    let (x, y) = (d.x(), d.y());
    let mut tags = Vec::new();
    if let Some((p, alpha)) = crate::arith::prime_power(n) {
        if x == y {
            let t14 = p != 2 && shape_t14(p, alpha, x).unwrap_or(false);
            let t15 = p == 2 && shape_t15(alpha, x).unwrap_or(false);
            if t14 {
                tags.push("T1.4");
            }
            if t15 {
                tags.push("T1.5");
            }
        }
        if p != 2 && shape_t16(p, alpha, x, y).unwrap_or(false) {
            tags.push("T1.6-shape");
        }
    }
    if n % 2 == 1 && matches!(validate_t11(x, y), Ok(Some(_))) {
        tags.push("T1.1");
    }
    if n % 2 == 0 && y.contains(0) {
        let y0 = y.msdiff(&ZnMultiset::singleton(n, 0).expect("n > 0")).expect("same modulus");
        if validate_t13(x, &y0).unwrap_or(false) {
            tags.push("T1.3");
        }
    }
    for family in [Family::C51, Family::C52, Family::C53, Family::C54] {
        let base = if matches!(family, Family::C51 | Family::C52) { x } else { y };
        let matched = crate::arith::divisors(n).into_iter().any(|v| {
            if base.translate(v as i64) != *base {
                return false;
            }
            let h = crate::residue::psi_image(v, base).expect("divisor").to_set();
            matches!(build(family, n, v, &h), Ok(inst) if inst.dihedrant == *d)
        });
        if matched {
            tags.push(family.tag());
        }
    }
    tags.into_iter().map(String::from).collect()
}

fn record(d: &Dihedrant, params: DsrgParams, canonical: bool, pair: bool) -> SearchRecord {
    let nested = pair.then(|| {
        let proper = d.x() != d.y() && d.x().is_subset(d.y()).expect("same modulus");
        proper && is_orbit_union(&d.y().msdiff(d.x()).expect("same modulus")).expect("valid")
    });
    SearchRecord {
        n: d.n(),
        x: d.x().support(),
        y: d.y().support(),
        params,
        canonical,
        matched: match_tags(d),
        genuine: params.is_genuine(),
        nested_orbit_union: nested,
    }
}

/// X is least among its unit dilates, i.e. canonical among the transforms of
/// Dih(n, X, X) that keep Y = X.
fn dilation_canonical(x: u64, n: usize) -> bool {
    let elems = mask_elements(x);
    units(n).into_iter().all(|b| elems.iter().fold(0u64, |m, &e| m | 1 << (e * b % n)) >= x)
}

/// All X ⊆ Z_{p^α}∖{0} with Dih(p^α, X, X) a (by default genuine) DSRG.
pub fn search_xx(p: usize, alpha: u32, mode: SearchMode, opts: &SearchOptions) -> Result<Vec<SearchRecord>> {
    let n = modulus(p, alpha)?;
    let cap = match mode {
        SearchMode::Exhaustive => opts.limits.exhaustive_xx,
        SearchMode::Filtered => opts.limits.filtered_xx,
    };
    if n > cap || n > 63 {
        return Err(Error::SearchTooLarge(format!("n = {n} exceeds the {mode:?} cap {cap}")));
    }
    let orbits = orbit_masks(p, alpha);
    let bits = (n - 1) as u32;
    partitioned(bits, opts.jobs, |lo, hi| {
        let mut out = Vec::new();
        for m in lo..hi {
            let x = m << 1;
            if mode == SearchMode::Filtered {
                if !orbit_constant(x, negate_mask(x, n), &orbits) {
                    continue;
                }
                let xs = ZnMultiset::from_mask(n, x).expect("n <= 63");
                if !decompose_ux(p, alpha, &xs).map(|d| d.valid).unwrap_or(false) {
                    continue;
                }
            }
            let d = Dihedrant::from_masks(n, x, x).expect("0 is not in X");
            if let Ok(params) = verify_matrix(&d) {
                if params.is_genuine() || opts.include_non_genuine {
                    out.push(record(&d, params, dilation_canonical(x, n), false));
                }
            }
        }
        out
    })
}

/// All pairs (X, Y) with 0 ∉ X and Dih(p^α, X, Y) a (by default genuine) DSRG.
pub fn search_xy(p: usize, alpha: u32, opts: &SearchOptions) -> Result<Vec<SearchRecord>> {
    let n = modulus(p, alpha)?;
    let cap = opts.limits.xy;
    if n > cap || n > 31 {
        return Err(Error::SearchTooLarge(format!("n = {n} exceeds the pair-search cap {cap}")));
    }
    let bits = (2 * n - 1) as u32;
    let ymask = full(n);
    partitioned(bits, opts.jobs, |lo, hi| {
        let mut out = Vec::new();
        for m in lo..hi {
            let x = (m >> n) << 1;
            let y = m & ymask;
            let d = Dihedrant::from_masks(n, x, y).expect("0 is not in X");
            if let Ok(params) = verify_matrix(&d) {
                if params.is_genuine() || opts.include_non_genuine {
                    let canonical = d.is_canonical().expect("n <= 31");
                    out.push(record(&d, params, canonical, true));
                }
            }
        }
        out
    })
}

/// Every X ⊆ Z_n∖{0} as a pair (X, X).
pub fn xx_candidates(n: usize) -> impl Iterator<Item = (ZnMultiset, ZnMultiset)> {
    (0..1u64 << (n - 1)).map(move |m| {
        let x = ZnMultiset::from_mask(n, m << 1).expect("n <= 63");
        (x.clone(), x)
    })
}

/// Every pair with 0 ∉ X.
pub fn xy_candidates(n: usize) -> impl Iterator<Item = (ZnMultiset, ZnMultiset)> {
    (0..1u64 << (2 * n - 1)).map(move |m| {
        let x = ZnMultiset::from_mask(n, (m >> n) << 1).expect("n <= 31");
        let y = ZnMultiset::from_mask(n, m & full(n)).expect("n <= 31");
        (x, y)
    })
}

/// Records that contradict a predicate, and predicted configurations no search produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub failing: Vec<SearchRecord>,
    pub missing: Vec<(Vec<usize>, Vec<usize>)>,
}

impl CrossValidation {
    pub fn is_clean(&self) -> bool {
        self.failing.is_empty() && self.missing.is_empty()
    }
}

/// Genuine records failing `predicate`, plus candidates satisfying it that
/// are absent from `records`. Non-genuine records are ignored.
pub fn cross_validate<I, F>(records: &[SearchRecord], candidates: I, predicate: F) -> CrossValidation
where
    I: IntoIterator<Item = (ZnMultiset, ZnMultiset)>,
    F: Fn(&ZnMultiset, &ZnMultiset) -> bool,
{
    let genuine: Vec<&SearchRecord> = records.iter().filter(|r| r.genuine).collect();
    let present: BTreeSet<(Vec<usize>, Vec<usize>)> =
        genuine.iter().map(|r| (r.x.clone(), r.y.clone())).collect();
    let failing = genuine
        .iter()
        .filter(|r| !predicate(&r.x_set(), &r.y_set()))
        .map(|r| (*r).clone())
        .collect();
    let missing = candidates
        .into_iter()
        .filter(|(x, y)| predicate(x, y))
        .map(|(x, y)| (x.support(), y.support()))
        .filter(|key| !present.contains(key))
        .collect();
    CrossValidation { failing, missing }
}

/// Σ over canonical records of |transform orbit ∩ space|; equals the record
/// count when canonical flags and orbits are consistent.
pub fn canonical_orbit_total<F>(records: &[SearchRecord], in_space: F) -> Result<usize>
where
    F: Fn(u64, u64) -> bool,
{
    let mut total = 0;
    for r in records.iter().filter(|r| r.canonical) {
        let orbit = r.dihedrant()?.transform_orbit()?;
        total += orbit.into_iter().filter(|&(x, y)| in_space(x, y)).count();
    }
    Ok(total)
}
