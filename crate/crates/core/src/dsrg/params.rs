use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::error::{Error, Result};

/// Parameters `(v, k, μ, λ, t)` of a directed strongly regular graph:
/// `A² = tI + λA + μ(J − I − A)` and `AJ = JA = kJ` for a `v × v` adjacency matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DsrgParams {
    pub v: i64,
    pub k: i64,
    pub mu: i64,
    pub lambda: i64,
    pub t: i64,
}

/// First necessary condition a parameter tuple violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasible {
    /// `k(k + μ − λ) ≠ t + (v − 1)μ`.
    CountingIdentity { lhs: i64, rhs: i64 },
    /// `(μ − λ)² + 4(t − μ)` is not the square of a positive integer.
    NotASquare { d2: i64 },
    /// `d ∤ 2k + (λ − μ)(v − 1)`.
    Divisibility { numerator: i64, d: i64 },
    /// The quotient has the wrong parity relative to `v − 1`.
    Parity { quotient: i64 },
    /// `|quotient| > v − 1`.
    Magnitude { quotient: i64 },
    /// One link of `0 ≤ λ < t < k`, `0 < μ ≤ t`, `−2(k−t−1) ≤ μ−λ ≤ 2(k−t)` fails.
    Inequality(&'static str),
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CountingIdentity { lhs, rhs } => {
                write!(f, "k(k+mu-lambda) = {lhs} but t+(v-1)mu = {rhs}")
            }
            Self::NotASquare { d2 } => write!(f, "d^2 = {d2} is not a positive perfect square"),
            Self::Divisibility { numerator, d } => write!(f, "d = {d} does not divide {numerator}"),
            Self::Parity { quotient } => write!(f, "quotient {quotient} has the wrong parity"),
            Self::Magnitude { quotient } => write!(f, "|{quotient}| exceeds v-1"),
            Self::Inequality(which) => write!(f, "inequality {which} fails"),
        }
    }
}

/// Eigenvalues `k, ρ, σ` of the adjacency matrix and the multiplicities of `ρ, σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalues {
    pub k: i64,
    pub rho: i64,
    pub sigma: i64,
    pub m_rho: i64,
    pub m_sigma: i64,
}

impl DsrgParams {
    pub const fn new(v: i64, k: i64, mu: i64, lambda: i64, t: i64) -> Self {
        Self { v, k, mu, lambda, t }
    }

    /// Excludes undirected graphs (t = k) and doubly regular tournaments (t = 0).
    pub fn is_genuine(&self) -> bool {
        0 < self.t && self.t < self.k
    }

    /// `d` with `d² = (μ − λ)² + 4(t − μ)`, when that is a positive square.
    pub fn d(&self) -> Option<i64> {
        let d2 = (self.mu - self.lambda).pow(2) + 4 * (self.t - self.mu);
        if d2 <= 0 {
            return None;
        }
        let d = isqrt(d2 as u64) as i64;
        (d * d == d2).then_some(d)
    }

    /// Duval's necessary conditions, reporting the first one that fails.
    pub fn duval_feasible(&self) -> std::result::Result<(), Infeasible> {
        let Self { v, k, mu, lambda, t } = *self;
        let lhs = k * (k + mu - lambda);
        let rhs = t + (v - 1) * mu;
        if lhs != rhs {
            return Err(Infeasible::CountingIdentity { lhs, rhs });
        }
        let d = self.d().ok_or(Infeasible::NotASquare {
            d2: (mu - lambda).pow(2) + 4 * (t - mu),
        })?;
        let numerator = 2 * k + (lambda - mu) * (v - 1);
        if numerator % d != 0 {
            return Err(Infeasible::Divisibility { numerator, d });
        }
        let quotient = numerator / d;
        if (quotient - (v - 1)).rem_euclid(2) != 0 {
            return Err(Infeasible::Parity { quotient });
        }
        if quotient.abs() > v - 1 {
            return Err(Infeasible::Magnitude { quotient });
        }
        let chain: [(bool, &'static str); 6] = [
            (0 <= lambda, "0 <= lambda"),
            (lambda < t, "lambda < t"),
            (t < k, "t < k"),
            (0 < mu, "0 < mu"),
            (mu <= t, "mu <= t"),
            (
                -2 * (k - t - 1) <= mu - lambda && mu - lambda <= 2 * (k - t),
                "-2(k-t-1) <= mu-lambda <= 2(k-t)",
            ),
        ];
        match chain.iter().find(|(ok, _)| !ok) {
            Some((_, which)) => Err(Infeasible::Inequality(which)),
            None => Ok(()),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.duval_feasible().is_ok()
    }

    /// Integral eigenvalues and multiplicities; fails when any is not integral.
    pub fn eigenvalues(&self) -> Result<Eigenvalues> {
        let bad = |why: &str| Error::Infeasible(format!("{self}: {why}"));
        let Self { v, k, mu, lambda, .. } = *self;
        let d = self.d().ok_or_else(|| bad("d is not a positive integer"))?;
        if (lambda - mu + d) % 2 != 0 {
            return Err(bad("eigenvalues are not integral"));
        }
        let rho = (lambda - mu + d) / 2;
        let sigma = (lambda - mu - d) / 2;
        let num_rho = -(k + sigma * (v - 1));
        let num_sigma = k + rho * (v - 1);
        if num_rho % d != 0 || num_sigma % d != 0 {
            return Err(bad("multiplicities are not integral"));
        }
        let (m_rho, m_sigma) = (num_rho / d, num_sigma / d);
        if m_rho <= 0 || m_sigma <= 0 {
            return Err(bad("multiplicities are not positive"));
        }
        Ok(Eigenvalues { k, rho, sigma, m_rho, m_sigma })
    }

    /// Parameters of the complementary digraph.
    pub fn complement(&self) -> Self {
        let Self { v, k, mu, lambda, t } = *self;
        let s = v - 2 * k;
        Self { v, k: s + k - 1, mu: s + lambda, lambda: s + mu - 2, t: s + t - 1 }
    }
}

pub fn duval_feasible(p: &DsrgParams) -> std::result::Result<(), Infeasible> {
    p.duval_feasible()
}

pub fn spectrum(p: &DsrgParams) -> Result<Eigenvalues> {
    p.eigenvalues()
}

pub fn complement_params(p: &DsrgParams) -> DsrgParams {
    p.complement()
}

impl fmt::Display for DsrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.v, self.k, self.mu, self.lambda, self.t)
    }
}
