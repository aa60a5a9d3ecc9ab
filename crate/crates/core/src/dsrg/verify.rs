//! Three independent DSRG tests for a dihedrant.
//!
//! [`verify_matrix`] is the ground truth and infers the parameters. The other
//! two take parameters as input and check the equivalent identities in the
//! group ring Z[C_n] and, pointwise, in Z[ζ_n].

use std::fmt;

use serde::Serialize;

use super::{AdjacencyMatrix, Dihedrant, DsrgParams};
use crate::cyclotomic::{fourier, Cyclotomic};
use crate::error::{Error, Result};
use crate::group_ring::{delta1, CyclicRingElem};

/// Where the matrix test first went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixViolation {
    /// Row or column sums are not all equal to the out-degree of vertex 0.
    NotRegular { index: usize, sum: usize, expected: usize },
    /// `(A²)_{ii}` differs from `(A²)_{00}`.
    Diagonal { row: usize, col: usize, found: usize, expected: usize },
    /// `(A²)_{ij}` on an arc differs from the first arc's value.
    OnArc { row: usize, col: usize, found: usize, expected: usize },
    /// `(A²)_{ij}` on a non-arc differs from the first non-arc's value.
    OffArc { row: usize, col: usize, found: usize, expected: usize },
}

impl fmt::Display for MatrixViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotRegular { index, sum, expected } => {
                write!(f, "line {index} has sum {sum}, expected {expected}")
            }
            Self::Diagonal { row, col, found, expected } => {
                write!(f, "A^2[{row}][{col}] = {found} on the diagonal, expected t = {expected}")
            }
            Self::OnArc { row, col, found, expected } => {
                write!(f, "A^2[{row}][{col}] = {found} on an arc, expected lambda = {expected}")
            }
            Self::OffArc { row, col, found, expected } => {
                write!(f, "A^2[{row}][{col}] = {found} off the arcs, expected mu = {expected}")
            }
        }
    }
}

/// Checks `AJ = JA = kJ` and `A² = tI + λA + μ(J − I − A)` on the full
/// adjacency matrix, reading t, λ, μ off the first cell of each kind.
/// Unconstrained λ (no arcs) or μ (complete digraph) is reported as 0.
pub fn verify_matrix(d: &Dihedrant) -> std::result::Result<DsrgParams, MatrixViolation> {
    verify_adjacency(&d.adjacency())
}

pub fn verify_adjacency(a: &AdjacencyMatrix) -> std::result::Result<DsrgParams, MatrixViolation> {
    let size = a.size();
    let k = a.row_sum(0);
    for i in 0..size {
        for sum in [a.row_sum(i), a.col_sum(i)] {
            if sum != k {
                return Err(MatrixViolation::NotRegular { index: i, sum, expected: k });
            }
        }
    }
    let (mut t, mut lambda, mut mu) = (None, None, None);
    for row in 0..size {
        for col in 0..size {
            let found = a.square_entry(row, col);
            let (slot, wrap): (_, fn(usize, usize, usize, usize) -> MatrixViolation) = if row == col {
                (&mut t, |row, col, found, expected| MatrixViolation::Diagonal { row, col, found, expected })
            } else if a.get(row, col) {
                (&mut lambda, |row, col, found, expected| MatrixViolation::OnArc { row, col, found, expected })
            } else {
                (&mut mu, |row, col, found, expected| MatrixViolation::OffArc { row, col, found, expected })
            };
            match *slot {
                None => *slot = Some(found),
                Some(expected) if expected != found => return Err(wrap(row, col, found, expected)),
                Some(_) => {}
            }
        }
    }
    let get = |x: Option<usize>| x.unwrap_or(0) as i64;
    Ok(DsrgParams::new(size as i64, k as i64, get(mu), get(lambda), get(t)))
}

/// The identity an algebraic verifier found violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `x̄^Y Δ1 = (λ−μ) x̄^Y + μ C̄_n` (reflection part of S̄²).
    Reflection,
    /// `x̄^X² + x̄^Y x̄^{−Y} = (t−μ)e + (λ−μ) x̄^X + μ C̄_n` (rotation part of S̄²).
    Rotation,
    /// `t(r + r̄) = μnΔ0 + (λ−μ)t` with r = FΔ_X, t = FΔ_Y.
    FourierReflection,
    /// `r² + |t|² = t − μ + μnΔ0 + (λ−μ)r`.
    FourierRotation,
    /// `r(r + r̄) = μnΔ0 + (λ−μ)r`, the single condition when Y = X.
    FourierSymmetric,
    /// `t = μ`, forced when Y = X.
    TwoCyclesEqualMu,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Reflection => "x^Y*D1 = (lambda-mu)x^Y + mu*C_n",
            Self::Rotation => "(x^X)^2 + x^Y*x^-Y = (t-mu)e + (lambda-mu)x^X + mu*C_n",
            Self::FourierReflection => "t(r+conj r) = mu*n*D0 + (lambda-mu)t",
            Self::FourierRotation => "r^2 + |t|^2 = t-mu + mu*n*D0 + (lambda-mu)r",
            Self::FourierSymmetric => "r(r+conj r) = mu*n*D0 + (lambda-mu)r",
            Self::TwoCyclesEqualMu => "t = mu",
        })
    }
}

/// Outcome of an algebraic verifier. `at` is the first failing coefficient
/// index (group ring) or the first failing z (Fourier).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { identity: Identity, at: usize },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

fn check_shape(d: &Dihedrant, p: &DsrgParams) -> Result<()> {
    if p.v != d.vertex_count() as i64 || p.k != d.degree() as i64 {
        return Err(Error::ParamsMismatch(format!(
            "{d} has v = {}, k = {} but the tuple is {p}",
            d.vertex_count(),
            d.degree()
        )));
    }
    Ok(())
}

fn first_difference(lhs: &CyclicRingElem<i64>, rhs: &CyclicRingElem<i64>) -> Option<usize> {
    lhs.coeffs().iter().zip(rhs.coeffs()).position(|(a, b)| a != b)
}

/// Splits `S̄² = te + λS̄ + μ(D̄_n − e − S̄)` into its rotation and reflection
/// parts and checks both exactly in Z[C_n].
pub fn verify_groupring(d: &Dihedrant, p: &DsrgParams) -> Result<Verdict> {
    check_shape(d, p)?;
    let n = d.n();
    let x = CyclicRingElem::<i64>::from_multiset(d.x());
    let y = CyclicRingElem::<i64>::from_multiset(d.y());
    let whole_mu = CyclicRingElem::whole(n).scale(&p.mu);
    let lm = p.lambda - p.mu;

    let lhs = &y * &delta1(d.x());
    let rhs = &y.scale(&lm) + &whole_mu;
    if let Some(at) = first_difference(&lhs, &rhs) {
        return Ok(Verdict::Fails { identity: Identity::Reflection, at });
    }

    let lhs = &(&x * &x) + &(&y * &y.reversed());
    let rhs = &(&CyclicRingElem::scalar(n, p.t - p.mu) + &x.scale(&lm)) + &whole_mu;
    if let Some(at) = first_difference(&lhs, &rhs) {
        return Ok(Verdict::Fails { identity: Identity::Rotation, at });
    }
    Ok(Verdict::Holds)
}

/// Checks the Fourier images of the two group-ring identities at every
/// z ∈ Z_n with exact arithmetic in Z[ζ_n]; when Y = X also checks the
/// single symmetric condition and t = μ.
pub fn verify_fourier(d: &Dihedrant, p: &DsrgParams) -> Result<Verdict> {
    check_shape(d, p)?;
    let n = d.n();
    let r = fourier(d.x());
    let tf = fourier(d.y());
    let symmetric = d.x() == d.y();
    let lm = p.lambda - p.mu;
    let c = |v: i64| Cyclotomic::<i64>::from_int(n, v);

    for z in 0..n {
        let (rz, tz) = (r.at(z), tf.at(z));
        let r_sym = rz + &rz.conjugate();
        let peak = if z == 0 { p.mu * n as i64 } else { 0 };

        if !(tz * &r_sym).try_eq(&(&c(peak) + &tz.scale(&lm)))? {
            return Ok(Verdict::Fails { identity: Identity::FourierReflection, at: z });
        }
        let lhs = &(rz * rz) + &(tz * &tz.conjugate());
        let rhs = &c(p.t - p.mu + peak) + &rz.scale(&lm);
        if !lhs.try_eq(&rhs)? {
            return Ok(Verdict::Fails { identity: Identity::FourierRotation, at: z });
        }
        if symmetric && !(rz * &r_sym).try_eq(&(&c(peak) + &rz.scale(&lm)))? {
            return Ok(Verdict::Fails { identity: Identity::FourierSymmetric, at: z });
        }
    }
    if symmetric && p.t != p.mu {
        return Ok(Verdict::Fails { identity: Identity::TwoCyclesEqualMu, at: 0 });
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dih(n: usize, x: &[i64], y: &[i64]) -> Dihedrant {
        Dihedrant::from_elements(n, x, y).unwrap()
    }

    const P: fn(i64, i64, i64, i64, i64) -> DsrgParams = DsrgParams::new;

    #[test]
    fn matrix_examples() {
        assert_eq!(verify_matrix(&dih(3, &[1], &[1])), Ok(P(6, 2, 1, 0, 1)));
        assert_eq!(verify_matrix(&dih(3, &[1], &[0, 1])), Ok(P(6, 3, 2, 1, 2)));
        let err = verify_matrix(&dih(4, &[1], &[1])).unwrap_err();
        assert!(matches!(err, MatrixViolation::OffArc { .. }), "{err}");
    }

    #[test]
    fn groupring_examples() {
        let holds = |n, x: &[i64], y: &[i64], p| verify_groupring(&dih(n, x, y), &p).unwrap();
        assert_eq!(holds(3, &[1], &[1], P(6, 2, 1, 0, 1)), Verdict::Holds);
        assert_eq!(holds(9, &[1, 4, 7], &[1, 4, 7], P(18, 6, 3, 0, 3)), Verdict::Holds);
        let v = holds(3, &[1], &[1], P(6, 2, 1, 1, 1));
        assert!(matches!(v, Verdict::Fails { identity: Identity::Reflection, .. }));
        assert!(verify_groupring(&dih(3, &[1], &[1]), &P(8, 2, 1, 0, 1)).is_err());
    }

    #[test]
    fn fourier_examples() {
        let d = dih(3, &[1], &[1]);
        assert!(verify_fourier(&d, &P(6, 2, 1, 0, 1)).unwrap().holds());
        let d = dih(9, &[1, 3, 4, 6, 7], &[0, 1, 3, 4, 6, 7]);
        assert!(verify_fourier(&d, &P(18, 11, 6, 7, 8)).unwrap().holds());
        let d = dih(5, &[1], &[1]);
        for mu in 0..=2 {
            for lambda in 0..=2 {
                for t in 0..=2 {
                    assert!(!verify_fourier(&d, &P(10, 2, mu, lambda, t)).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn symmetric_case_forces_t_equal_mu() {
        // Dih(3,{1},{1}) is a DSRG, but no tuple with t ≠ μ passes.
        let d = dih(3, &[1], &[1]);
        assert!(!verify_fourier(&d, &P(6, 2, 0, 0, 1)).unwrap().holds());
        assert!(!verify_groupring(&d, &P(6, 2, 0, 0, 1)).unwrap().holds());
    }
}
