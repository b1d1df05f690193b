//! Plethystic operations: Adams operations, exterior and symmetric squares,
//! and the graded pieces of the free Lie algebra on a representation.

use serde::{Deserialize, Serialize};

use crate::char_ring::{decompose_sp4, sp4_irrep_character, DominantWeight, SymplecticCharacter};
use crate::error::{Error, Result};
use crate::laurent::{Coeff, Exponent, Laurent};

/// Default bracket-length cap: relations of the genus-two presentation stop at degree 7.
pub const DEFAULT_DEGREE_CAP: u32 = 7;

/// Degree-`n` component of the free Lie algebra, as a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedLiePiece {
    pub degree: u32,
    pub character: SymplecticCharacter,
}

impl GradedLiePiece {
    pub fn dimension(&self) -> Coeff {
        self.character.augmentation()
    }
}

/// `psi^d`: substitute `t_i -> t_i^d`.
pub fn adams<E: Exponent>(d: u32, c: &Laurent<E>) -> Laurent<E> {
    assert!(d >= 1, "Adams operations are indexed by d >= 1");
    c.map_exponents(|e| e.scale(d as i32))
}

fn halve(c: SymplecticCharacter) -> Result<SymplecticCharacter> {
    if let Some((e, _)) = c.terms().find(|(_, k)| k % 2 != 0) {
        return Err(Error::HalfIntegerCoefficient { exponent: e.to_vec() });
    }
    Ok(SymplecticCharacter::from_terms(c.terms().map(|(e, k)| (e, k / 2))))
}

/// `(c^2 - psi^2 c) / 2`.
pub fn lambda2(c: &SymplecticCharacter) -> Result<SymplecticCharacter> {
    halve(&(c * c) - &adams(2, c))
}

/// `(c^2 + psi^2 c) / 2`.
pub fn sym2(c: &SymplecticCharacter) -> Result<SymplecticCharacter> {
    halve(&(c * c) + &adams(2, c))
}

pub fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Witt's count `(1/n) Σ_{d|n} μ(d) r^{n/d}` of the degree-`n` part of a free
/// Lie algebra on `r` generators.
pub fn witt_dimension(rank: u64, n: u32) -> u128 {
    let total: i128 = divisors(n)
        .map(|d| mobius(d) as i128 * (rank as i128).pow(n / d))
        .sum();
    (total / n as i128) as u128
}

/// Character of `L_n(V)` by the Möbius-inverted Adams formula
/// `(1/n) Σ_{d|n} μ(d) (psi^d c)^{n/d}`.
pub fn free_lie_graded(c: &SymplecticCharacter, n: u32) -> Result<GradedLiePiece> {
    if n == 0 {
        return Err(Error::InvalidArgument("free Lie degree must be positive".into()));
    }
    let mut sum = SymplecticCharacter::zero();
    for d in divisors(n) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        sum += &adams(d, c).pow(n / d).scale(mu as Coeff);
    }
    let character = divide_exact(&sum, n)?;
    Ok(GradedLiePiece { degree: n, character })
}

fn divide_exact(sum: &SymplecticCharacter, n: u32) -> Result<SymplecticCharacter> {
    let divisor = n as Coeff;
    if sum.terms().any(|(_, k)| k % divisor != 0) {
        return Err(Error::NonIntegralResult { degree: n });
    }
    Ok(SymplecticCharacter::from_terms(sum.terms().map(|(e, k)| (e, k / divisor))))
}

/// Multiplicity of `V_target` in `L_n(V_generator)`.
pub fn multiplicity_in_free_lie(target: DominantWeight, generator: DominantWeight, n: u32) -> Result<u64> {
    let piece = free_lie_graded(&sp4_irrep_character(generator), n)?;
    Ok(decompose_sp4(&piece.character)?.get(target))
}
