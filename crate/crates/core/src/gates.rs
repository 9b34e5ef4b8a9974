//! Closed-form counts and gate predicates relating degree, genus and cusps.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::io::ser_gaussian;

/// `(1/d)·C(2d-2, d-1)`, the number of real rational functions of degree
/// `d` with prescribed real critical points, up to real target changes.
pub fn catalan_count(d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::pre("degree must be at least 1"));
    }
    let n = d as u64 - 1;
    // C(2n, n) built incrementally stays integral at every step
    let mut binom = BigInt::one();
    for k in 0..n {
        binom = binom * BigInt::from(2 * n - k) / BigInt::from(k + 1);
    }
    Ok(binom / BigInt::from(d))
}

/// Number of critical points, `2d - 2 + 2g`.
pub fn critical_count(d: u32, g: u32) -> Result<i64> {
    if d == 0 {
        return Err(Error::pre("degree must be at least 1"));
    }
    Ok(2 * d as i64 - 2 + 2 * g as i64)
}

/// Dimension count `2d - 2 - g`; may be negative.
pub fn system_dim(d: u32, g: u32) -> Result<i64> {
    if d == 0 {
        return Err(Error::pre("degree must be at least 1"));
    }
    Ok(2 * d as i64 - 2 - g as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub degree: u32,
    pub genus: u32,
    pub prime_degree: bool,
    /// `g > (d² - 4d + 3)/3`.
    pub sqrt_gate: bool,
    /// `g ≥ (d - 1)²`.
    pub main_gate: bool,
    pub classification_bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationCheck>,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

pub fn evaluate_gates(d: u32, g: u32) -> Result<GateReport> {
    if d == 0 {
        return Err(Error::pre("degree must be at least 1"));
    }
    let (d64, g64) = (d as i64, g as i64);
    let bound = (d64 - 1) * (d64 - 1);
    Ok(GateReport {
        degree: d,
        genus: g,
        prime_degree: is_prime(d),
        // compare 3g with d² - 4d + 3 to stay in integers
        sqrt_gate: 3 * g64 > d64 * d64 - 4 * d64 + 3,
        main_gate: g64 >= bound,
        classification_bound: bound,
        classification: None,
    })
}

/// `⌈(k - 1)/2⌉`, the drop in geometric genus caused by a cusp of type `k`.
pub fn cusp_genus_contribution(k: u32) -> Result<u32> {
    if k < 3 {
        return Err(Error::NotCuspType(k));
    }
    Ok(k / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationCheck {
    /// `g + k ≤ (d - 1)²`.
    pub consistent_with_birational: bool,
    /// `g + k = (d - 1)²`.
    pub forced_genus_equality: bool,
}

pub fn classification_check(d: u32, g: u32, k: u32) -> Result<ClassificationCheck> {
    if d < 2 {
        return Err(Error::pre("degree must be at least 2"));
    }
    let lhs = g as i64 + k as i64;
    let bound = (d as i64 - 1).pow(2);
    Ok(ClassificationCheck { consistent_with_birational: lhs <= bound, forced_genus_equality: lhs == bound })
}

/// Arithmetic genus `(δ - 1)²` of a curve of bidegree `(δ, δ)` on a quadric.
pub fn adjunction_genus_bidegree(delta: u32) -> Result<i64> {
    if delta == 0 {
        return Err(Error::pre("bidegree must be positive"));
    }
    Ok((delta as i64 - 1).pow(2))
}

/// Degree of the ramification divisor of a cover `C → D` of degree `deg`,
/// `2g_C - 2 - deg·(2g_D - 2)`.
pub fn riemann_hurwitz_ramification(deg: u32, g_c: u32, g_d: u32) -> Result<i64> {
    if deg == 0 {
        return Err(Error::pre("cover degree must be positive"));
    }
    let r = 2 * g_c as i64 - 2 - deg as i64 * (2 * g_d as i64 - 2);
    if r < 0 {
        return Err(Error::ImpossibleCover(r));
    }
    Ok(r)
}

pub fn bezout(d1: u32, d2: u32) -> Result<u64> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::pre("degrees must be positive"));
    }
    Ok(d1 as u64 * d2 as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub descends: bool,
    /// `μ / conj(μ)`; the map descends iff this is a Gaussian integer.
    #[serde(serialize_with = "ser_gaussian")]
    pub ratio: GaussianRational,
    /// First generator (`i`, then `1`) whose image leaves the lattice, else
    /// the image of `i`.
    #[serde(serialize_with = "ser_gaussian")]
    pub witness: GaussianRational,
    pub generator: String,
}

/// Image of `ξ` under `ξ ↦ μ·conj(μ⁻¹·ξ)`, the conjugate of the
/// multiplication-by-`μ` map transported back to the lattice.
pub fn lattice_image(mu: &GaussianRational, xi: &GaussianRational) -> GaussianRational {
    let inv = mu.inv().expect("nonzero multiplier");
    mu * &(&inv * xi).conj()
}

/// Checks whether multiplication by `μ` on `C/(Z + iZ)` commutes with the
/// real structure induced by conjugation.
pub fn lattice_pushforward_check(mu: &GaussianRational) -> Result<LatticeCheck> {
    if mu.is_zero() || !mu.is_gaussian_integer() {
        return Err(Error::BadMultiplier);
    }
    let ratio = mu / &mu.conj();
    let gens = [("i", GaussianRational::i()), ("1", GaussianRational::one())];
    let images: Vec<_> = gens.iter().map(|(name, xi)| (*name, lattice_image(mu, xi))).collect();
    let off = images.iter().find(|(_, w)| !w.is_gaussian_integer());
    let (generator, witness) = off.cloned().unwrap_or_else(|| images[0].clone());
    Ok(LatticeCheck { descends: ratio.is_gaussian_integer(), ratio, witness, generator: generator.to_string() })
}

/// Accepts `Z + τZ` only when conjugation preserves it, i.e. `conj(τ)` is
/// congruent to `τ` or `-τ` modulo the lattice.
pub fn check_conj_stable_lattice(tau: &GaussianRational) -> Result<()> {
    if tau.im().is_zero() {
        return Err(Error::pre("τ must be non-real"));
    }
    let tc = tau.conj();
    let in_lattice = |w: &GaussianRational| -> bool {
        // w = m + nτ with m, n integers
        let n = w.im() / tau.im();
        if !n.is_integer() {
            return false;
        }
        let m = w.re() - &n * tau.re();
        m.is_integer()
    };
    if in_lattice(&(&tc - tau)) || in_lattice(&(&tc + tau)) {
        Ok(())
    } else {
        Err(Error::LatticeNotConjStable(tau.to_string()))
    }
}
