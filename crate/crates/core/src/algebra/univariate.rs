//! Dense univariate polynomials over Q(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;

/// Coefficients in ascending order of degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| GaussianRational::from_int(v)).collect())
    }

    pub fn from_rationals(c: &[BigRational]) -> Self {
        UniPoly::new(c.iter().cloned().map(GaussianRational::real).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &GaussianRational) -> Self {
        UniPoly::new(vec![-r, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn conj(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Real and imaginary coefficient parts: `self = re + i·im` with both parts real.
    pub fn split_re_im(&self) -> (UniPoly, UniPoly) {
        let re = UniPoly::new(self.coeffs.iter().map(|c| GaussianRational::real(c.re().clone())).collect());
        let im = UniPoly::new(self.coeffs.iter().map(|c| GaussianRational::real(c.im().clone())).collect());
        (re, im)
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluation of a real-coefficient polynomial at a rational point.
    pub fn eval_real(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c.re();
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: monic factors `a_1, a_2, ...` with `self ∝ Π a_k^k`,
    /// pairwise coprime and squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<UniPoly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = &c - &b.derivative();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.div_exact(&g).unwrap();
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_exact(&g).unwrap();
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &GaussianRational) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let lin = UniPoly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Roots lying in Q(i), with multiplicity, plus the total multiplicity of
    /// the roots outside Q(i).
    ///
    /// Candidates come from floating-point root approximations polished by
    /// exact Newton steps and snapped to the denominator lattice allowed by
    /// the leading coefficient; every reported root is verified exactly.
    pub fn gaussian_roots(&self) -> GaussianRoots {
        let Some(deg) = self.degree() else {
            return GaussianRoots { roots: Vec::new(), unresolved: 0 };
        };
        let mut roots: Vec<(GaussianRational, u32)> = Vec::new();
        let mut rest = self.clone();
        // zero roots are common in our inputs and cheap to strip
        let zero = GaussianRational::zero();
        let m0 = self.root_multiplicity(&zero);
        if m0 > 0 {
            roots.push((zero, m0));
            rest = UniPoly::new(self.coeffs[m0 as usize..].to_vec());
        }
        let sqf = rest.squarefree_part();
        if sqf.degree().unwrap_or(0) > 0 {
            let denom_bound = gaussian_denominator_bound(&sqf);
            let bits = (denom_bound.bits() as u32 + 96).max(192);
            for approx in approximate_roots(&sqf) {
                if let Some(c) = polish_and_snap(&sqf, approx, bits, &denom_bound) {
                    if roots.iter().any(|(r, _)| *r == c) {
                        continue;
                    }
                    let m = rest.root_multiplicity(&c);
                    if m > 0 {
                        roots.push((c, m));
                    }
                }
            }
        }
        roots.sort();
        let found: u32 = roots.iter().map(|(_, m)| m).sum();
        GaussianRoots { roots, unresolved: deg - found as usize }
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| {
                let (a, b) = c.to_f64_pair();
                Complex64::new(a, b)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRoots {
    pub roots: Vec<(GaussianRational, u32)>,
    pub unresolved: usize,
}

/// Integer `M` such that every root in Q(i) has both parts in `(1/M)·Z`.
///
/// After scaling to a primitive Gaussian-integer polynomial, a root `p/q` in
/// lowest terms has `q | lc`, so `p/q = p·conj(q)/N(q)` with `N(q) | N(lc)`.
fn gaussian_denominator_bound(p: &UniPoly) -> BigInt {
    let l = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let lc = p.leading().unwrap() * &GaussianRational::real(BigRational::from_integer(l));
    (lc.re() * lc.re() + lc.im() * lc.im()).to_integer().abs().max(BigInt::one())
}

/// Aberth–Ehrlich iteration in double precision.
fn approximate_roots(p: &UniPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let c = p.monic().to_complex_coeffs();
    if n == 1 {
        return vec![-c[0]];
    }
    let dc: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
    let horner = |cs: &[Complex64], z: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, v| a * z + v);
    let radius = 1.0 + c[..n].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let pv = horner(&c, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let w = pv / horner(&dc, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn round_to_bits(r: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (r * BigRational::from_integer(scale.clone())).round();
    BigRational::new(scaled.to_integer(), scale)
}

fn polish_and_snap(p: &UniPoly, approx: Complex64, bits: u32, denom: &BigInt) -> Option<GaussianRational> {
    if !approx.is_finite() {
        return None;
    }
    let to_q = |v: f64| BigRational::from_float(v).unwrap_or_else(BigRational::zero);
    let mut z = GaussianRational::new(to_q(approx.re), to_q(approx.im));
    let dp = p.derivative();
    for _ in 0..12 {
        let d = dp.eval(&z);
        if d.is_zero() {
            break;
        }
        let step = &p.eval(&z) / &d;
        let next = &z - &step;
        z = GaussianRational::new(round_to_bits(next.re(), bits), round_to_bits(next.im(), bits));
        let (sr, si) = step.to_f64_pair();
        if (sr.abs() + si.abs()) < 2f64.powi(-(bits as i32) + 8) {
            break;
        }
    }
    let m = BigRational::from_integer(denom.clone());
    let snap = |v: &BigRational| (v * &m).round() / &m;
    let cand = GaussianRational::new(snap(z.re()), snap(z.im()));
    p.eval(&cand).is_zero().then_some(cand)
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = super::poly::Poly::from_univariate(1, 0, self);
        write!(f, "{}", p.display(&["x"]))
    }
}
