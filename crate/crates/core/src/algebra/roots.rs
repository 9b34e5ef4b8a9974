//! Certified isolation of real roots by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::gaussian::GaussianRational;
use super::univariate::UniPoly;

/// Either an open interval `(lo, hi)` containing exactly one real root, or a
/// degenerate interval `lo == hi` that is itself the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if self.is_exact() {
            *x == self.lo
        } else {
            self.lo < *x && *x < self.hi
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn disjoint(&self, o: &RootInterval) -> bool {
        let touch_ok = |a: &RootInterval, b: &RootInterval| {
            // a entirely left of b
            if a.is_exact() && b.is_exact() {
                a.hi < b.lo
            } else {
                a.hi <= b.lo
            }
        };
        touch_ok(self, o) || touch_ok(o, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealRootIsolation {
    /// Sorted left to right, pairwise disjoint.
    pub intervals: Vec<RootInterval>,
    pub multiplicities: Vec<u32>,
    /// Total multiplicity of the non-real roots.
    pub nonreal_count: usize,
}

impl RealRootIsolation {
    pub fn real_count(&self) -> usize {
        self.multiplicities.iter().map(|&m| m as usize).sum()
    }

    pub fn distinct_real(&self) -> usize {
        self.intervals.len()
    }
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_variations(chain: &[UniPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval_real(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Bound `B` with every root in `(-B, B)`.
fn cauchy_bound(p: &UniPoly) -> BigRational {
    let lc = p.leading().unwrap().re().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.re().abs()).max().unwrap_or_else(BigRational::zero);
    let b = BigRational::one() + m / lc;
    // round up to an integer to keep endpoints small
    BigRational::from_integer(b.ceil().to_integer() + BigInt::one())
}

/// Isolates the distinct real roots of a squarefree real polynomial.
fn isolate_squarefree(p: &UniPoly) -> Vec<RootInterval> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let chain = sturm_chain(p);
    let b = cauchy_bound(p);
    // invariant: stack holds half-open (lo, hi] with a positive root count
    let mut stack = vec![(-&b, b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
        if count == 0 {
            continue;
        }
        if p.eval_real(&hi).is_zero() {
            out.push(RootInterval { lo: hi.clone(), hi: hi.clone() });
            if count > 1 {
                // open interval (lo, hi) still holds count - 1 roots
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo.clone(), mid.clone()));
                stack.push((mid, hi.clone() - tiny_below(&lo, &hi, p, &chain)));
            }
            continue;
        }
        if count == 1 {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    out
}

/// Offset `e > 0` such that `(hi - e, hi)` contains no root of `p`.
fn tiny_below(lo: &BigRational, hi: &BigRational, p: &UniPoly, chain: &[UniPoly]) -> BigRational {
    let mut e = (hi - lo) / BigRational::from_integer(4.into());
    loop {
        let left = hi - &e;
        if !p.eval_real(&left).is_zero() && sign_variations(chain, &left) - sign_variations(chain, hi) == 1 {
            return e;
        }
        e /= BigRational::from_integer(2.into());
    }
}

/// Shrinks an isolating interval of a squarefree real `p` below `width`.
pub fn refine(p: &UniPoly, iv: &RootInterval, width: &BigRational) -> RootInterval {
    let mut iv = iv.clone();
    let sgn = |x: &BigRational| p.eval_real(x);
    while !iv.is_exact() && &(&iv.hi - &iv.lo) >= width {
        let mid = iv.midpoint();
        let vm = sgn(&mid);
        if vm.is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        let vlo = sgn(&iv.lo);
        if vlo.is_zero() {
            // isolating intervals from bisection never start at a root, but
            // refine may be handed one from elsewhere
            let vhi = sgn(&iv.hi);
            if (vm.is_positive()) != (vhi.is_positive()) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
            continue;
        }
        if vlo.is_positive() != vm.is_positive() {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    iv
}

/// Real roots of `p` with multiplicity.
///
/// Coefficients may be non-real: a real `x` is a root of `A + iB` (with
/// `A`, `B` real) exactly when it is a common root of `A` and `B`, with
/// multiplicity taken from `gcd(A, B)`.
pub fn isolate_real_roots(p: &UniPoly) -> RealRootIsolation {
    let deg = p.degree().unwrap_or(0);
    let real_part = if p.is_real() {
        p.clone()
    } else {
        let (a, b) = p.split_re_im();
        a.gcd(&b)
    };
    if real_part.degree().unwrap_or(0) == 0 {
        return RealRootIsolation { intervals: Vec::new(), multiplicities: Vec::new(), nonreal_count: deg };
    }
    let layers = real_part.squarefree_decomposition();
    let sqf = real_part.squarefree_part();
    let mut intervals = isolate_squarefree(&sqf);
    // make intervals strictly separated so each one also isolates within
    // every Yun layer
    let mut multiplicities = Vec::with_capacity(intervals.len());
    for iv in intervals.iter_mut() {
        let mut found = None;
        for (k, layer) in layers.iter().enumerate() {
            if layer.degree().unwrap_or(0) == 0 {
                continue;
            }
            let hit = if iv.is_exact() {
                layer.eval_real(&iv.lo).is_zero()
            } else {
                let chain = sturm_chain(layer);
                let a = sign_variations(&chain, &iv.lo);
                let b = sign_variations(&chain, &iv.hi);
                a > b && !layer.eval_real(&iv.hi).is_zero()
            };
            if hit {
                found = Some(k as u32 + 1);
                break;
            }
        }
        multiplicities.push(found.expect("every root of the squarefree part lies in one Yun layer"));
    }
    let real: usize = multiplicities.iter().map(|&m| m as usize).sum();
    RealRootIsolation { intervals, multiplicities, nonreal_count: deg - real }
}

/// Real-coefficient polynomial from rational coefficients, ascending.
pub fn real_poly(c: &[BigRational]) -> UniPoly {
    UniPoly::new(c.iter().cloned().map(GaussianRational::real).collect())
}
