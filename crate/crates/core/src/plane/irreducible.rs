
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{generic_matrices, linear_change};
use crate::algebra::{rank, resultant, GaussianRational, Poly};
use crate::error::{Error, Result};

/// Number of absolutely irreducible factors of a squarefree ternary form.
///
/// In general coordinates `f(x, y) = F(x, y, 1)` has full degree `d` in
/// both variables and `gcd(f, f_x) = 1`. The closed logarithmic 1-forms
/// `(g dx + h dy)/f` with `deg g ≤ (d-1, d)`, `deg h ≤ (d, d-1)` are then
/// spanned by `df_j/f_j` over the absolutely irreducible factors `f_j`, so
/// the dimension of the linear system `∂_y(g/f) = ∂_x(h/f)` counts them.
pub fn absolute_factor_count(form: &Poly) -> Result<usize> {
    let d = form.total_degree().ok_or_else(|| Error::pre("zero polynomial"))?;
    if d <= 1 {
        return Ok(1);
    }
    for a in generic_matrices(3).take(40) {
        let g = linear_change(form, &a);
        let f = g.substitute(2, &GaussianRational::from_int(1)).with_nvars(2);
        let lead_x = f.coeffs_in(0);
        let lead_y = f.coeffs_in(1);
        if lead_x.len() != d as usize + 1 || lead_y.len() != d as usize + 1 {
            continue;
        }
        if !lead_x[d as usize].is_constant() || !lead_y[d as usize].is_constant() {
            continue;
        }
        let fx = f.derivative(0);
        if resultant(&f, &fx, 0)?.is_zero() {
            return Err(Error::NonSquarefree("the form has a repeated factor".into()));
        }
        return Ok(closed_form_dimension(&f, d));
    }
    Err(Error::internal("no general coordinates found for the factor count"))
}

fn closed_form_dimension(f: &Poly, d: u32) -> usize {
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    let mono = |i: u32, j: u32| Poly::monomial(2, [i, j, 0], GaussianRational::from_int(1));
    let mut columns: Vec<Poly> = Vec::new();
    // g-part: f·∂_y(m) - m·f_y
    for i in 0..d {
        for j in 0..=d {
            let m = mono(i, j);
            columns.push(&(f * &m.derivative(1)) - &(&m * &fy));
        }
    }
    // h-part: m·f_x - f·∂_x(m)
    for i in 0..=d {
        for j in 0..d {
            let m = mono(i, j);
            columns.push(&(&m * &fx) - &(f * &m.derivative(0)));
        }
    }
    let mut rows: Vec<[u32; 3]> = columns.iter().flat_map(|c| c.terms().map(|(e, _)| *e)).collect();
    rows.sort();
    rows.dedup();
    let matrix: Vec<Vec<GaussianRational>> =
        rows.iter().map(|e| columns.iter().map(|c| c.coeff(e)).collect()).collect();
    let ncols = columns.len();
    // the log-derivative of f always solves the system, so a nullity of 1
    // modulo p (rank can only drop mod p) settles the question exactly
    for &p in &PRIMES {
        if let Some(r) = rank_mod_p(&matrix, p) {
            if ncols - r == 1 {
                return 1;
            }
            break;
        }
    }
    ncols - rank(&matrix)
}

/// Primes `p ≡ 1 (mod 4)` below 2^31, so `i` has an image mod `p`.
const PRIMES: [u64; 3] = [2147483029, 2147482417, 2147482949];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn sqrt_minus_one(p: u64) -> u64 {
    (2..p).map(|a| pow_mod(a, (p - 1) / 4, p)).find(|r| r * r % p == p - 1).unwrap()
}

fn rational_mod_p(q: &num_rational::BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64()?;
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * pow_mod(d, p - 2, p) % p)
}

/// Rank of the reduction mod `p`, or `None` if a denominator vanishes.
fn rank_mod_p(m: &[Vec<GaussianRational>], p: u64) -> Option<usize> {
    let i = sqrt_minus_one(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| Some((rational_mod_p(c.re(), p)? + i * rational_mod_p(c.im(), p)?) % p))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&k| a[k][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for v in a[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        r += 1;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::parse_form;

    fn count(s: &str) -> Result<usize> {
        absolute_factor_count(&parse_form(s).unwrap())
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(count("x^2 + y^2 - z^2"), Ok(1));
        assert_eq!(count("y^2*z - x^3 - x^2*z"), Ok(1));
        assert_eq!(count("x*z^3 - y*z^3 + x*y*z^2 + x^2*y^2"), Ok(1));
    }

    #[test]
    fn reducible_examples() {
        assert_eq!(count("y^2*z^2 - x^4"), Ok(2));
        assert_eq!(count("x*y*z"), Ok(3));
        // splits only over Q(sqrt 2)
        assert_eq!(count("x^2 - 2*y^2"), Ok(2));
        assert_eq!(count("x^2 + y^2"), Ok(2));
    }

    #[test]
    fn repeated_factor() {
        assert!(matches!(count("x^2*z - 2*x*y*z + y^2*z"), Err(Error::NonSquarefree(_))));
    }
}
