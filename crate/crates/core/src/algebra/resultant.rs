//! Sylvester resultants with fraction-free (Bareiss) determinants.

use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::poly::Poly;
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Resultant of `p` and `q` with respect to variable `var`, using their
/// actual degrees in `var`.
pub fn resultant(p: &Poly, q: &Poly, var: usize) -> Result<Poly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::pre("resultant of a zero polynomial"));
    }
    let m = p.degree_in(var).unwrap();
    let n = q.degree_in(var).unwrap();
    resultant_with_degrees(p, q, var, m, n)
}

/// Resultant with formal degrees `m >= deg p`, `n >= deg q` in `var`.
///
/// With formal degrees the vanishing leading coefficients are kept in the
/// Sylvester matrix, which yields the resultant of the homogenised forms:
/// it also vanishes where both forms share the root at infinity.
pub fn resultant_with_degrees(p: &Poly, q: &Poly, var: usize, m: u32, n: u32) -> Result<Poly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::pre("resultant of a zero polynomial"));
    }
    if m == 0 && n == 0 {
        return Err(Error::NoVariable);
    }
    if p.degree_in(var).unwrap() > m || q.degree_in(var).unwrap() > n {
        return Err(Error::pre("formal degree below actual degree"));
    }
    let s = sylvester_matrix(p, q, var, m, n);
    Ok(determinant(s))
}

/// Rows `0..n` hold shifted coefficients of `p` (leading first), rows
/// `n..n+m` those of `q`.
pub fn sylvester_matrix(p: &Poly, q: &Poly, var: usize, m: u32, n: u32) -> Vec<Vec<Poly>> {
    let nv = p.nvars();
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    let mut pc = p.coeffs_in(var);
    pc.resize(m + 1, Poly::zero(nv));
    let mut qc = q.coeffs_in(var);
    qc.resize(n + 1, Poly::zero(nv));
    let mut mat = vec![vec![Poly::zero(nv); size]; size];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = pc[m - k].clone();
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = qc[n - k].clone();
        }
    }
    mat
}

/// Bareiss fraction-free elimination; every division is exact.
pub fn determinant(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one(1);
    }
    let nv = a[0][0].nvars();
    let mut negate = false;
    let mut prev = Poly::one(nv);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // prefer the sparsest available pivot
            let pick = (k + 1..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].num_terms());
            match pick {
                None => return Poly::zero(nv),
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Resultant of two univariate polynomials with formal degrees.
pub fn univariate_resultant(p: &UniPoly, q: &UniPoly, m: usize, n: usize) -> Result<GaussianRational> {
    let pp = Poly::from_univariate(1, 0, p);
    let qq = Poly::from_univariate(1, 0, q);
    let r = resultant_with_degrees(&pp, &qq, 0, m as u32, n as u32)?;
    Ok(if r.is_zero() { GaussianRational::zero() } else { r.constant_term() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Poly {
        Poly::constant(3, GaussianRational::from_int(n))
    }

    #[test]
    fn linear_case() {
        let (u, v, z) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let r = resultant(&(&z - &u), &(&z - &v), 2).unwrap();
        assert_eq!(r, &u - &v);
    }

    #[test]
    fn shared_double_cover() {
        let (u, v, z) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let z2 = &z * &z;
        let r = resultant(&(&z2 - &u), &(&z2 - &v), 2).unwrap();
        assert_eq!(r, (&u - &v).pow(2));
    }

    #[test]
    fn constant_inputs() {
        let z = Poly::var(3, 2);
        assert_eq!(resultant(&c(2), &c(3), 2), Err(Error::NoVariable));
        // Res(2, z^3 + 1) = 2^3
        let q = &z.pow(3) + &c(1);
        assert_eq!(resultant(&c(2), &q, 2).unwrap(), c(8));
    }

    #[test]
    fn formal_degree_sees_common_root_at_infinity() {
        // x + 1 and x + 2 both viewed as quadrics vanish at infinity
        let p = UniPoly::from_ints(&[1, 1]);
        let q = UniPoly::from_ints(&[2, 1]);
        assert!(univariate_resultant(&p, &q, 2, 2).unwrap().is_zero());
        assert!(!univariate_resultant(&p, &q, 1, 2).unwrap().is_zero());
        assert!(!univariate_resultant(&p, &q, 1, 1).unwrap().is_zero());
    }

    fn cofactor(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_on_constants() {
        let rows = vec![vec![2, -1, 0, 3], vec![1, 0, 4, -2], vec![0, 5, 1, 1], vec![3, 1, -1, 0]];
        let m: Vec<Vec<Poly>> = rows.iter().map(|r| r.iter().map(|&v| c(v)).collect()).collect();
        assert_eq!(determinant(m), c(cofactor(&rows)));
        let singular = [vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]];
        let m: Vec<Vec<Poly>> = singular.iter().map(|r| r.iter().map(|&v| c(v)).collect()).collect();
        assert!(determinant(m).is_zero());
    }
}
