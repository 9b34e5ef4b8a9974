//! Exact dense linear algebra over Q(i).

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

pub type Matrix = Vec<Vec<GaussianRational>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().unwrap();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..cols {
                let t = &f * &m[r][j];
                m[i][j] -= &t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the kernel `{x : m·x = 0}`; empty iff the map is injective.
pub fn nullspace(m: &Matrix) -> Vec<Vec<GaussianRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[f] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][f];
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[GaussianRational]) -> Vec<GaussianRational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Determinant by Gaussian elimination.
pub fn det(m: &Matrix) -> GaussianRational {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = GaussianRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != k {
            a.swap(p, k);
            acc = -acc;
        }
        acc = &acc * &a[k][k];
        let inv = a[k][k].inv().unwrap();
        for i in k + 1..n {
            let f = &a[i][k] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= &t;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect()).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&mat(&[&[1, 0], &[0, 1]])).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(nullspace(&mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).len(), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let i = GaussianRational::i();
        let m: Matrix = vec![
            vec![GaussianRational::from_int(1), i.clone(), GaussianRational::from_int(2), GaussianRational::zero()],
            vec![i.clone(), GaussianRational::from_int(-1), &i * &GaussianRational::from_int(2), GaussianRational::from_int(1)],
        ];
        let ker = nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(det(&mat(&[&[2, 1], &[7, 4]])), GaussianRational::from_int(1));
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])), GaussianRational::from_int(-1));
        assert_eq!(det(&mat(&[&[1, 2], &[2, 4]])), GaussianRational::zero());
    }
}
