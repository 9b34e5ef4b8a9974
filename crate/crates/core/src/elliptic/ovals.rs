use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Number of connected components of the real locus of
/// `y² = (x - a₁)…(x - aₙ)` in its smooth projective model.
///
/// Closed intervals where the product is nonnegative are components; the
/// two unbounded rays meet at infinity when `n` is even. An odd `n` is read
/// as having one more root at infinity, which closes the single positive
/// ray there.
pub fn hyperelliptic_ovals(roots: &[BigRational]) -> Result<usize> {
    if roots.is_empty() {
        return Err(Error::pre("at least one root is needed"));
    }
    let mut r = roots.to_vec();
    r.sort();
    if r.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::pre("roots must be distinct"));
    }
    let sign_at = |x: &BigRational| -> bool { r.iter().map(|a| x - a).product::<BigRational>().is_positive() };
    let one = BigRational::one();
    // sample one point in each of the n + 1 open intervals
    let mut probes = vec![&r[0] - &one];
    probes.extend(r.windows(2).map(|w| (&w[0] + &w[1]) / BigRational::from_integer(2.into())));
    probes.push(&r[r.len() - 1] + &one);
    let positive: Vec<bool> = probes.iter().map(sign_at).collect();
    // positive intervals are separated by simple roots, so each one is a
    // component by itself
    let mut count = positive.iter().filter(|&&p| p).count();
    if r.len().is_multiple_of(2) && positive[0] && positive[positive.len() - 1] {
        count -= 1;
    }
    Ok(count)
}
