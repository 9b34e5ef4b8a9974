//! Sparse polynomials in up to three variables over Q(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::univariate::UniPoly;

pub const MAX_VARS: usize = 3;

/// Exponent vector; unused trailing slots stay zero.
pub type Exponent = [u32; MAX_VARS];

/// A polynomial in `nvars` (1..=3) variables.
///
/// Terms are keyed by exponent vector in lexicographic order with
/// variable 0 most significant, so the last entry is the lex-leading term.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "Poly supports 1 to 3 variables");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(nvars, [0; MAX_VARS], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(nvars, e, GaussianRational::one())
    }

    pub fn monomial(nvars: usize, e: Exponent, c: GaussianRational) -> Self {
        let mut p = Poly::zero(nvars);
        debug_assert!(e[nvars..].iter().all(|&x| x == 0));
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, GaussianRational)>>(nvars: usize, it: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed in a ring with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars));
        assert!(self.terms.keys().all(|e| e[nvars..].iter().all(|&x| x == 0)), "variable out of range");
        Poly { nvars, terms: self.terms.clone() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&[0; MAX_VARS])
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponent, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn conj(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Divides by the lex-leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            out.add_term(f, c * &GaussianRational::from_int(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert!(point.len() >= self.nvars);
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate().take(self.nvars) {
                if k > 0 {
                    t = &t * &point[v].pow(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a value for one variable; the variable slot stays in the ring.
    pub fn substitute(&self, var: usize, value: &GaussianRational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = *e;
            f[var] = 0;
            out.add_term(f, c * &value.pow(e[var]));
        }
        out
    }

    /// Replaces variable `v` by `subs[v]`; all `subs` share one ring.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs[0].nvars;
        let mut cache: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for v in 0..self.nvars {
                let k = e[v] as usize;
                while cache[v].len() <= k {
                    let next = &cache[v][cache[v].len() - 1] * &subs[v];
                    cache[v].push(next);
                }
                if k > 0 {
                    t = &t * &cache[v][k];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let n = self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![Poly::zero(self.nvars); n];
        for (e, c) in &self.terms {
            let mut f = *e;
            f[var] = 0;
            out[e[var] as usize].add_term(f, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut f = *e;
                f[var] += k as u32;
                out.add_term(f, c.clone());
            }
        }
        out
    }

    /// Dense univariate view, valid when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(v, &k)| v != var && k > 0) {
                return None;
            }
            let k = e[var] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, GaussianRational::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(nvars: usize, var: usize, p: &UniPoly) -> Poly {
        let mut out = Poly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = [0; MAX_VARS];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dinv) = (*de, dc.inv()?);
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            if (0..MAX_VARS).any(|v| re[v] < de[v]) {
                return None;
            }
            let mut e = *re;
            for v in 0..MAX_VARS {
                e[v] -= de[v];
            }
            let t = Poly::monomial(self.nvars, e, rc * &dinv);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Polynomial `r` with `r^k = self`, normalised so that its lex-leading
    /// coefficient is 1; requires `self` monic.
    ///
    /// Works term by term from the top: if `r_j` holds the first `j` terms of
    /// the root, the leading term of `self - r_j^k` is `k·lt(r)^(k-1)` times
    /// the next term.
    pub fn perfect_root(&self, k: u32) -> Option<Poly> {
        assert!(k >= 1);
        let (le, lc) = self.leading()?;
        if !lc.is_one() {
            return None;
        }
        if k == 1 {
            return Some(self.clone());
        }
        if le.iter().any(|x| x % k != 0) {
            return None;
        }
        let mut top = [0; MAX_VARS];
        for v in 0..MAX_VARS {
            top[v] = le[v] / k;
        }
        let mut root = Poly::monomial(self.nvars, top, GaussianRational::one());
        let lead_pow = Poly::monomial(self.nvars, top, GaussianRational::one())
            .pow(k - 1)
            .scale(&GaussianRational::from_int(k as i64));
        let (lpe, lpc) = {
            let (e, c) = lead_pow.leading().unwrap();
            (*e, c.clone())
        };
        let mut last = top;
        let max_steps = self.num_terms() * 4 + 64;
        for _ in 0..max_steps {
            let diff = self - &root.pow(k);
            let Some((de, dc)) = diff.leading() else {
                return Some(root);
            };
            if (0..MAX_VARS).any(|v| de[v] < lpe[v]) {
                return None;
            }
            let mut e = *de;
            for v in 0..MAX_VARS {
                e[v] -= lpe[v];
            }
            if e >= last {
                return None;
            }
            last = e;
            root.add_term(e, dc / &lpc);
        }
        None
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for v in 0..MAX_VARS {
                    e[v] += e2[v];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Renders with the given variable names, highest terms first.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [&'a str],
}

impl Poly {
    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> PolyDisplay<'a> {
        assert!(names.len() >= self.nvars);
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            let mono: Vec<String> = (0..self.poly.nvars)
                .filter(|&v| e[v] > 0)
                .map(|v| if e[v] == 1 { self.names[v].to_string() } else { format!("{}^{}", self.names[v], e[v]) })
                .collect();
            let coef = if c.is_real() || c.re().is_zero() { c.to_string() } else { format!("({c})") };
            let (neg, coef) = match coef.strip_prefix('-') {
                Some(rest) if !coef.starts_with('(') => (true, rest.to_string()),
                _ => (false, coef),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (mono.is_empty(), coef.as_str()) {
                (true, _) => write!(f, "{coef}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{}*{}", coef, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn product_degree_is_additive() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) + &y;
        let r = &(&y * &y) - &Poly::constant(2, q(3));
        assert_eq!((&p * &r).total_degree(), Some(4));
        assert_eq!((&p * &r).degree_in(1), Some(3));
    }

    #[test]
    fn exact_division_and_failure() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let a = &(&x - &y) + &z;
        let b = &(&x * &y) + &Poly::constant(3, GaussianRational::i());
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn perfect_roots() {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let d = &(&(&u * &v) - &u) + &Poly::constant(2, GaussianRational::i());
        let d = d.monic();
        assert_eq!(d.pow(3).perfect_root(3), Some(d.clone()));
        assert_eq!(d.pow(2).perfect_root(2), Some(d.clone()));
        assert_eq!(d.pow(3).perfect_root(2), None);
        assert_eq!((&d * &(&u + &v)).monic().perfect_root(2), None);
    }

    #[test]
    fn compose_and_substitute() {
        // f(x, y) = x^2 y; substitute x -> y + 1, y -> 2
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &(&x * &x) * &y;
        let g = f.compose(&[&y + &Poly::one(2), Poly::constant(2, q(2))]);
        let expect = (&(&y + &Poly::one(2)) * &(&y + &Poly::one(2))).scale(&q(2));
        assert_eq!(g, expect);
        assert_eq!(f.substitute(1, &q(3)), (&x * &x).scale(&q(3)));
        assert_eq!(f.eval(&[q(2), q(5)]), q(20));
    }

    #[test]
    fn conj_distributes_over_product() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let i = Poly::constant(2, GaussianRational::i());
        let p = &(&x * &i) + &y;
        let r = &(&y * &y) - &(&i * &x);
        assert_eq!((&p * &r).conj(), &p.conj() * &r.conj());
    }

    #[test]
    fn display_is_readable() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&(&x * &x) - &y.scale(&q(3))) + &Poly::constant(2, q(1));
        assert_eq!(p.display(&["x", "y"]).to_string(), "x^2 - 3*y + 1");
    }
}
