//! Multivariate polynomials over the Gaussian rationals, in ordinary
//! variables z_1..z_n and optionally the conjugate variables z̄_1..z̄_n.
//!
//! Conjugate variables are independent formal symbols; the `conj_swap`
//! involution (conjugate every coefficient, swap each z_k with z̄_k) is
//! what ties them together. A real-valued polynomial is one fixed by it.

use crate::rational::GaussRational;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded lexicographic order, so that term maps
/// have a canonical iteration order and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    /// 0 for holomorphic polynomials, nvars for the doubled ring.
    pub nconj: usize,
    pub terms: BTreeMap<Monomial, GaussRational>,
}

impl MPoly {
    pub fn zero(nvars: usize, nconj: usize) -> Self {
        MPoly { nvars, nconj, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, nconj: usize, c: GaussRational) -> Self {
        let mut p = MPoly::zero(nvars, nconj);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars + nconj]), c);
        }
        p
    }

    pub fn one(nvars: usize, nconj: usize) -> Self {
        MPoly::constant(nvars, nconj, GaussRational::one())
    }

    /// The variable with the given index; indices ≥ nvars address the
    /// conjugate variables.
    pub fn var(nvars: usize, nconj: usize, index: usize) -> Self {
        assert!(index < nvars + nconj, "variable index out of range");
        let mut exps = vec![0; nvars + nconj];
        exps[index] = 1;
        let mut p = MPoly::zero(nvars, nconj);
        p.terms.insert(Monomial(exps), GaussRational::one());
        p
    }

    pub fn nvars_total(&self) -> usize {
        self.nvars + self.nconj
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRational) {
        assert_eq!(m.0.len(), self.nvars_total());
        let entry = self.terms.entry(m).or_insert_with(GaussRational::zero);
        *entry += &c;
        if entry.is_zero() {
            // re-fetch the key to remove; cheap since entry borrow ended
            self.prune();
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars_total(), other.nvars_total());
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(GaussRational::zero);
            *entry += c;
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: &GaussRational) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars, self.nconj);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * k;
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars_total(), other.nvars_total());
        let mut out = MPoly::zero(self.nvars, self.nconj);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                let entry = out
                    .terms
                    .entry(Monomial(exps))
                    .or_insert_with(GaussRational::zero);
                *entry += &(c1 * c2);
            }
        }
        out.prune();
        out
    }

    /// Formal partial derivative in the given variable (conjugate
    /// variables addressed by index ≥ nvars).
    pub fn diff(&self, var: usize) -> MPoly {
        assert!(var < self.nvars_total(), "variable index out of range");
        let mut out = MPoly::zero(self.nvars, self.nconj);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            let coeff = c.scale(&num_rational::BigRational::from_integer(e.into()));
            out.terms.insert(Monomial(exps), coeff);
        }
        out
    }

    /// Conjugate all coefficients and swap each z_k exponent with its
    /// conjugate-variable exponent. Requires the doubled ring.
    pub fn conj_swap(&self) -> MPoly {
        assert_eq!(self.nvars, self.nconj, "conj_swap needs the doubled ring");
        let n = self.nvars;
        let mut out = MPoly::zero(n, n);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; 2 * n];
            for k in 0..n {
                exps[k] = m.0[n + k];
                exps[n + k] = m.0[k];
            }
            out.terms.insert(Monomial(exps), c.conj());
        }
        out
    }

    /// Conjugate the coefficients only (for f̄ with f holomorphic).
    pub fn conj_coeffs(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn is_real_valued(&self) -> bool {
        self.nvars == self.nconj && *self == self.conj_swap()
    }

    /// A holomorphic polynomial (nconj = 0) viewed inside the doubled ring.
    pub fn lift_to_doubled(&self) -> MPoly {
        assert_eq!(self.nconj, 0);
        let n = self.nvars;
        let mut out = MPoly::zero(n, n);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.extend(std::iter::repeat(0).take(n));
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[GaussRational]) -> GaussRational {
        assert_eq!(point.len(), self.nvars_total());
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += &term;
        }
        acc
    }

    /// Evaluate at a holomorphic point: conjugate-variable slots receive
    /// the conjugates of the given coordinates.
    pub fn eval_at_z(&self, z: &[GaussRational]) -> GaussRational {
        assert_eq!(z.len(), self.nvars);
        if self.nconj == 0 {
            return self.eval(z);
        }
        let mut full: Vec<GaussRational> = z.to_vec();
        full.extend(z.iter().map(|v| v.conj()));
        self.eval(&full)
    }

    pub fn eval_f64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars_total());
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex64();
            for (v, &e) in point.iter().zip(&m.0) {
                term *= v.powu(e);
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64_at_z(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.nvars);
        if self.nconj == 0 {
            return self.eval_f64(z);
        }
        let mut full: Vec<Complex64> = z.to_vec();
        full.extend(z.iter().map(|v| v.conj()));
        self.eval_f64(&full)
    }

    /// Substitute subs[j] for variable j. All inputs must live in the
    /// same ring as the substituents.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars_total());
        let (nv, nc) = (subs[0].nvars, subs[0].nconj);
        let mut acc = MPoly::zero(nv, nc);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(nv, nc, c.clone());
            for (s, &e) in subs.iter().zip(&m.0) {
                for _ in 0..e {
                    term = term.mul(s);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> GaussRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if k < self.nvars {
                    write!(f, "·z{}", k + 1)?;
                } else {
                    write!(f, "·Z{}", k - self.nvars + 1)?;
                }
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> MPoly {
        MPoly::var(2, 0, i)
    }

    #[test]
    fn diff_power_rule() {
        let p = z(0).mul(&z(0));
        let d = p.diff(0);
        let expected = z(0).scale(&GaussRational::from_int(2));
        assert_eq!(d, expected);
    }

    #[test]
    fn diff_absent_variable() {
        assert!(z(0).diff(1).is_zero());
    }

    #[test]
    fn diff_mixed_terms() {
        // d/dz1 (z1 z2 + i z1) = z2 + i
        let p = z(0).mul(&z(1)).add(&z(0).scale(&GaussRational::i()));
        let d = p.diff(0);
        let expected = z(1).add(&MPoly::constant(2, 0, GaussRational::i()));
        assert_eq!(d, expected);
    }

    #[test]
    fn conj_swap_fixes_sphere_defining() {
        // z1 Z1 + z2 Z2 - 1 in the doubled ring with n = 2
        let z1 = MPoly::var(2, 2, 0);
        let z2 = MPoly::var(2, 2, 1);
        let c1 = MPoly::var(2, 2, 2);
        let c2 = MPoly::var(2, 2, 3);
        let rho = z1
            .mul(&c1)
            .add(&z2.mul(&c2))
            .sub(&MPoly::one(2, 2));
        assert!(rho.is_real_valued());
        let not_real = z1.mul(&c1).scale(&GaussRational::i());
        assert!(!not_real.is_real_valued());
    }

    #[test]
    fn substitution_composes() {
        // p(z1,z2) = z1² + z2, substitute z1 -> z2, z2 -> z1 + 1
        let p = z(0).mul(&z(0)).add(&z(1));
        let subs = vec![z(1), z(0).add(&MPoly::one(2, 0))];
        let q = p.substitute(&subs);
        let expected = z(1).mul(&z(1)).add(&z(0)).add(&MPoly::one(2, 0));
        assert_eq!(q, expected);
    }

    #[test]
    fn eval_matches_structure() {
        let p = z(0).mul(&z(1)).scale(&GaussRational::i());
        let pt = vec![GaussRational::from_int(2), GaussRational::from_parts(0, 1, 1)];
        // i * 2 * i = -2
        assert_eq!(p.eval(&pt), GaussRational::from_int(-2));
    }
}
