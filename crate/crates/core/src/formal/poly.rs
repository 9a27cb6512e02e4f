//! Differential polynomials in k, k', k'', ... with a signed power of k.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::rational::{ExactRational, GaussRational};
use crate::error::{Error, Result};

/// Monomial key: `k^kpow * prod_j (k^(j))^dexp[j-1]`.
///
/// `dexp` never carries trailing zeros, so equal keys compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoKey {
    kpow: i32,
    dexp: Vec<u32>,
}

impl MonoKey {
    pub fn new(kpow: i32, mut dexp: Vec<u32>) -> Self {
        while dexp.last() == Some(&0) {
            dexp.pop();
        }
        MonoKey { kpow, dexp }
    }

    /// `k^kpow` with no derivative factors.
    pub fn kpow_only(kpow: i32) -> Self {
        MonoKey { kpow, dexp: Vec::new() }
    }

    pub fn kpow(&self) -> i32 {
        self.kpow
    }

    /// Exponent of the j-th derivative, j >= 1.
    pub fn dexp(&self, j: usize) -> u32 {
        assert!(j >= 1, "derivative index starts at 1");
        self.dexp.get(j - 1).copied().unwrap_or(0)
    }

    /// `(j, e)` pairs with `e > 0`, ascending in j.
    pub fn dexp_entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.dexp.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e))
    }

    /// Highest derivative order present (0 when only k appears).
    pub fn max_derivative(&self) -> usize {
        self.dexp.len()
    }

    pub fn degree(&self) -> i64 {
        self.kpow as i64 + self.dexp.iter().map(|&e| e as i64).sum::<i64>()
    }

    pub fn weight(&self) -> i64 {
        self.dexp.iter().enumerate().map(|(i, &e)| (i as i64 + 1) * e as i64).sum()
    }

    fn mul(&self, other: &MonoKey) -> MonoKey {
        let n = self.dexp.len().max(other.dexp.len());
        let dexp =
            (0..n).map(|i| self.dexp.get(i).copied().unwrap_or(0) + other.dexp.get(i).copied().unwrap_or(0)).collect();
        MonoKey { kpow: self.kpow + other.kpow, dexp }
    }
}

impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.degree().cmp(&other.degree()))
            .then_with(|| self.dexp.cmp(&other.dexp))
    }
}

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A key with its (nonzero) coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub key: MonoKey,
    pub coeff: GaussRational,
}

impl DiffMonomial {
    pub fn new(coeff: GaussRational, kpow: i32, dexp: Vec<u32>) -> Self {
        DiffMonomial { key: MonoKey::new(kpow, dexp), coeff }
    }
}

/// Sorted sum of monomials with distinct keys and nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPolynomial {
    terms: BTreeMap<MonoKey, GaussRational>,
}

/// Uniform value across all monomials, or `Mixed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graded {
    Uniform(i64),
    Mixed,
}

/// Numeric values `[k, k', k'', ...]` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericJet {
    pub values: Vec<Complex64>,
}

impl NumericJet {
    pub fn new(values: Vec<Complex64>) -> Self {
        NumericJet { values }
    }

    pub fn real(values: &[f64]) -> Self {
        NumericJet { values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect() }
    }
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(c, MonoKey::kpow_only(0))
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn monomial(c: GaussRational, key: MonoKey) -> Self {
        let mut p = Self::zero();
        p.add_term(key, c);
        p
    }

    /// `c * k^kpow`.
    pub fn k_power(c: GaussRational, kpow: i32) -> Self {
        Self::monomial(c, MonoKey::kpow_only(kpow))
    }

    /// The j-th derivative `k^(j)` (j = 0 gives k).
    pub fn derivative_symbol(j: usize) -> Self {
        if j == 0 {
            return Self::k_power(GaussRational::one(), 1);
        }
        let mut dexp = vec![0; j];
        dexp[j - 1] = 1;
        Self::monomial(GaussRational::one(), MonoKey::new(0, dexp))
    }

    pub fn from_monomials(monos: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut p = Self::zero();
        for m in monos {
            p.add_term(m.key, m.coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &GaussRational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> Vec<DiffMonomial> {
        self.terms.iter().map(|(k, c)| DiffMonomial { key: k.clone(), coeff: c.clone() }).collect()
    }

    pub fn coeff(&self, key: &MonoKey) -> GaussRational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn keys(&self) -> impl Iterator<Item = &MonoKey> {
        self.terms.keys()
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&MonoKey, &GaussRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, key: MonoKey, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPolynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Multiply by `c * k^kpow`.
    pub fn mul_k_power(&self, c: &GaussRational, kpow: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (MonoKey { kpow: k.kpow + kpow, dexp: k.dexp.clone() }, v * c))
                .collect(),
        }
    }

    /// Formal d/dr by the Leibniz rule.
    pub fn diff(&self) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if key.kpow != 0 {
                // k^p -> p k^(p-1) k'
                let mut dexp = key.dexp.clone();
                if dexp.is_empty() {
                    dexp.push(0);
                }
                dexp[0] += 1;
                let f = GaussRational::from(key.kpow as i64);
                out.add_term(MonoKey { kpow: key.kpow - 1, dexp }, c * &f);
            }
            for (i, &e) in key.dexp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                // (k^(j))^e -> e (k^(j))^(e-1) k^(j+1)
                let mut dexp = key.dexp.clone();
                dexp[i] -= 1;
                if dexp.len() == i + 1 {
                    dexp.push(0);
                }
                dexp[i + 1] += 1;
                let f = GaussRational::from(e as i64);
                out.add_term(MonoKey::new(key.kpow, dexp), c * &f);
            }
        }
        out
    }

    pub fn max_derivative(&self) -> usize {
        self.terms.keys().map(|k| k.max_derivative()).max().unwrap_or(0)
    }

    /// Substitute numeric jet values. Coefficients go to f64 only here.
    pub fn eval(&self, jet: &NumericJet) -> Result<Complex64> {
        let need = self.max_derivative();
        if jet.values.len() <= need {
            return Err(Error::MissingDerivative { have: jet.values.len(), need });
        }
        let k = jet.values.first().copied().unwrap_or_default();
        let mut sum = Complex64::new(0.0, 0.0);
        for (key, c) in &self.terms {
            if key.kpow < 0 && k == Complex64::new(0.0, 0.0) {
                return Err(Error::SingularJet);
            }
            let mut t = c.to_complex() * k.powi(key.kpow);
            for (j, e) in key.dexp_entries() {
                t *= jet.values[j].powi(e as i32);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// (degree, weight), each uniform or mixed. The zero polynomial reports `Mixed` for both.
    pub fn homogeneity_signature(&self) -> (Graded, Graded) {
        fn uniform(mut it: impl Iterator<Item = i64>) -> Graded {
            match it.next() {
                None => Graded::Mixed,
                Some(first) => {
                    if it.all(|v| v == first) {
                        Graded::Uniform(first)
                    } else {
                        Graded::Mixed
                    }
                }
            }
        }
        (uniform(self.terms.keys().map(MonoKey::degree)), uniform(self.terms.keys().map(MonoKey::weight)))
    }

    pub fn all_coeffs(&self, pred: impl Fn(&GaussRational) -> bool) -> bool {
        self.terms.values().all(pred)
    }

    /// Multiply every coefficient by a rational.
    pub fn scale_rational(&self, r: &ExactRational) -> Self {
        self.scale(&GaussRational::real(r.clone()))
    }
}

impl<'a> Add<&'a DiffPolynomial> for &'a DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &'a DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Add for DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: DiffPolynomial) -> DiffPolynomial {
        &self + &rhs
    }
}

impl<'a> Sub<&'a DiffPolynomial> for &'a DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &'a DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v);
        }
        out
    }
}

impl Sub for DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: DiffPolynomial) -> DiffPolynomial {
        &self - &rhs
    }
}

impl<'a> Mul<&'a DiffPolynomial> for &'a DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: &'a DiffPolynomial) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.add_term(ka.mul(kb), va * vb);
            }
        }
        out
    }
}

impl Mul for DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: DiffPolynomial) -> DiffPolynomial {
        &self * &rhs
    }
}

impl Neg for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        DiffPolynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl Neg for DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        -&self
    }
}

pub fn poly_add(a: &DiffPolynomial, b: &DiffPolynomial) -> DiffPolynomial {
    a + b
}

pub fn poly_mul(a: &DiffPolynomial, b: &DiffPolynomial) -> DiffPolynomial {
    a * b
}

pub fn poly_diff(a: &DiffPolynomial) -> DiffPolynomial {
    a.diff()
}

pub fn poly_eval(a: &DiffPolynomial, jet: &NumericJet) -> Result<Complex64> {
    a.eval(jet)
}

pub fn homogeneity_signature(a: &DiffPolynomial) -> (Graded, Graded) {
    a.homogeneity_signature()
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::poly_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DiffPolynomial {
        super::super::text::parse_poly(s).unwrap()
    }

    #[test]
    fn add_identity_and_cancellation() {
        let a = p("(1) k1");
        assert_eq!(&a + &DiffPolynomial::zero(), a);
        assert!((&p("(3) k1^2") + &p("(-3) k1^2")).is_zero());
        assert_eq!(&p("(3) k1^2") + &p("(-2) k k2"), p("(3) k1^2 + (-2) k k2"));
    }

    #[test]
    fn products() {
        let r = p("(1) k^-1 k1");
        assert_eq!(&r * &r, p("(1) k^-2 k1^2"));
        let ik = p("(1 i) k");
        assert_eq!(&ik * &ik, p("(-1) k^2"));
        let y1 = p("(-1/2) k^-1 k1");
        assert_eq!(&y1 * &y1, p("(1/4) k^-2 k1^2"));
    }

    #[test]
    fn leibniz() {
        assert_eq!(p("(1) k").diff(), p("(1) k1"));
        assert_eq!(p("(3) k1^2 + (-2) k k2").diff(), p("(4) k1 k2 + (-2) k k3"));
        assert_eq!(p("(1) k^-1 k1^2").diff(), p("(2) k^-1 k1 k2 + (-1) k^-2 k1^3"));
    }

    #[test]
    fn evaluation() {
        let jet = NumericJet::real(&[2.0, 3.0]);
        assert_eq!(p("(1) k1").eval(&jet).unwrap().re, 3.0);
        let v = p("(3) k1^2 + (-2) k k2").eval(&NumericJet::real(&[1.0, 2.0, 5.0])).unwrap();
        assert_eq!(v.re, 2.0);
        let v = p("(-1/2) k^-1 k1").eval(&NumericJet::real(&[2.0, 6.0])).unwrap();
        assert_eq!(v.re, -1.5);
        assert!(matches!(p("(1) k2").eval(&NumericJet::real(&[1.0, 2.0])), Err(Error::MissingDerivative { .. })));
        assert!(matches!(p("(1) k^-1").eval(&NumericJet::real(&[0.0])), Err(Error::SingularJet)));
    }

    #[test]
    fn signatures() {
        use Graded::*;
        assert_eq!(p("(1) k^-1 k1").homogeneity_signature(), (Uniform(0), Uniform(1)));
        assert_eq!(p("(3) k^-3 k1^2 + (-2) k^-2 k2").homogeneity_signature(), (Uniform(-1), Uniform(2)));
        assert_eq!(p("(1) k + (1) k1").homogeneity_signature(), (Uniform(1), Mixed));
    }

    #[test]
    fn canonical_order_is_weight_then_degree_then_dexp() {
        let poly = p("(1) k2 + (1) k^5 + (1) k^-1 k1^2 + (1) k1");
        let keys: Vec<_> = poly.keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0], MonoKey::kpow_only(5));
        assert_eq!(keys[1], MonoKey::new(0, vec![1]));
        // weight 2: k2 has dexp [0,1] and k^-1 k1^2 has [2]; degree 1 vs 1, dexp lex [0,1] < [2]
        assert_eq!(keys[2], MonoKey::new(0, vec![0, 1]));
    }
}
