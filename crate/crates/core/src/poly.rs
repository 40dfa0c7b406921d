//! Dense univariate polynomials over `ComplexValue`, stored in ascending
//! degree order (`coeffs[j]` multiplies `z^j`).

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Coefficients below `mult_threshold · max|a_j|` count as vanishing.
pub const DEFAULT_MULT_THRESHOLD: f64 = 1e-12;

const ZERO: ComplexValue = ComplexValue::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<ComplexValue>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming exact zero
    /// leading terms. Rejects empty or non-finite input.
    pub fn new(mut coeffs: Vec<ComplexValue>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("coefficient list is empty".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("polynomial coefficient"));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&re| ComplexValue::new(re, 0.0)).collect())
    }

    /// `leading · Π (z − root)`.
    pub fn from_roots(roots: &[ComplexValue], leading: ComplexValue) -> Result<Self> {
        let mut coeffs = vec![leading];
        for &root in roots {
            coeffs.push(ZERO);
            for j in (1..coeffs.len()).rev() {
                coeffs[j] = coeffs[j - 1] - root * coeffs[j];
            }
            coeffs[0] = -root * coeffs[0];
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> ComplexValue {
        self.coeffs[self.degree()]
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0 || self.coeffs[1..].iter().all(|c| *c == ZERO)
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// `(f(z), f′(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: ComplexValue) -> (ComplexValue, ComplexValue) {
        let mut value = ZERO;
        let mut slope = ZERO;
        for &a in self.coeffs.iter().rev() {
            slope = slope * z + value;
            value = value * z + a;
        }
        (value, slope)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial { coeffs: vec![ZERO] };
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(j, &a)| a * (j + 1) as f64)
            .collect();
        Polynomial { coeffs }
    }

    /// Coefficients of `ξ ↦ f(z0 + ξ)`.
    pub fn taylor_shift(&self, z0: ComplexValue) -> Polynomial {
        let mut b = self.coeffs.clone();
        let m = self.degree();
        for i in 0..m {
            for j in (i..m).rev() {
                let carry = z0 * b[j + 1];
                b[j] += carry;
            }
        }
        Polynomial { coeffs: b }
    }

    /// Quotient of synthetic division by `(z − root)`; the remainder is dropped.
    pub fn deflate(&self, root: ComplexValue) -> Polynomial {
        let m = self.degree();
        if m == 0 {
            return self.clone();
        }
        let mut q = vec![ZERO; m];
        q[m - 1] = self.coeffs[m];
        for j in (1..m).rev() {
            q[j - 1] = self.coeffs[j] + root * q[j];
        }
        Polynomial { coeffs: q }
    }

    /// Product with `(z − root)`.
    pub fn mul_linear(&self, root: ComplexValue) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            out[j + 1] += a;
            out[j] -= root * a;
        }
        Polynomial { coeffs: out }
    }
}

/// The recentered picture `f(z0 + ξ) = a_0 + ξ^k (a_k + h(ξ))` with
/// `h(ξ) = Σ_{p>k} a_p ξ^(p−k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailSeries {
    pub k: u32,
    pub a_k: ComplexValue,
    /// `tail[i]` multiplies `ξ^(i+1)`, i.e. it is `a_(k+1+i)`.
    pub tail: Vec<ComplexValue>,
    /// Additive bound on `sup|h|` beyond the stored coefficients.
    pub extra_h: f64,
    /// Additive bound on `sup|h′|` beyond the stored coefficients.
    pub extra_hp: f64,
}

impl TailSeries {
    pub fn new(k: u32, a_k: ComplexValue, tail: Vec<ComplexValue>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("multiplicity index must be at least 1".into()));
        }
        if a_k == ZERO {
            return Err(Error::InvalidInput("leading tail coefficient a_k vanishes".into()));
        }
        Ok(Self {
            k,
            a_k,
            tail,
            extra_h: 0.0,
            extra_hp: 0.0,
        })
    }

    /// Attaches a caller-supplied bound for terms beyond a truncated series.
    /// The values must dominate `sup|h_rest|` and `sup|h_rest′|` on every disk
    /// the model will use; nothing here checks that.
    pub fn with_truncation_bound(mut self, extra_h: f64, extra_hp: f64) -> Self {
        self.extra_h = extra_h.max(0.0);
        self.extra_hp = extra_hp.max(0.0);
        self
    }

    /// `(h(ξ), h′(ξ))`.
    pub fn eval_h(&self, xi: ComplexValue) -> (ComplexValue, ComplexValue) {
        let mut value = ZERO;
        let mut slope = ZERO;
        for &a in self.tail.iter().rev() {
            slope = slope * xi + value;
            value = value * xi + a;
        }
        // the stored polynomial is h(ξ)/ξ
        (value * xi, slope * xi + value)
    }
}

/// Reads off the minimal non-vanishing index `k ≥ 1` of a recentered polynomial.
pub fn extract_tail(shifted: &Polynomial, mult_threshold: f64) -> Result<TailSeries> {
    let coeffs = shifted.coeffs();
    let scale = shifted.max_modulus();
    let cutoff = mult_threshold * scale;
    let k = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, a)| a.norm() > cutoff)
        .map(|(j, _)| j)
        .ok_or(Error::LocallyConstant)?;
    let tail = coeffs[k + 1..]
        .iter()
        .map(|&a| if a.norm() > cutoff { a } else { ZERO })
        .collect();
    TailSeries::new(k as u32, coeffs[k], tail)
}

/// Coefficient majorants of `sup|h|` and `sup|h′|` on the closed disk of radius `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Majorant {
    pub h: f64,
    pub hp: f64,
}

pub fn tail_majorant(t: &TailSeries, rho: f64) -> Majorant {
    let mut h = 0.0;
    let mut hp = 0.0;
    // accumulate from the top so each pass is a Horner step in rho
    for (i, a) in t.tail.iter().enumerate().rev() {
        let m = a.norm();
        hp = hp * rho + (i + 1) as f64 * m;
        h = h * rho + m;
    }
    Majorant {
        h: h * rho + t.extra_h,
        hp: hp + t.extra_hp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn real(coeffs: &[f64]) -> Polynomial {
        Polynomial::from_real(coeffs).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(Polynomial::new(vec![]).is_err());
        assert!(Polynomial::new(vec![c(f64::NAN, 0.0)]).is_err());
        let p = real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(real(&[0.0, 0.0]).degree(), 0);
    }

    #[test]
    fn horner_values() {
        let f = real(&[1.0, 0.0, 1.0]);
        assert_eq!(f.eval(c(0.0, 1.0)), c(0.0, 0.0));
        assert_eq!(f.eval(c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(real(&[2.0, 3.0]).eval(c(1.0, 0.0)), c(5.0, 0.0));
        let (v, d) = real(&[1.0, -2.0, 0.0, 4.0]).eval_with_derivative(c(2.0, 0.0));
        assert_eq!(v, c(29.0, 0.0));
        assert_eq!(d, c(46.0, 0.0));
        assert_eq!(real(&[1.0, -2.0, 0.0, 4.0]).derivative(), real(&[-2.0, 0.0, 12.0]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(real(&[0.0, 0.0, 1.0]).taylor_shift(c(1.0, 0.0)), real(&[1.0, 2.0, 1.0]));
        assert_eq!(real(&[1.0, 0.0, 1.0]).taylor_shift(c(0.0, 0.0)), real(&[1.0, 0.0, 1.0]));
    }

    #[test]
    fn cube_shift_matches_sampling() {
        let f = real(&[0.0, 0.0, 0.0, 1.0]);
        let shifted = f.taylor_shift(c(-1.0, 0.0));
        assert_eq!(shifted, real(&[-1.0, 3.0, -3.0, 1.0]));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let xi = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let want = f.eval(c(-1.0, 0.0) + xi);
            assert!((shifted.eval(xi) - want).norm() < 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn tail_extraction() {
        let t = extract_tail(&real(&[1.0, 0.0, 1.0]), DEFAULT_MULT_THRESHOLD).unwrap();
        assert_eq!((t.k, t.a_k, t.tail.len()), (2, c(1.0, 0.0), 0));
        let t = extract_tail(&real(&[0.0, 2.0, 0.0, 1.0]), DEFAULT_MULT_THRESHOLD).unwrap();
        assert_eq!((t.k, t.a_k), (1, c(2.0, 0.0)));
        assert_eq!(t.tail, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            extract_tail(&real(&[5.0]), DEFAULT_MULT_THRESHOLD),
            Err(Error::LocallyConstant)
        ));
        // sub-threshold first-order term counts as vanishing
        let t = extract_tail(&real(&[1.0, 1e-15, 3.0]), DEFAULT_MULT_THRESHOLD).unwrap();
        assert_eq!(t.k, 2);
    }

    #[test]
    fn h_evaluation() {
        let t = TailSeries::new(1, c(2.0, 0.0), vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (h, hp) = t.eval_h(c(3.0, 0.0));
        assert_eq!(h, c(9.0, 0.0));
        assert_eq!(hp, c(6.0, 0.0));
        assert!(TailSeries::new(1, c(0.0, 0.0), vec![]).is_err());
    }

    #[test]
    fn majorant_examples() {
        let empty = TailSeries::new(2, c(1.0, 0.0), vec![]).unwrap();
        assert_eq!(tail_majorant(&empty, 0.5), Majorant { h: 0.0, hp: 0.0 });
        let linear = TailSeries::new(1, c(1.0, 0.0), vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(tail_majorant(&linear, 0.5), Majorant { h: 0.5, hp: 1.0 });
        let padded = linear.clone().with_truncation_bound(0.25, 0.5);
        assert_eq!(tail_majorant(&padded, 0.5), Majorant { h: 0.75, hp: 1.5 });
    }

    #[test]
    fn quadratic_tail_majorant_against_circle_sampling() {
        let t = TailSeries::new(1, c(1.0, 0.0), vec![c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let rho = 0.5;
        let (mut h_max, mut hp_max) = (0.0f64, 0.0f64);
        for i in 0..4096 {
            let xi = ComplexValue::from_polar(rho, std::f64::consts::TAU * i as f64 / 4096.0);
            let (h, hp) = t.eval_h(xi);
            h_max = h_max.max(h.norm());
            hp_max = hp_max.max(hp.norm());
        }
        assert!((h_max - 0.5).abs() < 1e-12 && (hp_max - 2.0).abs() < 1e-12);
        let m = tail_majorant(&t, rho);
        assert_eq!((m.h, m.hp), (0.5, 2.0));
    }

    #[test]
    fn deflation_examples() {
        let q = real(&[1.0, 0.0, 1.0]).deflate(c(0.0, 1.0));
        assert_eq!(q.coeffs(), &[c(0.0, 1.0), c(1.0, 0.0)]);
        assert_eq!(real(&[-1.0, 0.0, 1.0]).deflate(c(1.0, 0.0)), real(&[1.0, 1.0]));
        assert_eq!(real(&[-1.0, 0.0, 0.0, 1.0]).deflate(c(1.0, 0.0)), real(&[1.0, 1.0, 1.0]));
    }

    fn coeff_vec(max_len: usize) -> impl Strategy<Value = Vec<ComplexValue>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_len)
            .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
    }

    fn point() -> impl Strategy<Value = ComplexValue> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
    }

    proptest! {
        #[test]
        fn shift_round_trip(coeffs in coeff_vec(9), z0 in point()) {
            let f = Polynomial::new(coeffs).unwrap();
            let back = f.taylor_shift(z0).taylor_shift(-z0);
            let scale = f.max_modulus().max(1e-300);
            for (a, b) in f.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-10 * scale);
            }
        }

        #[test]
        fn shift_agrees_with_direct_evaluation(coeffs in coeff_vec(9), z0 in point(), xi in point()) {
            let f = Polynomial::new(coeffs).unwrap();
            let want = f.eval(z0 + xi);
            prop_assert!((f.taylor_shift(z0).eval(xi) - want).norm() <= 1e-10 * (1.0 + want.norm()));
        }

        #[test]
        fn majorant_dominates_samples(coeffs in coeff_vec(8), k in 1u32..4, rho in 0.01f64..2.0, seed in any::<u64>()) {
            let t = TailSeries::new(k, c(1.0, 0.0), coeffs).unwrap();
            let m = tail_majorant(&t, rho);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..1000 {
                let xi = ComplexValue::from_polar(rho * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
                let (h, hp) = t.eval_h(xi);
                prop_assert!(h.norm() <= m.h + 1e-12);
                prop_assert!(hp.norm() <= m.hp + 1e-12);
            }
        }

        #[test]
        fn deflation_recovers_factor(roots in prop::collection::vec(point(), 1..8)) {
            let f = Polynomial::from_roots(&roots, c(1.0, 0.0)).unwrap();
            let root = roots[0];
            prop_assume!(f.eval(root).norm() <= 1e-10);
            let back = f.deflate(root).mul_linear(root);
            let scale = f.max_modulus();
            for (a, b) in f.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-8 * scale);
            }
        }
    }
}
