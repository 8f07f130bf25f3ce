//! Truncated formal power series in (z, zbar, p1, p2, p3) with complex
//! coefficients, graded by resonance order n.
//!
//! Storage is sparse: a BTreeMap keyed by [`Monomial`] in canonical order.
//! Every product and bracket is truncated by the single rule
//! k + l + 2|m| ≤ max_degree; coefficients below `zero_tol` are dropped on
//! insertion. δ and δ_Υ degrees are overlays used only for projection and
//! elimination scheduling.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{Grading, Monomial};

pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct FormalSeries {
    n: u32,
    max_degree: u32,
    zero_tol: f64,
    grading: Grading,
    terms: BTreeMap<Monomial, Complex64>,
}

impl FormalSeries {
    pub fn new(n: u32, max_degree: u32) -> Self {
        assert!(n >= 3, "resonance order must be at least 3");
        FormalSeries {
            n,
            max_degree,
            zero_tol: DEFAULT_ZERO_TOL,
            grading: Grading::Total,
            terms: BTreeMap::new(),
        }
    }

    pub fn with_zero_tol(mut self, tol: f64) -> Self {
        self.zero_tol = tol;
        self
    }

    pub fn with_grading(mut self, grading: Grading) -> Self {
        self.grading = grading;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn grading(&self) -> Grading {
        self.grading
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Complex64 {
        self.terms.get(mono).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeff_zz(&self, k: u32, l: u32) -> Complex64 {
        self.coeff(&Monomial::zz(k, l))
    }

    /// Adds `c` into the slot, dropping the stored term when it falls below
    /// the zero tolerance. Over-truncation monomials are silently discarded.
    pub fn add_term(&mut self, mono: Monomial, c: Complex64) {
        if mono.total_degree() > self.max_degree {
            return;
        }
        let entry = self.terms.entry(mono).or_insert(Complex64::ZERO);
        *entry += c;
        if entry.norm() <= self.zero_tol {
            self.terms.remove(&mono);
        }
    }

    pub fn set_term(&mut self, mono: Monomial, c: Complex64) {
        if mono.total_degree() > self.max_degree {
            return;
        }
        if c.norm() <= self.zero_tol {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, c);
        }
    }

    pub fn from_terms<I>(n: u32, max_degree: u32, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut s = FormalSeries::new(n, max_degree);
        for (mono, c) in iter {
            s.add_term(mono, c);
        }
        s
    }

    /// A single monomial series.
    pub fn monomial(n: u32, max_degree: u32, mono: Monomial, c: Complex64) -> Self {
        Self::from_terms(n, max_degree, [(mono, c)])
    }

    /// The coordinate function z as a series.
    pub fn coordinate_z(n: u32, max_degree: u32) -> Self {
        Self::monomial(n, max_degree, Monomial::zz(1, 0), Complex64::ONE)
    }

    pub fn coordinate_zbar(n: u32, max_degree: u32) -> Self {
        Self::monomial(n, max_degree, Monomial::zz(0, 1), Complex64::ONE)
    }

    /// Largest coefficient magnitude; the scale for relative hypothesis checks.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_compatible(&self, other: &Self, what: &'static str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch {
                what,
                left: format!("n = {}", self.n),
                right: format!("n = {}", other.n),
            });
        }
        if self.max_degree != other.max_degree {
            return Err(Error::Mismatch {
                what,
                left: format!("max_degree = {}", self.max_degree),
                right: format!("max_degree = {}", other.max_degree),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let mut out = self.clone();
        out.zero_tol = self.zero_tol.max(other.zero_tol);
        for (mono, c) in other.terms() {
            out.add_term(*mono, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let mut out = self.clone();
        out.zero_tol = self.zero_tol.max(other.zero_tol);
        for (mono, c) in other.terms() {
            out.add_term(*mono, -*c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            out.add_term(*mono, c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol.max(other.zero_tol))
            .with_grading(self.grading);
        for (m1, c1) in self.terms() {
            let d1 = m1.total_degree();
            for (m2, c2) in other.terms() {
                if d1 + m2.total_degree() > self.max_degree {
                    continue;
                }
                let mono = Monomial::new(
                    m1.k + m2.k,
                    m1.l + m2.l,
                    [m1.m[0] + m2.m[0], m1.m[1] + m2.m[1], m1.m[2] + m2.m[2]],
                );
                out.add_term(mono, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Complex conjugate of the series as a function of real (x, y) and real
    /// parameters: coefficients conjugated, k and l swapped.
    pub fn conj(&self) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            out.add_term(mono.conj(), c.conj());
        }
        out
    }

    /// Maximum deviation from conjugate symmetry coeff(k,l,m) = conj(coeff(l,k,m)).
    pub fn reality_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (mono, c) in self.terms() {
            let partner = self.coeff(&mono.conj());
            worst = worst.max((*c - partner.conj()).norm());
        }
        worst
    }

    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.reality_deviation() <= tol
    }

    pub fn assert_real_valued(&self, tol: f64) -> Result<()> {
        for (mono, c) in self.terms() {
            let partner = self.coeff(&mono.conj());
            let dev = (*c - partner.conj()).norm();
            if dev > tol {
                return Err(Error::NotReal {
                    k: mono.k,
                    l: mono.l,
                    m: mono.m,
                    deviation: dev,
                });
            }
        }
        Ok(())
    }

    pub fn is_resonant(&self) -> bool {
        self.terms.keys().all(|mono| mono.is_resonant(self.n))
    }

    pub fn assert_resonant(&self) -> Result<()> {
        for mono in self.terms.keys() {
            if !mono.is_resonant(self.n) {
                return Err(Error::NotResonant {
                    n: self.n,
                    k: mono.k,
                    l: mono.l,
                });
            }
        }
        Ok(())
    }

    /// Poisson bracket on the monomial rule
    /// {z^{k1} zbar^{l1}, z^{k2} zbar^{l2}} = (k1 l2 − k2 l1) z^{k1+k2−1} zbar^{l1+l2−1};
    /// parameters are inert constants. Bilinear, antisymmetric, truncated.
    pub fn poisson_bracket(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "poisson_bracket")?;
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol.max(other.zero_tol))
            .with_grading(self.grading);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let factor = m1.k as i64 * m2.l as i64 - m2.k as i64 * m1.l as i64;
                if factor == 0 {
                    continue;
                }
                // factor != 0 implies k1+k2 >= 1 and l1+l2 >= 1
                let mono = Monomial::new(
                    m1.k + m2.k - 1,
                    m1.l + m2.l - 1,
                    [m1.m[0] + m2.m[0], m1.m[1] + m2.m[1], m1.m[2] + m2.m[2]],
                );
                if mono.total_degree() > self.max_degree {
                    continue;
                }
                out.add_term(mono, c1 * c2 * factor as f64);
            }
        }
        Ok(out)
    }

    /// L_χ h = −i {h, χ}.
    pub fn lie_derivative(&self, chi: &Self) -> Result<Self> {
        Ok(self
            .poisson_bracket(chi)?
            .scale(Complex64::new(0.0, -1.0)))
    }

    /// Validates that exp(L_χ) terminates on the truncated algebra: every
    /// monomial of χ must have total degree ≥ 3 so each bracket application
    /// raises total degree by at least one.
    pub fn check_generator(chi: &Self) -> Result<()> {
        for mono in chi.terms.keys() {
            if mono.total_degree() < 3 {
                return Err(Error::NonTerminating {
                    k: mono.k,
                    l: mono.l,
                    m: mono.m,
                    degree: mono.total_degree(),
                });
            }
        }
        Ok(())
    }

    /// Time-one Lie transform exp(L_χ) h = h + L_χ h + L_χ² h / 2! + …
    ///
    /// Exact on the truncated algebra: the sum terminates because each
    /// application of L_χ raises total degree.
    pub fn lie_transform(&self, chi: &Self) -> Result<Self> {
        self.check_compatible(chi, "lie_transform")?;
        Self::check_generator(chi)?;
        let mut sum = self.clone();
        let mut term = self.clone();
        let mut k = 1u32;
        loop {
            term = term.lie_derivative(chi)?.scale(Complex64::new(1.0 / k as f64, 0.0));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
            k += 1;
            if k > self.max_degree + 2 {
                return Err(Error::Internal(format!(
                    "lie_transform failed to terminate after {k} iterations"
                )));
            }
        }
        Ok(sum)
    }

    /// Substitution z ↦ e^{iθ} z: coefficient of z^k zbar^l multiplied by
    /// e^{iθ(k−l)}. Preserves real-valuedness and resonance.
    pub fn rotate(&self, theta: f64) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            let phase = Complex64::from_polar(1.0, theta * (mono.k as f64 - mono.l as f64));
            out.add_term(*mono, c * phase);
        }
        out
    }

    /// Exactly the terms of scaled grade `scaled` under `mode`; summing the
    /// projections over all grades reproduces the series.
    pub fn grade_project(&self, mode: Grading, scaled: i64) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            if mode.scaled(mono, self.n) == scaled {
                out.add_term(*mono, *c);
            }
        }
        out
    }

    /// Projection at an integer grade p (scaled internally by 2n).
    pub fn grade_project_int(&self, mode: Grading, p: i64) -> Self {
        self.grade_project(mode, mode.scale_int(p, self.n))
    }

    /// All scaled grades present, ascending.
    pub fn grades(&self, mode: Grading) -> Vec<i64> {
        let mut set: Vec<i64> = self
            .terms
            .keys()
            .map(|mono| mode.scaled(mono, self.n))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Keeps terms with total degree ≤ cap.
    pub fn truncated(&self, cap: u32) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            if mono.total_degree() <= cap {
                out.add_term(*mono, *c);
            }
        }
        out
    }

    /// Re-truncates into a different max_degree container.
    pub fn resized(&self, max_degree: u32) -> Self {
        let mut out = FormalSeries::new(self.n, max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            out.add_term(*mono, *c);
        }
        out
    }

    /// Largest coefficient-magnitude difference, over the union of supports.
    pub fn linf_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (mono, c) in self.terms() {
            worst = worst.max((*c - other.coeff(mono)).norm());
        }
        for (mono, c) in other.terms() {
            worst = worst.max((*c - self.coeff(mono)).norm());
        }
        worst
    }

    /// ∂/∂z.
    pub fn partial_z(&self) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            if mono.k > 0 {
                out.add_term(
                    Monomial::new(mono.k - 1, mono.l, mono.m),
                    c * mono.k as f64,
                );
            }
        }
        out
    }

    /// ∂/∂zbar.
    pub fn partial_zbar(&self) -> Self {
        let mut out = FormalSeries::new(self.n, self.max_degree)
            .with_zero_tol(self.zero_tol)
            .with_grading(self.grading);
        for (mono, c) in self.terms() {
            if mono.l > 0 {
                out.add_term(
                    Monomial::new(mono.k, mono.l - 1, mono.m),
                    c * mono.l as f64,
                );
            }
        }
        out
    }

    /// Numeric evaluation at a point; `params` are the three parameter values.
    pub fn eval(&self, z: Complex64, zbar: Complex64, params: [f64; 3]) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (mono, c) in self.terms() {
            let mut v = *c;
            v *= z.powu(mono.k);
            v *= zbar.powu(mono.l);
            for (i, &p) in params.iter().enumerate() {
                if mono.m[i] > 0 {
                    v *= p.powi(mono.m[i] as i32);
                }
            }
            acc += v;
        }
        acc
    }

    /// Evaluation on the real slice zbar = conj(z).
    pub fn eval_real_point(&self, z: Complex64, params: [f64; 3]) -> Complex64 {
        self.eval(z, z.conj(), params)
    }
}

impl PartialEq for FormalSeries {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.max_degree == other.max_degree && self.terms == other.terms
    }
}

// ---------------------------------------------------------------------------
// Serialization: {"n":…, "max_degree":…, "terms":[{"k":…,"l":…,"m":[…],"re":…,"im":…}]}
// Terms serialize in canonical order; doubles round-trip bit-exactly.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: u32,
    l: u32,
    m: [u32; 3],
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SeriesRepr {
    n: u32,
    max_degree: u32,
    terms: Vec<TermRepr>,
}

#[derive(Deserialize)]
struct SeriesReprIn {
    n: u32,
    max_degree: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for FormalSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = SeriesRepr {
            n: self.n,
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| TermRepr {
                    k: mono.k,
                    l: mono.l,
                    m: mono.m,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesReprIn::deserialize(deserializer)?;
        if repr.n < 3 {
            return Err(D::Error::custom(format!(
                "resonance order n = {} must be at least 3",
                repr.n
            )));
        }
        let mut s = FormalSeries::new(repr.n, repr.max_degree);
        for t in repr.terms {
            let mono = Monomial::new(t.k, t.l, t.m);
            if mono.total_degree() > repr.max_degree {
                return Err(D::Error::custom(format!(
                    "term z^{} zbar^{} m={:?} exceeds max_degree {}",
                    t.k, t.l, t.m, repr.max_degree
                )));
            }
            s.set_term(mono, Complex64::new(t.re, t.im));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bracket_of_diagonal_monomials_vanishes() {
        // {z^2 zbar^2, z zbar} has factor 2·1 − 1·2 = 0.
        let f = FormalSeries::monomial(4, 10, Monomial::zz(2, 2), Complex64::ONE);
        let g = FormalSeries::monomial(4, 10, Monomial::zz(1, 1), Complex64::ONE);
        assert!(f.poisson_bracket(&g).unwrap().is_zero());
    }

    #[test]
    fn bracket_zn_with_action_is_n_zn() {
        // {z^n, z zbar} = n z^n.
        for n in [3u32, 4, 5] {
            let f = FormalSeries::monomial(n, 12, Monomial::zz(n, 0), Complex64::ONE);
            let g = FormalSeries::monomial(n, 12, Monomial::zz(1, 1), Complex64::ONE);
            let b = f.poisson_bracket(&g).unwrap();
            assert_eq!(b.len(), 1);
            assert_eq!(b.coeff_zz(n, 0), c(n as f64, 0.0));
        }
    }

    #[test]
    fn bracket_rejects_mismatched_truncation() {
        let f = FormalSeries::new(4, 10);
        let g = FormalSeries::new(4, 8);
        assert!(f.poisson_bracket(&g).is_err());
        let h = FormalSeries::new(5, 10);
        assert!(f.poisson_bracket(&h).is_err());
    }

    #[test]
    fn lie_transform_with_zero_generator_is_identity() {
        let mut h = FormalSeries::new(4, 10);
        h.add_term(Monomial::zz(2, 2), c(1.0, 0.0));
        h.add_term(Monomial::zz(5, 1), c(0.0, 2.0));
        let chi = FormalSeries::new(4, 10);
        assert_eq!(h.lie_transform(&chi).unwrap(), h);
    }

    #[test]
    fn lie_transform_rejects_low_degree_generator() {
        let h = FormalSeries::monomial(4, 10, Monomial::zz(2, 2), Complex64::ONE);
        let chi = FormalSeries::monomial(4, 10, Monomial::zz(1, 1), Complex64::ONE);
        assert!(matches!(
            h.lie_transform(&chi),
            Err(Error::NonTerminating { .. })
        ));
        // but a parameter-dressed action term is fine
        let chi_eps = FormalSeries::monomial(4, 10, Monomial::new(1, 1, [1, 0, 0]), Complex64::ONE);
        assert!(h.lie_transform(&chi_eps).is_ok());
    }

    #[test]
    fn rotation_by_zero_is_identity_and_by_pi_over_n_flips_zn() {
        let n = 5u32;
        let mut h = FormalSeries::new(n, 12);
        h.add_term(Monomial::zz(n, 0), c(0.25, -0.5));
        h.add_term(Monomial::zz(0, n), c(0.25, 0.5));
        h.add_term(Monomial::zz(2, 2), c(0.9, 0.0));
        assert!(h.rotate(0.0).linf_diff(&h) < 1e-15);
        let r = h.rotate(std::f64::consts::PI / n as f64);
        assert!((r.coeff_zz(n, 0) + h.coeff_zz(n, 0)).norm() < 1e-14);
        assert!((r.coeff_zz(2, 2) - h.coeff_zz(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn rotation_makes_target_coefficient_real_positive() {
        let n = 4u32;
        let coeff = c(-0.3, 0.7);
        let mut h = FormalSeries::new(n, 16);
        h.add_term(Monomial::zz(2 * n, 0), coeff);
        h.add_term(Monomial::zz(0, 2 * n), coeff.conj());
        let theta = -coeff.arg() / (2.0 * n as f64);
        let r = h.rotate(theta);
        let got = r.coeff_zz(2 * n, 0);
        assert!(got.im.abs() < 1e-14);
        assert!((got.re - coeff.norm()).abs() < 1e-14);
    }

    #[test]
    fn grade_projections_partition_the_series() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 12);
        h.add_term(Monomial::zz(2, 2), c(1.0, 0.0));
        h.add_term(Monomial::zz(n + 1, 1), c(0.0, 2.0));
        h.add_term(Monomial::zz(2 * n, 0), c(1.0, 1.0));
        h.add_term(Monomial::new(1, 1, [1, 0, 0]), c(1.0, 0.0));
        for mode in [Grading::Total, Grading::Delta, Grading::DeltaUpsilon] {
            let mut sum = FormalSeries::new(n, 12);
            for g in h.grades(mode) {
                sum = sum.add(&h.grade_project(mode, g)).unwrap();
            }
            assert!(sum.linf_diff(&h) < 1e-15);
        }
    }

    #[test]
    fn delta_two_block_of_prop1_leading_part() {
        // The δ-degree-2 block holds exactly the five-slot polynomial
        // h22 z²zbar² + h_{n+1,1} z^{n+1}zbar + c.c. + h_{2n,0} z^{2n} + c.c.
        let n = 4u32;
        let mut h = FormalSeries::new(n, 16);
        for (k, l, v) in [
            (2, 2, c(1.0, 0.0)),
            (n + 1, 1, c(0.0, 2.0)),
            (1, n + 1, c(0.0, -2.0)),
            (2 * n, 0, c(1.0, 0.0)),
            (0, 2 * n, c(1.0, 0.0)),
            (3, 3, c(0.5, 0.0)),
            (n + 2, 2, c(0.1, 0.0)),
        ] {
            h.add_term(Monomial::zz(k, l), v);
        }
        let block = h.grade_project_int(Grading::Delta, 2);
        assert_eq!(block.len(), 5);
        assert_eq!(block.coeff_zz(2, 2), c(1.0, 0.0));
        assert_eq!(block.coeff_zz(2 * n, 0), c(1.0, 0.0));
    }

    #[test]
    fn serialization_round_trips_bit_exactly() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 10);
        h.add_term(Monomial::zz(2, 2), c(0.1 + 0.2, -1.0 / 3.0));
        h.add_term(Monomial::new(n, 0, [0, 1, 0]), c(1e-300, 2.5e17));
        let text = serde_json::to_string(&h).unwrap();
        let back: FormalSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(h, back);
        let text2 = serde_json::to_string(&back).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn eval_matches_hand_computation() {
        let mut h = FormalSeries::new(3, 10);
        h.add_term(Monomial::zz(2, 1), c(2.0, 0.0));
        h.add_term(Monomial::new(0, 0, [1, 1, 0]), c(0.0, 1.0));
        let z = c(0.3, 0.4);
        let got = h.eval_real_point(z, [2.0, 5.0, 0.0]);
        let want = z * z * z.conj() * 2.0 + c(0.0, 1.0) * 2.0 * 5.0;
        assert!((got - want).norm() < 1e-14);
    }
}
