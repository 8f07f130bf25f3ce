//! Series in the two trailing parameters alone (μ1, μ2 before
//! reparametrization, ν1, ν2 after). These appear as coefficient functions
//! of family Hamiltonians: h_{klm}(μ1, μ2) and the generator amplitudes
//! β(μ), α(μ) of the degree-2 family normalization.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::FormalSeries;

/// Truncated complex series in (p2, p3); `max_order` bounds the total
/// parameter degree m2 + m3.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSeries {
    max_order: u32,
    zero_tol: f64,
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl ParamSeries {
    pub fn new(max_order: u32) -> Self {
        ParamSeries {
            max_order,
            zero_tol: crate::series::DEFAULT_ZERO_TOL,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(max_order: u32, c: Complex64) -> Self {
        let mut s = ParamSeries::new(max_order);
        s.add_term(0, 0, c);
        s
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m2: u32, m3: u32) -> Complex64 {
        self.terms
            .get(&(m2, m3))
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(0, 0)
    }

    pub fn add_term(&mut self, m2: u32, m3: u32, c: Complex64) {
        if m2 + m3 > self.max_order {
            return;
        }
        let e = self.terms.entry((m2, m3)).or_insert(Complex64::ZERO);
        *e += c;
        if e.norm() <= self.zero_tol {
            self.terms.remove(&(m2, m3));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m2, m3), c) in other.terms() {
            out.add_term(m2, m3, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m2, m3), c) in other.terms() {
            out.add_term(m2, m3, -*c);
        }
        out
    }

    pub fn scale(&self, f: Complex64) -> Self {
        let mut out = ParamSeries::new(self.max_order);
        for (&(m2, m3), c) in self.terms() {
            out.add_term(m2, m3, c * f);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ParamSeries::new(self.max_order);
        for (&(a2, a3), c1) in self.terms() {
            for (&(b2, b3), c2) in other.terms() {
                out.add_term(a2 + b2, a3 + b3, c1 * c2);
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = ParamSeries::new(self.max_order);
        for (&(m2, m3), c) in self.terms() {
            out.add_term(m2, m3, c.conj());
        }
        out
    }

    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale(Complex64::new(0.5, 0.0))
    }

    pub fn im(&self) -> Self {
        self.sub(&self.conj())
            .scale(Complex64::new(0.0, -0.5))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Reciprocal 1/u for u with nonzero constant term: geometric series in
    /// the order-raising part, exact to max_order.
    pub fn recip(&self) -> Result<Self> {
        let u0 = self.constant_term();
        if u0.norm() <= self.zero_tol {
            return Err(Error::Hypothesis {
                condition: "parameter series has invertible constant term".into(),
                magnitude: u0.norm(),
                threshold: self.zero_tol,
            });
        }
        // w = u/u0 − 1 has no constant term; 1/u = (1/u0) Σ (−w)^j
        let mut w = self.scale(1.0 / u0);
        w.add_term(0, 0, -Complex64::ONE);
        let mut acc = ParamSeries::constant(self.max_order, Complex64::ONE);
        let mut power = ParamSeries::constant(self.max_order, Complex64::ONE);
        for _ in 0..self.max_order {
            power = power.mul(&w).scale(-Complex64::ONE);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(1.0 / u0))
    }

    /// exp of a series with no constant term.
    fn exp_nilpotent(&self) -> Self {
        debug_assert!(self.constant_term().norm() <= self.zero_tol);
        let mut acc = ParamSeries::constant(self.max_order, Complex64::ONE);
        let mut term = ParamSeries::constant(self.max_order, Complex64::ONE);
        for j in 1..=self.max_order.max(1) {
            term = term.mul(self).scale(Complex64::new(1.0 / j as f64, 0.0));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// exp(i·θ) for a real series θ (constant term allowed).
    pub fn exp_i(&self) -> Self {
        let t0 = self.constant_term();
        let mut delta = self.clone();
        delta.add_term(0, 0, -t0);
        let unit = Complex64::from_polar(1.0, t0.re);
        delta
            .scale(Complex64::new(0.0, 1.0))
            .exp_nilpotent()
            .scale(unit)
    }

    /// log of a series with constant term away from zero; principal branch at
    /// the constant term.
    pub fn log(&self) -> Result<Self> {
        let u0 = self.constant_term();
        if u0.norm() <= self.zero_tol {
            return Err(Error::Hypothesis {
                condition: "parameter series has nonzero constant term for log".into(),
                magnitude: u0.norm(),
                threshold: self.zero_tol,
            });
        }
        let mut w = self.scale(1.0 / u0);
        w.add_term(0, 0, -Complex64::ONE);
        // log(1 + w) = Σ (−1)^{j+1} w^j / j
        let mut acc = ParamSeries::constant(self.max_order, Complex64::new(u0.norm().ln(), u0.arg()));
        let mut power = ParamSeries::constant(self.max_order, Complex64::ONE);
        for j in 1..=self.max_order.max(1) {
            power = power.mul(&w);
            if power.is_zero() {
                break;
            }
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&power.scale(Complex64::new(sign / j as f64, 0.0)));
        }
        Ok(acc)
    }

    /// arg of the series as a real series: Im log.
    pub fn arg(&self) -> Result<Self> {
        Ok(self.log()?.im())
    }

    /// |u| as a real series: exp(Re log u).
    pub fn modulus(&self) -> Result<Self> {
        let re_log = self.log()?.re();
        let c0 = re_log.constant_term();
        let mut delta = re_log.clone();
        delta.add_term(0, 0, -c0);
        Ok(delta.exp_nilpotent().scale(Complex64::new(c0.re.exp(), 0.0)))
    }

    /// Substitute p2 ↦ u(p2', p3'), p3 ↦ v(p2', p3').
    pub fn substitute(&self, u: &Self, v: &Self) -> Self {
        let mut out = ParamSeries::new(self.max_order);
        let mut u_pows: Vec<ParamSeries> = vec![ParamSeries::constant(self.max_order, Complex64::ONE)];
        let mut v_pows: Vec<ParamSeries> = vec![ParamSeries::constant(self.max_order, Complex64::ONE)];
        for (&(m2, m3), c) in self.terms() {
            while u_pows.len() <= m2 as usize {
                let next = u_pows.last().unwrap().mul(u);
                u_pows.push(next);
            }
            while v_pows.len() <= m3 as usize {
                let next = v_pows.last().unwrap().mul(v);
                v_pows.push(next);
            }
            let prod = u_pows[m2 as usize].mul(&v_pows[m3 as usize]).scale(*c);
            out = out.add(&prod);
        }
        out
    }

    /// Evaluate at numeric parameter values.
    pub fn eval(&self, p2: f64, p3: f64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (&(m2, m3), c) in self.terms() {
            acc += c * p2.powi(m2 as i32) * p3.powi(m3 as i32);
        }
        acc
    }
}

/// Inverts the planar parameter map (p2, p3) ↦ (x(p2,p3), y(p2,p3)) with
/// x, y real series vanishing at the origin and invertible linear part.
/// Returns (u, v) with u(x,y), v(x,y) the inverse pair, exact to max_order.
pub fn invert_param_map(x: &ParamSeries, y: &ParamSeries, rel_tol: f64) -> Result<(ParamSeries, ParamSeries)> {
    let order = x.max_order();
    // linear part
    let a = x.coeff(1, 0).re;
    let b = x.coeff(0, 1).re;
    let c = y.coeff(1, 0).re;
    let d = y.coeff(0, 1).re;
    let det = a * d - b * c;
    let scale = [a, b, c, d].iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    if det.abs() <= rel_tol * scale * scale {
        return Err(Error::Hypothesis {
            condition: "parameter map has invertible linear part at the origin".into(),
            magnitude: det.abs(),
            threshold: rel_tol * scale * scale,
        });
    }
    if x.coeff(0, 0).norm() > rel_tol * scale || y.coeff(0, 0).norm() > rel_tol * scale {
        return Err(Error::Domain(
            "parameter map must vanish at the origin".into(),
        ));
    }
    // Nonlinear parts
    let mut nx = x.clone();
    nx.add_term(1, 0, Complex64::new(-a, 0.0));
    nx.add_term(0, 1, Complex64::new(-b, 0.0));
    nx.add_term(0, 0, -x.coeff(0, 0));
    let mut ny = y.clone();
    ny.add_term(1, 0, Complex64::new(-c, 0.0));
    ny.add_term(0, 1, Complex64::new(-d, 0.0));
    ny.add_term(0, 0, -y.coeff(0, 0));
    // A^{-1}
    let (ia, ib, ic, id) = (d / det, -b / det, -c / det, a / det);
    let lin = |s: &ParamSeries, t: &ParamSeries, m00: f64, m01: f64| -> ParamSeries {
        s.scale(Complex64::new(m00, 0.0))
            .add(&t.scale(Complex64::new(m01, 0.0)))
    };
    // identity targets: X = p2-series, Y = p3-series in the NEW variables
    let mut xid = ParamSeries::new(order);
    xid.add_term(1, 0, Complex64::ONE);
    let mut yid = ParamSeries::new(order);
    yid.add_term(0, 1, Complex64::ONE);
    // fixed-point iteration: (u, v) = A^{-1} ( (X, Y) − N(u, v) ), gains one order per pass
    let mut u = lin(&xid, &yid, ia, ib);
    let mut v = lin(&xid, &yid, ic, id);
    for _ in 0..order + 1 {
        let nu = nx.substitute(&u, &v);
        let nv = ny.substitute(&u, &v);
        let rx = xid.sub(&nu);
        let ry = yid.sub(&nv);
        u = lin(&rx, &ry, ia, ib);
        v = lin(&rx, &ry, ic, id);
    }
    Ok((u, v))
}

// Extraction and reassembly between the 5-variable algebra and coefficient
// series in the two trailing parameters.
impl FormalSeries {
    /// Coefficient of z^k zbar^l p1^{m1} as a series in (p2, p3).
    pub fn coeff_param_series(&self, k: u32, l: u32, m1: u32) -> ParamSeries {
        let cap = self
            .max_degree()
            .saturating_sub(k + l + 2 * m1)
            / 2;
        let mut out = ParamSeries::new(cap);
        for (mono, c) in self.terms() {
            if mono.k == k && mono.l == l && mono.m[0] == m1 {
                out.add_term(mono.m[1], mono.m[2], *c);
            }
        }
        out
    }

    /// Adds p·z^k zbar^l p1^{m1} into the series.
    pub fn add_param_series(&mut self, k: u32, l: u32, m1: u32, p: &ParamSeries) {
        for (&(m2, m3), c) in p.terms() {
            self.add_term(Monomial::new(k, l, [m1, m2, m3]), *c);
        }
    }

    /// Substitutes p2 ↦ u(p2', p3'), p3 ↦ v(p2', p3') throughout.
    pub fn substitute_params(&self, u: &ParamSeries, v: &ParamSeries) -> Self {
        let mut out = FormalSeries::new(self.n(), self.max_degree())
            .with_zero_tol(self.zero_tol())
            .with_grading(self.grading());
        // group by (k, l, m1)
        let mut groups: std::collections::BTreeMap<(u32, u32, u32), ParamSeries> =
            std::collections::BTreeMap::new();
        for (mono, c) in self.terms() {
            let key = (mono.k, mono.l, mono.m[0]);
            let cap = self.max_degree().saturating_sub(mono.k + mono.l + 2 * mono.m[0]) / 2;
            groups
                .entry(key)
                .or_insert_with(|| ParamSeries::new(cap))
                .add_term(mono.m[1], mono.m[2], *c);
        }
        for ((k, l, m1), p) in groups {
            let cap = p.max_order();
            let mut u_t = u.clone();
            let mut v_t = v.clone();
            // substitution inherits the per-slot order budget
            if u_t.max_order() > cap {
                u_t = truncate_order(&u_t, cap);
                v_t = truncate_order(&v_t, cap);
            }
            let sub = p.substitute(&u_t, &v_t);
            out.add_param_series(k, l, m1, &sub);
        }
        out
    }

    /// Multiplies the (k,l)-slots by exp(i (k−l) θ(p2,p3)) for a real
    /// parameter-series angle θ: the parameter-dependent rotation.
    pub fn rotate_param(&self, theta: &ParamSeries) -> Self {
        let mut out = FormalSeries::new(self.n(), self.max_degree())
            .with_zero_tol(self.zero_tol())
            .with_grading(self.grading());
        let mut cache: std::collections::BTreeMap<i64, ParamSeries> = std::collections::BTreeMap::new();
        for (mono, c) in self.terms() {
            let d = mono.k as i64 - mono.l as i64;
            let phase = cache.entry(d).or_insert_with(|| {
                theta.scale(Complex64::new(d as f64, 0.0)).exp_i()
            });
            for (&(m2, m3), pc) in phase.terms() {
                out.add_term(
                    Monomial::new(mono.k, mono.l, [mono.m[0], mono.m[1] + m2, mono.m[2] + m3]),
                    c * pc,
                );
            }
        }
        out
    }
}

fn truncate_order(p: &ParamSeries, cap: u32) -> ParamSeries {
    let mut out = ParamSeries::new(cap);
    for (&(m2, m3), c) in p.terms() {
        out.add_term(m2, m3, *c);
    }
    out
}

// ---------------------------------------------------------------------------
// Serialization for report steps.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ParamTermRepr {
    m2: u32,
    m3: u32,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct ParamSeriesRepr {
    max_order: u32,
    terms: Vec<ParamTermRepr>,
}

impl Serialize for ParamSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ParamSeriesRepr {
            max_order: self.max_order,
            terms: self
                .terms
                .iter()
                .map(|(&(m2, m3), c)| ParamTermRepr {
                    m2,
                    m3,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ParamSeriesRepr::deserialize(deserializer)?;
        let mut s = ParamSeries::new(repr.max_order);
        for t in repr.terms {
            s.add_term(t.m2, t.m3, Complex64::new(t.re, t.im));
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
    fn recip_times_original_is_one() {
        let mut u = ParamSeries::new(6);
        u.add_term(0, 0, c(2.0, -1.0));
        u.add_term(1, 0, c(0.3, 0.1));
        u.add_term(0, 2, c(-0.2, 0.05));
        let r = u.recip().unwrap();
        let prod = u.mul(&r);
        assert!((prod.constant_term() - Complex64::ONE).norm() < 1e-13);
        for (&(m2, m3), v) in prod.terms() {
            if (m2, m3) != (0, 0) {
                assert!(v.norm() < 1e-12, "residual at ({m2},{m3})");
            }
        }
    }

    #[test]
    fn modulus_and_arg_reconstruct_the_series() {
        let mut u = ParamSeries::new(5);
        u.add_term(0, 0, c(1.0, 2.0));
        u.add_term(1, 0, c(0.4, -0.3));
        u.add_term(1, 1, c(0.0, 0.2));
        let m = u.modulus().unwrap();
        let a = u.arg().unwrap();
        let rebuilt = m.mul(&a.exp_i());
        assert!(rebuilt.sub(&u).max_coeff() < 1e-12);
        assert!(m.is_real(1e-13));
        assert!(a.is_real(1e-13));
    }

    #[test]
    fn invert_param_map_round_trips() {
        // x = p2 + 0.3 p2 p3, y = −p3 + 0.1 p2^2
        let mut x = ParamSeries::new(5);
        x.add_term(1, 0, c(1.0, 0.0));
        x.add_term(1, 1, c(0.3, 0.0));
        let mut y = ParamSeries::new(5);
        y.add_term(0, 1, c(-1.0, 0.0));
        y.add_term(2, 0, c(0.1, 0.0));
        let (u, v) = invert_param_map(&x, &y, 1e-12).unwrap();
        // forward then inverse is the identity
        let xi = x.substitute(&u, &v);
        let yi = y.substitute(&u, &v);
        let mut idx = ParamSeries::new(5);
        idx.add_term(1, 0, c(1.0, 0.0));
        let mut idy = ParamSeries::new(5);
        idy.add_term(0, 1, c(1.0, 0.0));
        assert!(xi.sub(&idx).max_coeff() < 1e-12);
        assert!(yi.sub(&idy).max_coeff() < 1e-12);
    }

    #[test]
    fn param_rotation_on_zn_slot() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 14);
        h.add_term(Monomial::zz(n, 0), c(1.0, 0.0));
        h.add_term(Monomial::zz(0, n), c(1.0, 0.0));
        let mut theta = ParamSeries::new(3);
        theta.add_term(0, 0, c(0.5, 0.0));
        theta.add_term(1, 0, c(0.25, 0.0));
        let rotated = h.rotate_param(&theta);
        // constant part of the rotated z^n coefficient is e^{i n 0.5}
        let got = rotated.coeff(&Monomial::zz(n, 0));
        let want = Complex64::from_polar(1.0, n as f64 * 0.5);
        assert!((got - want).norm() < 1e-13);
        // and the p2-linear correction is i·n·0.25·e^{i n 0.5}
        let got1 = rotated.coeff(&Monomial::new(n, 0, [0, 1, 0]));
        let want1 = want * c(0.0, n as f64 * 0.25);
        assert!((got1 - want1).norm() < 1e-13);
    }
}
