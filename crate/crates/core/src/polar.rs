//! Symplectic polar harmonic form of a real resonant series: substituting
//! z = √I e^{iφ} turns z^k zbar^l into I^{(k+l)/2} e^{i(k−l)φ}, so a
//! real-valued resonant Hamiltonian becomes a cosine sum over the harmonics
//! jnφ. Convention: z^n + zbar^n ↦ 2 I^{n/2} cos nφ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::FormalSeries;

/// One harmonic entry: amplitude · I^{power} · cos(j n φ + phase).
///
/// `power_times_2` stores twice the I-exponent so half-integer powers stay
/// exact. Amplitudes are ≥ 0 and phases lie in (−π, π]; the j = 0 entries
/// carry no angular dependence, so their phase is 0 or π (π encodes a
/// negative diagonal coefficient).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarEntry {
    pub j: u32,
    pub power_times_2: i64,
    pub amplitude: f64,
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarHarmonic {
    pub n: u32,
    pub entries: Vec<PolarEntry>,
}

/// Converts a real-valued resonant parameter-free series to its polar
/// harmonic form. Rejects series with parameter factors, non-resonant
/// support, or broken conjugate symmetry.
pub fn to_polar(h: &FormalSeries) -> Result<PolarHarmonic> {
    let n = h.n();
    h.assert_resonant()?;
    h.assert_real_valued(1e-9 * h.max_coeff().max(1.0))?;
    for mono in h.terms().map(|(m, _)| m) {
        if mono.param_degree() > 0 {
            return Err(Error::Domain(format!(
                "polar form is defined for parameter-free series; found m = {:?}",
                mono.m
            )));
        }
    }
    let mut entries = Vec::new();
    for (mono, c) in h.terms() {
        if mono.k < mono.l {
            continue; // conjugate partner carries the entry
        }
        let j = ((mono.k - mono.l) / n) as u32;
        let power_times_2 = (mono.k + mono.l) as i64;
        if j == 0 {
            let (amplitude, phase) = if c.re >= 0.0 {
                (c.re, 0.0)
            } else {
                (-c.re, std::f64::consts::PI)
            };
            entries.push(PolarEntry {
                j,
                power_times_2,
                amplitude,
                phase,
            });
        } else {
            // c z^k zbar^l + conj = 2|c| I^{(k+l)/2} cos(jnφ + arg c)
            entries.push(PolarEntry {
                j,
                power_times_2,
                amplitude: 2.0 * c.norm(),
                phase: c.arg(),
            });
        }
    }
    entries.sort_by(|a, b| {
        (a.power_times_2, a.j).cmp(&(b.power_times_2, b.j))
    });
    Ok(PolarHarmonic { n, entries })
}

/// Rebuilds the complex series from its polar harmonic form.
pub fn from_polar(ph: &PolarHarmonic, max_degree: u32) -> Result<FormalSeries> {
    let n = ph.n;
    let mut out = FormalSeries::new(n, max_degree);
    for e in &ph.entries {
        let jn = (e.j * n) as i64;
        let k2 = e.power_times_2 + jn;
        let l2 = e.power_times_2 - jn;
        if k2 < 0 || l2 < 0 || k2 % 2 != 0 || l2 % 2 != 0 {
            return Err(Error::Domain(format!(
                "harmonic j = {} with I-power {}/2 does not come from integer exponents",
                e.j, e.power_times_2
            )));
        }
        let (k, l) = ((k2 / 2) as u32, (l2 / 2) as u32);
        if e.j == 0 {
            let value = e.amplitude * e.phase.cos();
            out.add_term(Monomial::zz(k, l), Complex64::new(value, 0.0));
        } else {
            let c = Complex64::from_polar(e.amplitude / 2.0, e.phase);
            out.add_term(Monomial::zz(k, l), c);
            out.add_term(Monomial::zz(l, k), c.conj());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_square_is_single_zero_harmonic() {
        let h = FormalSeries::monomial(4, 10, Monomial::zz(2, 2), Complex64::ONE);
        let ph = to_polar(&h).unwrap();
        assert_eq!(ph.entries.len(), 1);
        let e = ph.entries[0];
        assert_eq!(e.j, 0);
        assert_eq!(e.power_times_2, 4); // I²
        assert_eq!(e.amplitude, 1.0);
        assert_eq!(e.phase, 0.0);
    }

    #[test]
    fn cosine_convention_zn_plus_conj() {
        // z^n + zbar^n → 2 I^{n/2} cos nφ
        let n = 5u32;
        let mut h = FormalSeries::new(n, 12);
        h.add_term(Monomial::zz(n, 0), Complex64::ONE);
        h.add_term(Monomial::zz(0, n), Complex64::ONE);
        let ph = to_polar(&h).unwrap();
        assert_eq!(ph.entries.len(), 1);
        let e = ph.entries[0];
        assert_eq!(e.j, 1);
        assert_eq!(e.power_times_2, n as i64);
        assert!((e.amplitude - 2.0).abs() < 1e-15);
        assert_eq!(e.phase, 0.0);
    }

    #[test]
    fn gamma_exp_beta_convention() {
        // (γ e^{iβ}/2) z^n + conj → γ I^{n/2} cos(nφ + β)
        let n = 4u32;
        let (gamma, beta) = (0.7, 1.1);
        let c = Complex64::from_polar(gamma / 2.0, beta);
        let mut h = FormalSeries::new(n, 10);
        h.add_term(Monomial::zz(n, 0), c);
        h.add_term(Monomial::zz(0, n), c.conj());
        let ph = to_polar(&h).unwrap();
        let e = ph.entries[0];
        assert!((e.amplitude - gamma).abs() < 1e-14);
        assert!((e.phase - beta).abs() < 1e-14);
    }

    #[test]
    fn negative_diagonal_uses_phase_pi() {
        let h = FormalSeries::monomial(3, 8, Monomial::zz(2, 2), -Complex64::ONE);
        let ph = to_polar(&h).unwrap();
        let e = ph.entries[0];
        assert!(e.amplitude > 0.0);
        assert_eq!(e.phase, std::f64::consts::PI);
        let back = from_polar(&ph, 8).unwrap();
        assert!(back.linf_diff(&h) < 1e-15);
    }

    #[test]
    fn rejects_non_real_and_non_resonant() {
        let n = 4u32;
        let bad = FormalSeries::monomial(n, 10, Monomial::zz(n, 0), Complex64::ONE);
        assert!(to_polar(&bad).is_err()); // missing conjugate partner
        let nonres = FormalSeries::monomial(n, 10, Monomial::zz(2, 1), Complex64::ONE);
        assert!(to_polar(&nonres).is_err());
    }
}
