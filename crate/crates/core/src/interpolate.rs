//! Between maps and Hamiltonians: Birkhoff reduction to resonant form,
//! Takens interpolation N = R_{α0} ∘ Φ¹_H and its inverse, and the conjugacy
//! residual checker used to audit every change of variables.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::change::{Change, ChangeStep};
use crate::error::{Error, Result};
use crate::map::{flow_time_one, MapSeries};
use crate::monomial::Monomial;
use crate::series::FormalSeries;

fn pow_i(z: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).conj()
    }
}

fn check_primitive_root(map: &MapSeries) -> Result<()> {
    let (p, q) = map.alpha();
    let g = gcd(p.unsigned_abs(), q.unsigned_abs());
    let order = q.unsigned_abs() / g.max(1);
    let order = if order == 0 { 1 } else { order };
    if order != map.n() as u64 {
        return Err(Error::Domain(format!(
            "alpha0 = 2π·{p}/{q} is not a primitive root angle of order n = {}",
            map.n()
        )));
    }
    Ok(())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Removes all non-resonant terms (k − l ≢ 1 mod n) from a map by a sequence
/// of canonical time-one flows, ordered by z-degree and parameter degree.
///
/// Each non-resonant slot (k, l) with k ≥ 1 pairs with (l+1, k−1) under the
/// area-preservation identity k·g_{kl} + (l+1)·conj(g_{l+1,k−1}) = 0; one
/// complex generator coefficient serves both slots and the small divisor
/// λ0 − λ0^{k−l} is nonzero exactly off the resonant class. Slots with
/// k = 0 are unconstrained and carry their own generator. After each step
/// the partner slots are checked to vanish within tolerance; failure means
/// the input was not area-preserving to truncation order.
pub fn birkhoff_reduce(map: &MapSeries) -> Result<(MapSeries, Change)> {
    check_primitive_root(map)?;
    let n = map.n();
    let lambda = map.lambda0();
    let max_degree = map.max_degree();
    let scale = map.f.max_coeff().max(1.0);
    let tol = 1e-9 * scale;

    let mut current = map.clone();
    let mut change = Change::new();

    for d in 1..=max_degree {
        let mm_cap = (max_degree - d.min(max_degree)) / 2;
        for mm in 0..=mm_cap {
            let mut chi = FormalSeries::new(n, max_degree).with_zero_tol(0.0);
            let factor = current.tangent_factor();
            for (mono, c) in factor.f.terms() {
                if mono.z_degree() != d || mono.param_degree() != mm {
                    continue;
                }
                let diff = mono.k as i64 - mono.l as i64;
                if diff.rem_euclid(n as i64) == 1 {
                    continue; // resonant, kept
                }
                let representative = diff >= 2 || mono.k == 0;
                if !representative {
                    continue;
                }
                let divisor = lambda - pow_i(lambda, diff);
                if divisor.norm() < 1e-13 {
                    return Err(Error::Internal(format!(
                        "vanishing small divisor at non-resonant slot ({}, {})",
                        mono.k, mono.l
                    )));
                }
                // required displacement ψ_{kl} = −λ·g_{kl}/(λ − λ^{k−l});
                // generator slot (k, l+1) gives displacement −i(l+1)γ
                let psi = -(c * lambda) / divisor;
                let gamma = Complex64::new(0.0, 1.0) * psi / (mono.l as f64 + 1.0);
                chi.add_term(Monomial::new(mono.k, mono.l + 1, mono.m), gamma);
                if mono.k != mono.l + 1 {
                    chi.add_term(Monomial::new(mono.l + 1, mono.k, mono.m), gamma.conj());
                }
            }
            if chi.is_zero() {
                continue;
            }
            let step = ChangeStep::Flow { generator: chi };
            current = step.apply_to_map(&current)?;
            change.push(step);

            // partner slots at this (degree, parameter order) must be gone
            let factor = current.tangent_factor();
            for (mono, c) in factor.f.terms() {
                if mono.z_degree() == d
                    && mono.param_degree() == mm
                    && (mono.k as i64 - mono.l as i64).rem_euclid(n as i64) != 1
                    && c.norm() > tol
                {
                    return Err(Error::Internal(format!(
                        "area-preservation pairing failed at slot ({}, {}, {:?}): residual {:.3e}; \
                         is the input area-preserving to truncation order?",
                        mono.k,
                        mono.l,
                        mono.m,
                        c.norm()
                    )));
                }
            }
        }
    }
    Ok((current, change))
}

/// Recovers the real resonant Hamiltonian H with N = R_{α0} ∘ Φ¹_H from a
/// map already in Birkhoff normal form.
///
/// Works order by order in total degree: at each stage the residual
/// displacement between R^{-1}∘N and the flow of the partial H determines
/// one block of H through the relation displacement = −i ∂χ/∂zbar. For
/// families the ε·z·zbar block is recovered with unit coefficient; for
/// individual maps H starts at degree 3 in (z, zbar).
pub fn takens_interpolate(map: &MapSeries) -> Result<FormalSeries> {
    check_primitive_root(map)?;
    let n = map.n();
    let max_degree = map.max_degree();
    if !map.is_resonant_normal_form() {
        let bad = map.nonresonant_terms();
        return Err(Error::Domain(format!(
            "takens_interpolate requires a resonant map; found {} non-resonant terms, e.g. {:?}",
            bad.len(),
            bad.first()
        )));
    }
    let scale = map.f.max_coeff().max(1.0);
    let tol = 1e-11 * scale;

    // target displacement g = R^{-1}∘N − id
    let factor = map.tangent_factor();
    let mut target = factor.f.clone();
    target.add_term(Monomial::zz(1, 0), -Complex64::ONE);

    // map coefficients to degree K determine H to degree K+1
    let mut h = FormalSeries::new(n, max_degree + 1).with_zero_tol(0.0);
    for degree in 2..=max_degree {
        let flow = flow_time_one(&h)?;
        let mut residual = target.clone();
        for (mono, c) in flow.f.terms() {
            if !(mono.k == 1 && mono.l == 0 && mono.m == [0, 0, 0]) {
                residual.add_term(*mono, -*c);
            }
        }
        for (mono, c) in residual.terms() {
            if mono.total_degree() != degree || c.norm() <= tol {
                continue;
            }
            // residual slot (k, l, m) is produced by the H-monomial
            // (k, l+1, m): displacement −i(l+1)γ, so γ = i·c/(l+1)
            let diff = mono.k as i64 - mono.l as i64;
            let representative = diff >= 2 || diff == 1 || mono.k == 0;
            if !representative {
                continue; // conjugate-pair partner, determined by reality
            }
            let gamma = Complex64::new(0.0, 1.0) * *c / (mono.l as f64 + 1.0);
            let (hk, hl) = (mono.k, mono.l + 1);
            if hk == hl {
                if gamma.im.abs() > 1e-8 * scale.max(1.0) {
                    return Err(Error::Internal(format!(
                        "diagonal interpolation block ({hk},{hl},{:?}) not real: {gamma}",
                        mono.m
                    )));
                }
                h.add_term(Monomial::new(hk, hl, mono.m), Complex64::new(gamma.re, 0.0));
            } else {
                h.add_term(Monomial::new(hk, hl, mono.m), gamma);
                h.add_term(Monomial::new(hl, hk, mono.m), gamma.conj());
            }
        }
    }
    // audit: the flow of H must reproduce the map
    let flow = flow_time_one(&h)?;
    let residual = flow.f.linf_diff(&factor.f);
    if residual > 1e-8 * scale {
        return Err(Error::Internal(format!(
            "interpolation failed to converge: residual {residual:.3e}; \
             is the input area-preserving to truncation order?"
        )));
    }
    let mut out = FormalSeries::new(n, max_degree);
    for (mono, c) in h.terms() {
        out.add_term(*mono, *c);
    }
    out.assert_resonant()?;
    Ok(out)
}

/// Per-degree and sampled deviation between Ψ ∘ NF and F ∘ Ψ for a recorded
/// change Ψ. Parameter substitutions inside the change are front-loaded onto
/// F's coefficients (a family is conjugate to its normal form expressed in
/// the new parameters).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub order_checked: u32,
    pub per_degree: Vec<(u32, f64)>,
    pub max_residual: f64,
    /// (radius, max pointwise deviation over the sampled circle)
    pub samples: Vec<(f64, f64)>,
}

/// Radii used for the numeric sampling of conjugacy residuals.
pub const SAMPLE_RADII: [f64; 3] = [0.05, 0.1, 0.2];
pub const SAMPLE_POINTS: usize = 100;

pub fn conjugacy_residual(
    original: &MapSeries,
    change: &Change,
    normal_form: &MapSeries,
    params: [f64; 3],
) -> Result<ConjugacyReport> {
    let n = original.n();
    let max_degree = original.max_degree();
    let (sub, coord_steps) = change.normalized();
    let mut f = original.clone();
    if let Some((u, v)) = &sub {
        f = MapSeries::new(n, f.alpha().0, f.alpha().1, f.f.substitute_params(u, v))?;
    }
    let coord_change = Change { steps: coord_steps };
    let psi = coord_change.as_map(n, max_degree)?;

    let lhs = psi.compose(normal_form)?; // Ψ ∘ NF
    let rhs = f.compose(&psi)?; // F ∘ Ψ
    let diff = lhs.f.sub(&rhs.f)?;

    let mut per_degree: Vec<(u32, f64)> = Vec::new();
    for d in 0..=max_degree {
        let worst = diff
            .terms()
            .filter(|(mono, _)| mono.total_degree() == d)
            .map(|(_, c)| c.norm())
            .fold(0.0f64, f64::max);
        per_degree.push((d, worst));
    }
    let max_residual = per_degree.iter().map(|&(_, r)| r).fold(0.0, f64::max);

    let mut samples = Vec::new();
    for &r in SAMPLE_RADII.iter() {
        let mut worst = 0.0f64;
        for i in 0..SAMPLE_POINTS {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / SAMPLE_POINTS as f64;
            let z = Complex64::from_polar(r, angle);
            let a = psi.eval(normal_form.eval(z, params), params);
            let b = f.eval(psi.eval(z, params), params);
            worst = worst.max((a - b).norm());
        }
        samples.push((r, worst));
    }

    Ok(ConjugacyReport {
        order_checked: max_degree,
        per_degree,
        max_residual,
        samples,
    })
}
