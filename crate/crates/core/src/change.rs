//! Changes of variables as ordered lists of primitive steps.
//!
//! A step is a rotation, the time-one flow of a generator, a
//! parameter-dependent rotation, or a parameter substitution. Steps are never
//! composed into one series eagerly: each stays invertible and auditable.
//!
//! Direction convention: applying a step to a Hamiltonian produces the
//! Hamiltonian in the NEW variables (H̃ = H ∘ step-map), and the conjugated
//! map is step⁻¹ ∘ N ∘ step. The composed coordinate change Ψ of a step list
//! [s1, s2, …, sk] is s1 ∘ s2 ∘ … ∘ sk, so Ψ ∘ N_final = N_initial ∘ Ψ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{flow_time_one, substitute_map, MapSeries};
use crate::monomial::Monomial;
use crate::param::ParamSeries;
use crate::series::FormalSeries;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChangeStep {
    /// z ↦ e^{iθ} z.
    Rotation { theta: f64 },
    /// (z, zbar) ↦ Φ¹_χ(z, zbar).
    Flow { generator: FormalSeries },
    /// z ↦ e^{iθ(p2,p3)} z with a real parameter-series angle.
    ParamRotation { theta: ParamSeries },
    /// (p2, p3) ↦ (u(p2', p3'), v(p2', p3')); forward and inverse pairs kept.
    ParamSubstitution {
        u: ParamSeries,
        v: ParamSeries,
        u_inv: ParamSeries,
        v_inv: ParamSeries,
    },
}

/// Multiplies every coefficient of `f` by the parameter series `phase`.
fn mul_param_phase(f: &FormalSeries, phase: &ParamSeries) -> FormalSeries {
    let mut out = FormalSeries::new(f.n(), f.max_degree()).with_zero_tol(f.zero_tol());
    for (mono, c) in f.terms() {
        for (&(m2, m3), pc) in phase.terms() {
            out.add_term(
                Monomial::new(mono.k, mono.l, [mono.m[0], mono.m[1] + m2, mono.m[2] + m3]),
                c * pc,
            );
        }
    }
    out
}

impl ChangeStep {
    /// The Hamiltonian in new variables.
    pub fn apply_to_series(&self, h: &FormalSeries) -> Result<FormalSeries> {
        match self {
            ChangeStep::Rotation { theta } => Ok(h.rotate(*theta)),
            ChangeStep::Flow { generator } => {
                h.lie_transform(&generator.resized(h.max_degree()))
            }
            ChangeStep::ParamRotation { theta } => Ok(h.rotate_param(theta)),
            ChangeStep::ParamSubstitution { u, v, .. } => Ok(h.substitute_params(u, v)),
        }
    }

    /// The map in new variables: step⁻¹ ∘ map ∘ step.
    pub fn apply_to_map(&self, map: &MapSeries) -> Result<MapSeries> {
        match self {
            ChangeStep::Rotation { theta } => {
                // R_{−θ} ∘ N ∘ R_θ: coefficient (k,l) picks up e^{iθ(k−l−1)}
                let f = map
                    .f
                    .rotate(*theta)
                    .scale(Complex64::from_polar(1.0, -*theta));
                MapSeries::new(map.n(), map.alpha().0, map.alpha().1, f)
            }
            ChangeStep::Flow { generator } => {
                // a map certified to degree K needs the generator held to K+1
                let chi = generator.resized(map.max_degree() + 1);
                let phi = flow_time_one(&chi)?;
                let phi_inv = flow_time_one(&chi.neg())?;
                let inner = map.compose(&phi)?;
                let f = substitute_map(&phi_inv.f, &inner.f)?;
                MapSeries::new(map.n(), map.alpha().0, map.alpha().1, f)
            }
            ChangeStep::ParamRotation { theta } => {
                let rotated = map.f.rotate_param(theta);
                let phase_back = theta.scale(Complex64::new(-1.0, 0.0)).exp_i();
                let f = mul_param_phase(&rotated, &phase_back);
                MapSeries::new(map.n(), map.alpha().0, map.alpha().1, f)
            }
            ChangeStep::ParamSubstitution { u, v, .. } => {
                let f = map.f.substitute_params(u, v);
                MapSeries::new(map.n(), map.alpha().0, map.alpha().1, f)
            }
        }
    }

    pub fn inverse(&self) -> ChangeStep {
        match self {
            ChangeStep::Rotation { theta } => ChangeStep::Rotation { theta: -theta },
            ChangeStep::Flow { generator } => ChangeStep::Flow {
                generator: generator.neg(),
            },
            ChangeStep::ParamRotation { theta } => ChangeStep::ParamRotation {
                theta: theta.scale(Complex64::new(-1.0, 0.0)),
            },
            ChangeStep::ParamSubstitution { u, v, u_inv, v_inv } => {
                ChangeStep::ParamSubstitution {
                    u: u_inv.clone(),
                    v: v_inv.clone(),
                    u_inv: u.clone(),
                    v_inv: v.clone(),
                }
            }
        }
    }

    fn substituted(&self, u: &ParamSeries, v: &ParamSeries) -> ChangeStep {
        match self {
            ChangeStep::Rotation { theta } => ChangeStep::Rotation { theta: *theta },
            ChangeStep::Flow { generator } => ChangeStep::Flow {
                generator: generator.substitute_params(u, v),
            },
            ChangeStep::ParamRotation { theta } => ChangeStep::ParamRotation {
                theta: theta.substitute(u, v),
            },
            ChangeStep::ParamSubstitution { .. } => self.clone(),
        }
    }
}

/// An ordered list of primitive steps.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Change {
    pub steps: Vec<ChangeStep>,
}

impl Change {
    pub fn new() -> Self {
        Change { steps: Vec::new() }
    }

    pub fn push(&mut self, step: ChangeStep) {
        self.steps.push(step);
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays all steps on a Hamiltonian.
    pub fn apply_to_series(&self, h: &FormalSeries) -> Result<FormalSeries> {
        let mut out = h.clone();
        for step in &self.steps {
            out = step.apply_to_series(&out)?;
        }
        Ok(out)
    }

    /// Conjugates a map through all steps.
    pub fn apply_to_map(&self, map: &MapSeries) -> Result<MapSeries> {
        let mut out = map.clone();
        for step in &self.steps {
            out = step.apply_to_map(&out)?;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Change {
        Change {
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Canonical form: one combined parameter substitution (if any) followed
    /// by pure coordinate steps expressed in the final parameters. Parameter
    /// substitution commutes with coordinate steps as a ring homomorphism on
    /// the parameter symbols, with the generators substituted.
    pub fn normalized(&self) -> (Option<(ParamSeries, ParamSeries)>, Vec<ChangeStep>) {
        let mut sub: Option<(ParamSeries, ParamSeries)> = None;
        let mut coord: Vec<ChangeStep> = Vec::new();
        for step in &self.steps {
            match step {
                ChangeStep::ParamSubstitution { u, v, .. } => {
                    // re-express earlier coordinate steps in the new parameters
                    coord = coord.iter().map(|s| s.substituted(u, v)).collect();
                    sub = Some(match sub {
                        None => (u.clone(), v.clone()),
                        // p → u0(p'), then p' → u(p''): total p → u0(u, v)
                        Some((u0, v0)) => (u0.substitute(u, v), v0.substitute(u, v)),
                    });
                }
                other => coord.push(other.clone()),
            }
        }
        (sub, coord)
    }

    /// The composed coordinate change as one map: s1 ∘ s2 ∘ … ∘ sk.
    /// Fails if a parameter substitution is present; normalize first and
    /// apply the substitution to the series being conjugated instead.
    pub fn as_map(&self, n: u32, max_degree: u32) -> Result<MapSeries> {
        let mut psi = MapSeries::identity(n, max_degree);
        // target s1 ∘ (s2 ∘ (… ∘ sk)): fold right to left, ψ ← step ∘ ψ
        for step in self.steps.iter().rev() {
            psi = match step {
                ChangeStep::Rotation { theta } => {
                    let f = psi.f.scale(Complex64::from_polar(1.0, *theta));
                    MapSeries::new(n, 0, 1, f)?
                }
                ChangeStep::Flow { generator } => {
                    let phi = flow_time_one(&generator.resized(max_degree + 1))?;
                    let f = substitute_map(&phi.f, &psi.f)?;
                    MapSeries::new(n, 0, 1, f)?
                }
                ChangeStep::ParamRotation { theta } => {
                    let f = mul_param_phase(&psi.f, &theta.exp_i());
                    MapSeries::new(n, 0, 1, f)?
                }
                ChangeStep::ParamSubstitution { .. } => {
                    return Err(Error::Internal(
                        "as_map on a change containing a parameter substitution; normalize first"
                            .into(),
                    ))
                }
            };
        }
        Ok(psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_step_round_trips_on_series() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 10);
        h.add_term(Monomial::zz(n, 0), Complex64::new(0.3, -0.2));
        h.add_term(Monomial::zz(0, n), Complex64::new(0.3, 0.2));
        h.add_term(Monomial::zz(2, 2), Complex64::ONE);
        let step = ChangeStep::Rotation { theta: 0.7 };
        let there = step.apply_to_series(&h).unwrap();
        let back = step.inverse().apply_to_series(&there).unwrap();
        assert!(back.linf_diff(&h) < 1e-14);
    }

    #[test]
    fn flow_step_round_trips_on_series() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 10);
        h.add_term(Monomial::zz(2, 2), Complex64::ONE);
        h.add_term(Monomial::zz(n + 1, 1), Complex64::new(0.2, 0.5));
        h.add_term(Monomial::zz(1, n + 1), Complex64::new(0.2, -0.5));
        let mut chi = FormalSeries::new(n, 10);
        chi.add_term(Monomial::zz(n, 0), Complex64::new(0.0, 0.15));
        chi.add_term(Monomial::zz(0, n), Complex64::new(0.0, -0.15));
        let step = ChangeStep::Flow { generator: chi };
        let there = step.apply_to_series(&h).unwrap();
        let back = step.inverse().apply_to_series(&there).unwrap();
        assert!(back.linf_diff(&h) < 1e-12);
    }

    #[test]
    fn hamiltonian_replay_matches_map_conjugation() {
        // With N = R∘Φ¹_H and H̃ = H ∘ Φ_χ, the conjugated map equals R∘Φ¹_{H̃}.
        let n = 3u32;
        let deg = 9u32;
        let mut h = FormalSeries::new(n, deg);
        h.add_term(Monomial::zz(2, 2), Complex64::new(0.9, 0.0));
        h.add_term(Monomial::zz(n + 1, 1), Complex64::new(0.1, -0.2));
        h.add_term(Monomial::zz(1, n + 1), Complex64::new(0.1, 0.2));
        let mut chi = FormalSeries::new(n, deg);
        chi.add_term(Monomial::zz(n, 0), Complex64::new(0.05, 0.1));
        chi.add_term(Monomial::zz(0, n), Complex64::new(0.05, -0.1));
        let step = ChangeStep::Flow { generator: chi };

        let map = crate::map::rotation_after_flow(&h, 1, n as i64).unwrap();
        let conj = step.apply_to_map(&map).unwrap();
        let h2 = step.apply_to_series(&h).unwrap();
        let rebuilt = crate::map::rotation_after_flow(&h2, 1, n as i64).unwrap();
        assert!(conj.f.linf_diff(&rebuilt.f) < 1e-10);
    }

    #[test]
    fn normalized_front_loads_substitutions() {
        let n = 4u32;
        let mut h = FormalSeries::new(n, 12);
        h.add_term(Monomial::zz(2, 2), Complex64::ONE);
        h.add_term(Monomial::new(n, 0, [0, 1, 0]), Complex64::new(0.4, 0.1));
        h.add_term(Monomial::new(0, n, [0, 1, 0]), Complex64::new(0.4, -0.1));

        let mut chi = FormalSeries::new(n, 12);
        chi.add_term(Monomial::new(n, 0, [0, 1, 0]), Complex64::new(0.0, 0.2));
        chi.add_term(Monomial::new(0, n, [0, 1, 0]), Complex64::new(0.0, -0.2));

        let mut u = ParamSeries::new(4);
        u.add_term(1, 0, Complex64::new(1.0, 0.0));
        u.add_term(2, 0, Complex64::new(0.3, 0.0));
        let mut v = ParamSeries::new(4);
        v.add_term(0, 1, Complex64::new(1.0, 0.0));
        let (u_inv, v_inv) = crate::param::invert_param_map(&u, &v, 1e-12).unwrap();

        let mut change = Change::new();
        change.push(ChangeStep::Flow { generator: chi });
        change.push(ChangeStep::ParamSubstitution {
            u: u.clone(),
            v: v.clone(),
            u_inv,
            v_inv,
        });
        change.push(ChangeStep::Rotation { theta: 0.3 });

        let direct = change.apply_to_series(&h).unwrap();
        let (sub, coord) = change.normalized();
        let (us, vs) = sub.unwrap();
        let mut reordered = h.substitute_params(&us, &vs);
        for step in &coord {
            reordered = step.apply_to_series(&reordered).unwrap();
        }
        assert!(direct.linf_diff(&reordered) < 1e-12);
    }
}
