//! Area-preserving maps as truncated series in complex coordinates.
//!
//! A map is stored through its z-component f(z, zbar; params); the
//! zbar-component is the complex conjugate because the underlying planar map
//! is real. The rotation angle α0 = 2π·p/q is kept exact as a rational pair.
//!
//! Flow convention: the time-one flow of a Hamiltonian χ acts on observables
//! as exp(L_χ) with L_χ = −i{·, χ}; the coordinate image is exp(L_χ) applied
//! to z. This is the convention inferred from the Hamiltonian update law
//! H ↦ H + L_χH + …; the source material does not write the symplectic form
//! in (z, zbar) explicitly.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::FormalSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct MapSeries {
    n: u32,
    alpha_num: i64,
    alpha_den: i64,
    /// Image of z.
    pub f: FormalSeries,
}

impl MapSeries {
    /// A map with rotation angle α0 = 2π·alpha_num/alpha_den and z-image `f`.
    /// Requires e^{i n α0} = 1, i.e. alpha_den | n·alpha_num.
    pub fn new(n: u32, alpha_num: i64, alpha_den: i64, f: FormalSeries) -> Result<Self> {
        if alpha_den == 0 {
            return Err(Error::Domain("alpha0 denominator must be nonzero".into()));
        }
        if (n as i64 * alpha_num) % alpha_den != 0 {
            return Err(Error::Domain(format!(
                "alpha0 = 2π·{alpha_num}/{alpha_den} is not an n-th-root angle for n = {n}"
            )));
        }
        if f.n() != n {
            return Err(Error::Mismatch {
                what: "map resonance order",
                left: format!("n = {n}"),
                right: format!("n = {}", f.n()),
            });
        }
        Ok(MapSeries {
            n,
            alpha_num,
            alpha_den,
            f,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.f.max_degree()
    }

    pub fn alpha(&self) -> (i64, i64) {
        (self.alpha_num, self.alpha_den)
    }

    pub fn alpha_value(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.alpha_num as f64 / self.alpha_den as f64
    }

    /// λ0 = e^{iα0}.
    pub fn lambda0(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.alpha_value())
    }

    /// The pure rotation map R_{α0}.
    pub fn rotation(n: u32, alpha_num: i64, alpha_den: i64, max_degree: u32) -> Result<Self> {
        let f = FormalSeries::coordinate_z(n, max_degree);
        let mut map = MapSeries::new(n, alpha_num, alpha_den, f)?;
        map.f = map.f.scale(map.lambda0());
        Ok(map)
    }

    /// The identity map (α0 = 0).
    pub fn identity(n: u32, max_degree: u32) -> Self {
        MapSeries {
            n,
            alpha_num: 0,
            alpha_den: 1,
            f: FormalSeries::coordinate_z(n, max_degree),
        }
    }

    /// Substitutes another map into this one: (self ∘ inner)(z) =
    /// f_self(f_inner, conj f_inner). The rotation bookkeeping keeps the
    /// OUTER α0 (used when composing R with tangent-to-identity factors).
    pub fn compose(&self, inner: &MapSeries) -> Result<MapSeries> {
        if self.n != inner.n {
            return Err(Error::Mismatch {
                what: "compose resonance order",
                left: format!("{}", self.n),
                right: format!("{}", inner.n),
            });
        }
        let f = substitute_map(&self.f, &inner.f)?;
        Ok(MapSeries {
            n: self.n,
            alpha_num: self.alpha_num,
            alpha_den: self.alpha_den,
            f,
        })
    }

    /// The tangent-to-identity factor Φ with self = R_{α0} ∘ Φ.
    pub fn tangent_factor(&self) -> MapSeries {
        MapSeries {
            n: self.n,
            alpha_num: 0,
            alpha_den: 1,
            f: self.f.scale(self.lambda0().conj()),
        }
    }

    /// Support scan: true when every term sits on the resonant residue class
    /// k − l ≡ 1 (mod n).
    pub fn is_resonant_normal_form(&self) -> bool {
        self.f.terms().all(|(mono, _)| {
            (mono.k as i64 - mono.l as i64).rem_euclid(self.n as i64) == 1
        })
    }

    /// Monomials violating the resonant residue class, with magnitudes.
    pub fn nonresonant_terms(&self) -> Vec<(Monomial, f64)> {
        self.f
            .terms()
            .filter(|(mono, _)| (mono.k as i64 - mono.l as i64).rem_euclid(self.n as i64) != 1)
            .map(|(mono, c)| (*mono, c.norm()))
            .collect()
    }

    /// Degree-wise deviation of the Jacobian determinant of (f, conj f) from 1.
    /// Valid up to total degree max_degree − 1.
    pub fn area_preservation_residual(&self) -> f64 {
        let fbar = self.f.conj();
        let det = det_jacobian(&self.f, &fbar);
        let mut worst = 0.0f64;
        for (mono, c) in det.terms() {
            let expected = if mono.total_degree() == 0 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            if mono.total_degree() + 1 > self.f.max_degree() {
                continue; // beyond the certified order
            }
            worst = worst.max((*c - expected).norm());
        }
        // the constant term may be absent from the sparse product
        if det.coeff(&Monomial::zz(0, 0)).norm() < 0.5 {
            worst = worst.max((det.coeff(&Monomial::zz(0, 0)) - Complex64::ONE).norm());
        }
        worst
    }

    /// Numeric image of a point (zbar = conj z on the real slice).
    pub fn eval(&self, z: Complex64, params: [f64; 3]) -> Complex64 {
        self.f.eval(z, z.conj(), params)
    }
}

fn det_jacobian(f: &FormalSeries, fbar: &FormalSeries) -> FormalSeries {
    let fz = f.partial_z();
    let fzb = f.partial_zbar();
    let gz = fbar.partial_z();
    let gzb = fbar.partial_zbar();
    fz.mul(&gzb)
        .and_then(|a| {
            let b = fzb.mul(&gz)?;
            a.sub(&b)
        })
        .expect("jacobian pieces share container")
}

/// Substitutes (w, wbar) = (g, conj g) into h: h(g, conj g, params).
pub fn substitute_map(h: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    let gbar = g.conj();
    let max_degree = h.max_degree();
    let one = FormalSeries::monomial(h.n(), max_degree, Monomial::zz(0, 0), Complex64::ONE);
    // power tables, grown on demand
    let mut gp: Vec<FormalSeries> = vec![one.clone()];
    let mut gbp: Vec<FormalSeries> = vec![one];
    let mut out = FormalSeries::new(h.n(), max_degree).with_zero_tol(h.zero_tol());
    for (mono, c) in h.terms() {
        while gp.len() <= mono.k as usize {
            let next = gp.last().unwrap().mul(g)?;
            gp.push(next);
        }
        while gbp.len() <= mono.l as usize {
            let next = gbp.last().unwrap().mul(&gbar)?;
            gbp.push(next);
        }
        let prod = gp[mono.k as usize].mul(&gbp[mono.l as usize])?;
        for (pm, pc) in prod.terms() {
            out.add_term(
                Monomial::new(pm.k, pm.l, [pm.m[0] + mono.m[0], pm.m[1] + mono.m[1], pm.m[2] + mono.m[2]]),
                pc * c,
            );
        }
    }
    Ok(out)
}

/// Time-one flow map of a Hamiltonian: z-image exp(L_H) z.
///
/// Every monomial of H must have total degree ≥ 3 (quadratic-and-up in
/// (z, zbar), or degree-2 with at least one parameter factor), so the
/// exponential terminates on the truncated algebra. The result is
/// tangent-to-identity and area-preserving to truncation order.
///
/// Degree bookkeeping: the image coefficients at degree d draw on H-terms of
/// degree d+1, so a Hamiltonian stored to max_degree generates a map
/// certified to max_degree − 1; the output container reflects that.
pub fn flow_time_one(h: &FormalSeries) -> Result<MapSeries> {
    FormalSeries::check_generator(h)?;
    let z = FormalSeries::coordinate_z(h.n(), h.max_degree());
    let f = z.lie_transform(h)?.resized(h.max_degree() - 1);
    Ok(MapSeries {
        n: h.n(),
        alpha_num: 0,
        alpha_den: 1,
        f,
    })
}

/// R_{α0} ∘ Φ¹_H: the interpolated map of a Takens-normal-form Hamiltonian.
pub fn rotation_after_flow(
    h: &FormalSeries,
    alpha_num: i64,
    alpha_den: i64,
) -> Result<MapSeries> {
    let flow = flow_time_one(h)?;
    let mut map = MapSeries::new(h.n(), alpha_num, alpha_den, flow.f)?;
    map.f = map.f.scale(map.lambda0());
    Ok(map)
}

// ---------------------------------------------------------------------------
// Serialization: the FormalSeries container plus the exact angle pair.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MapRepr<'a> {
    n: u32,
    max_degree: u32,
    alpha0_numerator: i64,
    alpha0_denominator: i64,
    terms: TermsProxy<'a>,
}

struct TermsProxy<'a>(&'a FormalSeries);

impl Serialize for TermsProxy<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        #[derive(Serialize)]
        struct T {
            k: u32,
            l: u32,
            m: [u32; 3],
            re: f64,
            im: f64,
        }
        for (mono, c) in self.0.terms() {
            seq.serialize_element(&T {
                k: mono.k,
                l: mono.l,
                m: mono.m,
                re: c.re,
                im: c.im,
            })?;
        }
        seq.end()
    }
}

impl Serialize for MapSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr {
            n: self.n,
            max_degree: self.f.max_degree(),
            alpha0_numerator: self.alpha_num,
            alpha0_denominator: self.alpha_den,
            terms: TermsProxy(&self.f),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MapSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct T {
            k: u32,
            l: u32,
            m: [u32; 3],
            re: f64,
            im: f64,
        }
        #[derive(Deserialize)]
        struct Repr {
            n: u32,
            max_degree: u32,
            alpha0_numerator: i64,
            alpha0_denominator: i64,
            terms: Vec<T>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut f = FormalSeries::new(repr.n, repr.max_degree);
        for t in repr.terms {
            f.set_term(Monomial::new(t.k, t.l, t.m), Complex64::new(t.re, t.im));
        }
        MapSeries::new(repr.n, repr.alpha0_numerator, repr.alpha0_denominator, f)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
