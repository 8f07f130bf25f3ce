use std::cmp::Ordering;

/// Exponents of one monomial z^k zbar^l p1^{m1} p2^{m2} p3^{m3}.
///
/// The three parameter slots are positional: for individual maps they are
/// unused, for families they hold (ε, μ1, μ2) before reparametrization and
/// (ε, ν1, ν2) after, and for the twist case (ε1, ε2, ε3). The algebra never
/// cares which; pipelines track the naming.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub k: u32,
    pub l: u32,
    pub m: [u32; 3],
}

impl Monomial {
    pub const fn new(k: u32, l: u32, m: [u32; 3]) -> Self {
        Monomial { k, l, m }
    }

    /// z^k zbar^l with no parameter factors.
    pub const fn zz(k: u32, l: u32) -> Self {
        Monomial { k, l, m: [0, 0, 0] }
    }

    pub fn param_degree(&self) -> u32 {
        self.m[0] + self.m[1] + self.m[2]
    }

    pub fn z_degree(&self) -> u32 {
        self.k + self.l
    }

    /// Total storage degree k + l + 2|m|; the single truncation rule.
    pub fn total_degree(&self) -> u32 {
        self.k + self.l + 2 * self.param_degree()
    }

    /// Complex conjugation swaps k and l; parameters are real and inert.
    pub fn conj(&self) -> Self {
        Monomial {
            k: self.l,
            l: self.k,
            m: self.m,
        }
    }

    /// k ≡ l (mod n): the monomial survives averaging over the rotation group.
    pub fn is_resonant(&self, n: u32) -> bool {
        self.k % n == self.l % n
    }

    /// Signed harmonic index (k − l)/n for resonant monomials.
    pub fn harmonic(&self, n: u32) -> i64 {
        (self.k as i64 - self.l as i64) / n as i64
    }

    /// δ-degree scaled by 2n so it is always an exact integer:
    /// 2n·δ = n(k+l) − (n−2)|k−l|.
    pub fn delta_scaled(&self, n: u32) -> i64 {
        let n = n as i64;
        let (k, l) = (self.k as i64, self.l as i64);
        n * (k + l) - (n - 2) * (k - l).abs()
    }

    /// δ_Υ-degree scaled by 2n: δ-part plus 2|m|, i.e. + 4n|m| scaled.
    pub fn delta_upsilon_scaled(&self, n: u32) -> i64 {
        self.delta_scaled(n) + 4 * n as i64 * self.param_degree() as i64
    }
}

// Canonical term order: (total degree, k, l, m), for deterministic storage,
// serialization and diffable reports.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total_degree(), self.k, self.l, self.m).cmp(&(
            other.total_degree(),
            other.k,
            other.l,
            other.m,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grading overlays used for projection and elimination scheduling.
///
/// All values are handled scaled by 2n so comparisons are exact integer
/// arithmetic; `scaled` returns that integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Grading {
    /// k + l + 2|m|, the truncation rule.
    #[default]
    Total,
    /// |k−l|/n + min(k,l), parameters inert.
    Delta,
    /// δ-degree plus 2|m|.
    DeltaUpsilon,
}

impl Grading {
    pub fn scaled(&self, mono: &Monomial, n: u32) -> i64 {
        match self {
            Grading::Total => 2 * n as i64 * mono.total_degree() as i64,
            Grading::Delta => mono.delta_scaled(n),
            Grading::DeltaUpsilon => mono.delta_upsilon_scaled(n),
        }
    }

    /// Scaled value of an integer grade p (i.e. p·2n).
    pub fn scale_int(&self, p: i64, n: u32) -> i64 {
        p * 2 * n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_degree_matches_both_closed_forms() {
        // |k−l|/n + min(k,l) and (k+l)/2 − (n−2)|k−l|/(2n) agree identically.
        for n in 3u32..=7 {
            for k in 0u32..=20 {
                for l in 0u32..=20 {
                    let mono = Monomial::zz(k, l);
                    let scaled = mono.delta_scaled(n);
                    let direct = (k as i64 - l as i64).abs() as f64 / n as f64
                        + k.min(l) as f64;
                    assert!(
                        (scaled as f64 / (2.0 * n as f64) - direct).abs() < 1e-12,
                        "n={n} k={k} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn resonant_monomials_have_integer_delta() {
        for n in 3u32..=6 {
            for k in 0u32..=15 {
                for l in 0u32..=15 {
                    let mono = Monomial::zz(k, l);
                    if mono.is_resonant(n) {
                        assert_eq!(mono.delta_scaled(n) % (2 * n as i64), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_upsilon_examples() {
        // ε·z·zbar has δ_Υ-degree 3; ν·z^n has δ_Υ-degree 3.
        let n = 4;
        let eps_zz = Monomial::new(1, 1, [1, 0, 0]);
        assert_eq!(eps_zz.delta_upsilon_scaled(n), 3 * 2 * n as i64);
        let nu_zn = Monomial::new(n, 0, [0, 1, 0]);
        assert_eq!(nu_zn.delta_upsilon_scaled(n), 3 * 2 * n as i64);
    }

    #[test]
    fn canonical_order_sorts_by_total_degree_first() {
        let a = Monomial::zz(4, 0);
        let b = Monomial::new(1, 1, [0, 0, 0]);
        assert!(b < a);
        let c = Monomial::new(0, 0, [2, 0, 0]);
        assert_eq!(c.total_degree(), a.total_degree());
        assert!(c < a); // same degree, smaller k
    }
}
