use crate::channels::{BMesonSpec, KaonSpec};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Singlet correlation for analyzers at sphere angles `a` and `b`.
pub fn photon_e<T: Real>(a: T, b: T) -> T {
    -(a - b).cos()
}

/// Strangeness coincidence rates `R₊₊, R₊₋, R₋₊, R₋₋` (+ is K⁰, − is K̄⁰) for kaons
/// detected at `t_a` and `t_b`. Their sum is the probability that both survive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaonRates<T> {
    pub pp: T,
    pub pm: T,
    pub mp: T,
    pub mm: T,
}

impl<T: Real> KaonRates<T> {
    pub fn total(&self) -> T {
        self.pp + self.pm + self.mp + self.mm
    }

    pub fn correlation(&self) -> T {
        self.pp + self.mm - self.pm - self.mp
    }

    pub fn normalized_correlation(&self) -> T {
        self.correlation() / self.total()
    }
}

fn check_times<T: Real>(t_a: T, t_b: T) -> Result<(T, T)> {
    for t in [t_a, t_b] {
        if !(t >= T::zero() && t.is_finite()) {
            return Err(Error::Domain(format!(
                "detection time must be finite and non-negative, got {t}"
            )));
        }
    }
    Ok((t_a.min(t_b), (t_a - t_b).abs()))
}

/// `e^{−(γ_S+γ_L)t'}·(e^{−γ_SΔt} + e^{−γ_LΔt} ∓ 2e^{−γΔt}cos(Δm·Δt))/8`, like-sign (−) and
/// unlike-sign (+) cases.
fn rate_terms<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<(T, T)> {
    let (t_min, dt) = check_times(t_a, t_b)?;
    let prefactor = (-(spec.gamma_s + spec.gamma_l) * t_min).exp() / lit(8.0);
    let base = (-spec.gamma_s * dt).exp() + (-spec.gamma_l * dt).exp();
    let interference = lit::<T>(2.0) * (-spec.gamma() * dt).exp() * (spec.delta_m * dt).cos();
    Ok((prefactor * (base - interference), prefactor * (base + interference)))
}

/// Rate of K⁰ on both sides.
pub fn kaon_r_pp<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<T> {
    rate_terms(t_a, t_b, spec).map(|(like, _)| like)
}

pub fn kaon_rates<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<KaonRates<T>> {
    let (like, unlike) = rate_terms(t_a, t_b, spec)?;
    Ok(KaonRates {
        pp: like,
        pm: unlike,
        mp: unlike,
        mm: like,
    })
}

/// `−e^{−2γt'}·e^{−γΔt}·cos(Δm·Δt)`: correlation over all emitted pairs.
pub fn kaon_e_unnormalized<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<T> {
    let (t_min, dt) = check_times(t_a, t_b)?;
    let g = spec.gamma();
    Ok(-(-lit::<T>(2.0) * g * t_min).exp() * (-g * dt).exp() * (spec.delta_m * dt).cos())
}

/// `−2e^{−γΔt}cos(Δm·Δt) / (e^{−γ_SΔt} + e^{−γ_LΔt})`: correlation over surviving pairs.
pub fn kaon_e_normalized<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<T> {
    let (_, dt) = check_times(t_a, t_b)?;
    let num = -lit::<T>(2.0) * (-spec.gamma() * dt).exp() * (spec.delta_m * dt).cos();
    let den = (-spec.gamma_s * dt).exp() + (-spec.gamma_l * dt).exp();
    Ok(num / den)
}

/// Renormalized B-meson correlation; independent of the common width.
pub fn bmeson_e<T: Real>(t_a: T, t_b: T, spec: &BMesonSpec<T>) -> Result<T> {
    kaon_e_normalized(t_a, t_b, &spec.as_kaon())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn photon_values() {
        assert_eq!(photon_e(0.3f64, 0.3), -1.0);
        assert!(photon_e(0.0f64, FRAC_PI_2).abs() < 1e-16);
        assert!((photon_e(FRAC_PI_4, 0.0) + SQRT_2 / 2.0).abs() < 1e-16);
    }

    #[test]
    fn equal_times_never_both_k0() {
        let spec = KaonSpec::<f64>::default();
        for t in [0.0, 0.5, 3.0, 40.0] {
            assert!(kaon_r_pp(t, t, &spec).unwrap().abs() < 1e-17);
        }
        assert_eq!(kaon_e_unnormalized(0.0, 0.0, &spec).unwrap(), -1.0);
        assert_eq!(kaon_e_normalized(2.0, 2.0, &spec).unwrap(), -1.0);
    }

    #[test]
    fn rates_bounded() {
        let spec = KaonSpec::<f64>::default();
        for &(a, b) in &[(0.0, 1.0), (4.0, 0.2), (0.0, 30.0), (7.0, 7.5)] {
            let r = kaon_rates(a, b, &spec).unwrap();
            for x in [r.pp, r.pm, r.mp, r.mm] {
                assert!((0.0..=0.5).contains(&x));
            }
            assert!((r.correlation() - kaon_e_unnormalized(a, b, &spec).unwrap()).abs() < 1e-15);
            assert!((r.normalized_correlation() - kaon_e_normalized(a, b, &spec).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn negative_times_rejected() {
        let spec = KaonSpec::<f64>::default();
        assert!(matches!(kaon_r_pp(-1.0, 0.0, &spec), Err(Error::Domain(_))));
        assert!(matches!(kaon_e_unnormalized(0.0, -1e-9, &spec), Err(Error::Domain(_))));
        assert!(matches!(kaon_e_normalized(f64::NAN, 0.0, &spec), Err(Error::Domain(_))));
    }

    #[test]
    fn normalized_matches_cosh_form() {
        let spec = KaonSpec::<f64>::default();
        for dt in [0.0, 0.4, 1.7, 9.0, 25.0] {
            let cosh_form = -(spec.delta_m * dt).cos() / ((spec.gamma_s - spec.gamma_l) * dt / 2.0).cosh();
            assert!((kaon_e_normalized(0.0, dt, &spec).unwrap() - cosh_form).abs() < 1e-14);
        }
    }

    #[test]
    fn equal_widths_give_pure_cosine() {
        let spec = BMesonSpec::<f64>::default();
        for dt in [0.0, 0.5, 2.0, 6.0] {
            let e = bmeson_e(1.0, 1.0 + dt, &spec).unwrap();
            assert!((e + (spec.delta_m * dt).cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn unnormalized_damping_ratio() {
        let spec = KaonSpec::<f64>::default();
        let dt = 0.9;
        let e1 = kaon_e_unnormalized(1.0, 1.0 + dt, &spec).unwrap();
        let e2 = kaon_e_unnormalized(3.0, 3.0 + dt, &spec).unwrap();
        assert!((e2 / e1 - (-2.0 * spec.gamma() * 2.0).exp()).abs() < 1e-14);
    }
}
