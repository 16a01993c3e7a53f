//! Evolution operators: fiber birefringence and polarization-dependent loss,
//! neutral-kaon mixing with decay, and the equal-width B-meson case.
//!
//! All operators act on spinors in the pole basis. Rotations are unitary;
//! losses are positive contractions whose singular values stay in `(0, 1]`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::state::{BlochVector, Operator2};

/// Uniform birefringence: the Bloch vector precesses about `axis` at `rate` radians per unit length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirefringenceSpec<T> {
    pub axis: BlochVector<T>,
    pub rate: T,
    pub length: T,
}

impl<T: Real> BirefringenceSpec<T> {
    pub fn new(axis: BlochVector<T>, rate: T, length: T) -> Result<Self> {
        axis.ensure_unit()?;
        non_negative("birefringence rate", rate)?;
        non_negative("length", length)?;
        Ok(BirefringenceSpec { axis, rate, length })
    }

    pub fn total_angle(&self) -> T {
        self.rate * self.length
    }

    /// Generator `−i·rate·(axis·σ⃗)/2` per unit length.
    pub fn generator(&self) -> Operator2<T> {
        Operator2::sigma_dot(&self.axis).scale(Complex::new(T::zero(), -self.rate * lit(0.5)))
    }
}

/// Polarization-dependent loss along `axis`.
///
/// `|+axis⟩` is the favored state with intensity transmission
/// `T_max = e^{−alpha_max·length}`; `|−axis⟩` gets `T_min = e^{−alpha_min·length}`.
/// Hence `alpha_max ≤ alpha_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdlSpec<T> {
    pub axis: BlochVector<T>,
    pub alpha_max: T,
    pub alpha_min: T,
    pub length: T,
}

impl<T: Real> PdlSpec<T> {
    pub fn new(axis: BlochVector<T>, alpha_max: T, alpha_min: T, length: T) -> Result<Self> {
        axis.ensure_unit()?;
        non_negative("alpha_max", alpha_max)?;
        non_negative("alpha_min", alpha_min)?;
        non_negative("length", length)?;
        if alpha_max > alpha_min {
            return Err(Error::InvalidConfig(format!(
                "alpha_max ({alpha_max}) must not exceed alpha_min ({alpha_min}) so that T_max >= T_min"
            )));
        }
        Ok(PdlSpec {
            axis,
            alpha_max,
            alpha_min,
            length,
        })
    }

    /// Unit-length element with the given transmissions; `t_min = 0` is a polarizer.
    pub fn from_transmissions(axis: BlochVector<T>, t_max: T, t_min: T) -> Result<Self> {
        if !(t_min >= T::zero() && t_min <= t_max && t_max <= T::one()) || t_max <= T::zero() {
            return Err(Error::InvalidConfig(format!(
                "transmissions must satisfy 0 <= T_min <= T_max <= 1, T_max > 0 (got {t_max}, {t_min})"
            )));
        }
        Self::new(axis, -t_max.ln(), -t_min.ln(), T::one())
    }

    pub fn t_max(&self) -> T {
        transmission(self.alpha_max, self.length)
    }

    pub fn t_min(&self) -> T {
        transmission(self.alpha_min, self.length)
    }

    /// Transmission for unpolarized light, `(T_max + T_min)/2`.
    pub fn depolarized_transmission(&self) -> T {
        (self.t_max() + self.t_min()) * lit(0.5)
    }

    /// Generator `−(alpha_max·P₊ + alpha_min·P₋)/2` per unit length.
    pub fn generator(&self) -> Operator2<T> {
        let plus = Operator2::projector(&self.axis).scale_real(self.alpha_max);
        let minus = Operator2::projector(&-self.axis).scale_real(self.alpha_min);
        (plus + minus).scale_real(lit(-0.5))
    }
}

fn transmission<T: Real>(alpha: T, length: T) -> T {
    if length == T::zero() {
        T::one()
    } else {
        (-alpha * length).exp()
    }
}

fn non_negative<T: Real>(name: &str, x: T) -> Result<()> {
    if x >= T::zero() && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be non-negative, got {x}")))
    }
}

pub fn birefringence_operator<T: Real>(spec: &BirefringenceSpec<T>) -> Operator2<T> {
    Operator2::rotation(&spec.axis, spec.total_angle())
}

/// `√T_max·P₊Γ + √T_min·P₋Γ`.
pub fn pdl_operator<T: Real>(spec: &PdlSpec<T>) -> Operator2<T> {
    let plus = Operator2::projector(&spec.axis).scale_real(spec.t_max().sqrt());
    let minus = Operator2::projector(&-spec.axis).scale_real(spec.t_min().sqrt());
    plus + minus
}

/// Renormalized Bloch vector after the PDL element, and the transmitted weight.
pub fn pdl_evolve_bloch<T: Real>(m: &BlochVector<T>, spec: &PdlSpec<T>) -> Result<(BlochVector<T>, T)> {
    pdl_operator(spec).map_bloch(m)
}

/// Fiber with simultaneous birefringence and PDL over a common length.
///
/// The operator is `exp((G_bir + G_pdl)·length)`. With a shared axis, as in
/// real fibers, the two generators commute and the result is rotation × contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpec<T> {
    pub birefringence_axis: BlochVector<T>,
    pub rate: T,
    pub pdl_axis: BlochVector<T>,
    pub alpha_max: T,
    pub alpha_min: T,
    pub length: T,
}

impl<T: Real> FiberSpec<T> {
    /// Shared birefringence/PDL axis.
    pub fn aligned(axis: BlochVector<T>, rate: T, alpha_max: T, alpha_min: T, length: T) -> Result<Self> {
        Self::new(axis, rate, axis, alpha_max, alpha_min, length)
    }

    pub fn new(
        birefringence_axis: BlochVector<T>,
        rate: T,
        pdl_axis: BlochVector<T>,
        alpha_max: T,
        alpha_min: T,
        length: T,
    ) -> Result<Self> {
        BirefringenceSpec::new(birefringence_axis, rate, length)?;
        PdlSpec::new(pdl_axis, alpha_max, alpha_min, length)?;
        Ok(FiberSpec {
            birefringence_axis,
            rate,
            pdl_axis,
            alpha_max,
            alpha_min,
            length,
        })
    }

    pub fn birefringence(&self) -> BirefringenceSpec<T> {
        BirefringenceSpec {
            axis: self.birefringence_axis,
            rate: self.rate,
            length: self.length,
        }
    }

    pub fn pdl(&self) -> PdlSpec<T> {
        PdlSpec {
            axis: self.pdl_axis,
            alpha_max: self.alpha_max,
            alpha_min: self.alpha_min,
            length: self.length,
        }
    }

    pub fn with_length(&self, length: T) -> Self {
        FiberSpec { length, ..*self }
    }
}

pub fn fiber_operator<T: Real>(spec: &FiberSpec<T>) -> Operator2<T> {
    let gen = spec.birefringence().generator() + spec.pdl().generator();
    gen.scale_real(spec.length).exp()
}

/// Neutral-kaon parameters in units where `γ_S = 1` and `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaonSpec<T> {
    /// `m_S − m_L`.
    pub delta_m: T,
    pub gamma_s: T,
    pub gamma_l: T,
    /// `(m_S + m_L)/2`; only contributes a global phase.
    pub mean_mass: T,
}

impl<T: Real> Default for KaonSpec<T> {
    fn default() -> Self {
        KaonSpec {
            delta_m: lit(0.477),
            gamma_s: T::one(),
            gamma_l: lit(1.0 / 580.0),
            mean_mass: T::zero(),
        }
    }
}

impl<T: Real> KaonSpec<T> {
    /// Validated constructor; requires `gamma_s > gamma_l > 0`.
    pub fn new(delta_m: T, gamma_s: T, gamma_l: T) -> Result<Self> {
        if !(gamma_l > T::zero() && gamma_s > gamma_l) {
            return Err(Error::InvalidConfig(format!(
                "kaon widths must satisfy gamma_s > gamma_l > 0 (got {gamma_s}, {gamma_l})"
            )));
        }
        if !delta_m.is_finite() {
            return Err(Error::InvalidConfig("delta_m must be finite".into()));
        }
        Ok(KaonSpec {
            delta_m,
            gamma_s,
            gamma_l,
            mean_mass: T::zero(),
        })
    }

    /// Defaults with `γ_L = γ_S·ratio`.
    pub fn with_ratio(delta_m: T, gamma_l_ratio: T) -> Result<Self> {
        Self::new(delta_m, T::one(), gamma_l_ratio)
    }

    /// Strangeness mixing with both widths switched off.
    pub fn mixing_only(delta_m: T) -> Self {
        KaonSpec {
            delta_m,
            gamma_s: T::zero(),
            gamma_l: T::zero(),
            mean_mass: T::zero(),
        }
    }

    /// Mean width `(γ_S + γ_L)/2`.
    pub fn gamma(&self) -> T {
        (self.gamma_s + self.gamma_l) * lit(0.5)
    }

    pub fn m_s(&self) -> T {
        self.mean_mass + self.delta_m * lit(0.5)
    }

    pub fn m_l(&self) -> T {
        self.mean_mass - self.delta_m * lit(0.5)
    }
}

/// Factors of the diagonal kaon propagator: global phase × rotation × contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaonFactors<T> {
    pub phase: Complex<T>,
    /// `e^{−i(m_S−m_L)tσ₃/2}`.
    pub rotation: Operator2<T>,
    /// `diag(e^{−γ_S t/2}, e^{−γ_L t/2})`.
    pub contraction: Operator2<T>,
}

impl<T: Real> KaonFactors<T> {
    pub fn product(&self) -> Operator2<T> {
        (self.rotation * self.contraction).scale(self.phase)
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and non-negative, got {t}")))
    }
}

/// `diag(e^{−(i m_S + γ_S/2)t}, e^{−(i m_L + γ_L/2)t})` in the `(K_S, K_L)` basis.
pub fn kaon_evolution_operator<T: Real>(spec: &KaonSpec<T>, t: T) -> Result<Operator2<T>> {
    check_time(t)?;
    let half = lit::<T>(0.5);
    let entry = |mass: T, width: T| Complex::new(-width * half * t, -mass * t).exp();
    Ok(Operator2::diag(
        entry(spec.m_s(), spec.gamma_s),
        entry(spec.m_l(), spec.gamma_l),
    ))
}

/// Splits the propagator into its phase, mixing rotation and decay contraction.
/// The rotation and contraction are both diagonal and commute.
pub fn kaon_decomposition<T: Real>(spec: &KaonSpec<T>, t: T) -> Result<KaonFactors<T>> {
    check_time(t)?;
    let half = lit::<T>(0.5);
    let phase = Complex::new(T::zero(), -spec.mean_mass * t).exp();
    let rotation = Operator2::rotation(&BlochVector::north(), spec.delta_m * t);
    let contraction = Operator2::diag(
        Complex::new((-spec.gamma_s * half * t).exp(), T::zero()),
        Complex::new((-spec.gamma_l * half * t).exp(), T::zero()),
    );
    Ok(KaonFactors {
        phase,
        rotation,
        contraction,
    })
}

/// `B⁰B̄⁰` parameters: mass difference in units of `1/τ_B`, equal widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BMesonSpec<T> {
    pub delta_m: T,
    pub gamma: T,
}

impl<T: Real> Default for BMesonSpec<T> {
    fn default() -> Self {
        BMesonSpec {
            delta_m: lit(0.723),
            gamma: T::one(),
        }
    }
}

impl<T: Real> BMesonSpec<T> {
    pub fn new(delta_m: T, gamma: T) -> Result<Self> {
        non_negative("B-meson width", gamma)?;
        if !delta_m.is_finite() {
            return Err(Error::InvalidConfig("delta_m must be finite".into()));
        }
        Ok(BMesonSpec { delta_m, gamma })
    }

    /// Same propagator as a kaon with `γ_S = γ_L`.
    pub fn as_kaon(&self) -> KaonSpec<T> {
        KaonSpec {
            delta_m: self.delta_m,
            gamma_s: self.gamma,
            gamma_l: self.gamma,
            mean_mass: T::zero(),
        }
    }
}

pub fn bmeson_evolution_operator<T: Real>(spec: &BMesonSpec<T>, t: T) -> Result<Operator2<T>> {
    kaon_evolution_operator(&spec.as_kaon(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bloch_to_spinor, spinor_to_bloch, BasisElement};
    use std::f64::consts::PI;

    #[test]
    fn zero_length_birefringence_is_identity() {
        let spec = BirefringenceSpec::new(BlochVector::new(1.0, 0.0, 0.0), 3.0, 0.0).unwrap();
        assert!(birefringence_operator(&spec).approx_eq(&Operator2::identity(), 1e-15));
    }

    #[test]
    fn half_turn_about_pole() {
        let spec = BirefringenceSpec::new(BlochVector::north(), PI, 1.0).unwrap();
        let (m, w) = birefringence_operator(&spec)
            .map_bloch(&BlochVector::new(1.0, 0.0, 0.0))
            .unwrap();
        assert!(m.max_abs_diff(&BlochVector::new(-1.0, 0.0, 0.0)) < 1e-15);
        assert!((w - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lossless_pdl_is_identity() {
        let spec = PdlSpec::new(BlochVector::<f64>::north(), 0.0, 0.0, 5.0).unwrap();
        assert!(pdl_operator(&spec).approx_eq(&Operator2::identity(), 1e-15));
    }

    #[test]
    fn polarizer_blocks_disfavored_state() {
        let axis = BlochVector::<f64>::new(0.0, 1.0, 0.0);
        let spec = PdlSpec::from_transmissions(axis, 1.0, 0.0).unwrap();
        let out = pdl_operator(&spec).apply(&bloch_to_spinor(&-axis).unwrap());
        assert!(out.weight() < 1e-30);
        assert!(matches!(
            pdl_evolve_bloch(&-axis, &spec),
            Err(Error::DegenerateState(_))
        ));
    }

    #[test]
    fn pdl_eigenstates() {
        let axis = BlochVector::<f64>::from_angles(0.3, 1.0).unwrap();
        let spec = PdlSpec::new(axis, 0.1, 0.9, 2.0).unwrap();
        let (m, w) = pdl_evolve_bloch(&axis, &spec).unwrap();
        assert!(m.max_abs_diff(&axis) < 1e-14);
        assert!((w - spec.t_max()).abs() < 1e-15);
        let (m, w) = pdl_evolve_bloch(&-axis, &spec).unwrap();
        assert!(m.max_abs_diff(&-axis) < 1e-14);
        assert!((w - spec.t_min()).abs() < 1e-15);
    }

    #[test]
    fn pdl_perpendicular_input_tilts_to_three_fifths() {
        let axis = BlochVector::<f64>::north();
        let spec = PdlSpec::from_transmissions(axis, 1.0, 0.25).unwrap();
        let m = BlochVector::new(1.0, 0.0, 0.0);
        let (out, w) = pdl_evolve_bloch(&m, &spec).unwrap();
        // Independent 2×2 computation: (1, 1)/√2 → (1, 1/2)/√2.
        let s = crate::state::Spinor::from_real(1.0 / 2f64.sqrt(), 0.5 / 2f64.sqrt());
        let direct = spinor_to_bloch(&s).unwrap();
        assert!(out.max_abs_diff(&direct) < 1e-15);
        assert!((out.dot(&axis) - 0.6).abs() < 1e-15);
        assert!((w - 0.625).abs() < 1e-15);
    }

    #[test]
    fn pdl_spec_validation() {
        let axis = BlochVector::<f64>::north();
        assert!(PdlSpec::new(axis, 0.5, 0.1, 1.0).is_err());
        assert!(PdlSpec::new(axis, -0.1, 0.1, 1.0).is_err());
        assert!(PdlSpec::from_transmissions(axis, 0.5, 0.6).is_err());
        assert!(BirefringenceSpec::new(axis, -1.0, 1.0).is_err());
        assert!(BirefringenceSpec::new(BlochVector::new(0.0, 0.0, 2.0), 1.0, 1.0).is_err());
    }

    #[test]
    fn kaon_at_zero_is_identity() {
        let op = kaon_evolution_operator(&KaonSpec::<f64>::default(), 0.0).unwrap();
        assert!(op.approx_eq(&Operator2::identity(), 1e-15));
        assert!(matches!(
            kaon_evolution_operator(&KaonSpec::<f64>::default(), -1.0),
            Err(Error::Domain(_))
        ));
        assert!(bmeson_evolution_operator(&BMesonSpec::<f64>::default(), 0.0)
            .unwrap()
            .approx_eq(&Operator2::identity(), 1e-15));
    }

    #[test]
    fn mass_eigenstates_decay_exponentially() {
        let spec = KaonSpec::<f64>::default();
        let t = 3.7;
        let op = kaon_evolution_operator(&spec, t).unwrap();
        let ks = op.apply(&BasisElement::KShort.pole_spinor());
        let kl = op.apply(&BasisElement::KLong.pole_spinor());
        assert!((ks.weight() - (-spec.gamma_s * t).exp()).abs() < 1e-15);
        assert!((kl.weight() - (-spec.gamma_l * t).exp()).abs() < 1e-15);
    }

    #[test]
    fn decomposition_reassembles() {
        let spec = KaonSpec::<f64> {
            mean_mass: 4.2,
            ..Default::default()
        };
        for &t in &[0.0, 0.3, 2.0, 11.0] {
            let f = kaon_decomposition(&spec, t).unwrap();
            let direct = kaon_evolution_operator(&spec, t).unwrap();
            assert!(f.product().approx_eq(&direct, 1e-12));
            assert!(f
                .rotation
                .commutator(&f.contraction)
                .approx_eq(&Operator2::zero(), 1e-15));
        }
    }

    #[test]
    fn bmeson_half_turn() {
        let spec = BMesonSpec::<f64>::default();
        let t = PI / spec.delta_m;
        let op = bmeson_evolution_operator(&spec, t).unwrap();
        let (m, _) = op.map_bloch(&BlochVector::new(0.0, 1.0, 0.0)).unwrap();
        assert!(m.max_abs_diff(&BlochVector::new(0.0, -1.0, 0.0)) < 1e-14);
    }

    #[test]
    fn aligned_fiber_factorizes() {
        let axis = BlochVector::<f64>::new(1.0, 0.0, 0.0);
        let fiber = FiberSpec::aligned(axis, 1.3, 0.2, 0.7, 2.5).unwrap();
        let composed = birefringence_operator(&fiber.birefringence()) * pdl_operator(&fiber.pdl());
        assert!(fiber_operator(&fiber).approx_eq(&composed, 1e-14));
    }

    #[test]
    fn single_precision_kaon_operator() {
        let spec = KaonSpec::<f32>::default();
        let f = kaon_decomposition(&spec, 1.5).unwrap();
        let direct = kaon_evolution_operator(&spec, 1.5).unwrap();
        assert!(f.product().approx_eq(&direct, 1e-6));
    }
}
