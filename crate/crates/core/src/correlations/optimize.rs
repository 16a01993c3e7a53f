//! Derivative-free one-dimensional maximization: a uniform grid locates the
//! best cell, golden-section search refines inside it.

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<T> {
    pub argmax: T,
    pub value: T,
}

const MAX_GOLDEN_ITERATIONS: usize = 300;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`, stopping
/// once the bracket is narrower than `xtol`.
pub fn golden_section_max<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, xtol: T) -> Maximum<T> {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) * lit(0.5);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_GOLDEN_ITERATIONS {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
        }
    }
    let mid = (a + b) * lit(0.5);
    let fm = f(mid);
    // The bracket endpoints are only reachable when the maximum sits on the boundary.
    [(mid, fm), (c, fc), (d, fd), (a, f(a)), (b, f(b))].into_iter().fold(
        Maximum { argmax: mid, value: fm },
        |best, (x, fx)| {
            if fx > best.value {
                Maximum { argmax: x, value: fx }
            } else {
                best
            }
        },
    )
}

/// Grid scan with `grid_points` samples over `[lo, hi]`, golden-section refinement on the
/// cells adjacent to the best sample, then a parabolic polish of the argmax.
///
/// Golden-section alone cannot resolve the argmax of a smooth peak below
/// `~√ε` relative, because function values there differ only by rounding noise.
/// The polish fits a parabola through points a fixed fraction of a cell apart,
/// which locates a smooth vertex to well under `xtol`.
pub fn maximize_on_grid<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, grid_points: usize, xtol: T) -> Maximum<T> {
    assert!(grid_points >= 2, "grid needs at least two points");
    assert!(hi > lo, "empty interval");
    let n = grid_points - 1;
    let step = (hi - lo) / T::from_usize(n).expect("grid size representable");
    let at = |i: usize| {
        if i == n {
            hi
        } else {
            lo + step * T::from_usize(i).unwrap()
        }
    };
    let mut best_i = 0;
    let mut best_v = T::neg_infinity();
    for i in 0..=n {
        let v = f(at(i));
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(n));
    let mut best = golden_section_max(&mut f, left, right, xtol);
    if best_v > best.value {
        best = Maximum {
            argmax: at(best_i),
            value: best_v,
        };
    }

    let h = step * lit(0.01);
    let (xm, xp) = (best.argmax - h, best.argmax + h);
    if xm >= lo && xp <= hi {
        let (fm, f0, fp) = (f(xm), best.value, f(xp));
        let curvature = fm - lit::<T>(2.0) * f0 + fp;
        if curvature < T::zero() {
            let shift = h * (fm - fp) / (lit::<T>(2.0) * curvature);
            if shift.abs() <= h {
                let x = best.argmax + shift;
                let fx = f(x);
                let noise = lit::<T>(4.0) * T::epsilon() * best.value.abs().max(T::one());
                if fx >= best.value - noise {
                    best = Maximum {
                        argmax: x,
                        value: fx.max(best.value),
                    };
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section_max(|x: f64| -(x - 0.2).powi(2), -1.0, 1.0, 1e-9);
        assert!((m.argmax - 0.2).abs() < 1e-7);
    }

    #[test]
    fn golden_handles_boundary_maximum() {
        let m = golden_section_max(|x: f64| -x, 0.0, 1.0, 1e-10);
        assert!(m.argmax.abs() < 1e-9);
    }

    #[test]
    fn grid_picks_global_peak() {
        // Two peaks; the taller one at 2.5.
        let f = |x: f64| (-(x - 0.5).powi(2) * 20.0).exp() + 1.5 * (-(x - 2.5).powi(2) * 20.0).exp();
        let m = maximize_on_grid(f, 0.0, 3.0, 10_001, 1e-10);
        assert!((m.argmax - 2.5).abs() < 1e-9);
        assert!((m.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn polish_resolves_flat_peak() {
        let f = |x: f64| 2.0 - 4.0 * (x - std::f64::consts::FRAC_PI_4).powi(2);
        let m = maximize_on_grid(f, 0.0, 1.5, 10_001, 1e-8);
        assert!((m.argmax - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
    }
}
