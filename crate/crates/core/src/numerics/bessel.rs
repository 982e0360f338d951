//! Modified Bessel functions of the second (a.k.a. third) kind, orders 0 and 1.
//!
//! Two regimes:
//!
//! * `|z| <= 2`: the ascending series (Abramowitz & Stegun 9.6.13 / 9.6.11),
//! * `|z| > 2`: Steed's continued fraction CF2 for the ratio `K_1 / K_0`
//!   together with Temme's normalisation sum (Numerical Recipes `bessik`).
//!
//! Both are written against [`ComplexFloat`] so the same code evaluates real
//! arguments and complex arguments with positive real part. The latter are
//! needed on shifted contours of the hyperbolic characteristic function.

use num_complex::{Complex64, ComplexFloat};

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_RADIUS: f64 = 2.0;
const EPS: f64 = 1e-17;
const MAX_TERMS: usize = 10_000;

#[inline]
fn lift<T: ComplexFloat<Real = f64>>(x: f64) -> T {
    T::from(x).expect("f64 is representable")
}

/// `(K_0(z), K_1(z))` by the ascending series; accurate for `|z| <= 2`.
fn k01_series<T: ComplexFloat<Real = f64>>(z: T) -> (T, T) {
    let y = z * z * lift(0.25);
    let log_half = (z * lift(0.5)).ln();

    // k-th terms: y^k / (k!)^2 and y^k / (k! (k+1)!)
    let mut t0: T = lift(1.0);
    let mut t1: T = lift(1.0);
    let mut harmonic = 0.0; // H_k
    let mut i0 = t0;
    let mut i1_sum = t1;
    let mut k0_sum: T = lift(0.0);
    // psi(1) + psi(2) = -2 gamma + 1
    let mut k1_sum: T = t1 * lift(1.0 - 2.0 * EULER_GAMMA);

    for k in 1..64 {
        let kf = k as f64;
        t0 = t0 * y / lift(kf * kf);
        t1 = t1 * y / lift(kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let psi_sum = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (kf + 1.0);
        i0 = i0 + t0;
        i1_sum = i1_sum + t1;
        k0_sum = k0_sum + t0 * lift(harmonic);
        k1_sum = k1_sum + t1 * lift(psi_sum);
        if t0.abs() * (1.0 + harmonic) < EPS * i0.abs() && t1.abs() * (1.0 + psi_sum.abs()) < EPS {
            break;
        }
    }

    let i1 = z * lift(0.5) * i1_sum;
    let k0 = -(log_half + lift(EULER_GAMMA)) * i0 + k0_sum;
    let k1 = z.recip() + log_half * i1 - z * lift(0.25) * k1_sum;
    (k0, k1)
}

/// `(e^z K_0(z), e^z K_1(z))` by Steed's CF2; accurate for `|z| > 2`, `Re z > 0`.
fn k01_scaled_cf2<T: ComplexFloat<Real = f64>>(z: T) -> (T, T) {
    let one: T = lift(1.0);
    let two: T = lift(2.0);
    let a1: T = lift(0.25);

    let mut b = two * (one + z);
    let mut d = b.recip();
    let mut delh = d;
    let mut h = delh;
    let mut q1: T = lift(0.0);
    let mut q2: T = one;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;

    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a = a - lift(2.0 * (fi - 1.0));
        c = -a * c / lift(fi);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + a * d).recip();
        delh = (b * d - one) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if dels.abs() < EPS * s.abs() {
            break;
        }
    }
    h = a1 * h;

    let k0 = (lift::<T>(std::f64::consts::FRAC_PI_2) / z).sqrt() / s;
    let k1 = k0 * (z + lift(0.5) - h) / z;
    (k0, k1)
}

fn k01_scaled<T: ComplexFloat<Real = f64>>(z: T) -> (T, T) {
    if z.abs() <= SERIES_RADIUS {
        let (k0, k1) = k01_series(z);
        let e = z.exp();
        (k0 * e, k1 * e)
    } else {
        k01_scaled_cf2(z)
    }
}

fn check_positive(z: f64, name: &str) -> Result<()> {
    if z > 0.0 && z.is_finite() || z == f64::INFINITY {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} requires z > 0, got {z}")))
    }
}

/// `e^z K_1(z)` for `z > 0`. Never underflows.
pub fn bessel_k1_scaled(z: f64) -> Result<f64> {
    check_positive(z, "bessel_k1_scaled")?;
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(k01_scaled(z).1)
}

/// `e^z K_0(z)` for `z > 0`.
pub fn bessel_k0_scaled(z: f64) -> Result<f64> {
    check_positive(z, "bessel_k0_scaled")?;
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(k01_scaled(z).0)
}

/// `K_1(z)` together with an underflow flag.
///
/// When `K_1(z)` is below the smallest normal `f64` the value is flushed to
/// zero and the flag is set.
pub fn bessel_k1_with_flag(z: f64) -> Result<(f64, bool)> {
    check_positive(z, "bessel_k1")?;
    if z <= SERIES_RADIUS {
        return Ok((k01_series(z).1, false));
    }
    let scaled = bessel_k1_scaled(z)?;
    let log_value = scaled.ln() - z;
    if log_value < f64::MIN_POSITIVE.ln() {
        Ok((0.0, true))
    } else {
        Ok((log_value.exp(), false))
    }
}

/// Modified Bessel function of the third kind with index 1, `K_1(z)`, `z > 0`.
///
/// Relative error is at the 1e-15 level across `[1e-3, 100]`. Values too small
/// for a normal `f64` come back as `0.0`; see [`bessel_k1_with_flag`].
pub fn bessel_k1(z: f64) -> Result<f64> {
    bessel_k1_with_flag(z).map(|(v, _)| v)
}

/// `K_0(z)`, `z > 0`.
pub fn bessel_k0(z: f64) -> Result<f64> {
    check_positive(z, "bessel_k0")?;
    if z <= SERIES_RADIUS {
        return Ok(k01_series(z).0);
    }
    let log_value = bessel_k0_scaled(z)?.ln() - z;
    Ok(if log_value < f64::MIN_POSITIVE.ln() {
        0.0
    } else {
        log_value.exp()
    })
}

/// `ln K_1(z)` for `z > 0`, finite for arbitrarily large `z`.
pub fn ln_bessel_k1(z: f64) -> Result<f64> {
    check_positive(z, "ln_bessel_k1")?;
    if z <= SERIES_RADIUS {
        Ok(k01_series(z).1.ln())
    } else {
        Ok(bessel_k1_scaled(z)?.ln() - z)
    }
}

/// `e^z K_1(z)` for complex `z` with `Re z > 0`.
pub fn bessel_k1_scaled_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "complex K_1 requires Re z > 0, got {z}"
        )));
    }
    Ok(k01_scaled(z).1)
}

/// Principal `ln K_1(z)` for complex `z` with `Re z > 0`.
///
/// Computed as `ln(e^z K_1(z)) - z`, so the imaginary part is continuous along
/// any path that stays in the right half plane.
pub fn ln_bessel_k1_complex(z: Complex64) -> Result<Complex64> {
    Ok(bessel_k1_scaled_complex(z)?.ln() - z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values: Abramowitz & Stegun table 9.8 / mpmath.
    #[test]
    fn tabulated_values() {
        assert_relative_eq!(bessel_k1(1.0).unwrap(), 0.601_907_230_197_234_6, max_relative = 1e-14);
        assert_relative_eq!(bessel_k1(2.0).unwrap(), 0.139_865_881_816_522_4, max_relative = 1e-14);
        assert_relative_eq!(bessel_k1(0.1).unwrap(), 9.853_844_780_870_606, max_relative = 1e-14);
        assert_relative_eq!(bessel_k1(5.0).unwrap(), 0.004_044_613_445_452_164, max_relative = 1e-13);
        assert_relative_eq!(bessel_k0(1.0).unwrap(), 0.421_024_438_240_708_3, max_relative = 1e-14);
        assert_relative_eq!(bessel_k0(3.0).unwrap(), 0.034_739_504_386_279_3, max_relative = 1e-13);
    }

    #[test]
    fn series_and_continued_fraction_agree_at_the_seam() {
        for &z in &[1.6, 1.9, 2.0, 2.2, 2.6] {
            let (s0, s1) = k01_series(z);
            let (c0, c1) = k01_scaled_cf2(z);
            let e = (-z).exp();
            assert_relative_eq!(s0, c0 * e, max_relative = 1e-13);
            assert_relative_eq!(s1, c1 * e, max_relative = 1e-13);
        }
    }

    #[test]
    fn domain_and_underflow() {
        assert!(matches!(bessel_k1(0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k1(-1.0), Err(Error::Domain(_))));
        assert!(bessel_k1(f64::NAN).is_err());
        let (v, flag) = bessel_k1_with_flag(800.0).unwrap();
        assert_eq!(v, 0.0);
        assert!(flag);
        let (v, flag) = bessel_k1_with_flag(100.0).unwrap();
        assert!(v > 0.0 && v < 1e-40);
        assert!(!flag);
        assert!(ln_bessel_k1(800.0).unwrap().is_finite());
    }

    #[test]
    fn complex_matches_real_on_the_axis() {
        for &x in &[0.3, 1.0, 1.99, 2.01, 7.0, 40.0] {
            let c = bessel_k1_scaled_complex(Complex64::new(x, 0.0)).unwrap();
            assert_relative_eq!(c.re, bessel_k1_scaled(x).unwrap(), max_relative = 1e-14);
            assert!(c.im.abs() < 1e-15 * c.re);
        }
    }

    #[test]
    fn complex_conjugate_symmetry() {
        let z = Complex64::new(1.3, 0.7);
        let a = bessel_k1_scaled_complex(z).unwrap();
        let b = bessel_k1_scaled_complex(z.conj()).unwrap();
        assert_relative_eq!(a.re, b.re, max_relative = 1e-14);
        assert_relative_eq!(a.im, -b.im, max_relative = 1e-14);
    }
}
