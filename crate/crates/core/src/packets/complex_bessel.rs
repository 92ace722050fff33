//! `K_1(z)` for complex `z` with `Re z > 0`, used only by the position-space
//! massive Lorentzian packet. Same split as the real routine: ascending
//! series for `|z| <= 2`, Temme's continued fraction above.

use num_complex::Complex64;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

pub(crate) fn k1(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0 || (z.re == 0.0 && z.im != 0.0));
    if z.norm() <= 2.0 {
        series(z)
    } else {
        continued_fraction(z)
    }
}

fn series(z: Complex64) -> Complex64 {
    let y = 0.25 * z * z;
    let log_term = (0.5 * z).ln() + EULER_GAMMA;
    let mut term = Complex64::new(1.0, 0.0);
    let mut i1 = term;
    let mut s1 = term; // k = 0 coefficient 2 H_0 + 1
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i1 += term;
        s1 += term * (2.0 * harmonic + 1.0 / (kf + 1.0));
        if term.norm() < 1e-18 * i1.norm() {
            break;
        }
    }
    z.inv() + log_term * (0.5 * z * i1) - 0.25 * z * s1
}

fn continued_fraction(z: Complex64) -> Complex64 {
    const MAXIT: usize = 20_000;
    let one = Complex64::new(1.0, 0.0);
    let a1 = 0.25;
    let mut b = 2.0 * (one + z);
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 2..MAXIT {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = (b + a * d).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 0.5 * f64::EPSILON * s.norm() {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    k0 * (0.5 + z - h) / z
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath besselk(1, z), 20 digits
    const REFERENCE: [(f64, f64, f64, f64); 10] = [
        (1.0, 20.0, -0.036221605248409839, -0.096610690588595223),
        (0.3, 0.1, 2.7154724409804311, -1.0438514301797857),
        (2.5, -3.0, -0.051846856248374978, -0.019488901707587287),
        (0.001, 0.001, 499.99601874520883, -500.00319585860953),
        (0.01, 2.1, -0.88417388065543245, -0.082793198462115795),
        (0.05, 40.0, -0.18832158433469827, -0.0087744435181679456),
        (5.0, 0.1, 0.0040191112644684444, -0.00044901185115223436),
        (1.9, 0.0, 0.15966015303266763, 0.0),
        (1.2, 1.6, -0.17062252738223223, -0.24588381732475449),
        (30.0, -7.0, 1.4362992524359383e-14, 1.5835249947982627e-14),
    ];

    #[test]
    fn matches_reference_values() {
        for (re, im, kr, ki) in REFERENCE {
            let got = k1(Complex64::new(re, im));
            let want = Complex64::new(kr, ki);
            assert!(
                (got - want).norm() <= 1e-12 * want.norm(),
                "z = {re}+{im}i: {got} vs {want}"
            );
        }
    }

    #[test]
    fn agrees_with_real_routine_on_axis() {
        for z in [0.05, 0.7, 1.99, 2.01, 3.5, 12.0, 80.0] {
            let c = k1(Complex64::new(z, 0.0));
            let r = crate::specfun::k1(z);
            assert!((c.re - r).abs() <= 1e-13 * r, "z = {z}");
            assert!(c.im.abs() <= 1e-13 * r);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let z = Complex64::new(0.8, 3.3);
        let (a, b) = (k1(z), k1(z.conj()));
        assert!((a - b.conj()).norm() < 1e-15 * a.norm());
    }
}
