//! Arbitrary-precision binary floating point helpers for the analytic
//! (asymptotic) checks. Nothing else in the crate uses floating point.

use dashu_float::ops::Abs;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

use crate::poly::Poly;
use crate::ring::{Integer, Rational};

pub type Real = FBig<HalfEven, 2>;

pub fn int_to_real(n: &Integer, precision: usize) -> Real {
    let i: IBig = n.to_string().parse().expect("decimal integer strings always parse");
    Real::from(i).with_precision(precision).value()
}

pub fn rational_to_real(r: &Rational, precision: usize) -> Real {
    int_to_real(r.numer(), precision) / int_to_real(r.denom(), precision)
}

pub fn real_from_f64(x: f64, precision: usize) -> Real {
    Real::try_from(x).expect("finite f64").with_precision(precision).value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Real, digits: usize) -> String {
    if is_zero(x) {
        return "0".into();
    }
    x.clone().with_base_and_precision::<10>(digits).value().to_string()
}

pub fn is_zero(x: &Real) -> bool {
    x.repr().significand().is_zero()
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

/// `2^{-bits}` at the given precision.
pub fn epsilon(bits: usize, precision: usize) -> Real {
    Real::from_parts(IBig::from(1), -(bits as isize)).with_precision(precision).value()
}

/// `|a - b| / |b|`, or `|a|` when `b` is zero.
pub fn relative_error(a: &Real, b: &Real) -> Real {
    let diff = abs(&(a - b));
    if is_zero(b) {
        diff
    } else {
        diff / abs(b)
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let p = re.precision();
        Complex { re, im: Real::ZERO.with_precision(p).value() }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn modulus(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let d = o.norm_sqr();
        Complex::new(
            (&self.re * &o.re + &self.im * &o.im) / &d,
            (&self.im * &o.re - &self.re * &o.im) / &d,
        )
    }

    pub fn recip(&self) -> Complex {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }
}

fn eval_with_derivative(coeffs: &[Real], z: &Complex) -> (Complex, Complex) {
    let p = z.re.precision();
    let zero = || Complex::real(Real::ZERO.with_precision(p).value());
    let (mut v, mut d) = (zero(), zero());
    for c in coeffs.iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z).add(&Complex::real(c.clone()));
    }
    (v, d)
}

/// Evaluates a rational polynomial at a complex point.
pub fn eval_poly(p: &Poly<Rational>, z: &Complex, precision: usize) -> Complex {
    let coeffs: Vec<Real> = p.coeffs().iter().map(|c| rational_to_real(c, precision)).collect();
    eval_with_derivative(&coeffs, z).0
}

/// All complex roots of the squarefree part of `p`, by Aberth–Ehrlich
/// iteration at `precision` bits.
pub fn complex_roots(p: &Poly<Rational>, precision: usize) -> Vec<Complex> {
    let sf = p.squarefree_part();
    let n = match sf.degree() {
        Some(n) if n > 0 => n,
        _ => return Vec::new(),
    };
    let coeffs: Vec<Real> = sf.coeffs().iter().map(|c| rational_to_real(c, precision)).collect();
    let radius = sf.root_bound();
    let radius = rational_to_real(&radius, 64).to_f64().value().min(1e12);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            let r = radius * 0.5 + 0.1;
            Complex::new(real_from_f64(r * theta.cos(), precision), real_from_f64(r * theta.sin(), precision))
        })
        .collect();
    let tol = epsilon(precision.saturating_sub(16), precision);
    for _ in 0..1000 {
        let mut max_step = Real::ZERO;
        for k in 0..n {
            let (v, d) = eval_with_derivative(&coeffs, &z[k]);
            if is_zero(&v.norm_sqr()) {
                continue;
            }
            let ratio = v.div(&d);
            let mut repulsion = Complex::real(Real::ZERO.with_precision(precision).value());
            for j in 0..n {
                if j != k {
                    repulsion = repulsion.add(&z[k].sub(&z[j]).recip());
                }
            }
            let one = Complex::real(Real::ONE.with_precision(precision).value());
            let step = ratio.div(&one.sub(&ratio.mul(&repulsion)));
            let size = step.modulus();
            let scale = z[k].modulus().max(Real::ONE);
            let rel = size / scale;
            if rel > max_step {
                max_step = rel;
            }
            z[k] = z[k].sub(&step);
        }
        if max_step <= tol {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    #[test]
    fn conversions() {
        let x = rational_to_real(&rational(1, 3), 128);
        assert!((to_f64(&x) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(to_decimal(&int_to_real(&Integer::from(12345), 64), 5), "12345");
    }

    #[test]
    fn roots_of_golden_quadratic() {
        let p = Poly::from_ints(&[-1, 1, 1]);
        let roots = complex_roots(&p, 160);
        assert_eq!(roots.len(), 2);
        let phi_inv = (5f64.sqrt() - 1.0) / 2.0;
        let mut re: Vec<f64> = roots.iter().map(|z| to_f64(&z.re)).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[1] - phi_inv).abs() < 1e-15);
        assert!((re[0] + 1.0 / phi_inv).abs() < 1e-15);
        for z in &roots {
            let v = eval_poly(&p, z, 160);
            assert!(to_f64(&v.modulus()) < 1e-40);
        }
    }

    #[test]
    fn complex_conjugate_roots() {
        // x^2 + 1
        let roots = complex_roots(&Poly::from_ints(&[1, 0, 1]), 128);
        for z in &roots {
            assert!(to_f64(&z.re).abs() < 1e-30);
            assert!((to_f64(&z.im).abs() - 1.0).abs() < 1e-30);
        }
        // (x-1)^3 has a single distinct root
        let cube = Poly::from_ints(&[-1, 1]).pow(3);
        assert_eq!(complex_roots(&cube, 128).len(), 1);
    }
}
