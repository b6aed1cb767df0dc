//! Exact coefficients: Laurent polynomials in `q`, ordinary polynomials in `s`,
//! with Gaussian-rational coefficients.
//!
//! Both deformation parameters are real, so complex conjugation acts on the
//! rational coefficients only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i128>;
pub type GaussRational = Complex<Rational>;

/// Exponent pair `(q power, s power)`.
type Monomial = (i32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, GaussRational>,
}

fn gauss(re: i128, im: i128) -> GaussRational {
    Complex::new(Rational::from_integer(re), Rational::from_integer(im))
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i128) -> Self {
        Self::monomial(gauss(n, 0), 0, 0)
    }

    pub fn rational(num: i128, den: i128) -> Self {
        Self::monomial(
            Complex::new(Rational::new(num, den), Rational::zero()),
            0,
            0,
        )
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(gauss(0, 1), 0, 0)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(gauss(1, 0), k, 0)
    }

    pub fn s_pow(k: u32) -> Self {
        Self::monomial(gauss(1, 0), 0, k)
    }

    pub fn monomial(c: GaussRational, q_exp: i32, s_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((q_exp, s_exp), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Complex conjugate (`q` and `s` are real).
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, u32, &GaussRational)> {
        self.terms.iter().map(|((a, b), c)| (*a, *b, c))
    }

    pub fn eval(&self, q: f64, s: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|((qe, se), c)| {
                let re = c.re.to_f64().unwrap_or(f64::NAN);
                let im = c.im.to_f64().unwrap_or(f64::NAN);
                Complex64::new(re, im) * (q.powi(*qe) * s.powi(*se as i32))
            })
            .sum()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl From<i128> for Scalar {
    fn from(n: i128) -> Self {
        Self::int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, *c);
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for ((qa, sa), ca) in &self.terms {
            for ((qb, sb), cb) in &rhs.terms {
                out.add_term((qa + qb, sa + sb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_coeff(c: &GaussRational) -> (bool, String) {
    // Returns (negative, magnitude text) where the text may be empty for 1.
    if c.im.is_zero() {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        let text = if mag.is_one() {
            String::new()
        } else {
            fmt_rational(&mag)
        };
        (neg, text)
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let mag = c.im.abs();
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}i", fmt_rational(&mag))
        };
        (neg, text)
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        (
            false,
            format!(
                "({} {} {}i)",
                fmt_rational(&c.re),
                sign,
                fmt_rational(&c.im.abs())
            ),
        )
    }
}

impl fmt::Display for Scalar {
    /// Canonical form, e.g. `1 - s^2 + q^-2 s^2`. Terms are ordered by
    /// `(q exponent, s exponent)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((qe, se), c)) in self.terms.iter().enumerate() {
            let (neg, mag) = fmt_coeff(c);
            let mut factors = Vec::new();
            if !mag.is_empty() {
                factors.push(mag);
            }
            match *qe {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{e}")),
            }
            match *se {
                0 => {}
                1 => factors.push("s".into()),
                e => factors.push(format!("s^{e}")),
            }
            let body = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join(" ")
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic_cancels_exactly() {
        let q2 = Scalar::q_pow(2);
        let qm2 = Scalar::q_pow(-2);
        assert!((&q2 * &qm2).is_one());
        let x = &Scalar::one() - &Scalar::s_pow(2);
        let y = &x - &x;
        assert!(y.is_zero());
    }

    #[test]
    fn conj_flips_imaginary_part_only() {
        let z = &Scalar::i() * &Scalar::q_pow(3);
        assert_eq!(z.conj(), -&z);
        assert_eq!(Scalar::q_pow(-1).conj(), Scalar::q_pow(-1));
    }

    #[test]
    fn eval_matches_direct_formula() {
        let x = &(&Scalar::q_pow(-2) * &Scalar::s_pow(2)) + &Scalar::int(3);
        let v = x.eval(0.5, 0.7);
        assert!((v.re - (4.0 * 0.49 + 3.0)).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn display_is_canonical() {
        let x = &(&Scalar::one() - &Scalar::s_pow(2)) + &(&Scalar::q_pow(-2) * &Scalar::int(2));
        assert_eq!(x.to_string(), "2 q^-2 + 1 - s^2");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::i()).to_string(), "-i");
    }
}
