//! Complex scalars over two interchangeable backends.
//!
//! The classification machinery works over ℂ. Rank decisions reduce to
//! zero tests of polynomial certificates, so the default backend is exact:
//! a complex number with arbitrary-precision rational real and imaginary
//! parts. Equality and zero tests are then decidable and every field
//! operation is closed.
//!
//! The game module needs 1/√2, which is not rational, so a second backend
//! stores double-precision parts. Its zero test is `|s| ≤ ε·max(1, scale)`
//! where `scale` is the largest absolute value among the inputs of the
//! enclosing computation and ε is [`EPSILON_ZERO`].
//!
//! Mixed-backend arithmetic degrades to the approximate backend.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

/// Zero tolerance for the approximate backend.
///
/// Quartic-degree certificates evaluated on unit-scale amplitudes lose at
/// most a few digits, leaving a wide margin over machine epsilon.
pub const EPSILON_ZERO: f64 = 1e-10;

/// A complex number in either the exact (rational) or approximate (f64)
/// backend.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Exact backend: rational real and imaginary parts.
    Exact { re: BigRational, im: BigRational },
    /// Approximate backend: double-precision real and imaginary parts.
    Approx { re: f64, im: f64 },
}

impl Scalar {
    /// The exact zero.
    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    /// The exact one.
    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// Exact scalar from an integer.
    pub fn from_int(n: i64) -> Self {
        Scalar::Exact {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Exact real rational p/q. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::Exact {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    /// Exact scalar from rational parts.
    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact { re, im }
    }

    /// Exact complex p/q + r/s·i from integer parts.
    pub fn exact_complex(re_p: i64, re_q: i64, im_p: i64, im_q: i64) -> Self {
        Scalar::Exact {
            re: BigRational::new(BigInt::from(re_p), BigInt::from(re_q)),
            im: BigRational::new(BigInt::from(im_p), BigInt::from(im_q)),
        }
    }

    /// Approximate scalar from double parts.
    pub fn approx(re: f64, im: f64) -> Self {
        Scalar::Approx { re, im }
    }

    /// Exact scalar from "p/q" component strings.
    pub fn exact_from_strings(re: &str, im: &str) -> Option<Self> {
        Some(Scalar::Exact {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }

    /// True for the exact backend.
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact { .. })
    }

    /// Real and imaginary parts as doubles, converting if exact.
    pub fn to_f64_parts(&self) -> (f64, f64) {
        match self {
            Scalar::Exact { re, im } => (
                re.to_f64().unwrap_or(f64::NAN),
                im.to_f64().unwrap_or(f64::NAN),
            ),
            Scalar::Approx { re, im } => (*re, *im),
        }
    }

    /// This scalar in the approximate backend.
    pub fn to_approx(&self) -> Scalar {
        let (re, im) = self.to_f64_parts();
        Scalar::Approx { re, im }
    }

    /// Complex conjugate: negates the imaginary part.
    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.clone(),
                im: -im.clone(),
            },
            Scalar::Approx { re, im } => Scalar::Approx { re: *re, im: -im },
        }
    }

    /// `s · conj(s)`; a real scalar in the same backend.
    pub fn abs_squared(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re * re + im * im,
                im: BigRational::zero(),
            },
            Scalar::Approx { re, im } => Scalar::Approx {
                re: re * re + im * im,
                im: 0.0,
            },
        }
    }

    /// |s| as a double (through the approximate value for exact scalars).
    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64_parts();
        re.hypot(im)
    }

    /// Zero test with context scale 1.
    pub fn is_zero(&self) -> bool {
        self.is_zero_scaled(1.0)
    }

    /// Zero test.
    ///
    /// Exact backend: both rational parts are zero. Approximate backend:
    /// `|s| ≤ EPSILON_ZERO · max(1, scale)` where `scale` is the largest
    /// absolute value among the inputs of the enclosing computation.
    pub fn is_zero_scaled(&self, scale: f64) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Approx { .. } => self.abs_f64() <= EPSILON_ZERO * scale.max(1.0),
        }
    }

    /// True if `self - 1` is zero under the same rules as [`is_zero_scaled`].
    ///
    /// [`is_zero_scaled`]: Scalar::is_zero_scaled
    pub fn is_one_scaled(&self, scale: f64) -> bool {
        (self - &Scalar::one()).is_zero_scaled(scale)
    }

    /// Multiplicative inverse, or `None` for (representable) zero.
    pub fn checked_inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact { re, im } => {
                let norm = re * re + im * im;
                if norm.is_zero() {
                    return None;
                }
                Some(Scalar::Exact {
                    re: re / &norm,
                    im: -im / &norm,
                })
            }
            Scalar::Approx { re, im } => {
                let norm = re * re + im * im;
                if norm == 0.0 {
                    return None;
                }
                Some(Scalar::Approx {
                    re: re / norm,
                    im: -im / norm,
                })
            }
        }
    }

    /// Random exact scalar with small rational parts, for randomized
    /// identity checks.
    pub fn random_exact<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
        let part = |rng: &mut R| {
            BigRational::new(
                BigInt::from(rng.random_range(-9i64..=9)),
                BigInt::from(rng.random_range(1i64..=4)),
            )
        };
        Scalar::Exact {
            re: part(rng),
            im: part(rng),
        }
    }

    /// Random nonzero exact scalar.
    pub fn random_exact_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
        loop {
            let s = Scalar::random_exact(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl PartialEq for Scalar {
    /// Structural equality within one backend; scalars of different
    /// backends never compare equal.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => a == c && b == d,
            (Scalar::Approx { re: a, im: b }, Scalar::Approx { re: c, im: d }) => a == c && b == d,
            _ => false,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident, $c:ident, $d:ident| $exact:expr, $approx:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact { re: $a, im: $b }, Scalar::Exact { re: $c, im: $d }) => $exact,
                    _ => {
                        let ($a, $b) = self.to_f64_parts();
                        let ($c, $d) = rhs.to_f64_parts();
                        $approx
                    }
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(
    Add,
    add,
    |a, b, c, d| Scalar::Exact { re: a + c, im: b + d },
    Scalar::Approx { re: a + c, im: b + d }
);

scalar_binop!(
    Sub,
    sub,
    |a, b, c, d| Scalar::Exact { re: a - c, im: b - d },
    Scalar::Approx { re: a - c, im: b - d }
);

scalar_binop!(
    Mul,
    mul,
    |a, b, c, d| Scalar::Exact {
        re: a * c - b * d,
        im: a * d + b * c,
    },
    Scalar::Approx {
        re: a * c - b * d,
        im: a * d + b * c,
    }
);

scalar_binop!(
    Div,
    div,
    |a, b, c, d| {
        let norm = c * c + d * d;
        assert!(!norm.is_zero(), "exact division by zero");
        Scalar::Exact {
            re: (a * c + b * d) / &norm,
            im: (b * c - a * d) / &norm,
        }
    },
    {
        let norm = c * c + d * d;
        Scalar::Approx {
            re: (a * c + b * d) / norm,
            im: (b * c - a * d) / norm,
        }
    }
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: -re.clone(),
                im: -im.clone(),
            },
            Scalar::Approx { re, im } => Scalar::Approx { re: -re, im: -im },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Formats a rational as "p/q" with the denominator always written out.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "p/q" (or a bare integer "p") into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl fmt::Display for Scalar {
    /// "p/q" or "a" for real values; "p/q+r/si" or "a+bi" otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { re, im } => {
                if im.is_zero() {
                    write!(f, "{}", rational_string(re))
                } else if im.is_negative() {
                    write!(f, "{}-{}i", rational_string(re), rational_string(&-im))
                } else {
                    write!(f, "{}+{}i", rational_string(re), rational_string(im))
                }
            }
            Scalar::Approx { re, im } => {
                if *im == 0.0 {
                    write!(f, "{re}")
                } else if *im < 0.0 {
                    write!(f, "{}-{}i", re, -im)
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_tests() {
        assert!(Scalar::zero().is_zero());
        assert!(!Scalar::from_ratio(3, 7).is_zero());
        // below tolerance by definition
        assert!(Scalar::approx(1e-14, 0.0).is_zero_scaled(1.0));
        assert!(!Scalar::approx(1e-6, 0.0).is_zero_scaled(1.0));
    }

    #[test]
    fn conjugation() {
        let s = Scalar::exact_complex(1, 1, 2, 1);
        assert_eq!(s.conjugate(), Scalar::exact_complex(1, 1, -2, 1));
        let real = Scalar::from_int(5);
        assert_eq!(real.conjugate(), real);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = Scalar::random_exact(&mut rng);
            assert_eq!(s.conjugate().conjugate(), s);
        }
    }

    #[test]
    fn abs_squared_examples() {
        assert_eq!(Scalar::exact_complex(3, 1, 4, 1).abs_squared(), Scalar::from_int(25));
        assert_eq!(Scalar::zero().abs_squared(), Scalar::zero());
        assert_eq!(Scalar::exact_complex(0, 1, 1, 1).abs_squared(), Scalar::one());
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = Scalar::random_exact(&mut rng);
            let b = Scalar::random_exact(&mut rng);
            let c = Scalar::random_exact(&mut rng);
            assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !c.is_zero() {
                assert_eq!(&(&a * &c) / &c, a);
                let inv = c.checked_inv().unwrap();
                assert_eq!(&c * &inv, Scalar::one());
            }
        }
    }

    #[test]
    fn conjugate_is_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = Scalar::random_exact(&mut rng);
            let b = Scalar::random_exact(&mut rng);
            assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
            let sq = a.abs_squared();
            match &sq {
                Scalar::Exact { re, im } => {
                    assert!(im.is_zero());
                    assert!(!re.is_negative());
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn mixed_backend_promotes_to_approx() {
        let e = Scalar::from_ratio(1, 2);
        let a = Scalar::approx(0.25, 0.0);
        let s = &e + &a;
        assert!(!s.is_exact());
        assert_eq!(s.to_f64_parts().0, 0.75);
    }

    #[test]
    fn rational_round_trip() {
        let r = parse_rational("-3/4").unwrap();
        assert_eq!(rational_string(&r), "-3/4");
        assert_eq!(rational_string(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x/2").is_none());
    }
}
