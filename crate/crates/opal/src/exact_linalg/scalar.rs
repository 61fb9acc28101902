//! Exact field elements: arbitrary-precision rationals and machine-word
//! prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// The coefficient field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalarDomain {
    /// The rationals.
    Rational,
    /// The prime field with the given modulus.
    Fp(u64),
}

impl ScalarDomain {
    pub fn fp(p: u64) -> Result<Self, LinalgError> {
        if is_prime_u64(p) {
            Ok(ScalarDomain::Fp(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ScalarDomain::Rational => Scalar::Rational(BigRational::zero()),
            ScalarDomain::Fp(p) => Scalar::Fp {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            ScalarDomain::Rational => Scalar::Rational(BigRational::one()),
            ScalarDomain::Fp(p) => Scalar::Fp {
                value: 1 % *p,
                modulus: *p,
            },
        }
    }

    /// The image of the integer `n` in this field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            ScalarDomain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ScalarDomain::Fp(p) => {
                let v = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp {
                    value: v,
                    modulus: *p,
                }
            }
        }
    }

    /// `num`/`den` in this field. `den` must be invertible.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        match self {
            ScalarDomain::Rational => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            ScalarDomain::Fp(_) => {
                let d = self.from_int(den);
                let inv = d.inverse().ok_or(LinalgError::DivisionByZero)?;
                Ok(self.from_int(num) * inv)
            }
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rational => write!(f, "Q"),
            ScalarDomain::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An element of ℚ or of a prime field F_p.
///
/// Rationals are kept normalized (coprime numerator/denominator, positive
/// denominator) by `num-rational`; residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rational(_) => ScalarDomain::Rational,
            Scalar::Fp { modulus, .. } => ScalarDomain::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Fp { value, modulus } => *value == 1 % *modulus,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Fp { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Fp {
                        value: pow_mod(*value, *modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// Rational numerator/denominator view; `None` over a prime field.
    pub fn as_ratio(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Scalar::Rational(r) => Some((r.numer(), r.denom())),
            Scalar::Fp { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.domain(),
            other.domain(),
            "scalar domain mismatch (validated constructors should prevent this)"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.check_same(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: add_mod(a, b, modulus),
                modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.check_same(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: add_mod(a, modulus - b, modulus),
                modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.check_same(&rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: mul_mod(a, b, modulus),
                modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if value == 0 { 0 } else { modulus - value },
                modulus,
            },
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self + rhs.clone()
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self * rhs.clone()
    }
}

/// `(-1)^n` as a scalar, for Koszul signs.
pub fn sign(domain: ScalarDomain, n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        domain.one()
    } else {
        -domain.one()
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Content normalization for a list of rationals: the positive rational `c`
/// such that dividing every entry by `c` yields coprime integers with a
/// positive leading entry. Used to keep elimination entries small.
pub fn rational_content(entries: &[&Scalar]) -> Option<Scalar> {
    use num_integer::Integer;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut leading_sign_neg = None;
    for s in entries {
        let Scalar::Rational(r) = s else { return None };
        if r.is_zero() {
            continue;
        }
        if leading_sign_neg.is_none() {
            leading_sign_neg = Some(r.numer().is_negative());
        }
        num_gcd = num_gcd.gcd(r.numer());
        den_lcm = den_lcm.lcm(r.denom());
    }
    if num_gcd.is_zero() {
        return None;
    }
    if leading_sign_neg == Some(true) {
        num_gcd = -num_gcd;
    }
    Some(Scalar::Rational(BigRational::new(num_gcd, den_lcm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_normalizes() {
        let d = ScalarDomain::Rational;
        let half = d.from_ratio(1, 2).unwrap();
        let x = half.clone() + half.clone();
        assert!(x.is_one());
        let (n, den) = d
            .from_ratio(4, -6)
            .unwrap()
            .as_ratio()
            .map(|(a, b)| (a.clone(), b.clone()))
            .unwrap();
        assert_eq!(n, BigInt::from(-2));
        assert_eq!(den, BigInt::from(3));
    }

    #[test]
    fn fp_arithmetic() {
        let d = ScalarDomain::fp(7).unwrap();
        let a = d.from_int(5);
        let b = d.from_int(4);
        assert_eq!(a.clone() * b.clone(), d.from_int(6));
        assert_eq!(a.clone() + b, d.from_int(2));
        assert_eq!(a.clone().inverse().unwrap() * a, d.one());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(ScalarDomain::fp(6).is_err());
        assert!(ScalarDomain::fp(1).is_err());
        assert!(ScalarDomain::fp(2).is_ok());
        assert!(ScalarDomain::fp((1 << 61) - 1).is_ok());
    }

    #[test]
    fn content_normalization() {
        let d = ScalarDomain::Rational;
        let entries = [d.from_ratio(-4, 6).unwrap(), d.from_ratio(2, 3).unwrap()];
        let refs: Vec<&Scalar> = entries.iter().collect();
        let c = rational_content(&refs).unwrap();
        // dividing by the content gives (-1, 1): coprime integers, leading positive after sign flip
        let inv = c.inverse().unwrap();
        let first = entries[0].clone() * inv.clone();
        assert_eq!(first, d.from_int(1));
        assert_eq!(entries[1].clone() * inv, d.from_int(-1));
    }
}
