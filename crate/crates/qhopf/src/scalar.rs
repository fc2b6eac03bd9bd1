//! Exact scalars: rationals (with an `i64` fast path) and residues mod a prime.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match *self {
            Field::Q => Scalar(Repr::Small(v, 1)),
            Field::Fp(p) => Scalar(Repr::Mod(v.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// `num/den`; fails over 𝔽_p when `den ≡ 0`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den);
        let inv = d.inv().ok_or_else(|| Error::Invalid("zero denominator".into()))?;
        Ok(self.int(num).mul(&inv))
    }

    pub fn from_big(&self, num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match *self {
            Field::Q => Ok(Scalar::from_rational(BigRational::new(num, den))),
            Field::Fp(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                let d = Scalar(Repr::Mod(d, p));
                let inv = d.inv().ok_or_else(|| Error::Invalid("denominator divisible by p".into()))?;
                Ok(Scalar(Repr::Mod(n, p)).mul(&inv))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Rationals are kept in lowest terms with positive denominator, and stored
// small whenever both parts fit in an i64, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
    Mod(u64, u64),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn small(n: i128, d: i128) -> Scalar {
    debug_assert!(d != 0);
    let (mut n, mut d) = (n, d);
    if d < 0 {
        n = -n;
        d = -d;
    }
    let g = n.gcd(&d);
    if g > 1 {
        n /= g;
        d /= g;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => Scalar(Repr::Small(a, b)),
        _ => Scalar(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
    }
}

impl Scalar {
    pub fn from_rational(r: BigRational) -> Scalar {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(Box::new(r))),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
            Repr::Mod(..) => panic!("residue used as a rational"),
        }
    }

    /// Rational value, `None` for residues.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Mod(..) => None,
            _ => Some(self.big()),
        }
    }

    /// Residue value, `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Mod(v, _) => Some(v),
            _ => None,
        }
    }

    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Mod(_, p) => Field::Fp(p),
            _ => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(b) => b.is_zero(),
            Repr::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *n == 1 && *d == 1,
            Repr::Big(_) => false,
            Repr::Mod(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                small(a * d + c * b, b * d)
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar(Repr::Mod((a + b) % p, *p))
            }
            _ => Scalar::from_rational(self.big() + o.big()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar(Repr::Small(m, *d)),
                None => Scalar::from_rational(-self.big()),
            },
            Repr::Big(b) => Scalar::from_rational(-(**b).clone()),
            Repr::Mod(v, p) => Scalar(Repr::Mod((p - v) % p, *p)),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
                small(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar(Repr::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p))
            }
            _ => Scalar::from_rational(self.big() * o.big()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => small(*d as i128, *n as i128),
            Repr::Big(b) => Scalar::from_rational(b.recip()),
            Repr::Mod(v, p) => Scalar(Repr::Mod(pow_mod(*v, p - 2, *p), *p)),
        })
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical text: `n` for integers, `n/d` otherwise; residues as integers.
    pub fn to_canonical(&self) -> String {
        match &self.0 {
            Repr::Small(n, 1) => n.to_string(),
            Repr::Small(n, d) => format!("{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => b.numer().to_string(),
            Repr::Big(b) => format!("{}/{}", b.numer(), b.denom()),
            Repr::Mod(v, _) => v.to_string(),
        }
    }

    /// Parses the canonical text, rejecting anything not in lowest terms.
    pub fn parse_canonical(field: &Field, s: &str) -> Result<Scalar> {
        let bad = || Error::Invalid(format!("malformed rational \"{s}\""));
        let int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            if (digits.len() > 1 && digits.starts_with('0')) || t == "-0" {
                return Err(Error::Invalid(format!("non-canonical rational \"{s}\"")));
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let (n, d) = match s.split_once('/') {
            None => (int(s)?, BigInt::one()),
            Some((a, b)) => {
                let n = int(a)?;
                let d = int(b)?;
                if !d.is_positive() || d.is_one() || !n.gcd(&d).is_one() {
                    return Err(Error::Invalid(format!("non-canonical rational \"{s}\"")));
                }
                (n, d)
            }
        };
        match field {
            Field::Q => field.from_big(n, d),
            Field::Fp(p) => {
                if !d.is_one() || n.is_negative() || n >= BigInt::from(*p) {
                    return Err(Error::Invalid(format!("non-canonical residue \"{s}\" mod {p}")));
                }
                field.from_big(n, d)
            }
        }
    }

    /// Numerator and denominator over ℚ.
    pub(crate) fn num_den(&self) -> (BigInt, BigInt) {
        let b = self.big();
        (b.numer().clone(), b.denom().clone())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Total order used only to make reports deterministic.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Mod(a, _), Repr::Mod(b, _)) => a.cmp(b),
            (Repr::Mod(..), _) => Ordering::Greater,
            (_, Repr::Mod(..)) => Ordering::Less,
            _ => self.big().cmp(&other.big()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes() {
        let q = Field::Q;
        let big = q.int(i64::MAX);
        let s = big.add(&q.one());
        assert_eq!(s.to_canonical(), "9223372036854775808");
        assert_eq!(s.sub(&q.one()), big);
    }

    #[test]
    fn canonical_parsing() {
        let q = Field::Q;
        assert_eq!(Scalar::parse_canonical(&q, "-3/4").unwrap(), q.ratio(-3, 4).unwrap());
        for bad in ["2/4", "3/1", "1/-2", "007", "-0", "1/0"] {
            let e = Scalar::parse_canonical(&q, bad).unwrap_err().to_string();
            assert!(e.contains("non-canonical") || e.contains("malformed"), "{bad}: {e}");
        }
        let f = Field::Fp(7);
        assert_eq!(Scalar::parse_canonical(&f, "6").unwrap(), f.int(-1));
        assert!(Scalar::parse_canonical(&f, "7").is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = Field::Fp(7);
        for v in 1..7 {
            let x = f.int(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }
}
