//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! fields F_p with p < 2^31.
//!
//! Rationals are kept in lowest terms with positive denominator (zero is 0/1);
//! `num::BigRational` maintains that canonical form. Prime field residues are
//! stored reduced in [0, p), so all products fit in 64-bit intermediates.
//! Values are immutable and safe to share across threads.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = BigRational;

/// Deterministic Miller-Rabin. The bases {2, 7, 61} decide primality for all
/// n < 4_759_123_141, which covers every modulus we accept (p < 2^31).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The prime field F_p. Primality is checked once, at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime_u64(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p as u64 - b) % self.p as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p as u64 - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p as u64)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p as u64)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p as u64 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }
}

/// Coefficient field tag: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(PrimeField),
}

/// A field element. The modulus of an `Fp` residue lives in the governing
/// [`Field`] tag, not in the element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(Rational),
    Fp(u64),
}

impl Field {
    pub fn fp(p: u32) -> Result<Field> {
        Ok(Field::Fp(PrimeField::new(p)?))
    }

    /// Characteristic: 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(f) => f.modulus() as u64,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Q => Coeff::Rat(Rational::zero()),
            Field::Fp(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Q => Coeff::Rat(Rational::one()),
            Field::Fp(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Q => Coeff::Rat(Rational::from(BigInt::from(n))),
            Field::Fp(f) => Coeff::Fp(f.reduce_i64(n)),
        }
    }

    /// Map an exact rational into the field. Over F_p the denominator is
    /// inverted; `BadPrime` if p divides it.
    pub fn from_rational(&self, r: &Rational) -> Result<Coeff> {
        match self {
            Field::Q => Ok(Coeff::Rat(r.clone())),
            Field::Fp(f) => {
                let p = BigInt::from(f.modulus());
                let den = (r.denom() % &p + &p) % &p;
                let den_u: u64 = den.try_into().expect("reduced residue fits u64");
                if den_u == 0 {
                    return Err(Error::BadPrime(f.modulus() as u64));
                }
                let num = (r.numer() % &p + &p) % &p;
                let num_u: u64 = num.try_into().expect("reduced residue fits u64");
                Ok(Coeff::Fp(f.mul(num_u, f.inv(den_u)?)))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Fp(x) => *x == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Q, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Field::Fp(f), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(f.add(*x, *y)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Q, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (Field::Fp(f), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(f.sub(*x, *y)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Q, Coeff::Rat(x)) => Coeff::Rat(-x),
            (Field::Fp(f), Coeff::Fp(x)) => Coeff::Fp(f.neg(*x)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Q, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Field::Fp(f), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(f.mul(*x, *y)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    /// Multiplicative inverse; `ZeroInverse` on zero.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (Field::Q, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::ZeroInverse)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            (Field::Fp(f), Coeff::Fp(x)) => Ok(Coeff::Fp(f.inv(*x)?)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, e: u64) -> Coeff {
        match (self, a) {
            (Field::Q, Coeff::Rat(x)) => {
                let e32: i32 = e.try_into().expect("rational exponent fits i32");
                Coeff::Rat(x.pow(e32))
            }
            (Field::Fp(f), Coeff::Fp(x)) => Coeff::Fp(f.pow(*x, e)),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    /// Canonical text form: reduced fraction over Q, residue in [0, p) over F_p.
    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Fp(x) => x.to_string(),
        }
    }

    /// Tag used in file formats: `Q` or `Fp:<p>`.
    pub fn tag(&self) -> String {
        match self {
            Field::Q => "Q".to_string(),
            Field::Fp(f) => format!("Fp:{}", f.modulus()),
        }
    }

    /// Parse a field tag as used in problem files and certificate JSON.
    pub fn from_tag(tag: &str) -> Result<Field> {
        if tag == "Q" {
            return Ok(Field::Q);
        }
        if let Some(rest) = tag.strip_prefix("Fp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad field tag `{tag}`")))?;
            return Field::fp(p);
        }
        Err(Error::InvalidInput(format!(
            "bad field tag `{tag}` (expected `Q` or `Fp:<p>`)"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 11, 61, 97, 2147483647];
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        let composites = [0u64, 1, 4, 9, 91, 561, 1105, 2147483646];
        for c in composites {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn not_prime_rejected_at_construction() {
        assert_eq!(PrimeField::new(6).unwrap_err(), Error::NotPrime(6));
        assert_eq!(Field::fp(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn inverse_examples() {
        // inverse(1) = 1 in any field
        let q = Field::Q;
        assert_eq!(q.inv(&q.one()).unwrap(), q.one());
        // in F_5: inverse(2) = 3
        let f5 = Field::fp(5).unwrap();
        assert_eq!(f5.inv(&Coeff::Fp(2)).unwrap(), Coeff::Fp(3));
        // in Q: inverse(-3/4) = -4/3
        let a = Coeff::Rat(Rational::new(BigInt::from(-3), BigInt::from(4)));
        let inv = q.inv(&a).unwrap();
        assert_eq!(q.format(&inv), "-4/3");
        assert!(q.is_one(&q.mul(&a, &inv)));
    }

    #[test]
    fn zero_inverse_rejected() {
        assert_eq!(
            Field::Q.inv(&Field::Q.zero()).unwrap_err(),
            Error::ZeroInverse
        );
        let f7 = Field::fp(7).unwrap();
        assert_eq!(f7.inv(&Coeff::Fp(0)).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn rational_sums_stay_reduced() {
        let q = Field::Q;
        let a = Coeff::Rat(Rational::new(BigInt::from(1), BigInt::from(6)));
        let b = Coeff::Rat(Rational::new(BigInt::from(1), BigInt::from(3)));
        match q.add(&a, &b) {
            Coeff::Rat(r) => {
                assert_eq!(r.numer(), &BigInt::from(1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fermat_exhaustive_small_primes() {
        for p in [2u32, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p as u64 {
                assert_eq!(f.pow(a, p as u64), a, "a^p = a in F_{p}");
            }
        }
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f3 = Field::fp(3).unwrap();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f3.from_rational(&half).unwrap(), Coeff::Fp(2));
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(f3.from_rational(&third).unwrap_err(), Error::BadPrime(3));
    }

    #[test]
    fn field_axioms_on_random_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xF1E1D);
        for field in [Field::Q, Field::fp(5).unwrap(), Field::fp(2).unwrap()] {
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| match &field {
                Field::Q => {
                    let n = rng.gen_range(-9i64..=9);
                    let d = rng.gen_range(1i64..=9);
                    Coeff::Rat(Rational::new(BigInt::from(n), BigInt::from(d)))
                }
                Field::Fp(f) => Coeff::Fp(rng.gen_range(0..f.modulus() as u64)),
            };
            for _ in 0..50 {
                let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
                assert_eq!(
                    field.add(&field.add(&a, &b), &c),
                    field.add(&a, &field.add(&b, &c))
                );
                assert_eq!(
                    field.mul(&field.mul(&a, &b), &c),
                    field.mul(&a, &field.mul(&b, &c))
                );
                assert_eq!(
                    field.mul(&a, &field.add(&b, &c)),
                    field.add(&field.mul(&a, &b), &field.mul(&a, &c))
                );
                if !field.is_zero(&a) {
                    assert!(field.is_one(&field.mul(&a, &field.inv(&a).unwrap())));
                }
            }
        }
    }

    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Coeff>();
        assert_send_sync::<Field>();
        assert_send_sync::<PrimeField>();
    }

    #[test]
    fn field_tags_round_trip() {
        for tag in ["Q", "Fp:5", "Fp:2147483647"] {
            let f = Field::from_tag(tag).unwrap();
            assert_eq!(f.tag(), tag);
        }
        assert!(Field::from_tag("Fp:6").is_err());
        assert!(Field::from_tag("R").is_err());
    }
}
