//! Exact coefficient fields: arbitrary-precision rationals and prime fields F_p.
//!
//! Every scalar is kept in canonical form (reduced fraction with positive
//! denominator, or least nonnegative residue), so equality is plain structural
//! equality and all downstream output is reproducible byte for byte.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Products of residues below this bound
/// fit in a u64 without overflow.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The coefficient field: the rationals, or F_p for a prime p.
///
/// Serializes as `"Q"` or `{"Fp": 7}`; deserialization re-checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

#[derive(Serialize, Deserialize)]
enum FieldSpecRepr {
    Q,
    Fp(u64),
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldSpecRepr::Q,
            FieldSpec::PrimeField(p) => FieldSpecRepr::Fp(p),
        }
    }
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(repr: FieldSpecRepr) -> Result<Self> {
        match repr {
            FieldSpecRepr::Q => Ok(FieldSpec::Rationals),
            FieldSpecRepr::Fp(p) => FieldSpec::prime_field(p),
        }
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// A prime field F_p. The modulus is checked by trial division.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for the rationals, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                p: *p,
                value: v.rem_euclid(*p as i64) as u64,
            },
        }
    }

    /// Parses a scalar literal: an integer string like `-3`, or a fraction
    /// string `a/b`. Fractions over F_p are read as a * b^{-1}.
    pub fn parse_literal(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad scalar literal '{s}'")))?;
        let den: BigInt = den_str
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad scalar literal '{s}'")))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldSpec::PrimeField(p) => {
                let n = bigint_mod(&num, *p);
                let d = bigint_mod(&den, *p);
                let num_scalar = Scalar::Mod { p: *p, value: n };
                let den_scalar = Scalar::Mod { p: *p, value: d };
                num_scalar.mul(&den_scalar.inv()?)
            }
        }
    }

    fn name(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::PrimeField(p) => format!("F{p}"),
        }
    }
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    // r is in [0, p) and p < 2^31, so the conversion cannot fail.
    u64::try_from(r).unwrap()
}

/// Deterministic trial-division primality test for u64 moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction with positive denominator (num-rational keeps this
    /// invariant on construction).
    Rat(BigRational),
    /// Least nonnegative residue mod p.
    Mod { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().name(),
                other.field().name(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: (a + b) % p,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: (a * b) % p,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                // Fermat: a^(p-2) inverts a for prime p.
                value: pow_mod(*value, p - 2, *p),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    /// Total order within one field (numeric for Q, residue order for F_p).
    /// Used for the canonical ordering of group elements.
    pub fn cmp_same_field(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            _ => panic!("cmp_same_field on scalars from different fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Whether k contains a primitive p-th root of unity, for p prime.
///
/// Over Q the only roots of unity are ±1, so the answer is `p == 2`. Over F_q
/// the multiplicative group is cyclic of order q-1, so a primitive p-th root
/// exists exactly when p divides q-1.
pub fn has_primitive_pth_root(field: FieldSpec, p: u64) -> bool {
    assert!(is_prime(p), "has_primitive_pth_root requires a prime p");
    match field {
        FieldSpec::Rationals => p == 2,
        FieldSpec::PrimeField(q) => (q - 1) % p == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn rational_add_reduces() {
        let sum = q(1, 2).add(&q(1, 3)).unwrap();
        assert_eq!(sum, q(5, 6));
    }

    #[test]
    fn f7_inverse() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!(three.inv().unwrap(), f7.from_i64(5));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(FieldSpec::Rationals.zero().inv(), Err(Error::DivisionByZero));
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let err = FieldSpec::Rationals.one().add(&f5.one());
        assert!(matches!(err, Err(Error::FieldMismatch(_, _))));
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert!(f5.one().mul(&f7.one()).is_err());
    }

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(101).is_ok());
        assert_eq!(FieldSpec::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime_field(91), Err(Error::NotPrime(91)));
        assert_eq!(
            FieldSpec::prime_field(1 << 31),
            Err(Error::ModulusTooLarge(1 << 31))
        );
    }

    #[test]
    fn literal_parsing() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.parse_literal("-3").unwrap(), f.from_i64(-3));
        assert_eq!(f.parse_literal("5/6").unwrap(), q(5, 6));
        assert_eq!(f.parse_literal("-4/6").unwrap(), q(-2, 3));
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert_eq!(f7.parse_literal("-1").unwrap(), f7.from_i64(6));
        // 3/2 = 3 * inv(2) = 3 * 4 = 12 = 5 mod 7
        assert_eq!(f7.parse_literal("3/2").unwrap(), f7.from_i64(5));
        assert!(f.parse_literal("1/0").is_err());
        assert!(f.parse_literal("x").is_err());
    }

    #[test]
    fn root_of_unity_examples() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert!(has_primitive_pth_root(f7, 3)); // 3 | 6
        assert!(has_primitive_pth_root(FieldSpec::Rationals, 2)); // -1
        assert!(!has_primitive_pth_root(FieldSpec::Rationals, 3));
        let f5 = FieldSpec::prime_field(5).unwrap();
        // Oracle: no x in F_5 with x^3 = 1 besides x = 1.
        let mut found = false;
        for x in 2..5u64 {
            if x * x % 5 * x % 5 == 1 {
                found = true;
            }
        }
        assert!(!found);
        assert!(!has_primitive_pth_root(f5, 3));
    }

    /// Exhaustive cross-check of the root predicate over every F_q, q <= 101.
    #[test]
    fn root_predicate_matches_exhaustive_search() {
        for q in 2..=101u64 {
            if !is_prime(q) {
                continue;
            }
            let field = FieldSpec::prime_field(q).unwrap();
            for p in 2..=q {
                if !is_prime(p) {
                    continue;
                }
                // x is a primitive p-th root iff x^p = 1 and x != 1.
                let mut exists = false;
                for x in 1..q {
                    if x != 1 && pow_mod(x, p, q) == 1 {
                        exists = true;
                        break;
                    }
                }
                assert_eq!(
                    has_primitive_pth_root(field, p),
                    exists,
                    "disagreement at q={q}, p={p}"
                );
            }
        }
    }

    fn arb_rat() -> impl Strategy<Value = Scalar> {
        (-40i64..40, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_mod() -> impl Strategy<Value = Scalar> {
        (0u64..13).prop_map(|v| FieldSpec::prime_field(13).unwrap().from_i64(v as i64))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in arb_mod(), b in arb_mod(), c in arb_mod()) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }

        /// Canonical form survives a round trip through the literal syntax.
        #[test]
        fn literal_round_trip(a in arb_rat()) {
            let s = a.to_string();
            prop_assert_eq!(FieldSpec::Rationals.parse_literal(&s).unwrap(), a);
        }
    }
}
