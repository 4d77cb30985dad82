//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Descriptor of the coefficient field of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    /// The rational numbers.
    Rationals,
    /// The prime field with `p` elements; `p` must be prime.
    Prime(u64),
}

impl Field {
    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Prime {
                modulus: *p,
                value: 0,
            },
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::one()),
            Field::Prime(p) => FieldElement::Prime {
                modulus: *p,
                value: 1,
            },
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = *p as i128;
                let v = ((n as i128 % m) + m) % m;
                FieldElement::Prime {
                    modulus: *p,
                    value: v as u64,
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of a coefficient field.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed
/// by `BigRational`); prime-field values are reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { modulus: u64, value: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rationals,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Prime {
                    modulus: p,
                    value: a,
                },
                FieldElement::Prime {
                    modulus: q,
                    value: b,
                },
            ) => {
                assert_eq!(p, q, "mixed prime-field moduli");
                FieldElement::Prime {
                    modulus: *p,
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { modulus, value } => FieldElement::Prime {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Prime {
                    modulus: p,
                    value: a,
                },
                FieldElement::Prime {
                    modulus: q,
                    value: b,
                },
            ) => {
                assert_eq!(p, q, "mixed prime-field moduli");
                FieldElement::Prime {
                    modulus: *p,
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Prime { modulus, value } => {
                // extended Euclid on (value, modulus)
                let (mut r0, mut r1) = (*modulus as i128, *value as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                assert_eq!(r0, 1, "modulus is not prime");
                let m = *modulus as i128;
                let v = ((t0 % m) + m) % m;
                FieldElement::Prime {
                    modulus: *modulus,
                    value: v as u64,
                }
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    /// Exact rational value, if this element lives over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when a rational coefficient is negative; prime-field values count as
/// non-negative for display purposes.
pub fn display_negative(c: &FieldElement) -> bool {
    match c {
        FieldElement::Rational(r) => r.is_negative(),
        FieldElement::Prime { .. } => false,
    }
}
