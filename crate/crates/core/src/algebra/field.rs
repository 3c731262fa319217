use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Descriptor of a coefficient field, used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    Prime {
        p: u64,
    },
    Extension {
        p: u64,
        degree: usize,
        modulus: String,
    },
    Ratfunc {
        p: u64,
        variable: String,
    },
    /// A finite extension of a non-prime base, e.g. F_p(L)[b]/(m).
    Algebraic {
        base: Box<FieldKind>,
        modulus: String,
    },
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime { p } => write!(f, "F_{p}"),
            FieldKind::Extension { p, degree, .. } => write!(f, "F_{p}^{degree}"),
            FieldKind::Ratfunc { p, variable } => write!(f, "F_{p}({variable})"),
            FieldKind::Algebraic { base, modulus } => write!(f, "{base}[b]/({modulus})"),
        }
    }
}

/// An exact field of odd prime characteristic.
///
/// Fields are runtime context objects: elements are plain data and every
/// arithmetic operation goes through the field value.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero (or for a zero divisor if the modulus of an
    /// extension turned out to be reducible).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
    fn kind(&self) -> FieldKind;

    /// The residue `c` in `[0, p)` if `a` lies in the prime field.
    fn as_prime(&self, a: &Self::Elem) -> Option<u64>;

    /// A p-th root of `a` when one exists in the field and is computable.
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Number of elements for finite fields.
    fn order(&self) -> Option<u64>;

    /// All elements in a canonical order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Candidate roots for root finding: every element for finite fields,
    /// the template `c*L + d` for rational function fields.
    fn root_candidates(&self) -> Option<Vec<Self::Elem>> {
        self.elements()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        let p = self.characteristic();
        self.from_i64((n % p) as i64)
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_P: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= Self::MAX_P {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(self.reduce(s0))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Prime { p: self.p }
    }
    fn as_prime(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn pth_root(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}
