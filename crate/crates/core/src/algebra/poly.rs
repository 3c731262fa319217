use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &F) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field.clone(), vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, n: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// `x - a`.
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        Self::new(field.clone(), vec![field.neg(a), field.one()])
    }

    pub fn from_ints(field: &F, coeffs: &[i64]) -> Self {
        Self::new(
            field.clone(),
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    /// Product of `(x - a)` over the given roots.
    pub fn from_roots(field: &F, roots: &[F::Elem]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, a| &acc * &Self::linear(field, a))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Self::new(self.field.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, a: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f
            .inv(d.lc().unwrap())
            .expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dj);
                r[i + j] = f.sub(&r[i + j], &t);
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(f.clone(), q), Self::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = f.inv(c).expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Coefficients of `f(x + a)`.
    pub fn taylor_shift(&self, a: &F::Elem) -> Self {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&c[j + 1], a);
                c[j] = f.add(&c[j], &t);
            }
        }
        Self::new(f.clone(), c)
    }

    /// Multiplicity of `a` as a root (0 if not a root); panics on zero.
    pub fn ord_at(&self, a: &F::Elem) -> usize {
        assert!(!self.is_zero(), "order of the zero polynomial");
        let lin = Self::linear(&self.field, a);
        let mut g = self.clone();
        let mut k = 0;
        while let Some(q) = g.div_exact(&lin) {
            g = q;
            k += 1;
        }
        k
    }

    /// Largest `k` with `x^k | self`.
    pub fn low_order(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| self.field.is_zero(c))
            .count()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, c| {
            &(&acc * g) + &Self::constant(f, c.clone())
        })
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly {
            field: f.clone(),
            coeffs,
        }
    }

    /// `g` with `g(x^k) = self`, if every exponent is a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Result<Self> {
        let f = &self.field;
        if let Some((i, _)) = self
            .coeffs
            .iter()
            .enumerate()
            .find(|(i, c)| i % k != 0 && !f.is_zero(c))
        {
            return Err(Error::NotPPower(i));
        }
        Ok(Self::new(
            f.clone(),
            self.coeffs.iter().step_by(k).cloned().collect(),
        ))
    }

    /// Render with the given variable name, ascending exponents.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let mut cs = f.format(c);
            let compound = cs.contains(['+', '/', '*']) || cs[1..].contains('-');
            if compound && i > 0 {
                cs = format!("({cs})");
            }
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if f.is_one(c) {
                        mono
                    } else {
                        format!("{cs}*{mono}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.map_coeffs(|c| self.field.neg(c))
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                c[i + j] = f.add(&c[i + j], &t);
            }
        }
        Poly::new(f.clone(), c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn canonical_zero() {
        let p = Poly::from_ints(&f7(), &[0, 7, 14]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn division_roundtrip() {
        let f = f7();
        let a = Poly::from_ints(&f, &[3, 1, 4, 1, 5, 9, 2]);
        let b = Poly::from_ints(&f, &[2, 6, 5]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let f = f7();
        let g = Poly::from_ints(&f, &[1, 1]);
        let a = &g * &Poly::from_ints(&f, &[2, 0, 1]);
        let b = &g * &Poly::from_ints(&f, &[5, 3]);
        assert_eq!(a.gcd(&b), g);
        let (h, s, t) = a.ext_gcd(&b);
        assert_eq!(h, g);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let f = f7();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4]);
        let shifted = a.taylor_shift(&3);
        let lin = Poly::from_ints(&f, &[3, 1]);
        assert_eq!(shifted, a.compose(&lin));
    }

    #[test]
    fn ord_at_counts_multiplicity() {
        let f = f7();
        let a = Poly::from_roots(&f, &[2, 2, 2, 5]);
        assert_eq!(a.ord_at(&2), 3);
        assert_eq!(a.ord_at(&5), 1);
        assert_eq!(a.ord_at(&1), 0);
    }

    #[test]
    fn formatting() {
        let f = f7();
        let a = Poly::from_ints(&f, &[1, 0, 3, 1]);
        assert_eq!(a.format_with("x"), "1+3*x^2+x^3");
        assert_eq!(Poly::zero(&f).format_with("x"), "0");
    }
}
