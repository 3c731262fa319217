use std::sync::Arc;

use super::field::{Field, FieldKind, PrimeField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Simple algebraic extension `base[t]/(m)` with `m` monic irreducible.
///
/// Elements are coefficient vectors of length `deg m` in powers of the
/// generator `t`.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    base: F,
    modulus: Arc<Poly<F>>,
    name: Arc<str>,
}

impl<F: Field> PartialEq for Extension<F> {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.modulus == o.modulus
    }
}

impl<F: Field> Extension<F> {
    /// Irreducibility is verified when the base is finite; otherwise a
    /// reducible modulus surfaces later as a failed inversion.
    pub fn new(base: F, modulus: Poly<F>, name: &str) -> Result<Self> {
        let name_err = || Error::BadModulus(modulus.format_with(name));
        if !modulus.is_monic() || modulus.deg0() == 0 {
            return Err(name_err());
        }
        if base.order().is_some() && !is_irreducible_finite(&modulus) {
            return Err(name_err());
        }
        Ok(Extension {
            base,
            modulus: Arc::new(modulus),
            name: Arc::from(name),
        })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gen(&self) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() == 1 {
            v[0] = self.base.neg(&self.modulus.coeff(0));
        } else {
            v[1] = self.base.one();
        }
        v
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c.clone();
        v
    }

    /// The element as a base element, if it lies in the base.
    pub fn as_base(&self, a: &[F::Elem]) -> Option<F::Elem> {
        a[1..]
            .iter()
            .all(|c| self.base.is_zero(c))
            .then(|| a[0].clone())
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.base.clone(), a.to_vec())
    }

    pub fn from_poly(&self, p: &Poly<F>) -> Vec<F::Elem> {
        let r = p.rem(&self.modulus);
        let mut v = r.into_coeffs();
        v.resize(self.degree(), self.base.zero());
        v
    }
}

impl Extension<PrimeField> {
    /// F_{p^k} with the lexicographically first monic irreducible modulus
    /// (coefficients compared from the constant term up).
    pub fn galois(p: u64, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(Error::BadModulus("degree 0".into()));
        }
        let total = (p as u128).checked_pow(k as u32).filter(|&q| q <= 1 << 40);
        if total.is_none() {
            return Err(Error::BadModulus(format!("F_{p}^{k} is too large")));
        }
        let mut digits = vec![0u64; k];
        loop {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let m = Poly::new(base, coeffs);
            if is_irreducible_finite(&m) {
                return Self::new(base, m, "t");
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
                if i == k {
                    unreachable!("irreducible polynomials exist in every degree");
                }
            }
        }
    }

    /// An element of multiplicative order exactly `n` (requires `n | q-1`).
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Vec<u64>> {
        let q = self.order()?;
        if (q - 1) % n != 0 {
            return None;
        }
        let primes: Vec<u64> = (2..=n)
            .filter(|&d| n.is_multiple_of(d) && super::field::is_prime(d))
            .collect();
        self.elements()?.into_iter().find(|z| {
            !self.is_zero(z)
                && self.is_one(&self.pow(z, n))
                && primes.iter().all(|&r| !self.is_one(&self.pow(z, n / r)))
        })
    }
}

/// Rabin's test over a finite base field of order q.
pub(crate) fn is_irreducible_finite<F: Field>(m: &Poly<F>) -> bool {
    let f = m.field();
    let q = f.order().expect("finite base") as u128;
    let k = m.deg0();
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = Poly::x(f);
    // x^{q^j} mod m for j = 0..=k
    let mut pows = vec![x.rem(m)];
    for j in 0..k {
        let next = pows[j].powmod(q, m);
        pows.push(next);
    }
    if pows[k] != x.rem(m) {
        return false;
    }
    let prime_divisors = (2..=k).filter(|&d| k.is_multiple_of(d) && super::field::is_prime(d as u64));
    for r in prime_divisors {
        let h = &pows[k / r] - &x;
        if !h.gcd(m).is_one() {
            return false;
        }
    }
    true
}

impl<F: Field> Field for Extension<F> {
    type Elem = Vec<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let k = self.degree();
        if k == 1 {
            return vec![f.mul(&a[0], &b[0])];
        }
        let mut t = vec![f.zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                t[i + j] = f.add(&t[i + j], &f.mul(x, y));
            }
        }
        let m = self.modulus.coeffs();
        for i in (k..2 * k - 1).rev() {
            let c = std::mem::replace(&mut t[i], f.zero());
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..k {
                if f.is_zero(&m[j]) {
                    continue;
                }
                t[i - k + j] = f.sub(&t[i - k + j], &f.mul(&c, &m[j]));
            }
        }
        t.truncate(k);
        t
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        if let Some(c) = self.as_base(a) {
            return Some(self.embed(&self.base.inv(&c)?));
        }
        let (g, s, _) = self.to_poly(a).ext_gcd(&self.modulus);
        if !g.is_one() {
            return None;
        }
        Some(self.from_poly(&s))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn format(&self, a: &Self::Elem) -> String {
        self.to_poly(a).format_with(&self.name)
    }
    fn kind(&self) -> FieldKind {
        let modulus = self.modulus.format_with(&self.name);
        match self.base.kind() {
            FieldKind::Prime { p } => FieldKind::Extension {
                p,
                degree: self.degree(),
                modulus,
            },
            other => FieldKind::Algebraic {
                base: Box::new(other),
                modulus,
            },
        }
    }
    fn as_prime(&self, a: &Self::Elem) -> Option<u64> {
        self.base.as_prime(&self.as_base(a)?)
    }
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem> {
        match self.order() {
            Some(q) => Some(self.pow(a, q / self.characteristic())),
            None => Some(self.embed(&self.base.pth_root(&self.as_base(a)?)?)),
        }
    }
    fn order(&self) -> Option<u64> {
        let q = self.base.order()?;
        q.checked_pow(self.degree() as u32)
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.elements()?;
        let k = self.degree();
        let total = base.len().checked_pow(k as u32)?;
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; k];
        for _ in 0..total {
            out.push(idx.iter().map(|&i| base[i].clone()).collect());
            for d in idx.iter_mut() {
                *d += 1;
                if *d < base.len() {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }
    fn root_candidates(&self) -> Option<Vec<Self::Elem>> {
        match self.elements() {
            Some(e) => Some(e),
            None => Some(
                self.base
                    .root_candidates()?
                    .iter()
                    .map(|c| self.embed(c))
                    .collect(),
            ),
        }
    }
}
