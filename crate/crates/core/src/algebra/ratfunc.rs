use std::sync::Arc;

use super::field::{Field, FieldKind, PrimeField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced fraction `num/den` with `den` monic and nonzero.
#[derive(Clone, Debug)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> PartialEq for RationalFunction<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl<F: Field> Eq for RationalFunction<F> {}

impl<F: Field> std::hash::Hash for RationalFunction<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.lc().unwrap().clone();
        if !field.is_one(&lc) {
            let inv = field.inv(&lc).unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RationalFunction { num: n, den: d })
    }

    /// Build from parts already known to be coprime; only normalizes the
    /// denominator's leading coefficient.
    pub fn from_coprime(num: Poly<F>, den: Poly<F>) -> Self {
        let field = num.field().clone();
        let lc = den.lc().expect("nonzero denominator").clone();
        if field.is_one(&lc) {
            return RationalFunction { num, den };
        }
        let inv = field.inv(&lc).unwrap();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero(field: &F) -> Self {
        RationalFunction {
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let den = Poly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&o.num * &a);
        Self::new(num, &a * &o.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::from_coprime(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv().ok_or(Error::DivisionByZero)?))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("inverse of zero")
        } else {
            self.clone()
        };
        let e = e.unsigned_abs();
        RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).unwrap()
    }

    /// Value at `a`, `None` at a pole.
    pub fn eval(&self, a: &F::Elem) -> Option<F::Elem> {
        let f = self.field();
        let d = self.den.eval(a);
        let di = f.inv(&d)?;
        Some(f.mul(&self.num.eval(a), &di))
    }

    /// Order of vanishing at `a` (negative for poles); panics on zero.
    pub fn ord_at(&self, a: &F::Elem) -> i64 {
        self.num.ord_at(a) as i64 - self.den.ord_at(a) as i64
    }

    /// Order at infinity: `deg den - deg num`.
    pub fn ord_at_infinity(&self) -> i64 {
        self.den.deg0() as i64 - self.num.degree().expect("nonzero") as i64
    }

    /// `lim_{x -> inf} x^k f`, or `None` if the limit is infinite.
    pub fn limit_at_infinity(&self, k: usize) -> Option<F::Elem> {
        let f = self.field();
        let Some(dn) = self.num.degree() else {
            return Some(f.zero());
        };
        let dd = self.den.deg0();
        match (dn + k).cmp(&dd) {
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Less => Some(f.zero()),
            std::cmp::Ordering::Equal => Some(self.num.lc().unwrap().clone()),
        }
    }

    /// Coefficient of `(x-a)^k` in the Laurent expansion at `a`, for
    /// `k >= -(pole order)`.
    pub fn laurent_coeff(&self, a: &F::Elem, k: i64) -> F::Elem {
        let f = self.field();
        if self.is_zero() {
            return f.zero();
        }
        let n = self.num.taylor_shift(a);
        let d = self.den.taylor_shift(a);
        let m = d.low_order();
        let dt = Poly::new(f.clone(), d.coeffs()[m..].to_vec());
        let target = k + m as i64;
        if target < 0 {
            return f.zero();
        }
        let s = series_div(&n, &dt, target as usize + 1);
        s[target as usize].clone()
    }

    /// `num/den`, each side parenthesized when it has several terms.
    pub fn format_with(&self, var: &str) -> String {
        let wrap = |p: &Poly<F>| {
            let s = p.format_with(var);
            if p.coeffs()
                .iter()
                .filter(|c| !self.field().is_zero(c))
                .count()
                > 1
            {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// First `len` power-series coefficients of `n/d`, `d(0) != 0`.
pub(crate) fn series_div<F: Field>(n: &Poly<F>, d: &Poly<F>, len: usize) -> Vec<F::Elem> {
    let f = n.field();
    let d0inv = f.inv(&d.coeff(0)).expect("series divisor must be a unit");
    let mut out: Vec<F::Elem> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = n.coeff(i);
        for j in 1..=i.min(d.deg0()) {
            acc = f.sub(&acc, &f.mul(&d.coeff(j), &out[i - j]));
        }
        out.push(f.mul(&acc, &d0inv));
    }
    out
}

/// The field F_p(L) of rational functions in one variable over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    base: PrimeField,
    var: Arc<str>,
}

impl RatFuncField {
    pub fn new(p: u64, var: &str) -> Result<Self> {
        Ok(RatFuncField {
            base: PrimeField::new(p)?,
            var: Arc::from(var),
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The transcendental generator.
    pub fn gen(&self) -> RationalFunction<PrimeField> {
        RationalFunction::from_poly(Poly::x(&self.base))
    }

    pub fn from_poly_ints(&self, coeffs: &[i64]) -> RationalFunction<PrimeField> {
        RationalFunction::from_poly(Poly::from_ints(&self.base, coeffs))
    }

    /// Substitute a value for the variable, `None` at a pole.
    pub fn specialize(&self, a: &RationalFunction<PrimeField>, value: u64) -> Option<u64> {
        a.eval(&value)
    }
}

impl Field for RatFuncField {
    type Elem = RationalFunction<PrimeField>;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn zero(&self) -> Self::Elem {
        RationalFunction::zero(&self.base)
    }
    fn one(&self) -> Self::Elem {
        RationalFunction::one(&self.base)
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        RationalFunction::constant(&self.base, self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inv()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        a.num().is_one() && a.den().is_one()
    }
    fn format(&self, a: &Self::Elem) -> String {
        a.format_with(&self.var)
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Ratfunc {
            p: self.base.p(),
            variable: self.var.to_string(),
        }
    }
    fn as_prime(&self, a: &Self::Elem) -> Option<u64> {
        if a.is_zero() {
            return Some(0);
        }
        (a.den().is_one() && a.num().is_constant()).then(|| a.num().coeff(0))
    }
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = self.base.p() as usize;
        let n = a.num().deflate(p).ok()?;
        let d = a.den().deflate(p).ok()?;
        Some(RationalFunction::from_coprime(n, d))
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
    fn root_candidates(&self) -> Option<Vec<Self::Elem>> {
        let p = self.base.p();
        let mut out = Vec::with_capacity((p * p) as usize);
        for c in 0..p {
            for d in 0..p {
                out.push(RationalFunction::from_poly(Poly::new(
                    self.base,
                    vec![d, c],
                )));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = PrimeField::new(7).unwrap();
        let n = Poly::from_ints(&f, &[-1, 0, 1]);
        let d = Poly::from_ints(&f, &[2, 2]);
        let r = RationalFunction::new(n, d).unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&f, &[-4, 4]));
        assert_eq!(r.den(), &Poly::one(&f));
    }

    #[test]
    fn field_axioms_on_samples() {
        let k = RatFuncField::new(7, "L").unwrap();
        let l = k.gen();
        let a = k.add(&l, &k.one());
        let b = k.mul(&l, &l);
        let q = k.div(&a, &b).unwrap();
        assert_eq!(k.mul(&q, &b), a);
        assert_eq!(k.format(&a), "(1+L)/1");
        assert_eq!(k.format(&k.inv(&a).unwrap()), "1/(1+L)");
    }

    #[test]
    fn laurent_coefficients() {
        let f = PrimeField::new(5).unwrap();
        // x/(x-1) = 1 + 1/(x-1)
        let r = RationalFunction::new(Poly::x(&f), Poly::from_ints(&f, &[-1, 1])).unwrap();
        assert_eq!(r.laurent_coeff(&1, -1), 1);
        assert_eq!(r.laurent_coeff(&1, 0), 1);
        assert_eq!(r.laurent_coeff(&1, 1), 0);
    }

    #[test]
    fn pth_roots_in_ratfunc() {
        let k = RatFuncField::new(3, "L").unwrap();
        let a = k.from_poly_ints(&[1, 0, 0, 2]);
        assert_eq!(k.pth_root(&a).unwrap(), k.from_poly_ints(&[1, 2]));
        assert!(k.pth_root(&k.gen()).is_none());
    }
}
