//! Fuchsian operators `L = D^2 + p1 D + p2` with marked singularities
//! `x_1, ..., x_{r-1}` and `x_r = inf`.

use crate::algebra::{Field, Poly, PrimeField, RationalFunction};
use crate::error::{Error, Result};

/// A point of the projective line over the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Finite(E),
    Infinity,
}

impl<E> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

pub fn format_point<F: Field>(field: &F, pt: &Point<F::Elem>) -> String {
    match pt {
        Point::Finite(a) => field.format(a),
        Point::Infinity => "inf".into(),
    }
}

/// Exponents, accessory parameters and solution degree of a normalized
/// operator.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedData<F: Field> {
    pub alpha: Vec<u64>,
    pub beta: Vec<F::Elem>,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct FuchsianOperator<F: Field> {
    field: F,
    singularities: Vec<F::Elem>,
    p1: RationalFunction<F>,
    p2: RationalFunction<F>,
    normalized: Option<NormalizedData<F>>,
}

/// Unordered pair of local exponents at a point, as field elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentData<F: Field> {
    pub point: Point<F::Elem>,
    pub sum: F::Elem,
    pub product: F::Elem,
}

/// Local exponents in F_p, oriented so that `t = alpha' - alpha (mod p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalExponentPair<F: Field> {
    pub point: Point<F::Elem>,
    pub alpha: u64,
    pub alpha_prime: u64,
    pub t: u64,
}

impl<F: Field> LocalExponentPair<F> {
    fn new(point: Point<F::Elem>, alpha: u64, alpha_prime: u64, p: u64) -> Self {
        let t = (alpha_prime + p - alpha) % p;
        LocalExponentPair {
            point,
            alpha,
            alpha_prime,
            t,
        }
    }

    /// Swap so that `alpha'` is the exponent congruent to `target`.
    fn orient(&self, target: u64, p: u64) -> Self {
        if self.alpha_prime == target || self.alpha != target {
            self.clone()
        } else {
            Self::new(self.point.clone(), self.alpha_prime, self.alpha, p)
        }
    }
}

fn check_distinct<F: Field>(field: &F, sing: &[F::Elem]) -> Result<()> {
    for (i, a) in sing.iter().enumerate() {
        if sing[..i].contains(a) {
            return Err(Error::DuplicateSingularity(field.format(a)));
        }
    }
    Ok(())
}

impl<F: Field> FuchsianOperator<F> {
    /// Operator from explicit coefficients; checks the Fuchs conditions.
    pub fn new(
        field: F,
        singularities: Vec<F::Elem>,
        p1: RationalFunction<F>,
        p2: RationalFunction<F>,
    ) -> Result<Self> {
        check_distinct(&field, &singularities)?;
        if singularities.len() < 2 {
            return Err(Error::BadArity {
                what: "finite singularities",
                expected: 2,
                got: singularities.len(),
            });
        }
        let p0 = Poly::from_roots(&field, &singularities);
        if !p1.is_zero() && (!p0.rem(p1.den()).is_zero() || p1.ord_at_infinity() < 1) {
            return Err(Error::NotFuchsian(
                "p1 must have simple poles at the singularities and vanish at inf".into(),
            ));
        }
        if !p2.is_zero() && (!(&p0 * &p0).rem(p2.den()).is_zero() || p2.ord_at_infinity() < 2) {
            return Err(Error::NotFuchsian(
                "p2 must have poles of order <= 2 at the singularities and a double zero at inf"
                    .into(),
            ));
        }
        Ok(FuchsianOperator {
            field,
            singularities,
            p1,
            p2,
            normalized: None,
        })
    }

    /// Operator without the Fuchs checks, for diagnosing corrupted input.
    pub fn new_unchecked(
        field: F,
        singularities: Vec<F::Elem>,
        p1: RationalFunction<F>,
        p2: RationalFunction<F>,
    ) -> Self {
        FuchsianOperator {
            field,
            singularities,
            p1,
            p2,
            normalized: None,
        }
    }

    /// The normalized operator with exponents `{0, alpha_i}` at finite
    /// singularities and `{-d, -d + alpha_r}` at infinity:
    /// `p1 = sum (1 - alpha_i)/(x - x_i)`,
    /// `p2 = (d(d - alpha_r) x^{r-3} + beta_{r-4} x^{r-4} + ... + beta_0) / P0`.
    pub fn make_normalized(
        field: F,
        singularities: Vec<F::Elem>,
        alpha: &[u64],
        beta: Vec<F::Elem>,
        d: u64,
    ) -> Result<Self> {
        check_distinct(&field, &singularities)?;
        let r = singularities.len() + 1;
        if r < 3 {
            return Err(Error::BadArity {
                what: "finite singularities",
                expected: 2,
                got: singularities.len(),
            });
        }
        if alpha.len() != r {
            return Err(Error::BadArity {
                what: "alpha",
                expected: r,
                got: alpha.len(),
            });
        }
        if beta.len() != r - 3 {
            return Err(Error::BadArity {
                what: "beta",
                expected: r - 3,
                got: beta.len(),
            });
        }
        let p = field.characteristic();
        let alpha: Vec<u64> = alpha.iter().map(|a| a % p).collect();
        let finite_sum: u64 = alpha[..r - 1].iter().sum();
        let expected = ((r as u64 - 2) % p + 2 * (d % p) + (r as u64) * p - finite_sum % p) % p;
        if alpha[r - 1] != expected {
            return Err(Error::ExponentMismatch {
                expected,
                got: alpha[r - 1],
            });
        }
        let p0 = Poly::from_roots(&field, &singularities);
        let mut p1 = RationalFunction::zero(&field);
        for (x, a) in singularities.iter().zip(&alpha) {
            let c = field.from_i64(1 - *a as i64);
            let term = RationalFunction::new(Poly::constant(&field, c), Poly::linear(&field, x))?;
            p1 = p1.add(&term);
        }
        let lead = field.from_i64(((d % p) * ((d + p - alpha[r - 1]) % p)) as i64);
        let mut num = beta.clone();
        num.push(lead);
        let p2 = RationalFunction::new(Poly::new(field.clone(), num), p0)?;
        Ok(FuchsianOperator {
            field,
            singularities,
            p1,
            p2,
            normalized: Some(NormalizedData { alpha, beta, d }),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    /// Number of singularities including infinity.
    pub fn r(&self) -> usize {
        self.singularities.len() + 1
    }

    pub fn singularities(&self) -> &[F::Elem] {
        &self.singularities
    }

    pub fn points(&self) -> Vec<Point<F::Elem>> {
        let mut v: Vec<_> = self
            .singularities
            .iter()
            .cloned()
            .map(Point::Finite)
            .collect();
        v.push(Point::Infinity);
        v
    }

    pub fn p1(&self) -> &RationalFunction<F> {
        &self.p1
    }

    pub fn p2(&self) -> &RationalFunction<F> {
        &self.p2
    }

    pub fn normalized(&self) -> Option<&NormalizedData<F>> {
        self.normalized.as_ref()
    }

    /// `P0 = prod (x - x_i)`.
    pub fn p0(&self) -> Poly<F> {
        Poly::from_roots(&self.field, &self.singularities)
    }

    /// Same singularities and coefficients (normalization metadata ignored).
    pub fn same_operator(&self, o: &Self) -> bool {
        self.singularities == o.singularities && self.p1 == o.p1 && self.p2 == o.p2
    }

    /// `L(u)`.
    pub fn apply(&self, u: &Poly<F>) -> RationalFunction<F> {
        let d1 = u.derivative();
        let d2 = d1.derivative();
        RationalFunction::from_poly(d2)
            .add(&self.p1.mul_poly(&d1))
            .add(&self.p2.mul_poly(u))
    }

    /// `(A2, A1, A0)` with `A2 L = A2 D^2 + A1 D + A0` polynomial.
    pub fn polynomial_form(&self) -> (Poly<F>, Poly<F>, Poly<F>) {
        let g = self.p1.den().gcd(self.p2.den());
        let m = &self.p1.den().div_exact(&g).unwrap() * self.p2.den();
        let a1 = self.p1.mul_poly(&m);
        let a0 = self.p2.mul_poly(&m);
        debug_assert!(a1.is_polynomial() && a0.is_polynomial());
        (m, a1.num().clone(), a0.num().clone())
    }

    /// Sums and products of the local exponents at every singularity, as
    /// field elements.
    pub fn exponent_data(&self) -> Vec<ExponentData<F>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.r());
        for x in &self.singularities {
            let res = self.p1.laurent_coeff(x, -1);
            out.push(ExponentData {
                point: Point::Finite(x.clone()),
                sum: f.sub(&f.one(), &res),
                product: self.p2.laurent_coeff(x, -2),
            });
        }
        let a = self.p1.limit_at_infinity(1).expect("Fuchsian at infinity");
        let b = self.p2.limit_at_infinity(2).expect("Fuchsian at infinity");
        out.push(ExponentData {
            point: Point::Infinity,
            sum: f.sub(&a, &f.one()),
            product: b,
        });
        out
    }

    /// Local exponents as F_p residues.
    ///
    /// Normalized operators are oriented as `(alpha_i, 0)` at finite points
    /// and `(-d + alpha_r, -d)` at infinity, so `alpha'` is the exponent
    /// of the minimal solution; otherwise pairs are sorted.
    pub fn local_exponents(&self) -> Result<Vec<LocalExponentPair<F>>> {
        let p = self.p();
        let fp = PrimeField::new(p)?;
        let mut out = Vec::new();
        for (i, e) in self.exponent_data().into_iter().enumerate() {
            let not_fp = || Error::NotInPrimeField {
                point: format_point(&self.field, &e.point),
                sum: self.field.format(&e.sum),
                product: self.field.format(&e.product),
            };
            let s = self.field.as_prime(&e.sum).ok_or_else(not_fp)?;
            let q = self.field.as_prime(&e.product).ok_or_else(not_fp)?;
            let roots: Vec<u64> = (0..p)
                .filter(|&t| fp.add(&fp.sub(&fp.mul(&t, &t), &fp.mul(&s, &t)), &q) == 0)
                .collect();
            let (lo, hi) = match roots.as_slice() {
                [a] => (*a, *a),
                [a, b] => (*a, *b),
                _ => return Err(not_fp()),
            };
            let mut pair = LocalExponentPair::new(e.point, lo, hi, p);
            if let Some(nd) = &self.normalized {
                let target = if i + 1 < self.r() {
                    0
                } else {
                    (p - nd.d % p) % p
                };
                pair = pair.orient(target, p);
            }
            out.push(pair);
        }
        Ok(out)
    }

    /// Exponents oriented by a polynomial solution: `alpha'` is
    /// `ord_{x_i}(u)` at finite points and `-deg u` at infinity.
    pub fn exponents_for_solution(&self, u: &Poly<F>) -> Result<Vec<LocalExponentPair<F>>> {
        let p = self.p();
        let pairs = self.local_exponents()?;
        Ok(pairs
            .iter()
            .map(|pair| {
                let target = match &pair.point {
                    Point::Finite(x) => u.ord_at(x) as u64 % p,
                    Point::Infinity => (p - u.deg0() as u64 % p) % p,
                };
                pair.orient(target, p)
            })
            .collect())
    }

    /// `sum (alpha_i + alpha_i') = r - 2` in the field.
    ///
    /// Always true for a Fuchsian operator (residue theorem); fails for
    /// coefficients with poles off the marked points or irregular at inf.
    pub fn riemann_check(&self) -> bool {
        let f = &self.field;
        let Some(a) = self.p1.limit_at_infinity(1) else {
            return false;
        };
        let mut total = f.sub(&a, &f.one());
        for x in &self.singularities {
            total = f.add(&total, &f.sub(&f.one(), &self.p1.laurent_coeff(x, -1)));
        }
        total == f.from_i64(self.r() as i64 - 2)
    }

    /// The operator whose solutions are `u * prod (x - x_i)^{-mu_i}` for
    /// solutions `u` of `L`: exponents shift by `-mu_i` at `x_i` and by
    /// `sum mu_i` at infinity.
    pub fn gauge_transform(&self, mu: &[i64]) -> Result<Self> {
        if mu.len() != self.singularities.len() {
            return Err(Error::BadArity {
                what: "mu",
                expected: self.singularities.len(),
                got: mu.len(),
            });
        }
        let p = self.p() as i64;
        if mu.iter().all(|m| m.rem_euclid(p) == 0) {
            return Ok(self.clone());
        }
        let f = &self.field;
        // g = h'/h for h = prod (x - x_i)^{-mu_i}
        let mut g = RationalFunction::zero(f);
        for (x, m) in self.singularities.iter().zip(mu) {
            let term =
                RationalFunction::new(Poly::constant(f, f.from_i64(-m)), Poly::linear(f, x))?;
            g = g.add(&term);
        }
        let two_g = g.scale(&f.from_i64(2));
        let p1 = self.p1.sub(&two_g);
        let p2 = self
            .p2
            .add(&g.mul(&g))
            .sub(&g.derivative())
            .sub(&self.p1.mul(&g));
        Ok(FuchsianOperator {
            field: f.clone(),
            singularities: self.singularities.clone(),
            p1,
            p2,
            normalized: None,
        })
    }

    /// Coefficient of the Wronskian equation `L_W = D + p1`.
    pub fn wronskian(&self) -> RationalFunction<F> {
        self.p1.clone()
    }

    /// The same operator over a larger field.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        embed: impl Fn(&F::Elem) -> G::Elem,
    ) -> FuchsianOperator<G> {
        let mp = |p: &Poly<F>| Poly::new(target.clone(), p.coeffs().iter().map(&embed).collect());
        let mr = |r: &RationalFunction<F>| RationalFunction::from_coprime(mp(r.num()), mp(r.den()));
        FuchsianOperator {
            field: target.clone(),
            singularities: self.singularities.iter().map(&embed).collect(),
            p1: mr(&self.p1),
            p2: mr(&self.p2),
            normalized: self.normalized.as_ref().map(|n| NormalizedData {
                alpha: n.alpha.clone(),
                beta: n.beta.iter().map(&embed).collect(),
                d: n.d,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Extension, RatFuncField};

    fn gauss(p: u64) -> FuchsianOperator<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 0], vec![], (p - 1) / 2).unwrap()
    }

    #[test]
    fn gauss_operator_coefficients() {
        let l = gauss(7);
        let f = *l.field();
        let t = Poly::from_ints(&f, &[0, -1, 1]);
        assert_eq!(
            l.p1(),
            &RationalFunction::new(Poly::from_ints(&f, &[-1, 2]), t.clone()).unwrap()
        );
        // 1/4 = 2 mod 7
        assert_eq!(
            l.p2(),
            &RationalFunction::new(Poly::constant(&f, 2), t).unwrap()
        );
        assert_eq!(l.wronskian(), l.p1().clone());
    }

    #[test]
    fn gauss_exponents_and_riemann() {
        let l = gauss(7);
        let ex = l.local_exponents().unwrap();
        assert_eq!((ex[0].alpha, ex[0].alpha_prime), (0, 0));
        assert_eq!((ex[1].alpha, ex[1].alpha_prime), (0, 0));
        assert_eq!((ex[2].alpha, ex[2].alpha_prime), (4, 4));
        assert!(l.riemann_check());
    }

    #[test]
    fn normalized_exponents_over_ratfunc() {
        let k = RatFuncField::new(7, "L").unwrap();
        let sing = vec![k.zero(), k.one(), k.gen()];
        let l =
            FuchsianOperator::make_normalized(k.clone(), sing, &[5, 5, 5, 5], vec![k.zero()], 2)
                .unwrap();
        let three = RationalFunction::constant(k.base(), 3);
        assert_eq!(l.p1().laurent_coeff(&k.gen(), -1), three);
        let ex = l.local_exponents().unwrap();
        for e in &ex[..3] {
            assert_eq!((e.alpha, e.alpha_prime, e.t), (5, 0, 2));
        }
        assert_eq!((ex[3].alpha, ex[3].alpha_prime), (3, 5));
        assert!(l.riemann_check());
    }

    #[test]
    fn arity_and_duplicates() {
        let f = PrimeField::new(7).unwrap();
        let dup = FuchsianOperator::make_normalized(f, vec![0, 0], &[0, 0, 0], vec![], 3);
        assert!(matches!(dup, Err(Error::DuplicateSingularity(_))));
        let bad = FuchsianOperator::make_normalized(f, vec![0, 1, 3], &[5, 5], vec![0], 2);
        assert!(matches!(bad, Err(Error::BadArity { what: "alpha", .. })));
        let mismatch = FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 1], vec![], 3);
        assert!(matches!(
            mismatch,
            Err(Error::ExponentMismatch {
                expected: 0,
                got: 1
            })
        ));
    }

    #[test]
    fn corrupted_p1_breaks_riemann() {
        let l = gauss(7);
        let f = *l.field();
        // a pole away from the marked points
        let bump =
            RationalFunction::new(Poly::constant(&f, 1), Poly::from_ints(&f, &[-3, 1])).unwrap();
        assert!(FuchsianOperator::new(f, vec![0, 1], l.p1().add(&bump), l.p2().clone()).is_err());
        let bad = FuchsianOperator::new_unchecked(f, vec![0, 1], l.p1().add(&bump), l.p2().clone());
        assert!(!bad.riemann_check());
    }

    #[test]
    fn gauge_shifts_exponents_and_inverts() {
        let f = PrimeField::new(13).unwrap();
        let l = FuchsianOperator::make_normalized(f, vec![0, 1, 5], &[11, 11, 11, 10], vec![3], 1)
            .unwrap();
        let mu = [2, -1, 4];
        let g = l.gauge_transform(&mu).unwrap();
        let before = l.exponent_data();
        let after = g.exponent_data();
        for i in 0..3 {
            // each exponent shifts by -mu_i: sum by -2 mu_i
            assert_eq!(after[i].sum, f.sub(&before[i].sum, &f.from_i64(2 * mu[i])));
        }
        let total: i64 = mu.iter().sum();
        assert_eq!(after[3].sum, f.add(&before[3].sum, &f.from_i64(2 * total)));
        assert!(g.riemann_check());
        let back = g.gauge_transform(&[-2, 1, -4]).unwrap();
        assert!(back.same_operator(&l));
        assert!(l.gauge_transform(&[0, 13, 0]).unwrap().same_operator(&l));
    }

    #[test]
    fn thirteen_family_twin_normalization() {
        let f = PrimeField::new(13).unwrap();
        let a = FuchsianOperator::make_normalized(f, vec![0, 1, 5], &[11, 11, 11, 10], vec![7], 1)
            .unwrap();
        let b = FuchsianOperator::make_normalized(f, vec![0, 1, 5], &[11, 11, 11, 3], vec![7], 4)
            .unwrap();
        assert!(a.same_operator(&b));
    }

    #[test]
    fn extension_field_operator() {
        let f = Extension::galois(7, 2).unwrap();
        let sing = vec![f.zero(), f.one(), f.gen()];
        let l = FuchsianOperator::make_normalized(
            f.clone(),
            sing,
            &[5, 5, 5, 5],
            vec![f.from_i64(3)],
            2,
        )
        .unwrap();
        assert!(l.riemann_check());
        assert_eq!(l.local_exponents().unwrap()[3].alpha_prime, 5);
    }
}
