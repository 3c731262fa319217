use super::field::Field;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// `D^k f`.
pub fn derivative_iter<F: Field>(f: &Poly<F>, k: usize) -> Poly<F> {
    let mut g = f.clone();
    for _ in 0..k {
        if g.is_zero() {
            break;
        }
        g = g.derivative();
    }
    g
}

/// `D^{p-1} f` by Wilson's theorem: only exponents `n = -1 (mod p)`
/// survive, each with multiplier `-1`.
pub fn wilson_derivative<F: Field>(f: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut out = vec![field.zero(); f.coeffs().len().saturating_sub(p - 1)];
    for (n, c) in f.coeffs().iter().enumerate() {
        if n >= p - 1 && n % p == p - 1 {
            out[n + 1 - p] = field.neg(c);
        }
    }
    Poly::new(field.clone(), out)
}

/// Coefficientwise Frobenius `c -> c^p`, so that `f^p = twist(f)(x^p)`.
pub fn frobenius_twist<F: Field>(f: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let p = field.characteristic();
    f.map_coeffs(|c| field.pow(c, p))
}

/// `g` with `g(x^p) = f`.
pub fn deflate_p<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    f.deflate(f.field().characteristic() as usize)
}

/// Reduced `D^{p-1}(a) / g^p`.
///
/// Both `D^{p-1}(a)` and `g^p` are polynomials in `y = x^p`, so the
/// reduction is done in `y`, where degrees are p times smaller.
pub fn indicator_over_pth_power<F: Field>(a: &Poly<F>, g: &Poly<F>) -> RationalFunction<F> {
    let p = a.field().characteristic() as usize;
    let n = wilson_derivative(a)
        .deflate(p)
        .expect("D^(p-1) lands in k[x^p]");
    let h = frobenius_twist(g);
    let r = RationalFunction::new(n, h).expect("nonzero denominator");
    RationalFunction::from_coprime(r.num().inflate(p), r.den().inflate(p))
}

/// `D^{p-1} F` via `D^{p-1}(A/B) = D^{p-1}(A B^{p-1}) / B^p`.
pub fn rational_wilson_derivative<F: Field>(f: &RationalFunction<F>) -> RationalFunction<F> {
    let p = f.field().characteristic();
    let b = f.den();
    if b.is_one() {
        return RationalFunction::from_poly(wilson_derivative(f.num()));
    }
    let a = f.num() * &b.pow(p - 1);
    indicator_over_pth_power(&a, b)
}

/// Residue of `f` at `tau` with the default pole-order cap `2p`.
pub fn residue_at<F: Field>(f: &RationalFunction<F>, tau: &F::Elem) -> Result<F::Elem> {
    let cap = 2 * f.field().characteristic() as usize;
    residue_at_with_cap(f, tau, cap)
}

pub fn residue_at_with_cap<F: Field>(
    f: &RationalFunction<F>,
    tau: &F::Elem,
    cap: usize,
) -> Result<F::Elem> {
    let field = f.field();
    if f.is_zero() {
        return Ok(field.zero());
    }
    let order = f.den().ord_at(tau);
    if order > cap {
        return Err(Error::PoleOrderExceedsCap { order, cap });
    }
    if order == 0 {
        return Ok(field.zero());
    }
    Ok(f.laurent_coeff(tau, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn iterated_derivative_examples() {
        let f = fp(5);
        assert_eq!(
            derivative_iter(&Poly::from_ints(&f, &[0, 0, 1]), 1),
            Poly::from_ints(&f, &[0, 2])
        );
        assert!(derivative_iter(&Poly::monomial(&f, 1, 5), 1).is_zero());
        let g = fp(3);
        assert!(derivative_iter(&Poly::from_ints(&g, &[0, 1, 0, 0, 1]), 2).is_zero());
    }

    #[test]
    fn wilson_examples() {
        let f = fp(5);
        assert_eq!(
            wilson_derivative(&Poly::monomial(&f, 1, 4)),
            Poly::constant(&f, 4)
        );
        assert!(wilson_derivative(&Poly::monomial(&f, 1, 3)).is_zero());
        let a = &Poly::monomial(&f, 1, 9) + &Poly::monomial(&f, 1, 4);
        let expected = Poly::from_ints(&f, &[4, 0, 0, 0, 0, 4]);
        assert_eq!(wilson_derivative(&a), expected);
        assert_eq!(derivative_iter(&a, 4), expected);
    }

    #[test]
    fn rational_wilson_examples() {
        for p in [3u64, 5, 7, 13] {
            let f = fp(p);
            let inv_x = RationalFunction::new(Poly::one(&f), Poly::x(&f)).unwrap();
            let expected =
                RationalFunction::new(Poly::constant(&f, p - 1), Poly::monomial(&f, 1, p as usize))
                    .unwrap();
            assert_eq!(rational_wilson_derivative(&inv_x), expected);
            let inv_x2 = RationalFunction::new(Poly::one(&f), Poly::monomial(&f, 1, 2)).unwrap();
            assert!(rational_wilson_derivative(&inv_x2).is_zero());
        }
        // iterated quotient rule oracle at p = 3
        let f = fp(3);
        let inv_x2 = RationalFunction::new(Poly::one(&f), Poly::monomial(&f, 1, 2)).unwrap();
        assert!(inv_x2.derivative().derivative().is_zero());
        let f5 = fp(5);
        let x4 = RationalFunction::from_poly(Poly::monomial(&f5, 1, 4));
        assert_eq!(
            rational_wilson_derivative(&x4),
            RationalFunction::constant(&f5, 4)
        );
    }

    #[test]
    fn residues() {
        let f = fp(5);
        let inv_x = RationalFunction::new(Poly::one(&f), Poly::x(&f)).unwrap();
        assert_eq!(residue_at(&inv_x, &0).unwrap(), 1);
        let inv_x2 = RationalFunction::new(Poly::one(&f), Poly::monomial(&f, 1, 2)).unwrap();
        assert_eq!(residue_at(&inv_x2, &0).unwrap(), 0);
        let r = RationalFunction::new(Poly::x(&f), Poly::from_ints(&f, &[-1, 1])).unwrap();
        assert_eq!(residue_at(&r, &1).unwrap(), 1);
        let deep = RationalFunction::new(Poly::one(&f), Poly::monomial(&f, 1, 11)).unwrap();
        assert!(matches!(
            residue_at(&deep, &0),
            Err(Error::PoleOrderExceedsCap { order: 11, cap: 10 })
        ));
    }

    #[test]
    fn deflation_examples() {
        let f = fp(3);
        let a = Poly::from_ints(&f, &[1, 0, 0, 2, 0, 0, 1]);
        assert_eq!(deflate_p(&a).unwrap(), Poly::from_ints(&f, &[1, 2, 1]));
        assert!(matches!(
            deflate_p(&Poly::monomial(&f, 1, 4)),
            Err(Error::NotPPower(4))
        ));
    }
}
