//! The p-curvature trichotomy and the indicator `D^{p-1}(1/(Q u^2))`.

use crate::algebra::{
    closure_multiplicities, indicator_over_pth_power, Field, Poly, RationalFunction,
};
use crate::error::{Error, Result};
use crate::operators::{FuchsianOperator, LocalExponentPair};
use crate::solutions::{default_bound, polynomial_kernel, SolutionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureClass {
    Zero,
    NilpotentNonzero,
    NotNilpotent,
}

impl std::fmt::Display for CurvatureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CurvatureClass::Zero => "Zero",
            CurvatureClass::NilpotentNonzero => "NilpotentNonzero",
            CurvatureClass::NotNilpotent => "NotNilpotent",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PCurvatureReport<F: Field> {
    pub class: CurvatureClass,
    pub q: Option<Poly<F>>,
    /// Reduced `D^{p-1}(1/(Q u^2))` for the minimal solution `u`.
    pub indicator: Option<RationalFunction<F>>,
    pub solutions: Option<SolutionSet<F>>,
    pub exponents: Option<Vec<LocalExponentPair<F>>>,
    /// Why the class is `NotNilpotent`.
    pub reason: Option<String>,
}

/// Shape of a nonzero indicator `-eps^{p-1} prod (x - x_i)^{p(nu_i - 1)}`.
#[derive(Clone, Debug)]
pub struct LogShape<F: Field> {
    pub eps_pm1: F::Elem,
    /// `nu_i` at each finite singularity.
    pub nu: Vec<u64>,
    /// Monic polynomial in `y = x^p` whose roots are the `x_s^p` of spikes.
    pub spike_poly: Poly<F>,
    /// `(number of spikes, nu)` pairs.
    pub spike_profile: Vec<(usize, u64)>,
}

/// Exponents `[res_{x_i} p1]` of `Q = prod (x - x_i)^{q_i}` with `p1 = Q'/Q`.
pub fn q_exponents<F: Field>(l: &FuchsianOperator<F>) -> Result<Vec<u64>> {
    let f = l.field();
    let mut qs = Vec::new();
    for x in l.singularities() {
        let res = l.p1().laurent_coeff(x, -1);
        qs.push(f.as_prime(&res).ok_or(Error::P1MismatchQ)?);
    }
    Ok(qs)
}

/// The monic `Q` with `p1 = Q'/Q`.
pub fn q_polynomial<F: Field>(l: &FuchsianOperator<F>) -> Result<Poly<F>> {
    let f = l.field();
    let qs = q_exponents(l)?;
    let q = l
        .singularities()
        .iter()
        .zip(&qs)
        .fold(Poly::one(f), |acc, (x, &k)| {
            &acc * &Poly::linear(f, x).pow(k)
        });
    let logd = RationalFunction::new(q.derivative(), q.clone())?;
    if &logd != l.p1() {
        return Err(Error::P1MismatchQ);
    }
    Ok(q)
}

/// `D^{p-1}(1/(Q u^2))`, written as `D^{p-1}(A)/G^p` with `G = P0 u` and
/// `A = prod (x - x_i)^{p - q_i} u^{p-2}`, so no `(p-1)`-th power of
/// `Q u^2` is ever formed.
pub fn curvature_indicator<F: Field>(
    l: &FuchsianOperator<F>,
    u: &Poly<F>,
) -> Result<RationalFunction<F>> {
    let f = l.field();
    let p = l.p();
    let qs = q_exponents(l)?;
    let mut a = u.pow(p - 2);
    for (x, &k) in l.singularities().iter().zip(&qs) {
        a = &a * &Poly::linear(f, x).pow(p - k);
    }
    let g = &l.p0() * u;
    Ok(indicator_over_pth_power(&a, &g))
}

pub fn classify<F: Field>(l: &FuchsianOperator<F>) -> Result<PCurvatureReport<F>> {
    classify_with_bound(l, default_bound(l))
}

pub fn classify_with_bound<F: Field>(
    l: &FuchsianOperator<F>,
    bound: usize,
) -> Result<PCurvatureReport<F>> {
    let not_nilpotent = |reason: String, exponents, solutions| PCurvatureReport {
        class: CurvatureClass::NotNilpotent,
        q: None,
        indicator: None,
        solutions,
        exponents,
        reason: Some(reason),
    };
    let exponents = match l.local_exponents() {
        Ok(e) => e,
        Err(e @ Error::NotInPrimeField { .. }) => {
            return Ok(not_nilpotent(e.to_string(), None, None))
        }
        Err(e) => return Err(e),
    };
    let sols = polynomial_kernel(l, bound);
    let Some((u, _)) = sols.minimal.clone() else {
        return Ok(not_nilpotent(
            format!("no polynomial solution of degree <= {bound}"),
            Some(exponents),
            Some(sols),
        ));
    };
    let q = q_polynomial(l)?;
    let indicator = curvature_indicator(l, &u)?;
    let class = match (sols.rank_mod_p_powers, indicator.is_zero()) {
        (2, true) => CurvatureClass::Zero,
        (1, false) => CurvatureClass::NilpotentNonzero,
        (rank, zero) => {
            return Err(Error::InternalInconsistency(format!(
                "solution rank {rank} but indicator {}",
                if zero { "vanishes" } else { "is nonzero" }
            )))
        }
    };
    Ok(PCurvatureReport {
        class,
        q: Some(q),
        indicator: Some(indicator),
        solutions: Some(sols),
        exponents: Some(exponents),
        reason: None,
    })
}

/// `None` for the exact case (zero indicator); otherwise checks the
/// logarithmic shape and reads off `eps^{p-1}`, the `nu_i` at the
/// singularities and the spike profile.
pub fn logarithmic_test<F: Field>(
    indicator: &RationalFunction<F>,
    singularities: &[F::Elem],
) -> Result<Option<LogShape<F>>> {
    if indicator.is_zero() {
        return Ok(None);
    }
    let f = indicator.field();
    let p = f.characteristic();
    let shape = |m: &str| Error::NotLogarithmicShape(m.to_string());
    let n = indicator
        .num()
        .deflate(p as usize)
        .map_err(|_| shape("numerator is not a polynomial in x^p"))?;
    let mut h = indicator
        .den()
        .deflate(p as usize)
        .map_err(|_| shape("denominator is not a polynomial in x^p"))?;
    let mut s = n.clone();
    let mut nu = Vec::with_capacity(singularities.len());
    for x in singularities {
        let y = f.pow(x, p);
        let lin = Poly::linear(f, &y);
        if let Some(q) = h.div_exact(&lin) {
            h = q;
            if h.div_exact(&lin).is_some() {
                return Err(shape("pole of order > p at a singularity"));
            }
            nu.push(0);
        } else {
            let k = s.ord_at(&y);
            s = s.div_exact(&lin.pow(k as u64)).unwrap();
            nu.push(k as u64 + 1);
        }
    }
    if !h.is_constant() {
        return Err(shape("pole away from the singularities"));
    }
    let eps_pm1 = f.neg(n.lc().unwrap());
    let spike_poly = s.monic();
    let spike_profile = if spike_poly.is_constant() {
        Vec::new()
    } else {
        closure_multiplicities(&spike_poly)
            .into_iter()
            .map(|(c, m)| (c, m as u64 + 1))
            .collect()
    };
    Ok(Some(LogShape {
        eps_pm1,
        nu,
        spike_poly,
        spike_profile,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational_wilson_derivative, PrimeField};

    #[test]
    fn q_polynomials() {
        let f = PrimeField::new(7).unwrap();
        let l =
            FuchsianOperator::make_normalized(f, vec![0, 1, 3], &[5, 5, 5, 5], vec![0], 2).unwrap();
        let expected = Poly::from_roots(&f, &[0, 1, 3]).pow(3);
        assert_eq!(q_polynomial(&l).unwrap(), expected);
        let g = FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 0], vec![], 3).unwrap();
        assert_eq!(q_polynomial(&g).unwrap(), Poly::from_roots(&f, &[0, 1]));
    }

    #[test]
    fn indicator_matches_direct_formula() {
        let f = PrimeField::new(7).unwrap();
        for beta in 0..7 {
            let l =
                FuchsianOperator::make_normalized(f, vec![0, 1, 3], &[5, 5, 5, 5], vec![beta], 2)
                    .unwrap();
            let q = q_polynomial(&l).unwrap();
            for u in [
                Poly::from_ints(&f, &[1, 2, 1]),
                Poly::from_ints(&f, &[3, 0, 5, 1]),
            ] {
                let direct = RationalFunction::new(Poly::one(&f), &q * &(&u * &u)).unwrap();
                assert_eq!(
                    curvature_indicator(&l, &u).unwrap(),
                    rational_wilson_derivative(&direct)
                );
            }
        }
    }

    #[test]
    fn gauss_is_nilpotent_nonzero() {
        for p in [5u64, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            let l =
                FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 0], vec![], (p - 1) / 2)
                    .unwrap();
            let rep = classify(&l).unwrap();
            assert_eq!(rep.class, CurvatureClass::NilpotentNonzero);
            let shape = logarithmic_test(rep.indicator.as_ref().unwrap(), l.singularities())
                .unwrap()
                .unwrap();
            assert_eq!(shape.nu, vec![0, 0]);
            assert!(shape.spike_profile.is_empty());
        }
    }

    #[test]
    fn exact_case_returns_none() {
        let f = PrimeField::new(5).unwrap();
        assert!(logarithmic_test(&RationalFunction::zero(&f), &[0, 1])
            .unwrap()
            .is_none());
    }

    #[test]
    fn bad_shape_is_reported() {
        let f = PrimeField::new(5).unwrap();
        let r = RationalFunction::new(Poly::one(&f), Poly::x(&f)).unwrap();
        assert!(matches!(
            logarithmic_test(&r, &[0, 1]),
            Err(Error::NotLogarithmicShape(_))
        ));
    }
}
