//! Polynomial solutions of Fuchsian operators.

use std::collections::BTreeSet;

use crate::algebra::{echelon, Field, Poly};
use crate::error::Result;
use crate::operators::{FuchsianOperator, Point};

/// Polynomial solutions up to a degree bound.
#[derive(Clone, Debug)]
pub struct SolutionSet<F: Field> {
    /// Unique monic solution of minimal degree.
    pub minimal: Option<(Poly<F>, usize)>,
    /// Monic solution of least degree outside `k[x^p] * minimal`.
    pub second: Option<(Poly<F>, usize)>,
    /// Rank of the solution space over the p-th powers `k[x^p]`.
    pub rank_mod_p_powers: u8,
    pub search_bound: usize,
    /// Degrees of kernel elements (the free columns of the solver).
    pub kernel_degrees: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ZeroCurvaturePair<F: Field> {
    pub u1: Poly<F>,
    pub u2: Poly<F>,
    pub delta: usize,
}

/// Degree bound for which "no solution" is a sound verdict.
///
/// For normalized operators both solutions of a minimal pair have degree
/// below `(r-1)p`. Other operators are gauge equivalent to a normalized
/// one by a factor `prod (x - x_i)^{mu_i}` with `0 <= mu_i < p`, which adds
/// at most `(r-1)(p-1)`.
pub fn default_bound<F: Field>(l: &FuchsianOperator<F>) -> usize {
    let p = l.p() as usize;
    let r = l.r();
    let base = (r - 1) * p;
    if l.normalized().is_some() {
        base
    } else {
        base + (r - 1) * (p - 1)
    }
}

/// All `0 <= n <= bound` congruent to minus an exponent at infinity.
pub fn admissible_degrees<F: Field>(
    l: &FuchsianOperator<F>,
    bound: usize,
) -> Result<BTreeSet<usize>> {
    let p = l.p() as usize;
    let ex = l.local_exponents()?;
    let inf = ex.last().expect("infinity is always present");
    let residues = [
        (p - inf.alpha as usize) % p,
        (p - inf.alpha_prime as usize) % p,
    ];
    Ok((0..=bound)
        .filter(|n| residues.contains(&(n % p)))
        .collect())
}

/// Exact kernel of `u -> L(u)` on polynomials of degree `<= bound`.
pub fn polynomial_kernel<F: Field>(l: &FuchsianOperator<F>, bound: usize) -> SolutionSet<F> {
    let f = l.field();
    let (a2, a1, a0) = l.polynomial_form();
    let nrows = bound + 1 + a2.deg0().max(a1.deg0()).max(a0.deg0());
    let ncols = bound + 1;
    let mut rows = vec![vec![f.zero(); ncols]; nrows];
    for j in 0..ncols {
        let jf = f.from_u64(j as u64);
        let jj = f.mul(&jf, &f.from_u64(j.saturating_sub(1) as u64));
        let mut add = |poly: &Poly<F>, shift_down: usize, c: &F::Elem| {
            if f.is_zero(c) || j < shift_down {
                return;
            }
            for (k, a) in poly.coeffs().iter().enumerate() {
                let row = j - shift_down + k;
                rows[row][j] = f.add(&rows[row][j], &f.mul(a, c));
            }
        };
        add(&a2, 2, &jj);
        add(&a1, 1, &jf);
        add(&a0, 0, &f.one());
    }
    let e = echelon(f, rows, ncols);
    let free = e.free_columns();
    let to_poly = |c: usize| Poly::new(f.clone(), e.kernel_vector(c)[..=c].to_vec());
    let p = l.p() as usize;
    let minimal = free.first().map(|&d| (to_poly(d), d));
    let (rank, second) = match &minimal {
        None => (0, None),
        Some((_, d1)) => {
            let extra = free.iter().find(|&&c| c < *d1 || (c - d1) % p != 0);
            match extra {
                None => (1, None),
                Some(&d2) => (2, Some((to_poly(d2), d2))),
            }
        }
    };
    SolutionSet {
        minimal,
        second,
        rank_mod_p_powers: rank,
        search_bound: bound,
        kernel_degrees: free,
    }
}

pub fn minimal_solution<F: Field>(l: &FuchsianOperator<F>) -> Option<(Poly<F>, usize)> {
    polynomial_kernel(l, default_bound(l)).minimal
}

pub fn zero_curvature_pair<F: Field>(l: &FuchsianOperator<F>) -> Option<ZeroCurvaturePair<F>> {
    let s = polynomial_kernel(l, default_bound(l));
    match (s.minimal, s.second) {
        (Some((u1, d1)), Some((u2, d2))) => Some(ZeroCurvaturePair {
            u1,
            u2,
            delta: d1 + d2,
        }),
        _ => None,
    }
}

pub fn is_solution<F: Field>(l: &FuchsianOperator<F>, u: &Poly<F>) -> bool {
    l.apply(u).is_zero()
}

/// Window `[r, (r-1)p - (2r-3)]` for the total degree of a zero-curvature
/// pair.
pub fn pair_degree_window(p: usize, r: usize) -> (usize, usize) {
    (r, (r - 1) * p - (2 * r - 3))
}

/// `ord_{x_i}(u)` is congruent to one of the exponents at every finite
/// singularity.
pub fn vanishing_orders_admissible<F: Field>(l: &FuchsianOperator<F>, u: &Poly<F>) -> Result<bool> {
    let p = l.p();
    let ex = l.local_exponents()?;
    Ok(ex.iter().all(|e| match &e.point {
        Point::Finite(x) => {
            let o = u.ord_at(x) as u64 % p;
            o == e.alpha || o == e.alpha_prime
        }
        Point::Infinity => true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn gauss_minimal_solution() {
        for p in [5u64, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            let l =
                FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 0], vec![], (p - 1) / 2)
                    .unwrap();
            let s = polynomial_kernel(&l, 3 * p as usize);
            let (u, d) = s.minimal.clone().unwrap();
            assert_eq!(d as u64, (p - 1) / 2);
            assert!(u.is_monic());
            assert!(is_solution(&l, &u));
            assert_eq!(s.rank_mod_p_powers, 1);
            assert!(vanishing_orders_admissible(&l, &u).unwrap());
            assert!(zero_curvature_pair(&l).is_none());
        }
    }

    #[test]
    fn admissible_degrees_of_families() {
        let f = PrimeField::new(13).unwrap();
        let l = FuchsianOperator::make_normalized(f, vec![0, 1, 5], &[11, 11, 11, 10], vec![2], 1)
            .unwrap();
        let degs = admissible_degrees(&l, 30).unwrap();
        assert_eq!(
            degs.into_iter().collect::<Vec<_>>(),
            vec![1, 4, 14, 17, 27, 30]
        );
        let g = PrimeField::new(7).unwrap();
        let l =
            FuchsianOperator::make_normalized(g, vec![0, 1, 3], &[5, 5, 5, 5], vec![0], 2).unwrap();
        let degs = admissible_degrees(&l, 12).unwrap();
        assert_eq!(degs.into_iter().collect::<Vec<_>>(), vec![2, 4, 9, 11]);
    }

    #[test]
    fn kernel_contains_p_power_multiples() {
        let f = PrimeField::new(7).unwrap();
        let l =
            FuchsianOperator::make_normalized(f, vec![0, 1, 3], &[5, 5, 5, 5], vec![0], 2).unwrap();
        let s = polynomial_kernel(&l, 21);
        let (u, d) = s.minimal.unwrap();
        assert_eq!(d, 2);
        let shifted = u.shift(7);
        assert!(is_solution(&l, &shifted));
        assert!(s.kernel_degrees.contains(&9));
    }
}
