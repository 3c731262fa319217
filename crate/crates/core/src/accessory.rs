//! Searches over accessory parameters: existence polynomials for `r = 4`,
//! exhaustive grids over finite fields, the root-of-unity construction for
//! logarithmic monodromy, and the strength constraints.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{roots_over, Extension, Field, GaloisField, Poly, PrimeField, RatFuncField};
use crate::deformation::extract_datum;
use crate::error::{Error, Result};
use crate::operators::FuchsianOperator;
use crate::pcurvature::{classify, CurvatureClass};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A residue `d` mod p with `alpha_r = r - 2 + 2d - sum_{i<r} alpha_i`.
pub fn riemann_degree(p: u64, alpha: &[u64]) -> Result<u64> {
    let r = alpha.len();
    if r < 3 {
        return Err(Error::BadArity {
            what: "alpha",
            expected: 3,
            got: r,
        });
    }
    let f = PrimeField::new(p)?;
    let s: u64 = alpha[..r - 1].iter().map(|a| a % p).sum();
    let twice = f.reduce(alpha[r - 1] as i64 - (r as i64 - 2) + s as i64);
    Ok(f.mul(&twice, &f.inv(&2).unwrap()))
}

/// Residues mod p of polynomial solution degrees.
pub fn degree_residues(p: u64, alpha: &[u64]) -> Result<[u64; 2]> {
    let d = riemann_degree(p, alpha)?;
    Ok([d, (d + p - alpha[alpha.len() - 1] % p) % p])
}

/// Coefficient recursion for `P0 u'' + A1 u' + P2 u = 0` about `x = 0`,
/// with the coefficients of `P2` given as polynomials in a parameter `b`.
struct Recursion<F: Field> {
    field: F,
    p0: Poly<F>,
    a1: Poly<F>,
    c0: Vec<Poly<F>>,
}

impl<F: Field> Recursion<F> {
    fn new(field: &F, singularities: &[F::Elem], alpha: &[u64], c0: Vec<Poly<F>>) -> Result<Self> {
        if singularities.is_empty() || !field.is_zero(&singularities[0]) {
            return Err(Error::HypothesisViolated(
                "the first singularity must be 0".into(),
            ));
        }
        let p0 = Poly::from_roots(field, singularities);
        let mut a1 = Poly::zero(field);
        for (x, &a) in singularities.iter().zip(alpha) {
            let rest = p0.div_exact(&Poly::linear(field, x)).unwrap();
            a1 = &a1 + &rest.scale(&field.from_i64(1 - a as i64));
        }
        Ok(Recursion {
            field: field.clone(),
            p0,
            a1,
            c0,
        })
    }

    fn lead(&self, m: usize) -> F::Elem {
        let f = &self.field;
        let mf = f.from_u64(m as u64);
        let t = f.add(&f.mul(&mf, &self.p0.coeff(1)), &self.a1.coeff(0));
        f.mul(&f.from_u64(m as u64 + 1), &t)
    }

    /// Coefficient of `x^m` in `L(sum_{k<=m} u_k x^k)`.
    fn rhs(&self, u: &[Poly<F>], m: usize) -> Poly<F> {
        let f = &self.field;
        let mut acc = Poly::zero(f);
        let lo = (m + 1).saturating_sub(self.p0.deg0().max(self.c0.len()) + 1);
        for (k, uk) in u.iter().enumerate().take(m + 1).skip(lo) {
            if uk.is_zero() {
                continue;
            }
            let kk = k as u64;
            let mut w = f.mul(
                &self.p0.coeff(m - k + 2),
                &f.from_u64(kk * kk.saturating_sub(1)),
            );
            w = f.add(&w, &f.mul(&self.a1.coeff(m - k + 1), &f.from_u64(kk)));
            let mut term = Poly::constant(f, w);
            if let Some(c) = self.c0.get(m - k) {
                term = &term + c;
            }
            acc = &acc + &(&term * uk);
        }
        acc
    }

    /// `u_0 = 1, u_1, ..., u_upto`.
    fn run(&self, upto: usize) -> Result<Vec<Poly<F>>> {
        let f = &self.field;
        let mut u = vec![Poly::one(f)];
        for m in 0..upto {
            let lead = self.lead(m);
            let Some(inv) = f.inv(&lead) else {
                return Err(Error::RecursionDegenerate(format!(
                    "coefficient of u_{} vanishes",
                    m + 1
                )));
            };
            let next = self.rhs(&u, m).scale(&f.neg(&inv));
            u.push(next);
        }
        Ok(u)
    }
}

fn r4_recursion<F: Field>(f: &F, lambda: &F::Elem, alpha: &[u64]) -> Result<Recursion<F>> {
    if alpha.len() != 4 {
        return Err(Error::BadArity {
            what: "alpha",
            expected: 4,
            got: alpha.len(),
        });
    }
    let p = f.characteristic();
    let d = riemann_degree(p, alpha)?;
    let c = (d * ((d + p - alpha[3] % p) % p)) % p;
    let beta = Poly::x(f);
    let sing = vec![f.zero(), f.one(), lambda.clone()];
    Recursion::new(
        f,
        &sing,
        alpha,
        vec![beta, Poly::constant(f, f.from_u64(c))],
    )
}

fn raw_existence<F: Field>(rec: &Recursion<F>, n: usize) -> Result<Poly<F>> {
    let u = rec.run(n)?;
    Ok(rec.rhs(&u, n))
}

/// Monic polynomial in `b` whose roots are the accessory parameters `b`
/// for which the operator with singularities `0, 1, lambda, inf` and
/// exponents `alpha` has a polynomial solution of degree `n` (and of no
/// smaller admissible degree).
pub fn existence_polynomial<F: Field>(
    f: &F,
    lambda: &F::Elem,
    alpha: &[u64],
    n: usize,
) -> Result<Poly<F>> {
    let p = f.characteristic();
    let rec = r4_recursion(f, lambda, alpha)?;
    let residues = degree_residues(p, alpha)?;
    if !residues.contains(&(n as u64 % p)) {
        return Err(Error::DegreeNotAdmissible(n));
    }
    let mut r = raw_existence(&rec, n)?;
    if r.is_zero() {
        return Ok(r);
    }
    for k in (0..n).filter(|k| residues.contains(&(*k as u64 % p))) {
        let Ok(g) = raw_existence(&rec, k) else {
            continue;
        };
        if g.is_zero() {
            continue;
        }
        loop {
            let h = r.gcd(&g);
            if h.is_constant() {
                break;
            }
            r = r.div_exact(&h).unwrap();
        }
    }
    Ok(r.monic())
}

/// [`existence_polynomial`] over `F_p(L)` with `lambda = L` transcendental.
pub fn existence_polynomial_r4(p: u64, alpha: &[u64], n: usize) -> Result<Poly<RatFuncField>> {
    let f = RatFuncField::new(p, "L")?;
    existence_polynomial(&f, &f.gen(), alpha, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub p: u64,
    pub field: String,
    pub r: usize,
    pub alpha: Vec<u64>,
    pub singularities: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub beta: Vec<String>,
    pub class: CurvatureClass,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spikes: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub grid_size: u64,
    pub hits: Vec<Hit>,
    /// NilpotentNonzero hits per strength.
    pub nonzero_by_strength: BTreeMap<u64, usize>,
    pub zero_hits: usize,
    /// Number of parameters with nilpotent p-curvature.
    pub pi_degree_nilpotent: u64,
    /// `p^(r-3)`.
    pub pi_degree_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bezout_bound: Option<u64>,
    pub wall_notes: Vec<String>,
}

fn config<F: Field>(f: &F, alpha: &[u64], singularities: &[F::Elem]) -> SearchConfig {
    let mut sing: Vec<String> = singularities.iter().map(|x| f.format(x)).collect();
    sing.push("inf".into());
    SearchConfig {
        p: f.characteristic(),
        field: f.kind().to_string(),
        r: singularities.len() + 1,
        alpha: alpha.to_vec(),
        singularities: sing,
    }
}

/// Classify `l` and describe it as a hit; `None` if not nilpotent.
fn hit_for<F: Field>(l: &FuchsianOperator<F>, beta: &[F::Elem]) -> Result<Option<Hit>> {
    let f = l.field();
    let rep = classify(l)?;
    if rep.class == CurvatureClass::NotNilpotent {
        return Ok(None);
    }
    let (u, degree) = rep
        .solutions
        .as_ref()
        .and_then(|s| s.minimal.clone())
        .unwrap();
    let mut hit = Hit {
        beta: beta.iter().map(|b| f.format(b)).collect(),
        class: rep.class,
        degree,
        signature: None,
        n: None,
        spikes: None,
        violations: Vec::new(),
    };
    if rep.class == CurvatureClass::NilpotentNonzero {
        let datum = extract_datum(l, &u)?;
        let sig = datum.signature();
        hit.violations = sig
            .validate()
            .into_iter()
            .map(|v| format!("{}: {}", v.constraint, v.detail))
            .collect();
        hit.signature = Some(datum.sigma_strings());
        hit.n = Some(datum.strength_n);
        hit.spikes = Some(datum.spike_count());
    }
    Ok(Some(hit))
}

fn decode<E: Clone>(mut idx: u64, elems: &[E], k: usize) -> Vec<E> {
    let q = elems.len() as u64;
    (0..k)
        .map(|_| {
            let e = elems[(idx % q) as usize].clone();
            idx /= q;
            e
        })
        .collect()
}

fn grid_size(q: u64, k: usize, budget: u64) -> Result<u64> {
    let size = (q as u128).pow(k as u32);
    if size > budget as u128 {
        return Err(Error::GridTooLarge { size, budget });
    }
    Ok(size as u64)
}

fn summarize(config: SearchConfig, size: u64, hits: Vec<Hit>, bezout: Option<u64>) -> SearchReport {
    let full_grid = bezout.is_none();
    let p = config.p;
    let bound = p.pow(config.r as u32 - 3);
    let mut nonzero_by_strength = BTreeMap::new();
    let mut zero_hits = 0;
    for h in &hits {
        match h.n {
            Some(n) => *nonzero_by_strength.entry(n).or_insert(0) += 1,
            None => zero_hits += 1,
        }
    }
    let nilpotent = hits.len() as u64;
    let mut notes = Vec::new();
    if full_grid {
        notes.push(if nilpotent > bound {
            format!("nilpotent count {nilpotent} exceeds p^(r-3) = {bound}")
        } else if nilpotent == bound {
            format!("nilpotent count equals p^(r-3) = {bound}")
        } else if zero_hits > 0 {
            format!("nilpotent count {nilpotent} < p^(r-3) = {bound}, with {zero_hits} zero p-curvature hits")
        } else {
            format!(
                "nilpotent count {nilpotent} < p^(r-3) = {bound} without zero p-curvature hits: \
                 parameters outside the field or with multiplicity"
            )
        });
    }
    if hits.iter().any(|h| !h.violations.is_empty()) {
        notes.push("some extracted data fail validation".into());
    }
    SearchReport {
        config,
        grid_size: size,
        hits,
        nonzero_by_strength,
        zero_hits,
        pi_degree_nilpotent: nilpotent,
        pi_degree_bound: bound,
        bezout_bound: bezout,
        wall_notes: notes,
    }
}

/// Classify every normalized operator with exponents `alpha` and the given
/// finite singularities, over all accessory parameters in `f^{r-3}`.
pub fn grid_search<F: Field>(
    f: &F,
    alpha: &[u64],
    singularities: &[F::Elem],
    budget: u64,
) -> Result<SearchReport> {
    let r = singularities.len() + 1;
    if alpha.len() != r {
        return Err(Error::BadArity {
            what: "alpha",
            expected: r,
            got: alpha.len(),
        });
    }
    let p = f.characteristic();
    let elems = f
        .elements()
        .ok_or_else(|| Error::UnsupportedSearchSpace(f.kind().to_string()))?;
    let k = r - 3;
    let size = grid_size(elems.len() as u64, k, budget)?;
    let d = riemann_degree(p, alpha)?;
    let residues = degree_residues(p, alpha)?;
    // validates the configuration once before fanning out
    FuchsianOperator::make_normalized(
        f.clone(),
        singularities.to_vec(),
        alpha,
        vec![f.zero(); k],
        d,
    )?;
    let mut found: Vec<(u64, Hit)> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let beta = decode(idx, &elems, k);
            let l = FuchsianOperator::make_normalized(
                f.clone(),
                singularities.to_vec(),
                alpha,
                beta.clone(),
                d,
            )?;
            Ok(hit_for(&l, &beta)?.map(|h| (idx, h)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_by_key(|(i, _)| *i);
    for (_, h) in &found {
        if !residues.contains(&(h.degree as u64 % p)) {
            return Err(Error::InternalInconsistency(format!(
                "hit of non-admissible degree {}",
                h.degree
            )));
        }
    }
    let hits = found.into_iter().map(|(_, h)| h).collect();
    Ok(summarize(config(f, alpha, singularities), size, hits, None))
}

/// Hit counts at several specializations of `lambda` in `F_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub p: u64,
    pub field: String,
    pub alpha: Vec<u64>,
    pub lambdas: Vec<String>,
    pub nonzero_by_strength: BTreeMap<u64, usize>,
    pub zero_hits: usize,
    pub pi_degree_nilpotent: u64,
    pub pi_degree_bound: u64,
    /// All specializations gave the same counts.
    pub agree: bool,
}

/// Values `lambda` in `f` at which every existence polynomial up to the
/// maximal degree keeps its generic degree, splits into distinct roots
/// over `f`, and shares no root with the others.
pub fn generic_specializations(
    f: &GaloisField,
    alpha: &[u64],
    count: usize,
) -> Result<Vec<Vec<u64>>> {
    let p = f.characteristic();
    let max_degree = (p - 1) as usize;
    let residues = degree_residues(p, alpha)?;
    let degrees: Vec<usize> = (0..=max_degree)
        .filter(|n| residues.contains(&(*n as u64 % p)))
        .collect();
    let mut generic = Vec::new();
    for &n in &degrees {
        generic.push(existence_polynomial_r4(p, alpha, n)?.deg0());
    }
    let mut out = Vec::new();
    for lam in f.elements().unwrap() {
        if out.len() == count {
            break;
        }
        if f.as_base(&lam).is_some() {
            continue;
        }
        let mut polys: Vec<Poly<GaloisField>> = Vec::new();
        let ok = degrees.iter().zip(&generic).all(|(&n, &g)| {
            match existence_polynomial(f, &lam, alpha, n) {
                Ok(e) => {
                    let good = e.deg0() == g
                        && e.is_squarefree()
                        && roots_over(f, &e).map(|rs| rs.len() == g).unwrap_or(false)
                        && polys.iter().all(|o| o.gcd(&e).is_constant());
                    polys.push(e);
                    good
                }
                Err(_) => false,
            }
        });
        if ok {
            out.push(lam);
        }
    }
    Ok(out)
}

/// Nilpotent hit counts over `F_{p^k}` at `samples` generic values of
/// `lambda`, for the family with singularities `0, 1, lambda, inf`.
pub fn generic_fiber_counts(
    p: u64,
    k: usize,
    alpha: &[u64],
    samples: usize,
) -> Result<FiberReport> {
    let f = Extension::galois(p, k)?;
    let lambdas = generic_specializations(&f, alpha, samples)?;
    if lambdas.is_empty() {
        return Err(Error::UnsupportedSearchSpace(format!(
            "no generic lambda in F_{p}^{k}"
        )));
    }
    let mut reports = Vec::new();
    for lam in &lambdas {
        reports.push(grid_search(
            &f,
            alpha,
            &[f.zero(), f.one(), lam.clone()],
            DEFAULT_BUDGET,
        )?);
    }
    let first = &reports[0];
    let agree = reports.iter().all(|r| {
        r.nonzero_by_strength == first.nonzero_by_strength && r.zero_hits == first.zero_hits
    });
    Ok(FiberReport {
        p,
        field: f.kind().to_string(),
        alpha: alpha.to_vec(),
        lambdas: lambdas.iter().map(|l| f.format(l)).collect(),
        nonzero_by_strength: first.nonzero_by_strength.clone(),
        zero_hits: first.zero_hits,
        pi_degree_nilpotent: first.pi_degree_nilpotent,
        pi_degree_bound: first.pi_degree_bound,
        agree,
    })
}

/// Operators with logarithmic monodromy, singularities at `0`, the
/// `(r-2)`-th roots of unity and `inf`, and a solution of degree
/// `d = (p - r + 2)/2`, found by scanning the parameters over the smallest
/// `F_{p^k}` containing the roots of unity, then over `F_{p^{2k}}`, ...
/// while the grid fits the budget.
pub fn symmetric_construction(p: u64, r: usize, budget: u64) -> Result<SearchReport> {
    PrimeField::new(p)?;
    if r < 3 {
        return Err(Error::HypothesisViolated(format!("r = {r} < 3")));
    }
    if p + 2 <= r as u64 {
        return Err(Error::HypothesisViolated(format!(
            "p = {p} must exceed r - 2 = {}",
            r - 2
        )));
    }
    if !(p as usize - r).is_multiple_of(2) {
        return Err(Error::HypothesisViolated(format!("r = {r} must be odd")));
    }
    let d = (p as usize + 2 - r) / 2;
    let n_roots = r as u64 - 2;
    let k0 = (1..=12u32)
        .find(|&k| (p.pow(k) - 1) % n_roots == 0)
        .unwrap() as usize;
    let mut notes = Vec::new();
    let mut k = k0;
    loop {
        let rep = symmetric_scan(p, r, d, k, budget)?;
        let next = (p as u128).pow(2 * k as u32 * (r as u32 - 3));
        if !rep.hits.is_empty() || next > budget as u128 {
            let mut rep = rep;
            notes.append(&mut rep.wall_notes);
            rep.wall_notes = notes;
            return Ok(rep);
        }
        notes.push(format!("no hits over {}", rep.config.field));
        k *= 2;
    }
}

fn symmetric_scan(p: u64, r: usize, d: usize, k: usize, budget: u64) -> Result<SearchReport> {
    let alpha = vec![0u64; r];
    let n_roots = r as u64 - 2;
    let f = Extension::galois(p, k)?;
    let zeta = f.primitive_root_of_unity(n_roots).unwrap();
    let mut sing = vec![f.zero()];
    let mut z = f.one();
    for _ in 0..n_roots {
        sing.push(z.clone());
        z = f.mul(&z, &zeta);
    }
    let np = r - 3;
    let elems = f.elements().unwrap();
    let size = grid_size(elems.len() as u64, np, budget)?;
    let mut notes = Vec::new();
    let found: Vec<(u64, Vec<Vec<u64>>)> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let beta = decode(idx, &elems, np);
            let mut c0: Vec<Poly<GaloisField>> =
                beta.iter().map(|b| Poly::constant(&f, b.clone())).collect();
            c0.push(Poly::constant(&f, f.from_u64((d * d) as u64)));
            let rec = Recursion::new(&f, &sing, &alpha, c0)?;
            let u = rec.run(d + np)?;
            Ok(u[d + 1..]
                .iter()
                .all(|c| c.is_zero())
                .then_some((idx, beta)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut hits = Vec::new();
    for (_, beta) in found {
        let l = FuchsianOperator::make_normalized(
            f.clone(),
            sing.clone(),
            &alpha,
            beta.clone(),
            d as u64,
        )?;
        match hit_for(&l, &beta)? {
            Some(h) if h.degree == d && h.class == CurvatureClass::NilpotentNonzero => hits.push(h),
            other => notes.push(format!(
                "recursion hit {:?} not confirmed by classification ({:?})",
                beta.iter().map(|b| f.format(b)).collect::<Vec<_>>(),
                other.map(|h| (h.class, h.degree))
            )),
        }
    }
    let bezout: u64 = (1..=np as u64).map(|j| d as u64 + j).product();
    if hits.len() as u64 > bezout {
        notes.push(format!(
            "{} hits exceed the Bezout bound {bezout}",
            hits.len()
        ));
    }
    let mut rep = summarize(config(&f, &alpha, &sing), size, hits, Some(bezout));
    rep.wall_notes.extend(notes);
    Ok(rep)
}

/// The hypergeometric operator with exponents `(0, 0, 0)` at `0, 1, inf`.
pub fn gauss_operator(p: u64) -> Result<FuchsianOperator<PrimeField>> {
    let f = PrimeField::new(p)?;
    FuchsianOperator::make_normalized(f, vec![0, 1], &[0, 0, 0], vec![], (p - 1) / 2)
}

/// Reasons why `n` cannot be the strength of a datum with exponents
/// `alpha` (empty if none apply).
pub fn strength_violations(p: u64, r: usize, alpha: &[u64], n: u64) -> Vec<String> {
    let mut out = Vec::new();
    let top = (r as i64 - 2) * (p as i64 - 1);
    if n as i64 > top {
        out.push(format!("n = {n} > (r-2)(p-1) = {top}"));
    }
    if !n.is_multiple_of(2) {
        out.push(format!("n = {n} is odd"));
    }
    let s: u64 = alpha.iter().map(|a| a % p).sum();
    if !(n + s).is_multiple_of(p) {
        out.push(format!("n = {n} is not -sum(alpha) mod p"));
    }
    let lower: u64 = alpha
        .iter()
        .filter(|&&a| a % p != 0)
        .map(|&a| p - a % p)
        .sum();
    if n < lower {
        out.push(format!("n = {n} < {lower}"));
    }
    if alpha.iter().all(|a| a % p == 0) {
        if !n.is_multiple_of(2 * p) {
            out.push(format!("n = {n} is not 0 mod 2p"));
        }
        if (r as u64) < n / p + 3 {
            out.push(format!("r = {r} < n/p + 3"));
        }
    }
    out
}

pub fn strength_constraints(p: u64, r: usize, alpha: &[u64]) -> BTreeSet<u64> {
    let top = ((r as i64 - 2) * (p as i64 - 1)).max(0) as u64;
    (0..=top)
        .filter(|&n| strength_violations(p, r, alpha, n).is_empty())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ProvedNonemptyByWitness,
    ConstraintsViolated,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub field: String,
    pub singularities: Vec<String>,
    pub hit: Hit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonemptyReport {
    pub p: u64,
    pub r: usize,
    pub n: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

fn witness_from(rep: &SearchReport, n: u64) -> Option<Witness> {
    rep.hits
        .iter()
        .find(|h| h.n == Some(n) && h.violations.is_empty())
        .map(|h| Witness {
            field: rep.config.field.clone(),
            singularities: rep.config.singularities.clone(),
            hit: h.clone(),
        })
}

/// Look for an operator with logarithmic monodromy at `r` points and
/// nilpotent nonzero p-curvature of strength `n`.
pub fn nonempty_check(p: u64, r: usize, n: u64, budget: u64) -> Result<NonemptyReport> {
    PrimeField::new(p)?;
    let alpha = vec![0u64; r];
    let violations = strength_violations(p, r, &alpha, n);
    let mut report = NonemptyReport {
        p,
        r,
        n,
        verdict: Verdict::Unknown,
        violations,
        witness: None,
        notes: Vec::new(),
    };
    if !report.violations.is_empty() {
        report.verdict = Verdict::ConstraintsViolated;
        return Ok(report);
    }
    type Search<'a> = Box<dyn Fn() -> Result<SearchReport> + 'a>;
    let mut searches: Vec<Search> = Vec::new();
    if r == 3 {
        searches.push(Box::new(|| {
            let l = gauss_operator(p)?;
            let hits: Vec<Hit> = hit_for(&l, &[])?.into_iter().collect();
            Ok(summarize(
                config(l.field(), &alpha, l.singularities()),
                1,
                hits,
                None,
            ))
        }));
    } else {
        if r as u64 == n / p + 3 && (p as usize + 2) > r {
            report.notes.push("root-of-unity construction".into());
            searches.push(Box::new(|| symmetric_construction(p, r, budget)));
        }
        for k in 1..=3 {
            let alpha = &alpha;
            searches.push(Box::new(move || {
                let f = Extension::galois(p, k)?;
                let elems = f.elements().unwrap();
                if elems.len() < r - 1 {
                    return Err(Error::UnsupportedSearchSpace(format!(
                        "{} has fewer than r - 1 points",
                        f.kind()
                    )));
                }
                grid_search(&f, alpha, &elems[..r - 1], budget)
            }));
        }
    }
    for search in searches {
        match search() {
            Ok(rep) => {
                if let Some(w) = witness_from(&rep, n) {
                    report.verdict = Verdict::ProvedNonemptyByWitness;
                    report.witness = Some(w);
                    return Ok(report);
                }
                report.notes.push(format!(
                    "no witness over {} ({} parameters)",
                    rep.config.field, rep.grid_size
                ));
            }
            Err(e @ (Error::GridTooLarge { .. } | Error::UnsupportedSearchSpace(_))) => {
                report.notes.push(e.to_string())
            }
            Err(e) => return Err(e),
        }
    }
    report
        .notes
        .push("search exhausted its budget; emptiness is not claimed".into());
    Ok(report)
}
