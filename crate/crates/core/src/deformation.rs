//! Deformation data attached to operators with nilpotent nonzero
//! p-curvature, and their numerical invariants.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::{
    closure_multiplicities, residue_at, roots_over, squarefree_decomposition, Field, Poly,
    RationalFunction,
};
use crate::error::{Error, Result};
use crate::operators::{FuchsianOperator, Point};
use crate::pcurvature::{curvature_indicator, logarithmic_test, q_polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Singular,
    Supersingular,
    Spike,
}

/// The pair `(a, nu)` with `sigma = a/(p-1) + nu`, `0 <= a < p-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalInvariant {
    pub a: u64,
    pub nu: u64,
}

impl LocalInvariant {
    pub fn new(a: u64, nu: u64) -> Self {
        LocalInvariant { a, nu }
    }

    /// Canonical `(a, nu)` for `sigma * (p-1) = scaled`.
    pub fn from_scaled(scaled: u64, p: u64) -> Self {
        LocalInvariant {
            a: scaled % (p - 1),
            nu: scaled / (p - 1),
        }
    }

    /// `sigma = (p+1)/(p-1)`.
    pub fn supersingular(p: u64) -> Self {
        Self::from_scaled(p + 1, p)
    }

    /// `(p-1) sigma`.
    pub fn sigma_scaled(&self, p: u64) -> u64 {
        self.a + (p - 1) * self.nu
    }

    pub fn sigma(&self, p: u64) -> Ratio<i64> {
        Ratio::new(self.sigma_scaled(p) as i64, p as i64 - 1)
    }

    /// `sigma` written over the denominator `p-1`, unreduced.
    pub fn sigma_string(&self, p: u64) -> String {
        format!("{}/{}", self.sigma_scaled(p), p - 1)
    }

    /// `(p-1)(sigma - 1)`.
    pub fn excess_scaled(&self, p: u64) -> i64 {
        self.sigma_scaled(p) as i64 - (p as i64 - 1)
    }

    pub fn m(&self, p: u64) -> u64 {
        (p - 1) / self.a.gcd(&(p - 1))
    }

    pub fn h(&self, p: u64) -> u64 {
        self.sigma_scaled(p) / self.a.gcd(&(p - 1))
    }

    /// `#{0 <= j < nu : j = a (mod p)}`.
    pub fn epsilon(&self, p: u64) -> u64 {
        count_congruent(self.nu, self.a, p)
    }

    /// The count with the closed range `0 <= j <= nu`.
    pub fn epsilon_literal(&self, p: u64) -> u64 {
        count_congruent(self.nu + 1, self.a, p)
    }

    pub fn is_spike_like(&self, p: u64) -> bool {
        let e = self.excess_scaled(p);
        e != 0 && e.rem_euclid(p as i64) == 0
    }

    pub fn n_x(&self, kind: PointKind, p: u64) -> u64 {
        match kind {
            PointKind::Singular => self.sigma_scaled(p),
            PointKind::Spike => self.excess_scaled(p).max(0) as u64,
            PointKind::Supersingular => 0,
        }
    }
}

fn count_congruent(len: u64, a: u64, p: u64) -> u64 {
    // j in [0, len) with j = a (mod p), a < p
    if len <= a {
        0
    } else {
        (len - 1 - a) / p + 1
    }
}

/// The numerical shadow of a deformation datum: invariants at the `r`
/// singularities (the last one at infinity), at the spikes, and the number
/// `d` of supersingular points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub p: u64,
    pub singular: Vec<LocalInvariant>,
    pub spikes: Vec<LocalInvariant>,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n_lt: i64,
    pub eps_sum: u64,
    pub dim: i64,
    pub maximal: bool,
    pub nu_criterion: bool,
    /// Dimension with the closed index range for `epsilon`.
    pub dim_literal: i64,
    /// Indices (singular first, then spikes) where the two ranges differ.
    pub readings_differ: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerEntry {
    pub kind: PointKind,
    pub a: u64,
    pub m: u64,
}

impl Signature {
    pub fn r(&self) -> usize {
        self.singular.len()
    }

    /// Points with their kinds: singular, spikes, then `d` supersingular.
    pub fn all_points(&self) -> Vec<(PointKind, LocalInvariant)> {
        let mut v: Vec<_> = self
            .singular
            .iter()
            .map(|&i| (PointKind::Singular, i))
            .collect();
        v.extend(self.spikes.iter().map(|&i| (PointKind::Spike, i)));
        v.extend((0..self.d).map(|_| {
            (
                PointKind::Supersingular,
                LocalInvariant::supersingular(self.p),
            )
        }));
        v
    }

    /// Build from invariants alone, solving the global relation for `d`.
    pub fn with_derived_d(
        p: u64,
        singular: Vec<LocalInvariant>,
        spikes: Vec<LocalInvariant>,
    ) -> Result<Self> {
        let total: i64 = singular
            .iter()
            .chain(&spikes)
            .map(|i| i.excess_scaled(p))
            .sum();
        // sum of excesses + 2d = -2(p-1)
        let twice_d = -2 * (p as i64 - 1) - total;
        if twice_d < 0 || twice_d % 2 != 0 {
            return Err(Error::InvalidSignature(format!(
                "no nonnegative integer d balances the global relation (2d = {twice_d})"
            )));
        }
        Ok(Signature {
            p,
            singular,
            spikes,
            d: (twice_d / 2) as u64,
        })
    }

    /// `sum n_x`, checked against `(r-2)(p-1) - 2d`.
    pub fn strength(&self) -> Result<u64> {
        let p = self.p;
        let sum: u64 = self.all_points().iter().map(|(k, i)| i.n_x(*k, p)).sum();
        let formula = (self.r() as i64 - 2) * (p as i64 - 1) - 2 * self.d as i64;
        if sum as i64 != formula {
            return Err(Error::StrengthMismatch {
                sum: sum as i64,
                formula,
            });
        }
        Ok(sum)
    }

    /// `alpha_i = nu_i - a_i (mod p)` at the singularities.
    pub fn exponents(&self) -> Vec<u64> {
        let p = self.p as i64;
        self.singular
            .iter()
            .map(|i| (i.nu as i64 - i.a as i64).rem_euclid(p) as u64)
            .collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let p = self.p;
        let mut out = Vec::new();
        let mut push = |constraint, detail: String| out.push(Violation { constraint, detail });
        if p < 3 || !crate::algebra::PrimeField::new(p).is_ok() {
            push("prime", format!("p = {p} is not an odd prime"));
            return out;
        }
        if self.r() < 3 {
            push("arity", format!("r = {} < 3", self.r()));
        }
        for (idx, (kind, inv)) in self.all_points().iter().enumerate() {
            if inv.a >= p - 1 {
                push("range", format!("point {idx}: a = {} >= p-1", inv.a));
                continue;
            }
            let m = inv.m(p);
            let h = inv.h(p);
            if !(p - 1).is_multiple_of(m) {
                push(
                    "m_divides",
                    format!("point {idx}: m = {m} does not divide p-1"),
                );
            }
            if h.gcd(&m) != 1 {
                push(
                    "h_coprime_m",
                    format!("point {idx}: gcd(h, m) = {}", h.gcd(&m)),
                );
            }
            if h != 0 && h % p == 0 {
                push("h_prime_to_p", format!("point {idx}: p divides h = {h}"));
            }
            match kind {
                PointKind::Singular | PointKind::Spike => {
                    if inv.sigma_scaled(p) == p - 1 {
                        push("sigma_not_one", format!("point {idx}: sigma = 1"));
                    }
                    if inv.sigma_scaled(p) == p + 1 {
                        push(
                            "sigma_not_supersingular",
                            format!("point {idx}: sigma = (p+1)/(p-1)"),
                        );
                    }
                }
                PointKind::Supersingular => {}
            }
            if *kind == PointKind::Spike && !inv.is_spike_like(p) {
                push(
                    "spike_congruence",
                    format!(
                        "point {idx}: sigma = {} is not 1 mod p",
                        inv.sigma_string(p)
                    ),
                );
            }
        }
        let total: i64 = self
            .all_points()
            .iter()
            .map(|(_, i)| i.excess_scaled(p))
            .sum();
        if total != -2 * (p as i64 - 1) {
            push(
                "global_sum",
                format!("sum of (sigma - 1) = {total}/{} != -2", p - 1),
            );
        }
        let formula = (self.r() as i64 - 2) * (p as i64 - 1) - 2 * self.d as i64;
        let n = match self.strength() {
            Ok(n) => n as i64,
            Err(e) => {
                push("strength", e.to_string());
                formula
            }
        };
        if n < 0 {
            push("strength_nonnegative", format!("n = {n} < 0"));
            return out;
        }
        if n % 2 != 0 {
            push("strength_even", format!("n = {n} is odd"));
        }
        let alpha = self.exponents();
        let alpha_sum: i64 = alpha.iter().map(|&a| a as i64).sum();
        if (n + alpha_sum).rem_euclid(p as i64) != 0 {
            push(
                "strength_congruence",
                format!("n = {n} is not -sum(alpha) = {} mod p", -alpha_sum),
            );
        }
        let lower: i64 = alpha
            .iter()
            .filter(|&&a| a != 0)
            .map(|&a| p as i64 - a as i64)
            .sum();
        if n < lower {
            push("strength_lower_bound", format!("n = {n} < {lower}"));
        }
        if alpha.iter().all(|&a| a == 0) {
            if n % (2 * p as i64) != 0 {
                push("log_strength_mod_2p", format!("n = {n} is not 0 mod 2p"));
            }
            if (self.r() as i64) < n / p as i64 + 3 {
                push(
                    "log_r_bound",
                    format!("r = {} < n/p + 3 = {}", self.r(), n / p as i64 + 3),
                );
            }
        }
        out
    }

    pub fn kummer_exponents(&self) -> Vec<KummerEntry> {
        self.all_points()
            .into_iter()
            .map(|(kind, i)| KummerEntry {
                kind,
                a: i.a,
                m: i.m(self.p),
            })
            .collect()
    }

    /// `(dimension of the space of logarithmic forms, N)`.
    pub fn log_space_dim(&self) -> Result<(i64, i64)> {
        let points = self.all_points();
        let sum_a: u64 = points.iter().map(|(_, i)| i.a).sum();
        if !sum_a.is_multiple_of(self.p - 1) {
            return Err(Error::DivisibilityError(sum_a));
        }
        let q = (sum_a / (self.p - 1)) as i64;
        Ok((points.len() as i64 - 1 - q, q - 1))
    }

    /// `epsilon` at the singularities and spikes (zero at supersingular
    /// points).
    pub fn epsilon_invariants(&self) -> Vec<u64> {
        self.singular
            .iter()
            .chain(&self.spikes)
            .map(|i| i.epsilon(self.p))
            .collect()
    }

    pub fn nu_criterion(&self) -> bool {
        self.singular.iter().all(|i| i.nu == 0) && self.spikes.iter().all(|i| i.nu == 2)
    }

    pub fn deformation_dimension(&self) -> Result<DimensionReport> {
        let r = self.r() as u64;
        if self.p + 2 <= r {
            return Err(Error::HypothesisViolated(format!(
                "p = {} must exceed r - 2 = {}",
                self.p,
                r - 2
            )));
        }
        let (_, n_lt) = self.log_space_dim()?;
        let p = self.p;
        let pts: Vec<&LocalInvariant> = self.singular.iter().chain(&self.spikes).collect();
        let eps_sum: u64 = pts.iter().map(|i| i.epsilon(p)).sum();
        let lit_sum: u64 = pts.iter().map(|i| i.epsilon_literal(p)).sum();
        let readings_differ = pts
            .iter()
            .enumerate()
            .filter(|(_, i)| i.epsilon(p) != i.epsilon_literal(p))
            .map(|(k, _)| k)
            .collect();
        let dim = n_lt + eps_sum as i64;
        let maximal = dim == r as i64 - 3;
        let nu_criterion = self.nu_criterion();
        if maximal != nu_criterion {
            return Err(Error::InternalInconsistency(format!(
                "dimension {dim} (maximal = {maximal}) disagrees with the nu pattern ({nu_criterion})"
            )));
        }
        Ok(DimensionReport {
            n_lt,
            eps_sum,
            dim,
            maximal,
            nu_criterion,
            dim_literal: n_lt + lit_sum as i64,
            readings_differ,
        })
    }
}

/// Where a critical point sits.
#[derive(Clone, Debug, PartialEq)]
pub enum Location<F: Field> {
    Finite(F::Elem),
    Infinity,
    /// One of the points `x` with `x^p` a root of `poly` (in `y = x^p`),
    /// when those are not rational over the coefficient field.
    Placeholder {
        poly: Poly<F>,
        index: usize,
    },
}

impl<F: Field> Location<F> {
    pub fn format(&self, field: &F) -> String {
        match self {
            Location::Finite(a) => field.format(a),
            Location::Infinity => "inf".into(),
            Location::Placeholder { poly, index } => {
                format!("root[{index}] of x^p in {}", poly.format_with("y"))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPoint<F: Field> {
    pub location: Location<F>,
    pub kind: PointKind,
    pub inv: LocalInvariant,
    pub n_x: u64,
    /// `ord_x (P0^p D^{p-1}(1/(Q u^2)))`, reported next to `n_x`.
    pub n_x_ord: u64,
}

impl<F: Field> CriticalPoint<F> {
    pub fn sigma(&self, p: u64) -> Ratio<i64> {
        self.inv.sigma(p)
    }

    pub fn m(&self, p: u64) -> u64 {
        self.inv.m(p)
    }

    pub fn h(&self, p: u64) -> u64 {
        self.inv.h(p)
    }

    pub fn epsilon(&self, p: u64) -> u64 {
        self.inv.epsilon(p)
    }
}

#[derive(Clone, Debug)]
pub struct DeformationDatum<F: Field> {
    pub p: u64,
    pub field: F,
    /// Singularities (infinity last), then spikes. Singularities of the
    /// operator with `sigma = 1` are not critical and are left out; those
    /// with `sigma = (p+1)/(p-1)` are listed as supersingular.
    pub critical_points: Vec<CriticalPoint<F>>,
    /// Invariants at every singularity of the operator, infinity last.
    pub singularity_invariants: Vec<LocalInvariant>,
    /// Minimal solution; its roots are the supersingular points.
    pub u: Poly<F>,
    pub q: Poly<F>,
    pub d: usize,
    pub strength_n: u64,
    pub eps_pm1: F::Elem,
    pub diagnostics: Vec<String>,
}

impl<F: Field> DeformationDatum<F> {
    pub fn signature(&self) -> Signature {
        let pick = |k: PointKind| {
            self.critical_points
                .iter()
                .filter(|c| c.kind == k)
                .map(|c| c.inv)
                .collect()
        };
        let extra = self
            .critical_points
            .iter()
            .filter(|c| c.kind == PointKind::Supersingular)
            .count();
        Signature {
            p: self.p,
            singular: pick(PointKind::Singular),
            spikes: pick(PointKind::Spike),
            d: (self.d + extra) as u64,
        }
    }

    pub fn spike_count(&self) -> usize {
        self.critical_points
            .iter()
            .filter(|c| c.kind == PointKind::Spike)
            .count()
    }

    pub fn sigma_strings(&self) -> Vec<String> {
        self.critical_points
            .iter()
            .filter(|c| c.kind != PointKind::Supersingular)
            .map(|c| c.inv.sigma_string(self.p))
            .collect()
    }
}

fn renormalized(a_mod_p: u64, nu: u64, p: u64) -> LocalInvariant {
    if a_mod_p == p - 1 {
        LocalInvariant::new(0, nu + 1)
    } else {
        LocalInvariant::new(a_mod_p, nu)
    }
}

/// Deformation datum of `(L, u)` for `L` normalized with nilpotent nonzero
/// p-curvature and `u` its minimal solution.
pub fn extract_datum<F: Field>(
    l: &FuchsianOperator<F>,
    u: &Poly<F>,
) -> Result<DeformationDatum<F>> {
    let f = l.field();
    let p = l.p();
    let r = l.r();
    if u.is_zero() {
        return Err(Error::ShapeError("u = 0".into()));
    }
    for x in l.singularities() {
        if f.is_zero(&u.eval(x)) {
            return Err(Error::UMeetsSingularity(f.format(x)));
        }
    }
    if !u.is_squarefree() {
        return Err(Error::UNonSquarefree);
    }
    if !l.apply(u).is_zero() {
        return Err(Error::ShapeError("u does not solve L".into()));
    }
    let exps = l.exponents_for_solution(u)?;
    let q = q_polynomial(l)?;
    let indicator = curvature_indicator(l, u)?;
    let shape =
        logarithmic_test(&indicator, l.singularities())?.ok_or(Error::NotNilpotentNonzero)?;
    let d = u.deg0();
    let mut points = Vec::new();
    for (i, x) in l.singularities().iter().enumerate() {
        let nu = shape.nu[i];
        let inv = renormalized((exps[i].t + nu) % p, nu, p);
        points.push(CriticalPoint {
            location: Location::Finite(x.clone()),
            kind: PointKind::Singular,
            inv,
            n_x: inv.n_x(PointKind::Singular, p),
            n_x_ord: p * nu,
        });
    }
    let mut spikes = Vec::new();
    for (g, m) in squarefree_decomposition(&shape.spike_poly) {
        let roots = roots_over(f, &g).unwrap_or_default();
        if roots.len() == g.deg0() {
            for y in roots {
                let nu = m as u64 + 1;
                let location = match f.pth_root(&y) {
                    Some(x) => Location::Finite(x),
                    None => Location::Placeholder {
                        poly: Poly::linear(f, &y),
                        index: 0,
                    },
                };
                spikes.push((location, nu));
            }
        } else {
            let mut index = 0;
            for (count, mm) in closure_multiplicities(&g) {
                for _ in 0..count {
                    spikes.push((
                        Location::Placeholder {
                            poly: g.clone(),
                            index,
                        },
                        (m * mm) as u64 + 1,
                    ));
                    index += 1;
                }
            }
        }
    }
    let profile_count: usize = shape.spike_profile.iter().map(|(c, _)| c).sum();
    if profile_count != spikes.len() {
        return Err(Error::InternalInconsistency(format!(
            "spike count {} disagrees with the multiplicity profile {profile_count}",
            spikes.len()
        )));
    }
    let spike_points: Vec<CriticalPoint<F>> = spikes
        .into_iter()
        .map(|(location, nu)| {
            let inv = renormalized((nu + p - 1) % p, nu, p);
            CriticalPoint {
                location,
                kind: PointKind::Spike,
                inv,
                n_x: inv.n_x(PointKind::Spike, p),
                n_x_ord: p * (nu - 1),
            }
        })
        .collect();
    // sigma at infinity from the global relation
    let pm1 = p as i64 - 1;
    let known: i64 = points
        .iter()
        .chain(&spike_points)
        .map(|c| c.inv.excess_scaled(p))
        .sum();
    let scaled_inf = -2 * pm1 - 2 * d as i64 - known + pm1;
    if scaled_inf < 0 {
        return Err(Error::ShapeError(format!(
            "negative sigma at infinity ({scaled_inf}/{pm1})"
        )));
    }
    let inv_inf = LocalInvariant::from_scaled(scaled_inf as u64, p);
    let t_inf = exps[r - 1].t;
    if !(inv_inf.a + p - (t_inf + inv_inf.nu) % p).is_multiple_of(p)
        && !(inv_inf.a == 0 && (t_inf + inv_inf.nu) % p == p - 1)
    {
        return Err(Error::ShapeError(format!(
            "sigma at infinity {} is incompatible with the exponent difference {t_inf}",
            inv_inf.sigma_string(p)
        )));
    }
    points.push(CriticalPoint {
        location: Location::Infinity,
        kind: PointKind::Singular,
        inv: inv_inf,
        n_x: inv_inf.n_x(PointKind::Singular, p),
        n_x_ord: p * inv_inf.nu,
    });
    let singularity_invariants: Vec<LocalInvariant> = points.iter().map(|c| c.inv).collect();
    let mut diagnostics = Vec::new();
    points.retain_mut(|c| {
        let scaled = c.inv.sigma_scaled(p);
        if scaled == p - 1 {
            diagnostics.push(format!(
                "{} has sigma = 1 and is not a critical point",
                c.location.format(f)
            ));
            false
        } else {
            if scaled == p + 1 {
                c.kind = PointKind::Supersingular;
                c.n_x = 0;
                c.n_x_ord = 0;
            }
            true
        }
    });
    points.extend(spike_points);
    for c in &points {
        if c.n_x != c.n_x_ord {
            diagnostics.push(format!(
                "n_x at {}: {} from sigma, {} from the order of the indicator",
                c.location.format(f),
                c.n_x,
                c.n_x_ord
            ));
        }
    }
    let mut datum = DeformationDatum {
        p,
        field: f.clone(),
        critical_points: points,
        singularity_invariants,
        u: u.clone(),
        q,
        d,
        strength_n: 0,
        eps_pm1: shape.eps_pm1,
        diagnostics,
    };
    datum.strength_n = datum.signature().strength()?;
    Ok(datum)
}

/// Outcome of the degree relation `2 deg u + p t = (p-1)(r-2) - sum t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DworkCheck {
    pub t: i64,
    pub integral: bool,
    /// `p t = sum_spikes n_x + sum_i ((p-1) sigma_i - t_i)`.
    pub accounting: bool,
}

pub fn dwork_check<F: Field>(
    l: &FuchsianOperator<F>,
    datum: &DeformationDatum<F>,
) -> Result<DworkCheck> {
    let p = l.p() as i64;
    let exps = l.exponents_for_solution(&datum.u)?;
    let sum_t: i64 = exps.iter().map(|e| e.t as i64).sum();
    let lhs = (p - 1) * (l.r() as i64 - 2) - sum_t - 2 * datum.d as i64;
    let integral = lhs >= 0 && lhs % p == 0;
    let t = lhs.div_euclid(p);
    let sig = datum.signature();
    let spikes: i64 = sig
        .spikes
        .iter()
        .map(|i| i.n_x(PointKind::Spike, p as u64) as i64)
        .sum();
    let sing: i64 = datum
        .singularity_invariants
        .iter()
        .zip(&exps)
        .map(|(i, e)| i.sigma_scaled(p as u64) as i64 - e.t as i64)
        .sum();
    Ok(DworkCheck {
        t,
        integral,
        accounting: integral && p * t == spikes + sing,
    })
}

/// The normalized operator `u'' + (Q'/Q) u' + p2 u = 0` determined by `u`
/// and `Q = prod (x - x_i)^{q_i}`.
pub fn induced_operator<F: Field>(
    u: &Poly<F>,
    q: &Poly<F>,
    singularities: &[F::Elem],
) -> Result<FuchsianOperator<F>> {
    let f = u.field();
    let p = f.characteristic();
    let p0 = Poly::from_roots(f, singularities);
    if u.is_zero() || !u.is_squarefree() || !u.gcd(&p0).is_one() {
        return Err(Error::ShapeError(
            "u must be squarefree and prime to the singularities".into(),
        ));
    }
    let mut qs = Vec::new();
    let mut rest = q.monic();
    for x in singularities {
        let k = q.ord_at(x);
        if k as u64 >= p {
            return Err(Error::ShapeError(format!(
                "Q vanishes to order {k} >= p at {}",
                f.format(x)
            )));
        }
        rest = rest.div_exact(&Poly::linear(f, x).pow(k as u64)).unwrap();
        qs.push(k as u64);
    }
    if !rest.is_constant() {
        return Err(Error::ShapeError(
            "Q has roots away from the singularities".into(),
        ));
    }
    let n = &(q * &u.derivative().derivative()) + &(&q.derivative() * &u.derivative());
    let Some(nu) = n.div_exact(u) else {
        let w = RationalFunction::new(Poly::one(f), q * &(u * u))?;
        let witness = roots_over(f, u)
            .ok()
            .and_then(|rs| {
                rs.into_iter()
                    .find(|y| !f.is_zero(&residue_at(&w, y).unwrap_or_else(|_| f.zero())))
            })
            .map(|y| f.format(&y))
            .unwrap_or_else(|| "a root of u".into());
        return Err(Error::ResidueObstruction(witness));
    };
    let p2 = RationalFunction::new(-&nu, q.clone())?;
    let p2_num = p2.mul_poly(&p0);
    if !p2_num.is_polynomial() {
        return Err(Error::ShapeError(
            "p2 has poles of order > 1 or away from the singularities".into(),
        ));
    }
    let big_p2 = p2_num.num().clone();
    let r = singularities.len() + 1;
    if big_p2.degree().is_some_and(|k| k > r - 3) {
        return Err(Error::ShapeError(format!(
            "deg P2 = {} > r - 3",
            big_p2.deg0()
        )));
    }
    let d = u.deg0() as u64;
    let mut alpha: Vec<u64> = qs.iter().map(|&k| (1 + p - k) % p).collect();
    let finite_sum: u64 = alpha.iter().sum();
    alpha.push(((r as u64 - 2) % p + 2 * (d % p) + (r as u64) * p - finite_sum % p) % p);
    let beta: Vec<F::Elem> = (0..r - 3).map(|j| big_p2.coeff(j)).collect();
    let l = FuchsianOperator::make_normalized(f.clone(), singularities.to_vec(), &alpha, beta, d)?;
    if l.p2() != &p2 {
        return Err(Error::ShapeError(format!(
            "leading coefficient of P2 is {}, expected d(d - alpha_r)",
            f.format(&big_p2.coeff(r - 3))
        )));
    }
    Ok(l)
}

/// Points of `datum` as `(location, kind, invariant)`, supersingular
/// points expanded from the roots of `u` when they are rational.
pub fn supersingular_locations<F: Field>(datum: &DeformationDatum<F>) -> Vec<Point<F::Elem>> {
    match roots_over(&datum.field, &datum.u) {
        Ok(rs) if rs.len() == datum.d => rs.into_iter().map(Point::Finite).collect(),
        _ => Vec::new(),
    }
}
