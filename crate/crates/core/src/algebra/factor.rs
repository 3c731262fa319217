use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Pairwise coprime squarefree factors with multiplicities, sorted by
/// multiplicity. The leading coefficient is dropped.
///
/// When coefficients have no computable p-th roots (an imperfect field such
/// as F_p(L)) an inseparable factor `h(x^p)` is kept as is, with the
/// multiplicity it has in the deflated variable.
pub fn squarefree_decomposition<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.deg0().cmp(&b.0.deg0())));
    out
}

fn sff<F: Field>(f: &Poly<F>, mult: usize, out: &mut Vec<(Poly<F>, usize)>) {
    if f.is_constant() {
        return;
    }
    let field = f.field();
    let p = field.characteristic() as usize;
    let c0 = f.gcd(&f.derivative());
    let mut c = c0.clone();
    let mut w = f.div_exact(&c0).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if c.is_constant() {
        return;
    }
    let h = c.deflate(p).expect("remaining part lies in k[x^p]");
    let roots: Option<Vec<_>> = h.coeffs().iter().map(|a| field.pth_root(a)).collect();
    match roots {
        Some(r) => sff(&Poly::new(field.clone(), r), mult * p, out),
        None => {
            let mut inner = Vec::new();
            sff(&h, 1, &mut inner);
            for (g, m) in inner {
                out.push((g.inflate(p), m * mult));
            }
        }
    }
}

/// Root multiplicity profile over the algebraic closure: pairs
/// `(number of distinct roots, multiplicity)`, sorted by multiplicity.
pub fn closure_multiplicities<F: Field>(f: &Poly<F>) -> Vec<(usize, usize)> {
    assert!(!f.is_zero(), "multiplicities of zero");
    let mut out: Vec<(usize, usize)> = Vec::new();
    closure_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|&(_, m)| m);
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for (n, m) in out {
        match merged.last_mut() {
            Some(last) if last.1 == m => last.0 += n,
            _ => merged.push((n, m)),
        }
    }
    merged
}

fn closure_rec<F: Field>(f: &Poly<F>, mult: usize, out: &mut Vec<(usize, usize)>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().characteristic() as usize;
    let c0 = f.gcd(&f.derivative());
    let mut c = c0.clone();
    let mut w = f.div_exact(&c0).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac.deg0(), i * mult));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_constant() {
        // distinct roots of h(y) correspond bijectively to those of h(x^p)
        closure_rec(
            &c.deflate(p).expect("remaining part lies in k[x^p]"),
            mult * p,
            out,
        );
    }
}

/// Roots in the field's candidate set, each repeated by multiplicity.
pub fn roots_over<F: Field>(field: &F, f: &Poly<F>) -> Result<Vec<F::Elem>> {
    if f.is_zero() {
        return Err(Error::UnsupportedSearchSpace("zero polynomial".into()));
    }
    let candidates = field
        .root_candidates()
        .ok_or_else(|| Error::UnsupportedSearchSpace(format!("{}", field.kind())))?;
    let mut out = Vec::new();
    let mut g = f.clone();
    for a in candidates {
        if g.is_constant() {
            break;
        }
        let lin = Poly::linear(field, &a);
        while let Some(q) = g.div_exact(&lin) {
            g = q;
            out.push(a.clone());
        }
    }
    Ok(out)
}
