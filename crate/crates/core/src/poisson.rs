//! The polynomial Poisson algebra with {x,y} = x, {x,z} = 2y, {y,z} = z and
//! its correspondence with the B-generators.

use crate::bases::{decompose_in, generators_of_degree, make_bfrak, require_member, Expansion, Family, GenIndex};
use crate::error::{Error, Result};
use crate::linalg::{solve, SolveError};
use crate::ratpoly::{int, Monomial, Poly, Rational};
use crate::vfield::VField;
use std::collections::BTreeSet;

fn monomial_bracket(a: &Monomial, b: &Monomial) -> [(i64, Option<Monomial>); 2] {
    let (i, j, k) = (a.ex as i64, a.ey as i64, a.ez as i64);
    let (m, n, p) = (b.ex as i64, b.ey as i64, b.ez as i64);
    let c1 = i * n + j * p - k * n - j * m;
    let c2 = 2 * (i * p - k * m);
    let m1 = (n + j >= 1).then(|| Monomial::new(a.ex + b.ex, (n + j - 1) as u32, a.ez + b.ez));
    let m2 =
        (i + m >= 1 && k + p >= 1).then(|| Monomial::new((i + m - 1) as u32, (n + j + 1) as u32, (k + p - 1) as u32));
    [(c1, m1), (c2, m2)]
}

/// {f, g} from the monomial structure constants.
pub fn poisson_bracket(f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            for (c, m) in monomial_bracket(ma, mb) {
                if c != 0 {
                    let m = m.expect("nonzero structure constant has a monomial");
                    out.add_term(m, ca * cb * int(c));
                }
            }
        }
    }
    out
}

/// Σ_j {f, x_j} e_j, the derivation g ↦ {f, g}.
pub fn hamiltonian_field(f: &Poly) -> VField {
    VField::new(poisson_bracket(f, &Poly::x()), poisson_bracket(f, &Poly::y()), poisson_bracket(f, &Poly::z()))
}

/// Expansion of `f` over the scalar generators, labelled by the matching
/// B-indices.
pub fn decompose_bfrak(f: &Poly) -> Result<Expansion> {
    let mut out = Expansion::new();
    let degrees: BTreeSet<u32> = f.monomials().map(|m| m.degree()).collect();
    for d in degrees {
        let slice = f.homogeneous_part(d);
        let weights: BTreeSet<i64> = slice.monomials().map(|m| m.weight()).collect();
        let gens = generators_of_degree(d, &[Family::B]);
        for w in weights {
            let cands: Vec<GenIndex> = gens.iter().copied().filter(|g| g.weight() == w).collect();
            let polys: Vec<Poly> = cands.iter().map(|g| make_bfrak(g.l, g.i, g.k)).collect::<Result<_>>()?;
            let mut rows: BTreeSet<Monomial> = slice.monomials().filter(|m| m.weight() == w).copied().collect();
            for p in &polys {
                rows.extend(p.monomials().copied());
            }
            let a: Vec<Vec<Rational>> = rows.iter().map(|m| polys.iter().map(|p| p.coeff(m)).collect()).collect();
            let b: Vec<Rational> = rows.iter().map(|m| slice.coeff(m)).collect();
            match solve(a, b) {
                Ok(sol) => {
                    for (g, c) in cands.into_iter().zip(sol) {
                        out.add(g, c);
                    }
                }
                Err(SolveError::Inconsistent) => {
                    return Err(Error::pre(format!(
                        "degree-{d} part of the polynomial is outside the span of the scalar generators"
                    )));
                }
                Err(SolveError::Singular) => {
                    return Err(Error::internal(format!("scalar generators dependent at degree {d}")));
                }
            }
        }
    }
    Ok(out)
}

/// Ψ: replaces each scalar generator by the matching B-generator.
pub fn psi(f: &Poly) -> Result<VField> {
    decompose_bfrak(f)?.reconstruct()
}

/// Ψ⁻¹ on family members.
pub fn psi_inverse(v: &VField) -> Result<Poly> {
    require_member(v)?;
    let e = decompose_in(v, &[Family::B])?;
    let mut out = Poly::zero();
    for (g, c) in e.iter() {
        out += &make_bfrak(g.l, g.i, g.k)?.scale(c);
    }
    Ok(out)
}

/// S(v) = −Ψ⁻¹(v), normalized so that v = ∇S × ∇Δ.
pub fn secondary_potential(v: &VField) -> Result<Poly> {
    let s = -psi_inverse(v)?;
    if VField::grad_cross(&s, &Poly::delta()) != *v {
        return Err(Error::internal("secondary potential does not reproduce the field"));
    }
    Ok(s)
}

/// dF/dt along v, computed as {F, S(v)}.
pub fn rate_of_change(f: &Poly, v: &VField) -> Result<Poly> {
    let s = secondary_potential(v)?;
    let r = poisson_bracket(f, &s);
    if r != v.apply_to(f) {
        return Err(Error::internal("Poisson rate differs from the derivation action"));
    }
    Ok(r)
}
