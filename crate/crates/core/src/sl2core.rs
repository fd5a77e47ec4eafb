//! The triple N, M, H acting on polynomials and vector fields, plus the
//! combinatorial coefficients used to expand iterated actions.

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::ratpoly::{int, Monomial, Poly, Rational, Var};
use crate::vfield::VField;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// N = x∂y + 2y∂z.
pub fn n_field() -> VField {
    VField::new(Poly::zero(), Poly::x(), Poly::y().scale_int(2))
}

/// M = z∂y + 2y∂x.
pub fn m_field() -> VField {
    VField::new(Poly::y().scale_int(2), Poly::z(), Poly::zero())
}

/// H = [M, N] = 2z∂z − 2x∂x.
pub fn h_field() -> VField {
    VField::new(Poly::x().scale_int(-2), Poly::zero(), Poly::z().scale_int(2))
}

/// Euler field x∂x + y∂y + z∂z.
pub fn e_field() -> VField {
    VField::position()
}

/// N as a derivation on polynomials.
pub fn apply_n(f: &Poly) -> Poly {
    &Poly::x() * &f.diff(Var::Y) + (&Poly::y() * &f.diff(Var::Z)).scale_int(2)
}

/// N applied `q` times.
pub fn n_pow(q: u32, f: &Poly) -> Poly {
    let mut p = f.clone();
    for _ in 0..q {
        if p.is_zero() {
            break;
        }
        p = apply_n(&p);
    }
    p
}

/// N^q(z^i) by repeated derivation.
pub fn n_pow_z(q: u32, i: u32) -> Poly {
    n_pow(q, &Poly::mono(1, 0, 0, i))
}

/// N^q(z^i) from the ζ closed form; agrees with [`n_pow_z`].
pub fn n_pow_z_closed(q: u32, i: u32) -> Poly {
    zeta_expansion(q, i)
}

/// Falling factorial i(i−1)⋯(i−l+1); 1 for l = 0.
pub fn kappa(l: u32, i: i64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..l as i64 {
        acc *= int(i - j);
    }
    acc
}

/// κ extended to negative `l` as 1/((i+1)(i+2)⋯(i−l)). `None` when a zero
/// factor makes the value undefined.
pub fn kappa_formal(l: i64, i: i64) -> Option<Rational> {
    if l >= 0 {
        return Some(kappa(l as u32, i));
    }
    let mut acc = Rational::one();
    for j in 1..=(-l) {
        if i + j == 0 {
            return None;
        }
        acc *= int(i + j);
    }
    Some(acc.recip())
}

/// ∏_{j<k} (a + j b).
pub fn pochhammer(a: &Rational, b: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += b;
    }
    acc
}

fn poch_int(a: i64, b: i64, k: i64) -> Rational {
    pochhammer(&int(a), &int(b), k.max(0) as u32)
}

fn factorial(n: i64) -> Rational {
    kappa(n as u32, n)
}

fn split(q: u32) -> (i64, i64) {
    ((q / 2) as i64, (q % 2) as i64)
}

fn check_n(q: u32, n: u32) -> Result<()> {
    if n > q / 2 {
        return Err(Error::pre(format!("expansion index n = {n} exceeds s = {}", q / 2)));
    }
    Ok(())
}

/// Coefficient of x^{s−n} y^r z^{i−s−r−n} Δ^n in N^q(z^i), q = 2s + r.
pub fn eta_coeff(q: u32, i: u32, n: u32) -> Result<Rational> {
    check_n(q, n)?;
    let (s, r) = split(q);
    let (i, n) = (i as i64, n as i64);
    if i < s + n + r {
        return Ok(Rational::zero());
    }
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let num = sign
        * poch_int(s, -1, n)
        * poch_int(i, -1, s + n + r)
        * poch_int(2 * i - 1, -2, s)
        * num_traits::pow(int(2), (s + n + r) as usize);
    Ok(num / (factorial(n) * poch_int(2 * i - 1, -2, n)))
}

/// Coefficient of x^{s−n} y^{2n+r} z^{i−n−s−r} in N^q(z^i), q = 2s + r.
pub fn zeta_coeff(q: u32, i: u32, n: u32) -> Result<Rational> {
    check_n(q, n)?;
    let (s, r) = split(q);
    let (i, n) = (i as i64, n as i64);
    if i < s + n + r {
        return Ok(Rational::zero());
    }
    let num = factorial(i) * factorial(2 * s + r) * num_traits::pow(int(2), (2 * n + r) as usize);
    Ok(num / (factorial(s - n) * factorial(2 * n + r) * factorial(i - n - s - r)))
}

/// Σ_n η x^{s−n} y^r z^{i−s−r−n} Δ^n.
pub fn eta_expansion(q: u32, i: u32) -> Poly {
    let (s, r) = split(q);
    let delta = Poly::delta();
    let mut out = Poly::zero();
    for n in 0..=s {
        let c = eta_coeff(q, i, n as u32).expect("n within range");
        if c.is_zero() {
            continue;
        }
        let ez = i as i64 - s - r - n;
        let m = Monomial::new((s - n) as u32, r as u32, ez as u32);
        out += &(&Poly::term(c, m) * &delta.pow(n as u32));
    }
    out
}

/// Σ_n ζ x^{s−n} y^{2n+r} z^{i−n−s−r}.
pub fn zeta_expansion(q: u32, i: u32) -> Poly {
    let (s, r) = split(q);
    let mut out = Poly::zero();
    for n in 0..=s {
        let c = zeta_coeff(q, i, n as u32).expect("n within range");
        if c.is_zero() {
            continue;
        }
        let m = Monomial::new((s - n) as u32, (2 * n + r) as u32, (i as i64 - n - s - r) as u32);
        out.add_term(m, c);
    }
    out
}

/// Index data shared by the two re-expansion routines.
struct ProductShape {
    sigma: i64,
    parity: u32,
    top: i64,
    low: i64,
}

fn product_shape(q1: u32, q2: u32, i: u32, j: u32) -> ProductShape {
    let (s1, r1) = split(q1);
    let (s2, r2) = split(q2);
    let sigma = q1 as i64 + q2 as i64 - i as i64 - j as i64;
    ProductShape { sigma, parity: (r1 - r2).unsigned_abs() as u32, top: s1 + s2 + (r1 + r2) / 2, low: sigma.max(0) }
}

/// The basis element N^{2p+|r2−r1|}(z^{2p−σ+|r2−r1|}) Δ^{top−p} paired with C_p.
pub fn reexpand_basis(q1: u32, q2: u32, i: u32, j: u32, p: i64) -> Poly {
    let sh = product_shape(q1, q2, i, j);
    let par = sh.parity as i64;
    let zexp = 2 * p - sh.sigma + par;
    if p < 0 || zexp < 0 || p > sh.top {
        return Poly::zero();
    }
    let base = n_pow_z((2 * p + par) as u32, zexp as u32);
    &base * &Poly::delta().pow((sh.top - p) as u32)
}

/// Coefficients C_p with
/// N^{q1}(z^i)·N^{q2}(z^j) = Σ_p C_p N^{2p+|r2−r1|}(z^{2p−σ+|r2−r1|}) Δ^{s1+s2−p+⌊(r1+r2)/2⌋},
/// found by an exact solve in monomial coordinates.
pub fn reexpand_product(q1: u32, q2: u32, i: u32, j: u32) -> Result<BTreeMap<i64, Rational>> {
    let lhs = &n_pow_z(q1, i) * &n_pow_z(q2, j);
    let mut out = BTreeMap::new();
    if lhs.is_zero() {
        return Ok(out);
    }
    let sh = product_shape(q1, q2, i, j);
    let ps: Vec<i64> = (sh.low..=sh.top).collect();
    let basis: Vec<Poly> = ps.iter().map(|&p| reexpand_basis(q1, q2, i, j, p)).collect();
    let mut rows: BTreeSet<Monomial> = lhs.monomials().copied().collect();
    for b in &basis {
        rows.extend(b.monomials().copied());
    }
    let a: Vec<Vec<Rational>> = rows.iter().map(|m| basis.iter().map(|b| b.coeff(m)).collect()).collect();
    let rhs: Vec<Rational> = rows.iter().map(|m| lhs.coeff(m)).collect();
    let sol = solve(a, rhs)
        .map_err(|e| Error::internal(format!("product re-expansion for ({q1},{q2},{i},{j}) failed: {e:?}")))?;
    for (p, c) in ps.into_iter().zip(sol) {
        if !c.is_zero() {
            out.insert(p, c);
        }
    }
    Ok(out)
}

/// Same coefficients by forward substitution in the triangular system
/// η̃_m − ⌊(r1+r2)/2⌋ η̃_{m−1} = Σ_{k≤m} C_{top−k} η^{q1+q2−2k, i+j−2k}_{m−k},
/// where η̃ are the Δ-expansion coefficients of the product.
pub fn reexpand_product_triangular(q1: u32, q2: u32, i: u32, j: u32) -> Result<BTreeMap<i64, Rational>> {
    let sh = product_shape(q1, q2, i, j);
    let mut out = BTreeMap::new();
    if (&n_pow_z(q1, i) * &n_pow_z(q2, j)).is_zero() {
        return Ok(out);
    }
    let (s1, r1) = split(q1);
    let (s2, r2) = split(q2);
    let eta1: Vec<Rational> = (0..=s1).map(|n| eta_coeff(q1, i, n as u32).unwrap()).collect();
    let eta2: Vec<Rational> = (0..=s2).map(|n| eta_coeff(q2, j, n as u32).unwrap()).collect();
    let mut tilde = vec![Rational::zero(); (s1 + s2 + 2) as usize];
    for (a, ca) in eta1.iter().enumerate() {
        for (b, cb) in eta2.iter().enumerate() {
            tilde[a + b] += ca * cb;
        }
    }
    let carry = (r1 + r2) / 2;
    let lhs = |m: i64| -> Rational {
        let cur = tilde.get(m as usize).cloned().unwrap_or_else(Rational::zero);
        if carry == 1 && m >= 1 {
            cur - &tilde[(m - 1) as usize]
        } else {
            cur
        }
    };
    let qs = q1 as i64 + q2 as i64;
    let ij = i as i64 + j as i64;
    let eta_at = |k: i64, n: i64| -> Rational {
        let (q, ii) = (qs - 2 * k, ij - 2 * k);
        if q < 0 || ii < 0 || n > q / 2 {
            return Rational::zero();
        }
        eta_coeff(q as u32, ii as u32, n as u32).unwrap()
    };
    let mut cs: Vec<Rational> = Vec::new();
    for m in 0..=(sh.top - sh.low) {
        let mut acc = lhs(m);
        for (k, ck) in cs.iter().enumerate() {
            acc -= ck * eta_at(k as i64, m - k as i64);
        }
        let diag = eta_at(m, 0);
        if diag.is_zero() {
            return Err(Error::internal(format!("vanishing pivot at m = {m}")));
        }
        cs.push(acc / diag);
    }
    for (k, c) in cs.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(sh.top - k as i64, c);
        }
    }
    Ok(out)
}

/// N^n(fM) = N^n(f)M − nN^{n−1}(f)H − n(n−1)N^{n−2}(f)N for homogeneous f.
pub fn nm_expand(n: u32, f: &Poly) -> Result<VField> {
    if !f.is_homogeneous() {
        return Err(Error::pre("nm_expand needs a homogeneous polynomial"));
    }
    let mut out = m_field().mul_poly(&n_pow(n, f));
    if n >= 1 {
        out = &out - &h_field().mul_poly(&n_pow(n - 1, f).scale_int(n as i64));
    }
    if n >= 2 {
        out = &out - &n_field().mul_poly(&n_pow(n - 2, f).scale_int((n * (n - 1)) as i64));
    }
    Ok(out)
}

/// ad_N applied `n` times to a vector field.
pub fn ad_n_pow(n: u32, v: &VField) -> VField {
    let nf = n_field();
    let mut w = v.clone();
    for _ in 0..n {
        if w.is_zero() {
            break;
        }
        w = nf.bracket(&w);
    }
    w
}
