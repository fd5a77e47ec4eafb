//! Normal forms of family members with linear part a multiple of −N.
//!
//! Grade by grade, every B^l_{i,k} with l ≥ 0 is removed by the Lie-series
//! pushforward along (1/(l−2i−2))·B^{l−1}_{i,k}; what survives is supported
//! on B^{-1}_{i,k} = z^iΔ^k M.

use crate::bases::{decompose_in, require_member, Expansion, Family, GenIndex};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::poisson::secondary_potential;
use crate::ratpoly::{fmt_rational, int, rat, Monomial, Poly, Rational};
use crate::sl2core::n_field;
use crate::vfield::VField;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// b_{i,k}: the coefficient of B^{-1}_{i,k}.
pub type Coeffs = BTreeMap<(u32, u32), Rational>;

#[derive(Clone, Debug)]
pub struct NFResult {
    /// min{i : b_{i,0} ≠ 0}; `None` when linearizable through `max_grade`.
    pub p: Option<u32>,
    pub coeffs: Coeffs,
    pub generators_used: Vec<(u32, Expansion)>,
    pub transformed_field: VField,
    pub invariant_i: Poly,
    pub max_grade: u32,
    /// c with linear part c·(−N); time was divided by it.
    pub time_scale: Rational,
}

impl NFResult {
    pub fn is_linearizable(&self) -> bool {
        self.p.is_none()
    }

    pub fn coeff(&self, i: u32, k: u32) -> Rational {
        self.coeffs.get(&(i, k)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|((i, k), c)| json!({"i": i, "k": k, "num": c.numer().to_string(), "den": c.denom().to_string()}))
            .collect();
        json!({
            "p": self.p,
            "linearizable": self.is_linearizable(),
            "coeffs": coeffs,
            "invariantI": self.invariant_i.to_string(),
            "maxGrade": self.max_grade,
            "timeScale": fmt_rational(&self.time_scale),
            "transformedField": self.transformed_field.to_named(),
        })
    }
}

/// −N + Σ b_{i,k} z^iΔ^k (2y, z, 0).
pub fn normal_form_field(coeffs: &Coeffs) -> VField {
    let mut s = Poly::zero();
    for (&(i, k), c) in coeffs {
        s += &(Poly::mono(1, 0, 0, i) * Poly::delta().pow(k)).scale(c);
    }
    let m = VField::new(Poly::y().scale_int(2), Poly::z(), Poly::zero());
    -n_field() + m.mul_poly(&s)
}

/// x + Σ b_{i,k} z^{i+1}Δ^k/(i+1).
pub fn invariant_from(coeffs: &Coeffs) -> Poly {
    let mut out = Poly::x();
    for (&(i, k), c) in coeffs {
        let t = Poly::mono(1, 0, 0, i + 1) * Poly::delta().pow(k);
        out += &t.scale(&(c / int(i as i64 + 1)));
    }
    out
}

fn linear_scale(v: &VField) -> Result<Rational> {
    let lin = v.homogeneous_part(1);
    let c = -v.cy.coeff(&Monomial::new(1, 0, 0));
    if c.is_zero() || lin != (-n_field()).scale(&c) {
        return Err(Error::pre(format!("linear part {lin} is not a nonzero multiple of -N")));
    }
    Ok(c)
}

/// exp(ad_Y) v truncated at `max_degree`.
fn lie_push(y: &VField, v: &VField, max_degree: u32) -> VField {
    let mut out = v.clone();
    let mut term = v.clone();
    let mut n = 1;
    loop {
        term = y.bracket(&term).truncate(max_degree).scale(&rat(1, n));
        if term.is_zero() {
            return out;
        }
        out = out + term.clone();
        n += 1;
    }
}

pub fn normalize(v: &VField, max_grade: u32) -> Result<NFResult> {
    normalize_with_kernel(v, max_grade, &BTreeMap::new())
}

/// As [`normalize`], with extra generators from ker ad_{B(1,0,0)} (the
/// B^{2i+1}_{i,k}) added at the given grades.
pub fn normalize_with_kernel(v: &VField, max_grade: u32, extra: &BTreeMap<u32, Expansion>) -> Result<NFResult> {
    for (g, e) in extra {
        if let Some((idx, _)) =
            e.iter().find(|(idx, _)| idx.family != Family::B || idx.l != 2 * idx.i + 1 || idx.grade() != *g)
        {
            return Err(Error::pre(format!("{idx} is not a grade-{g} kernel element")));
        }
    }
    require_member(v)?;
    let c = linear_scale(v)?;
    let top = max_grade + 1;
    let mut w = v.scale(&(Rational::one() / &c)).truncate(top);
    let mut generators_used = Vec::new();
    for g in 1..=max_grade {
        let slice = w.homogeneous_part(g + 1);
        let e = decompose_in(&slice, &[Family::B])?;
        let mut y = Expansion::new();
        for (idx, coef) in e.iter().filter(|(idx, _)| idx.l >= 0) {
            let den = int((idx.l - 2 * idx.i - 2) as i64);
            y.add(GenIndex::b(idx.l - 1, idx.i, idx.k), coef / den);
        }
        if let Some(k) = extra.get(&g) {
            y.add_scaled(k, &Rational::one());
        }
        if y.is_empty() {
            continue;
        }
        w = lie_push(&y.reconstruct()?, &w, top);
        generators_used.push((g, y));
    }

    let mut coeffs = Coeffs::new();
    for g in 1..=max_grade {
        let e = decompose_in(&w.homogeneous_part(g + 1), &[Family::B])?;
        for (idx, coef) in e.iter() {
            if idx.l != -1 {
                return Err(Error::internal(format!("{idx} survived normalization at grade {g}")));
            }
            coeffs.insert((idx.i as u32, idx.k), coef.clone());
        }
    }
    if normal_form_field(&coeffs) != w {
        return Err(Error::internal("normalized field differs from its coefficient form"));
    }
    let invariant_i = invariant_from(&coeffs);
    if secondary_potential(&w)? != invariant_i || !w.apply_to(&invariant_i).is_zero() {
        return Err(Error::internal("secondary invariant check failed"));
    }
    let p = coeffs.iter().filter(|((_, k), _)| *k == 0).map(|((i, _), _)| *i).min();
    Ok(NFResult { p, coeffs, generators_used, transformed_field: w, invariant_i, max_grade, time_scale: c })
}

/// The invariant of a non-linearizable normal form, re-checked.
pub fn secondary_invariant(nf: &NFResult) -> Result<Poly> {
    if nf.is_linearizable() {
        return Err(Error::pre("normal form is linearizable; no leading term"));
    }
    if !nf.transformed_field.apply_to(&nf.invariant_i).is_zero() {
        return Err(Error::internal("invariant is not annihilated by the normal form"));
    }
    Ok(nf.invariant_i.clone())
}

/// Result of the scaling x = aX, y = τaY, z = τ²aZ, t = τs.
#[derive(Clone, Debug)]
pub struct Rescaled {
    pub nf: NFResult,
    pub a: Rational,
    pub tau: Rational,
    /// b_{p,0} after scaling: 1, or −1 for even p with negative b_{p,0}.
    pub leading: i8,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

fn rpow(r: &Rational, e: i64) -> Rational {
    num_traits::pow::Pow::pow(r, e as i32)
}

pub fn rescale_leading(nf: &NFResult) -> Result<Rescaled> {
    let p = nf.p.ok_or_else(|| Error::pre("normal form is linearizable; nothing to rescale"))?;
    let b = nf.coeff(p, 0);
    let (a, tau, leading) = if p % 2 == 1 {
        (rpow(&b, -(p as i64)), rpow(&b, (p as i64 - 1) / 2), 1)
    } else {
        let mag = b.abs();
        let s = rational_sqrt(&mag).ok_or_else(|| {
            Error::pre(format!(
                "b_{{{p},0}} = {} needs an irrational scaling (p even, |b| not a square)",
                fmt_rational(&b)
            ))
        })?;
        (rpow(&mag, -(p as i64)), rpow(&s, p as i64 - 1), if b.is_negative() { -1 } else { 1 })
    };
    let w = &nf.transformed_field;
    let (px, py, pz) = (Poly::x().scale(&a), Poly::y().scale(&(&tau * &a)), Poly::z().scale(&(&tau * &tau * &a)));
    let moved = w.substitute(&px, &py, &pz);
    let field = VField::new(
        moved.cx.scale(&(&tau / &a)),
        moved.cy.scale(&(Rational::one() / &a)),
        moved.cz.scale(&(Rational::one() / (&tau * &a))),
    );
    let coeffs: Coeffs = nf
        .coeffs
        .iter()
        .map(|(&(i, k), c)| ((i, k), c * rpow(&tau, 2 * (i + k + 1) as i64) * rpow(&a, (i + 2 * k) as i64)))
        .collect();
    if normal_form_field(&coeffs) != field || coeffs[&(p, 0)] != int(leading as i64) {
        return Err(Error::internal("rescaled field lost the normal-form shape"));
    }
    require_member(&field)?;
    let invariant_i = invariant_from(&coeffs);
    let out = NFResult { coeffs, transformed_field: field, invariant_i, ..nf.clone() };
    Ok(Rescaled { nf: out, a, tau, leading })
}

/// Reduced planar system. Variables x, y, z of the polynomials stand for the
/// new coordinates X, Y, Z; in `h`, x stands for the conserved value c of X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarHamiltonian {
    pub h: Poly,
    pub reduced_field: VField,
    pub transform_x: Poly,
}

impl PlanarHamiltonian {
    pub fn h_text(&self) -> String {
        self.h.to_string_with(["c", "Y", "Z"])
    }

    pub fn field_text(&self) -> String {
        let n = ["X", "Y", "Z"];
        let f = &self.reduced_field;
        format!("dX = {}; dY = {}; dZ = {}", f.cx.to_string_with(n), f.cy.to_string_with(n), f.cz.to_string_with(n))
    }
}

pub fn hamiltonian_reduce(nf: &NFResult) -> Result<PlanarHamiltonian> {
    if let Some(((i, k), _)) = nf.coeffs.iter().find(|((_, k), _)| *k > 0) {
        return Err(Error::pre(format!("normal form has a Δ-power term b_{{{i},{k}}}; reduction needs k = 0 only")));
    }
    let mut g = Poly::zero();
    let mut tail = Poly::zero();
    for (&(i, _), b) in &nf.coeffs {
        g += &Poly::mono(1, 0, 0, i + 1).scale(&(b / int(i as i64 + 1)));
        tail += &Poly::mono(1, 0, 0, i + 2).scale(&(b / int(i as i64 + 1)));
    }
    let w = &nf.transformed_field;
    let transform_x = Poly::x() + g.clone();
    let xdot = w.apply_to(&transform_x);
    if !xdot.is_zero() {
        return Err(Error::internal(format!("X is not conserved: dX = {xdot}")));
    }
    let back = Poly::x() - g;
    let (y, z) = (Poly::y(), Poly::z());
    let reduced_field = VField::new(Poly::zero(), w.cy.substitute(&back, &y, &z), w.cz.substitute(&back, &y, &z));
    let h = y.pow(2) - Poly::mono(1, 1, 0, 1) + tail;
    if reduced_field.cz != -h.diff(crate::Var::Y) || reduced_field.cy != h.diff(crate::Var::Z) {
        return Err(Error::internal("Hamilton's equations do not reproduce the reduced field"));
    }
    if h != -Poly::delta().substitute(&back, &y, &z) {
        return Err(Error::internal("H differs from the pulled-back -Δ"));
    }
    Ok(PlanarHamiltonian { h, reduced_field, transform_x })
}

// ---------------------------------------------------------------------------
// Cubic inputs and the closed-form quartic coefficients.

/// Independent quadratic and cubic coefficients of a family member
/// −N + Σ x^i y^j z^k (a_{ijk}, b_{ijk}, c_{ijk}).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicCoeffs {
    pub b002: Rational,
    pub b011: Rational,
    pub a110: Rational,
    pub b110: Rational,
    pub b200: Rational,
    pub b003: Rational,
    pub b021: Rational,
    pub b102: Rational,
    pub c003: Rational,
    pub c021: Rational,
    pub c102: Rational,
    pub b120: Rational,
    pub b201: Rational,
    pub a300: Rational,
    pub b300: Rational,
}

pub const CUBIC_FREE: [&str; 15] = [
    "b002", "b011", "a110", "b110", "b200", "b003", "b021", "b102", "c003", "c021", "c102", "b120", "b201", "a300",
    "b300",
];

impl CubicCoeffs {
    pub fn from_values(v: [Rational; 15]) -> Self {
        let [b002, b011, a110, b110, b200, b003, b021, b102, c003, c021, c102, b120, b201, a300, b300] = v;
        CubicCoeffs { b002, b011, a110, b110, b200, b003, b021, b102, c003, c021, c102, b120, b201, a300, b300 }
    }

    pub fn values(&self) -> [Rational; 15] {
        [
            self.b002.clone(),
            self.b011.clone(),
            self.a110.clone(),
            self.b110.clone(),
            self.b200.clone(),
            self.b003.clone(),
            self.b021.clone(),
            self.b102.clone(),
            self.c003.clone(),
            self.c021.clone(),
            self.c102.clone(),
            self.b120.clone(),
            self.b201.clone(),
            self.a300.clone(),
            self.b300.clone(),
        ]
    }

    /// Reads the independent coefficients off a cubic family member.
    pub fn from_field(v: &VField) -> Result<Self> {
        require_member(v)?;
        if v.degree().unwrap_or(0) > 3 || !v.homogeneous_part(0).is_zero() || v.homogeneous_part(1) != -n_field() {
            return Err(Error::pre("expected -N plus quadratic and cubic terms"));
        }
        let vals = CUBIC_FREE.map(|n| {
            let (comp, m) = coeff_name(n);
            v.component(comp).coeff(&m)
        });
        Ok(CubicCoeffs::from_values(vals))
    }
}

fn coeff_name(name: &str) -> (crate::Var, Monomial) {
    let b = name.as_bytes();
    let comp = match b[0] {
        b'a' => crate::Var::X,
        b'b' => crate::Var::Y,
        _ => crate::Var::Z,
    };
    let e = |c: u8| (c - b'0') as u32;
    (comp, Monomial::new(e(b[1]), e(b[2]), e(b[3])))
}

fn cubic_unknowns() -> Vec<(crate::Var, Monomial)> {
    let mut out = Vec::new();
    for comp in crate::Var::ALL {
        for d in 2..=3u32 {
            for ex in 0..=d {
                for ey in 0..=(d - ex) {
                    out.push((comp, Monomial::new(ex, ey, d - ex - ey)));
                }
            }
        }
    }
    out
}

fn unit_field(comp: crate::Var, m: Monomial) -> VField {
    let t = Poly::term(Rational::one(), m);
    match comp {
        crate::Var::X => VField::new(t, Poly::zero(), Poly::zero()),
        crate::Var::Y => VField::new(Poly::zero(), t, Poly::zero()),
        crate::Var::Z => VField::new(Poly::zero(), Poly::zero(), t),
    }
}

/// The unique family member −N + (quadratic + cubic) with the given
/// independent coefficients; the rest follow from div = 0 and v(Δ) = 0.
pub fn cubic_field(c: &CubicCoeffs) -> Result<VField> {
    let unknowns = cubic_unknowns();
    let units: Vec<VField> = unknowns.iter().map(|(comp, m)| unit_field(*comp, *m)).collect();
    let divs: Vec<Poly> = units.iter().map(|u| u.divergence()).collect();
    let dds: Vec<Poly> = units.iter().map(|u| u.apply_to(&Poly::delta())).collect();
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (name, val) in CUBIC_FREE.iter().zip(c.values()) {
        let key = coeff_name(name);
        a.push(unknowns.iter().map(|u| if *u == key { Rational::one() } else { Rational::zero() }).collect());
        rhs.push(val);
    }
    for polys in [&divs, &dds] {
        let rows: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.monomials().copied()).collect();
        for m in rows {
            a.push(polys.iter().map(|p| p.coeff(&m)).collect());
            rhs.push(Rational::zero());
        }
    }
    let sol = solve(a, rhs).map_err(|e| Error::internal(format!("cubic constraint system: {e:?}")))?;
    let mut v = -n_field();
    for (u, s) in units.iter().zip(sol) {
        v = v + u.scale(&s);
    }
    Ok(v)
}

/// A linear relation Σ coef·name = 0 among cubic coefficients.
pub struct Relation {
    pub label: &'static str,
    pub terms: &'static [(&'static str, i64, i64)],
}

/// Reference relations for the cubic system: the solenoidal ones followed by
/// the Δ-invariance ones.
pub const REFERENCE_RELATIONS: &[Relation] = &[
    Relation { label: "c002 = -(a101 + b011)/2", terms: &[("c002", 1, 1), ("a101", 1, 2), ("b011", 1, 2)] },
    Relation { label: "a200 = -b110", terms: &[("a200", 1, 1), ("b110", 1, 1)] },
    Relation { label: "c020 = 2*b110", terms: &[("c020", 1, 1), ("b110", -2, 1)] },
    Relation { label: "c101 = -(2*a200 + b110)", terms: &[("c101", 1, 1), ("a200", 2, 1), ("b110", 1, 1)] },
    Relation { label: "a101 = b011", terms: &[("a101", 1, 1), ("b011", -1, 1)] },
    Relation { label: "a020 = 2*b011", terms: &[("a020", 1, 1), ("b011", -2, 1)] },
    Relation { label: "c011 = -a110", terms: &[("c011", 1, 1), ("a110", 1, 1)] },
    Relation { label: "a011 = 2*b002", terms: &[("a011", 1, 1), ("b002", -2, 1)] },
    Relation { label: "c110 = 2*b200", terms: &[("c110", 1, 1), ("b200", -2, 1)] },
    Relation { label: "c200 = 0", terms: &[("c200", 1, 1)] },
    Relation { label: "a002 = 0", terms: &[("a002", 1, 1)] },
    Relation { label: "b101 = 0", terms: &[("b101", 1, 1)] },
    Relation { label: "c300 = 0", terms: &[("c300", 1, 1)] },
    Relation { label: "a003 = 0", terms: &[("a003", 1, 1)] },
    Relation { label: "c111 = -2*(a210 + b120)", terms: &[("c111", 1, 1), ("a210", 2, 1), ("b120", 2, 1)] },
    Relation { label: "b012 = -2*c003", terms: &[("b012", 1, 1), ("c003", 2, 1)] },
    Relation { label: "b111 = -2*(a201 + c102)", terms: &[("b111", 1, 1), ("a201", 2, 1), ("c102", 2, 1)] },
    Relation { label: "a012 = 2*b003", terms: &[("a012", 1, 1), ("b003", -2, 1)] },
    Relation { label: "c210 = 2*b300", terms: &[("c210", 1, 1), ("b300", -2, 1)] },
    Relation { label: "a120 = -c021", terms: &[("a120", 1, 1), ("c021", 1, 1)] },
    Relation { label: "a111 = -2*b021 - 2*c012", terms: &[("a111", 1, 1), ("b021", 2, 1), ("c012", 2, 1)] },
    Relation { label: "b210 = -2*a300", terms: &[("b210", 1, 1), ("a300", 2, 1)] },
    Relation { label: "a102 = -b012 - 3*c003", terms: &[("a102", 1, 1), ("b012", 1, 1), ("c003", 3, 1)] },
    Relation { label: "c201 = -3*a300 - b210", terms: &[("c201", 1, 1), ("a300", 3, 1), ("b210", 1, 1)] },
    Relation { label: "a030 = 2*b021", terms: &[("a030", 1, 1), ("b021", -2, 1)] },
    Relation { label: "c030 = 2*b120", terms: &[("c030", 1, 1), ("b120", -2, 1)] },
    Relation { label: "c012 = -2*(b021 + b102)", terms: &[("c012", 1, 1), ("b021", 2, 1), ("b102", 2, 1)] },
    Relation { label: "a201 = -c102", terms: &[("a201", 1, 1), ("c102", 1, 1)] },
    Relation { label: "a210 = -2*(b201 + b120)", terms: &[("a210", 1, 1), ("b201", 2, 1), ("b120", 2, 1)] },
    Relation { label: "a021 = -4*c003", terms: &[("a021", 1, 1), ("c003", 4, 1)] },
    Relation { label: "c120 = -4*a300", terms: &[("c120", 1, 1), ("a300", 4, 1)] },
];

/// Checks the reference relations on a cubic field, naming the first failure.
pub fn check_reference_relations(v: &VField) -> Result<()> {
    for r in REFERENCE_RELATIONS {
        let mut s = Rational::zero();
        for &(name, n, d) in r.terms {
            let (comp, m) = coeff_name(name);
            s += v.component(comp).coeff(&m) * rat(n, d);
        }
        if !s.is_zero() {
            return Err(Error::pre(format!("relation {} fails (residual {})", r.label, fmt_rational(&s))));
        }
    }
    Ok(())
}

/// Expansion of the cubic field over B from the closed-form d-coefficients.
pub fn cubic_d_expansion(c: &CubicCoeffs) -> Expansion {
    let f = |n: i64, d: i64| rat(n, d);
    Expansion::from_pairs([
        (GenIndex::b(1, 0, 0), Rational::one()),
        (GenIndex::b(-1, 1, 0), c.b002.clone()),
        (GenIndex::b(0, 1, 0), &c.b011 * f(2, 1)),
        (GenIndex::b(1, 1, 0), c.a110.clone()),
        (GenIndex::b(2, 1, 0), &c.b110 * f(-2, 1)),
        (GenIndex::b(3, 1, 0), -c.b200.clone()),
        (GenIndex::b(-1, 0, 1), (&c.b102 * f(4, 1) - &c.b021) * f(1, 5)),
        (GenIndex::b(0, 0, 1), (&c.c021 - &c.c102 * f(4, 1)) * f(1, 5)),
        (GenIndex::b(1, 0, 1), (&c.b120 - &c.b201 * f(4, 1)) * f(1, 5)),
        (GenIndex::b(-1, 2, 0), c.b003.clone()),
        (GenIndex::b(0, 2, 0), &c.c003 * f(-3, 1)),
        (GenIndex::b(1, 2, 0), (&c.b021 + &c.b102) * f(3, 1)),
        (GenIndex::b(2, 2, 0), -(&c.c021 + &c.c102)),
        (GenIndex::b(3, 2, 0), (&c.b201 + &c.b120) * f(-3, 1)),
        (GenIndex::b(4, 2, 0), &c.a300 * f(3, 1)),
        (GenIndex::b(5, 2, 0), -c.b300.clone()),
    ])
}

/// Normal-form coefficients through grade 3 for a cubic input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuarticCoeffs {
    pub b10: Rational,
    pub b20: Rational,
    pub b01: Rational,
    pub b11: Rational,
    pub b30: Rational,
}

impl QuarticCoeffs {
    pub fn from_nf(nf: &NFResult) -> Self {
        QuarticCoeffs {
            b10: nf.coeff(1, 0),
            b20: nf.coeff(2, 0),
            b01: nf.coeff(0, 1),
            b11: nf.coeff(1, 1),
            b30: nf.coeff(3, 0),
        }
    }

    pub fn as_coeffs(&self) -> Coeffs {
        [((1, 0), &self.b10), ((2, 0), &self.b20), ((0, 1), &self.b01), ((1, 1), &self.b11), ((3, 0), &self.b30)]
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }
}

/// The closed-form rational expressions for the quartic normal form.
pub fn quartic_closed_form(c: &CubicCoeffs) -> QuarticCoeffs {
    let r = rat;
    let (b002, b011, a110, b110, b200) = (&c.b002, &c.b011, &c.a110, &c.b110, &c.b200);
    let (b003, b021, b102, c003, c021) = (&c.b003, &c.b021, &c.b102, &c.c003, &c.c021);
    let (c102, b120, b201) = (&c.c102, &c.b120, &c.b201);

    let b10 = b002.clone();
    let b20 = b003 + b002 * a110 * r(1, 2) - b011 * b011 * r(3, 4);
    let b01 =
        a110 * a110 * r(1, 60) + b110 * b011 * r(1, 5) - b200 * b002 * r(1, 5) + (b102 * r(4, 1) - b021) * r(1, 5);
    let b11 = -(a110 * a110 * a110) * r(1, 378) - b110 * b110 * b002 * r(1, 7)
        + (c102 * r(4, 1) - c021) * b011 * r(1, 15)
        + b011 * b011 * b200 * r(1, 21)
        + (b201 + b120) * b002 * r(12, 105)
        + b110 * c003 * r(8, 21)
        + (b021 + b102) * a110 * r(12, 105)
        - b200 * b003 * r(4, 7)
        + b011 * (c021 + c102) * r(2, 35)
        - b200 * b002 * a110 * r(2, 21)
        - b110 * b011 * a110 * r(2, 63)
        + (b120 - b201 * r(4, 1)) * b002 * r(2, 5)
        + (b102 * r(4, 1) - b021) * a110 * r(1, 15);
    let b30 = b003 * a110 * r(2, 3) - b110 * b002 * b011 * r(6, 5) + (b021 + b102) * r(3, 1) * b002 * r(4, 15)
        - b200 * b002 * b002 * r(6, 5)
        + b002 * a110 * a110 * r(1, 10)
        + c003 * b011 * r(2, 1);
    QuarticCoeffs { b10, b20, b01, b11, b30 }
}

/// The reference closed-form first integral for the quartic normal form.
pub fn reference_quartic_invariant(q: &QuarticCoeffs) -> Poly {
    let (x, y, z) = (Poly::x(), Poly::y(), Poly::z());
    let inner = (&x * &z).scale(&q.b11) - y.pow(2).scale(&q.b11)
        + Poly::constant(&q.b10 * int(4))
        + z.pow(2).scale(&(&q.b01 * int(2)))
        + z.pow(2).scale(&(&q.b30 * rat(1, 2)))
        + z.scale(&(&q.b20 * rat(2, 3)));
    x - (&z * &y.pow(2)).scale(&q.b01) + z.pow(2).scale(&rat(1, 2)) * inner
}

/// The reference quartic normal form: −N + 2y(...)∂x + (...)∂y.
pub fn reference_quartic_field(q: &QuarticCoeffs) -> VField {
    let (y, z, d) = (Poly::y(), Poly::z(), Poly::delta());
    let lin = z.scale(&q.b11) + Poly::constant(q.b01.clone());
    let cub = z.pow(2).scale(&q.b30) + z.scale(&q.b20) + Poly::constant(q.b10.clone());
    let dx = y.scale_int(2) * (d.clone() * lin.clone() + z.clone() * cub.clone());
    let dy = z.clone() * d * lin + z.pow(2) * cub;
    -n_field() + VField::new(dx, dy, Poly::zero())
}

/// (x + Σ b z^{i+1}Δ^k/(i+1))·(z, −2y, x), the vector-potential normal form.
pub fn quartic_vector_potential(q: &QuarticCoeffs) -> VField {
    let s = invariant_from(&q.as_coeffs());
    VField::new(Poly::z(), Poly::y().scale_int(-2), Poly::x()).mul_poly(&s)
}
