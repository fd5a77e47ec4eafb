//! The A, B, C generator families and the unique expansion of a polynomial
//! vector field over them.
//!
//! B^l_{i,k} = N^{l+1}(z^iΔ^k M)/κ(l+1, 2i+2) for −1 ≤ l ≤ 2i+1.
//! A^l_{i,k} = ad_N^{l+2}(z^{i+1}Δ^k ∂x)/κ(l+2, 2i+2) for −2 ≤ l ≤ 2i+2, with
//! the normalizer dropped where it vanishes. i = −1 is admitted so that the
//! modules generated by Δ^k∂x (and the constant fields) are covered.
//! C^l_{i,k} = N^l(z^i)Δ^k E/κ(l, 2i) for 0 ≤ l ≤ 2i.

use crate::error::{Error, Result};
use crate::linalg::{solve, SolveError};
use crate::ratpoly::{fmt_rational, int, Monomial, Poly, Rational};
use crate::sl2core::{e_field, eta_expansion, kappa, n_pow_z_closed as n_pow_z};
use crate::vfield::VField;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenIndex {
    pub family: Family,
    pub l: i32,
    pub i: i32,
    pub k: u32,
}

impl GenIndex {
    pub fn b(l: i32, i: i32, k: u32) -> Self {
        GenIndex { family: Family::B, l, i, k }
    }

    pub fn a(l: i32, i: i32, k: u32) -> Self {
        GenIndex { family: Family::A, l, i, k }
    }

    pub fn c(l: i32, i: i32, k: u32) -> Self {
        GenIndex { family: Family::C, l, i, k }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi, imin) = match self.family {
            Family::B => (-1, 2 * self.i + 1, 0),
            Family::A => (-2, 2 * self.i + 2, -1),
            Family::C => (0, 2 * self.i, 0),
        };
        if self.i < imin {
            return Err(Error::pre(format!("{self}: subscript i must be at least {imin}")));
        }
        if self.l < lo || self.l > hi {
            return Err(Error::pre(format!("{self}: superscript must satisfy {lo} <= l <= {hi}")));
        }
        Ok(())
    }

    /// Standard degree of the generator's components.
    pub fn degree(&self) -> u32 {
        (self.i + 1 + 2 * self.k as i32) as u32
    }

    /// i + 2k, the degree minus one.
    pub fn grade(&self) -> u32 {
        self.degree() - 1
    }

    /// Eigenvalue under ad_H.
    pub fn weight(&self) -> i64 {
        2 * (self.i as i64 - self.l as i64)
    }
}

impl Ord for GenIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.family
            .cmp(&o.family)
            .then(self.degree().cmp(&o.degree()))
            .then(self.k.cmp(&o.k))
            .then(self.l.cmp(&o.l))
            .then(self.i.cmp(&o.i))
    }
}

impl PartialOrd for GenIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{})", self.family, self.l, self.i, self.k)
    }
}

#[cfg(test)]
fn z_pow(e: i32) -> Poly {
    Poly::mono(1, 0, 0, e as u32)
}

fn pow_delta(k: u32) -> Poly {
    Poly::delta().pow(k)
}

/// `num/den · N^q(z^e)`, treated as zero when `num` is zero or `q < 0`,
/// so a vanishing normalizer is never divided by.
fn guarded_term(num: i64, den: Rational, q: i32, e: i32) -> Result<Poly> {
    if num == 0 || q < 0 {
        return Ok(Poly::zero());
    }
    if den.is_zero() {
        return Err(Error::internal("zero normalizer with nonzero numerator"));
    }
    Ok(n_pow_z(q as u32, e as u32).scale(&(int(num) / den)))
}

fn build_b(l: i32, i: i32, k: u32) -> Result<VField> {
    let zi = i + 1;
    let ip1 = int(zi as i64);
    let kap = |q: i32| if q < 0 { int(1) } else { kappa(q as u32, 2 * zi as i64) };
    let cx = guarded_term((2 * i - l + 1) as i64, &ip1 * kap(l + 2), l + 2, zi)?;
    let cy = guarded_term((i - l) as i64, &ip1 * kap(l + 1), l + 1, zi)?;
    let cz = guarded_term(-(l as i64 + 1), &ip1 * kap(l), l, zi)?;
    Ok(VField::new(cx, cy, cz).mul_poly(&pow_delta(k)))
}

fn build_a(l: i32, i: i32, k: u32) -> Result<VField> {
    let n = (l + 2) as u32;
    let f = i + 1;
    let np = |q: i64| if q < 0 { Poly::zero() } else { n_pow_z(q as u32, f as u32) };
    let ni = n as i64;
    let cx = np(ni);
    let cy = np(ni - 1).scale_int(-ni);
    let cz = np(ni - 2).scale_int(ni * (ni - 1));
    let norm = kappa(n, 2 * f as i64);
    let v = VField::new(cx, cy, cz).mul_poly(&pow_delta(k));
    Ok(if norm.is_zero() { v } else { v.scale(&norm.recip()) })
}

fn build_c(l: i32, i: i32, k: u32) -> Result<VField> {
    let c = kappa(l as u32, 2 * i as i64).recip();
    let f = &n_pow_z(l as u32, i as u32).scale(&c) * &pow_delta(k);
    Ok(e_field().mul_poly(&f))
}

fn cache() -> &'static Mutex<HashMap<GenIndex, VField>> {
    static CACHE: OnceLock<Mutex<HashMap<GenIndex, VField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The generator field for `idx`.
pub fn make_generator(idx: GenIndex) -> Result<VField> {
    idx.validate()?;
    if let Some(v) = cache().lock().unwrap().get(&idx) {
        return Ok(v.clone());
    }
    let v = match idx.family {
        Family::B => build_b(idx.l, idx.i, idx.k)?,
        Family::A => build_a(idx.l, idx.i, idx.k)?,
        Family::C => build_c(idx.l, idx.i, idx.k)?,
    };
    cache().lock().unwrap().insert(idx, v.clone());
    Ok(v)
}

/// The scalar generator −N^{l+1}(z^{i+1})Δ^k/((i+1)κ(l+1, 2i+2)), built from
/// the closed-form Δ-expansion of N^{l+1}(z^{i+1}).
pub fn make_bfrak(l: i32, i: i32, k: u32) -> Result<Poly> {
    GenIndex::b(l, i, k).validate()?;
    let q = (l + 1) as u32;
    let den = int(i as i64 + 1) * kappa(q, 2 * i as i64 + 2);
    let base = eta_expansion(q, (i + 1) as u32).scale(&(-den.recip()));
    Ok(&base * &pow_delta(k))
}

/// Every admissible generator of standard degree `d` in `families`.
pub fn generators_of_degree(d: u32, families: &[Family]) -> Vec<GenIndex> {
    let mut out = Vec::new();
    let d = d as i32;
    for &fam in families {
        let mut k = 0;
        loop {
            let i = d - 1 - 2 * k as i32;
            let imin = if fam == Family::A { -1 } else { 0 };
            if i < imin {
                break;
            }
            let (lo, hi) = match fam {
                Family::B => (-1, 2 * i + 1),
                Family::A => (-2, 2 * i + 2),
                Family::C => (0, 2 * i),
            };
            for l in lo..=hi {
                out.push(GenIndex { family: fam, l, i, k });
            }
            k += 1;
        }
    }
    out
}

/// Unique coefficients over generator indices; zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    coeffs: BTreeMap<GenIndex, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub family: Family,
    pub l: i32,
    pub i: i32,
    pub k: u32,
    pub num: String,
    pub den: String,
}

impl Expansion {
    pub fn new() -> Self {
        Expansion::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (GenIndex, Rational)>>(it: I) -> Self {
        let mut e = Expansion::new();
        for (g, c) in it {
            e.add(g, c);
        }
        e
    }

    pub fn add(&mut self, g: GenIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(g).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, o: &Expansion, c: &Rational) {
        for (g, v) in &o.coeffs {
            self.add(*g, v * c);
        }
    }

    pub fn get(&self, g: &GenIndex) -> Rational {
        self.coeffs.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Expansion {
        let mut e = Expansion::new();
        e.add_scaled(self, c);
        e
    }

    pub fn neg(&self) -> Expansion {
        self.scale(&int(-1))
    }

    pub fn only_family(&self, f: Family) -> bool {
        self.coeffs.keys().all(|g| g.family == f)
    }

    pub fn reconstruct(&self) -> Result<VField> {
        let mut v = VField::zero();
        for (g, c) in &self.coeffs {
            v = &v + &make_generator(*g)?.scale(c);
        }
        Ok(v)
    }

    pub fn records(&self) -> Vec<ExpansionRecord> {
        self.coeffs
            .iter()
            .map(|(g, c)| ExpansionRecord {
                family: g.family,
                l: g.l,
                i: g.i,
                k: g.k,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (g, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            write!(f, "{}*{}", fmt_rational(&c.abs()), g)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expansion({self})")
    }
}

/// Row key: component index (0 = x, 1 = y, 2 = z) and monomial.
type Coord = (u8, Monomial);

/// ad_H eigenvalue of the monomial field m·e_j.
fn coord_weight(c: &Coord) -> i64 {
    let shift = [2, 0, -2][c.0 as usize];
    c.1.weight() + shift
}

fn coords(v: &VField) -> BTreeMap<Coord, Rational> {
    let mut out = BTreeMap::new();
    for (j, p) in v.components().iter().enumerate() {
        for (m, c) in p.terms() {
            out.insert((j as u8, *m), c.clone());
        }
    }
    out
}

/// Expansion over the requested families. Each homogeneous slice is split by
/// ad_H weight and solved exactly.
pub fn decompose_in(v: &VField, families: &[Family]) -> Result<Expansion> {
    let mut out = Expansion::new();
    for d in v.degrees() {
        let target = coords(&v.homogeneous_part(d));
        let weights: BTreeSet<i64> = target.keys().map(coord_weight).collect();
        let gens = generators_of_degree(d, families);
        for w in weights {
            let cands: Vec<GenIndex> = gens.iter().copied().filter(|g| g.weight() == w).collect();
            let fields: Vec<BTreeMap<Coord, Rational>> =
                cands.iter().map(|g| make_generator(*g).map(|f| coords(&f))).collect::<Result<_>>()?;
            let mut rows: BTreeSet<Coord> = target.keys().filter(|c| coord_weight(c) == w).copied().collect();
            for f in &fields {
                rows.extend(f.keys().copied());
            }
            let zero = Rational::zero();
            let a: Vec<Vec<Rational>> =
                rows.iter().map(|r| fields.iter().map(|f| f.get(r).unwrap_or(&zero).clone()).collect()).collect();
            let b: Vec<Rational> = rows.iter().map(|r| target.get(r).unwrap_or(&zero).clone()).collect();
            match solve(a, b) {
                Ok(sol) => {
                    for (g, c) in cands.into_iter().zip(sol) {
                        out.add(g, c);
                    }
                }
                Err(SolveError::Inconsistent) if families.len() < 3 => {
                    return Err(Error::pre(format!("degree-{d} slice is not in the span of the requested families")));
                }
                Err(e) => {
                    return Err(Error::internal(format!("generator system at degree {d}, weight {w} failed: {e:?}")));
                }
            }
        }
    }
    Ok(out)
}

/// The unique expansion over A ∪ B ∪ C.
pub fn decompose(v: &VField) -> Result<Expansion> {
    decompose_in(v, &[Family::A, Family::B, Family::C])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Divergence(Poly),
    DeltaDerivative(Poly),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Divergence(p) => write!(f, "div = {p}"),
            Witness::DeltaDerivative(p) => write!(f, "v(Delta) = {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No(Witness),
}

/// Membership in the family: zero divergence and Δ a first integral.
pub fn membership_b(v: &VField) -> Membership {
    let d = v.divergence();
    if !d.is_zero() {
        return Membership::No(Witness::Divergence(d));
    }
    let dd = v.apply_to(&Poly::delta());
    if !dd.is_zero() {
        return Membership::No(Witness::DeltaDerivative(dd));
    }
    Membership::Yes
}

pub(crate) fn require_member(v: &VField) -> Result<()> {
    match membership_b(v) {
        Membership::Yes => Ok(()),
        Membership::No(w) => Err(Error::pre(format!("field is not in the family: {w}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use crate::sl2core::{ad_n_pow, m_field, n_field};

    #[test]
    fn low_b_generators() {
        assert_eq!(make_generator(GenIndex::b(1, 0, 0)).unwrap(), -n_field());
        assert_eq!(make_generator(GenIndex::b(-1, 0, 0)).unwrap(), m_field());
        let want = VField::new(Poly::mono(2, 0, 1, 1), Poly::mono(1, 0, 0, 2), Poly::zero());
        assert_eq!(make_generator(GenIndex::b(-1, 1, 0)).unwrap(), want);
    }

    #[test]
    fn b_matches_iterated_ad_n() {
        for i in 0..=4 {
            for k in 0..=1 {
                let seed = m_field().mul_poly(&(&z_pow(i) * &pow_delta(k)));
                for l in -1..=(2 * i + 1) {
                    let q = (l + 1) as u32;
                    let want = ad_n_pow(q, &seed).scale(&kappa(q, 2 * i as i64 + 2).recip());
                    assert_eq!(make_generator(GenIndex::b(l, i, k)).unwrap(), want, "B({l},{i},{k})");
                }
            }
        }
    }

    #[test]
    fn bfrak_low() {
        assert_eq!(make_bfrak(1, 0, 0).unwrap(), -Poly::x());
        assert_eq!(make_bfrak(-1, 2, 0).unwrap(), Poly::mono(1, 0, 0, 3).scale(&rat(-1, 3)));
    }

    #[test]
    fn range_violations() {
        assert!(make_generator(GenIndex::b(4, 1, 0)).is_err());
        assert!(make_generator(GenIndex::a(-3, 0, 0)).is_err());
        assert!(make_generator(GenIndex::c(1, 0, 0)).is_err());
        assert!(make_generator(GenIndex::b(0, -1, 0)).is_err());
    }

    #[test]
    fn generator_counts() {
        let all = [Family::A, Family::B, Family::C];
        for d in 0..=8u32 {
            assert_eq!(generators_of_degree(d, &all).len() as u32, 3 * (d + 2) * (d + 1) / 2);
        }
    }

    #[test]
    fn decompose_linear_and_example() {
        let e = decompose(&n_field()).unwrap();
        assert_eq!(e, Expansion::from_pairs([(GenIndex::b(1, 0, 0), int(-1))]));
        let v = &make_generator(GenIndex::a(0, 0, 1)).unwrap()
            - &make_generator(GenIndex::c(2, 2, 0)).unwrap().scale(&int(3));
        let want = VField::new(Poly::mono(-3, 1, 2, 0), Poly::mono(-3, 1, 1, 1), Poly::mono(-3, 0, 2, 1));
        assert_eq!(v, want);
        let div = Poly::mono(-3, 1, 0, 1) + Poly::mono(-6, 0, 2, 0);
        assert_eq!(membership_b(&v), Membership::No(Witness::Divergence(div)));
    }

    #[test]
    fn a_lowest_and_bracket() {
        for i in 0..=3 {
            let a = make_generator(GenIndex::a(-2, i, 0)).unwrap();
            assert_eq!(a, VField::new(z_pow(i + 1), Poly::zero(), Poly::zero()));
            let lhs = make_generator(GenIndex::b(1, 0, 0)).unwrap().bracket(&a);
            let rhs = make_generator(GenIndex::a(-1, i, 0)).unwrap().scale(&int(-2 * (i as i64 + 1)));
            assert_eq!(lhs, rhs);
        }
    }
}
