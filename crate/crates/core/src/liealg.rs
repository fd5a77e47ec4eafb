//! Brackets of B-generators in basis coordinates.

use crate::bases::{decompose_in, make_generator, Expansion, Family, GenIndex};
use crate::error::{Error, Result};
use crate::ratpoly::{int, Rational};
use crate::sl2core::{kappa, kappa_formal, reexpand_product};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

fn require_b(g: &GenIndex) -> Result<()> {
    if g.family != Family::B {
        return Err(Error::pre(format!("{g} is not a B-generator")));
    }
    g.validate()
}

/// i + 2k.
pub fn grade(idx: &GenIndex) -> u32 {
    idx.grade()
}

/// Direct bracket of the two generator fields, decomposed over the B
/// generators. An inconsistent solve means the bracket left the span and is
/// reported as an internal error.
pub fn bracket_in_basis(a: GenIndex, b: GenIndex) -> Result<Expansion> {
    require_b(&a)?;
    require_b(&b)?;
    let v = make_generator(a)?.bracket(&make_generator(b)?);
    let e =
        decompose_in(&v, &[Family::B]).map_err(|e| Error::internal(format!("[{a}, {b}] is not in the B-span: {e}")))?;
    let g = a.grade() + b.grade();
    if let Some((bad, _)) = e.iter().find(|(i, _)| i.family != Family::B || i.grade() != g) {
        return Err(Error::internal(format!("[{a}, {b}] has a term {bad} outside grade-{g} B-generators")));
    }
    Ok(e)
}

/// Memoized brackets keyed on the ordered pair, using antisymmetry.
#[derive(Default)]
pub struct BracketTable {
    entries: Mutex<HashMap<(GenIndex, GenIndex), Expansion>>,
}

impl BracketTable {
    pub fn new() -> Self {
        BracketTable::default()
    }

    pub fn get(&self, a: GenIndex, b: GenIndex) -> Result<Expansion> {
        if a == b {
            require_b(&a)?;
            return Ok(Expansion::new());
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        let hit = self.entries.lock().unwrap().get(&key).cloned();
        let e = match hit {
            Some(e) => e,
            None => {
                let e = bracket_in_basis(key.0, key.1)?;
                self.entries.lock().unwrap().insert(key, e.clone());
                e
            }
        };
        Ok(if flip { e.neg() } else { e })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Brackets with the linear generators B(0,0,0), B(1,0,0), B(-1,0,0) in
/// closed form; other left arguments of the form B(-1,p,0) go through the
/// direct path.
pub fn special_bracket(a: GenIndex, b: GenIndex) -> Result<Expansion> {
    require_b(&a)?;
    require_b(&b)?;
    let single = |l: i32, c: i64| -> Expansion {
        let idx = GenIndex::b(l, b.i, b.k);
        if c == 0 || idx.validate().is_err() {
            Expansion::new()
        } else {
            Expansion::from_pairs([(idx, int(c))])
        }
    };
    let (l, i) = (b.l as i64, b.i as i64);
    match (a.l, a.i, a.k) {
        (0, 0, 0) => Ok(single(b.l, l - i)),
        (1, 0, 0) => Ok(single(b.l + 1, l - 2 * i - 1)),
        (-1, 0, 0) => Ok(single(b.l - 1, l + 1)),
        (-1, _, 0) => bracket_in_basis(a, b),
        _ => Err(Error::pre(format!("no closed-form bracket with left argument {a}"))),
    }
}

/// Result of the closed-form structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedBracket {
    pub expansion: Expansion,
    /// True when a guard failed and the direct path supplied the result.
    pub fallback: bool,
}

/// `num / ∏ (i+1)·κ`, `Some(0)` for a zero numerator, `None` when a
/// normalizer is undefined or zero under a nonzero numerator.
fn guarded_ratio(num: i64, ip1: i64, kaps: &[(i64, i64)]) -> Option<Rational> {
    if num == 0 {
        return Some(Rational::zero());
    }
    let mut den = int(ip1);
    for &(l, i) in kaps {
        den *= kappa_formal(l, i)?;
    }
    if den.is_zero() {
        return None;
    }
    Some(int(num) / den)
}

/// Coefficient of N^{q1+3−p}(z^{i1+1})N^{q2−3+p}(z^{i2}) in the third
/// component of B^{q1}_{i1}(B^{q2}_{i2}·e3) (k-parts factored out).
fn l_third(p: u8, q1: i64, q2: i64, i1: i64, i2: i64) -> Option<Rational> {
    let (w1, w2) = (2 * i1 + 2, 2 * i2 + 2);
    match p {
        1 => guarded_ratio(-(2 * i1 - q1 + 1) * (q2 - 1) * q2 * (q2 + 1), i1 + 1, &[(q2, w2), (q1 + 2, w1)]),
        2 => guarded_ratio(-2 * q2 * (q2 + 1) * (i1 - q1), i1 + 1, &[(q2, w2), (q1 + 1, w1)]),
        _ => guarded_ratio((q2 + 1) * (q1 + 1), i1 + 1, &[(q2, w2), (q1, w1)]),
    }
}

/// Coefficient of N^{q1+3−p}(z^{i1+1})N^{q2−2+p}(z^{i2}) in the second
/// component of B^{q1}_{i1}(B^{q2}_{i2}·e2).
fn l_second(p: u8, q1: i64, q2: i64, i1: i64, i2: i64) -> Option<Rational> {
    let (w1, w2) = (2 * i1 + 2, 2 * i2 + 2);
    match p {
        1 => guarded_ratio((2 * i1 - q1 + 1) * (q2 + 1) * q2 * (i2 - q2), i1 + 1, &[(q1 + 2, w1), (q2 + 1, w2)]),
        2 => guarded_ratio(2 * (q2 + 1) * (i1 - q1) * (i2 - q2), i1 + 1, &[(q1 + 1, w1), (q2 + 1, w2)]),
        _ => guarded_ratio(-(q1 + 1) * (i2 - q2), i1 + 1, &[(q1, w1), (q2 + 1, w2)]),
    }
}

type CTable = BTreeMap<i64, Rational>;

fn c_table(a: i64, b: i64, i: i64, j: i64) -> Option<CTable> {
    if a < 0 || b < 0 || i < 0 || j < 0 {
        return None;
    }
    reexpand_product(a as u32, b as u32, i as u32, j as u32).ok()
}

/// Σ_p (l(q1,q2) C^{(1)} − l(q2,q1) C^{(2)}) at every index j, where `lf`
/// selects the component and `shift` the second N-power offset.
fn antisymmetrized(
    lf: fn(u8, i64, i64, i64, i64) -> Option<Rational>,
    shift: i64,
    q1: i64,
    q2: i64,
    i1: i64,
    i2: i64,
) -> Option<CTable> {
    let mut out: CTable = BTreeMap::new();
    for (sign, (qa, qb, ia, ib)) in [(1, (q1, q2, i1, i2)), (-1, (q2, q1, i2, i1))] {
        for p in 1..=3u8 {
            let l = lf(p, qa, qb, ia, ib)?;
            if l.is_zero() {
                continue;
            }
            let pi = p as i64;
            let c = c_table(qa + 3 - pi, qb + shift + pi, ia + 1, ib)?;
            for (j, cj) in c {
                *out.entry(j).or_insert_with(Rational::zero) += int(sign) * &l * cj;
            }
        }
    }
    Some(out)
}

fn closed_terms(a: GenIndex, b: GenIndex) -> Option<Expansion> {
    let (q1, i1, k1) = (a.l as i64, a.i as i64, a.k as i64);
    let (q2, i2, k2) = (b.l as i64, b.i as i64, b.k as i64);
    let par = (q1 + q2).rem_euclid(2);
    let sigma = q1 + q2 - i1 - i2;
    let total = i1 + i2 + 2 * (k1 + k2);
    let mut out = Expansion::new();
    let mut place = |l: i64, ip: i64, coef: Rational| -> Option<()> {
        if coef.is_zero() {
            return Some(());
        }
        let kk = total - ip;
        if ip < 0 || kk < 0 || kk % 2 != 0 || l < -1 || l > 2 * ip + 1 {
            return None;
        }
        out.add(GenIndex::b(l as i32, ip as i32, (kk / 2) as u32), coef);
        Some(())
    };
    // Third components fix every term with superscript 2j + |r2−r1| ≥ 0.
    for (j, t) in antisymmetrized(l_third, -3, q1, q2, i1, i2)? {
        let l = 2 * j + par;
        let ip = 2 * j - sigma + par;
        if t.is_zero() {
            continue;
        }
        if ip < 0 || l > 2 * ip + 1 {
            return None;
        }
        let scale = int(ip + 1) * kappa(l as u32, 2 * ip + 2) / int(l + 1);
        place(l, ip, -t * scale)?;
    }
    // The superscript −1 term is invisible in the third component; read it off
    // the second component's N^0 coefficient.
    if par == 1 {
        let t = antisymmetrized(l_second, -2, q1, q2, i1, i2)?;
        if let Some(c0) = t.get(&0) {
            place(-1, -1 - sigma, c0.clone())?;
        }
    }
    Some(out)
}

/// Structure constants from the closed-form coefficients, falling back to
/// the direct bracket when a guard fails.
pub fn structure_constants_closed(a: GenIndex, b: GenIndex) -> Result<ClosedBracket> {
    require_b(&a)?;
    require_b(&b)?;
    match closed_terms(a, b) {
        Some(expansion) => Ok(ClosedBracket { expansion, fallback: false }),
        None => Ok(ClosedBracket { expansion: bracket_in_basis(a, b)?, fallback: true }),
    }
}
