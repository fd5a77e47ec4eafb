//! Sparse polynomials in x, y, z with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `n` or `n/d`, always in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0, ez: 0 };

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { ex, ey, ez }
    }

    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::X => self.ex,
            Var::Y => self.ey,
            Var::Z => self.ez,
        }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.ex + o.ex, self.ey + o.ey, self.ez + o.ez)
    }

    /// Eigenvalue of the scalar operator `2z∂z − 2x∂x` on this monomial.
    pub fn weight(&self) -> i64 {
        2 * self.ez as i64 - 2 * self.ex as i64
    }
}

// Graded lexicographic with x > y > z.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.ex.cmp(&o.ex)).then(self.ey.cmp(&o.ey)).then(self.ez.cmp(&o.ez))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn mono(c: i64, ex: u32, ey: u32, ez: u32) -> Self {
        Poly::term(int(c), Monomial::new(ex, ey, ez))
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Poly::mono(1, 1, 0, 0),
            Var::Y => Poly::mono(1, 0, 1, 0),
            Var::Z => Poly::mono(1, 0, 0, 1),
        }
    }

    pub fn x() -> Self {
        Poly::var(Var::X)
    }

    pub fn y() -> Self {
        Poly::var(Var::Y)
    }

    pub fn z() -> Self {
        Poly::var(Var::Z)
    }

    /// Δ = xz − y².
    pub fn delta() -> Self {
        Poly::mono(1, 1, 0, 1) - Poly::mono(1, 0, 2, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    pub fn truncate(&self, max_degree: u32) -> Poly {
        self.filter(|m| m.degree() <= max_degree)
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, f: F) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| f(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&int(c))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn diff(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            match v {
                Var::X => m2.ex -= 1,
                Var::Y => m2.ey -= 1,
                Var::Z => m2.ez -= 1,
            }
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Antiderivative in `v` with zero integration constant.
    pub fn integrate(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = match v {
                Var::X => {
                    m2.ex += 1;
                    m2.ex
                }
                Var::Y => {
                    m2.ey += 1;
                    m2.ey
                }
                Var::Z => {
                    m2.ez += 1;
                    m2.ez
                }
            };
            out.add_term(m2, c / int(e as i64));
        }
        out
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * rpow(&point[0], m.ex) * rpow(&point[1], m.ey) * rpow(&point[2], m.ez);
        }
        acc
    }

    /// Replace x, y, z by the given polynomials.
    pub fn substitute(&self, px: &Poly, py: &Poly, pz: &Poly) -> Poly {
        let mut cache: [Vec<Poly>; 3] = [vec![Poly::one()], vec![Poly::one()], vec![Poly::one()]];
        let subs = [px, py, pz];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let exps = [m.ex, m.ey, m.ez];
            let mut t = Poly::constant(c.clone());
            for j in 0..3 {
                let e = exps[j] as usize;
                while cache[j].len() <= e {
                    let next = cache[j].last().unwrap() * subs[j];
                    cache[j].push(next);
                }
                t = &t * &cache[j][e];
            }
            out += &t;
        }
        out
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }
}

fn rpow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

impl Poly {
    /// Canonical text with the three variables renamed.
    pub fn to_string_with(&self, names: [&str; 3]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *m == Monomial::ONE {
                factors.push(fmt_rational(&a));
            }
            for (v, name) in Var::ALL.into_iter().zip(names) {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(["x", "y", "z"]))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, o: &'a Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, o: &'a Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &'b Poly) -> Poly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &'b Poly) -> Poly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &'b Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Rational::zero);
                *e += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        self += &o;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, o: Poly) -> Poly {
        self -= &o;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_square() {
        let d = Poly::delta();
        let want = Poly::mono(1, 2, 0, 2) - Poly::mono(2, 1, 2, 1) + Poly::mono(1, 0, 4, 0);
        assert_eq!(&d * &d, want);
        assert_eq!(d.pow(2), want);
    }

    #[test]
    fn binomial_cube() {
        let p = Poly::x() + Poly::z();
        assert_eq!(p.pow(3).to_string(), "x^3 + 3*x^2*z + 3*x*z^2 + z^3");
    }

    #[test]
    fn additive_inverse() {
        let p = Poly::delta() + Poly::mono(3, 0, 1, 4);
        assert!((&p + &p.scale_int(-1)).is_zero());
    }

    #[test]
    fn derivatives() {
        assert_eq!(Poly::delta().diff(Var::Y), Poly::mono(-2, 0, 1, 0));
        assert_eq!(Poly::mono(1, 0, 0, 5).diff(Var::Z), Poly::mono(5, 0, 0, 4));
        assert!(Poly::constant(rat(3, 7)).diff(Var::X).is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(Poly::delta().eval(&[int(1), int(1), int(1)]), int(0));
        assert_eq!(Poly::delta().eval(&[int(2), int(1), int(3)]), int(5));
        assert_eq!(Poly::zero().eval(&[int(2), int(1), int(3)]), int(0));
    }

    #[test]
    fn display_orders_graded_lex() {
        let p = Poly::mono(8, 0, 2, 0) + Poly::mono(4, 1, 0, 1);
        assert_eq!(p.to_string(), "4*x*z + 8*y^2");
        let q = Poly::term(rat(-3, 4), Monomial::new(0, 0, 1)) + Poly::constant(rat(1, 2));
        assert_eq!(q.to_string(), "-3/4*z + 1/2");
        assert_eq!(Poly::mono(-1, 2, 0, 0).to_string(), "-x^2");
    }

    #[test]
    fn substitution_and_integration() {
        let p = Poly::delta();
        let s = p.substitute(&(Poly::x() + Poly::z()), &Poly::y(), &Poly::z());
        assert_eq!(s, Poly::delta() + Poly::mono(1, 0, 0, 2));
        let q = Poly::mono(6, 1, 2, 0);
        assert_eq!(q.integrate(Var::X).diff(Var::X), q);
    }
}
