//! Polynomial vector fields in three variables.

use crate::ratpoly::{Poly, Rational, Var};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct VField {
    pub cx: Poly,
    pub cy: Poly,
    pub cz: Poly,
}

impl VField {
    pub fn new(cx: Poly, cy: Poly, cz: Poly) -> Self {
        VField { cx, cy, cz }
    }

    pub fn zero() -> Self {
        VField::default()
    }

    pub fn components(&self) -> [&Poly; 3] {
        [&self.cx, &self.cy, &self.cz]
    }

    pub fn component(&self, v: Var) -> &Poly {
        match v {
            Var::X => &self.cx,
            Var::Y => &self.cy,
            Var::Z => &self.cz,
        }
    }

    fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> VField {
        VField::new(f(&self.cx), f(&self.cy), f(&self.cz))
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_zero() && self.cy.is_zero() && self.cz.is_zero()
    }

    /// The field acting as a derivation: v(f) = Σ v_j ∂f/∂x_j.
    pub fn apply_to(&self, f: &Poly) -> Poly {
        let mut out = &self.cx * &f.diff(Var::X);
        out += &(&self.cy * &f.diff(Var::Y));
        out += &(&self.cz * &f.diff(Var::Z));
        out
    }

    /// [v, w] with components v(w_j) − w(v_j).
    pub fn bracket(&self, w: &VField) -> VField {
        VField::new(
            self.apply_to(&w.cx) - w.apply_to(&self.cx),
            self.apply_to(&w.cy) - w.apply_to(&self.cy),
            self.apply_to(&w.cz) - w.apply_to(&self.cz),
        )
    }

    pub fn divergence(&self) -> Poly {
        self.cx.diff(Var::X) + self.cy.diff(Var::Y) + self.cz.diff(Var::Z)
    }

    pub fn curl(&self) -> VField {
        VField::new(
            self.cz.diff(Var::Y) - self.cy.diff(Var::Z),
            self.cx.diff(Var::Z) - self.cz.diff(Var::X),
            self.cy.diff(Var::X) - self.cx.diff(Var::Y),
        )
    }

    pub fn gradient(f: &Poly) -> VField {
        VField::new(f.diff(Var::X), f.diff(Var::Y), f.diff(Var::Z))
    }

    /// Pointwise cross product.
    pub fn cross(&self, w: &VField) -> VField {
        VField::new(
            &self.cy * &w.cz - &self.cz * &w.cy,
            &self.cz * &w.cx - &self.cx * &w.cz,
            &self.cx * &w.cy - &self.cy * &w.cx,
        )
    }

    /// ∇f × ∇g.
    pub fn grad_cross(f: &Poly, g: &Poly) -> VField {
        VField::gradient(f).cross(&VField::gradient(g))
    }

    /// The position field (x, y, z).
    pub fn position() -> VField {
        VField::new(Poly::x(), Poly::y(), Poly::z())
    }

    pub fn scale(&self, c: &Rational) -> VField {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> VField {
        self.map(|p| f * p)
    }

    pub fn homogeneous_part(&self, d: u32) -> VField {
        self.map(|p| p.homogeneous_part(d))
    }

    pub fn truncate(&self, max_degree: u32) -> VField {
        self.map(|p| p.truncate(max_degree))
    }

    pub fn degree(&self) -> Option<u32> {
        self.components().iter().filter_map(|p| p.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.components().iter().filter_map(|p| p.min_degree()).min()
    }

    /// Degrees present in any component, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> =
            self.components().iter().flat_map(|p| p.monomials().map(|m| m.degree()).collect::<Vec<_>>()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn substitute(&self, px: &Poly, py: &Poly, pz: &Poly) -> VField {
        self.map(|p| p.substitute(px, py, pz))
    }

    pub fn eval(&self, point: &[Rational; 3]) -> [Rational; 3] {
        [self.cx.eval(point), self.cy.eval(point), self.cz.eval(point)]
    }

    /// `dx = ...; dy = ...; dz = ...`, the form accepted by the parser.
    pub fn to_named(&self) -> String {
        format!("dx = {}; dy = {}; dz = {}", self.cx, self.cy, self.cz)
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.cx, self.cy, self.cz)
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VField{}", self)
    }
}

impl<'b> Add<&'b VField> for &VField {
    type Output = VField;
    fn add(self, o: &'b VField) -> VField {
        VField::new(&self.cx + &o.cx, &self.cy + &o.cy, &self.cz + &o.cz)
    }
}

impl<'b> Sub<&'b VField> for &VField {
    type Output = VField;
    fn sub(self, o: &'b VField) -> VField {
        VField::new(&self.cx - &o.cx, &self.cy - &o.cy, &self.cz - &o.cz)
    }
}

impl Add for VField {
    type Output = VField;
    fn add(self, o: VField) -> VField {
        &self + &o
    }
}

impl Sub for VField {
    type Output = VField;
    fn sub(self, o: VField) -> VField {
        &self - &o
    }
}

impl Neg for VField {
    type Output = VField;
    fn neg(self) -> VField {
        VField::new(-self.cx, -self.cy, -self.cz)
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        -(self.clone())
    }
}
