//! First integrals, Clebsch potentials, vector potentials and gauge
//! differences for family members.

use crate::error::{Error, Result};
use crate::poisson::secondary_potential;
use crate::ratpoly::{rat, Poly, Rational, Var};
use crate::vfield::VField;
use num_traits::Zero;
use serde::Serialize;

/// v = ∇secondary × ∇primary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialPair {
    pub primary: Poly,
    pub secondary: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    DeltaForm,
    RadialForm,
    /// Supplied from outside; only curl-exactness is known.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPotential {
    pub field: VField,
    pub gauge: Gauge,
}

impl VectorPotential {
    pub fn given(field: VField) -> Self {
        VectorPotential { field, gauge: Gauge::Given }
    }
}

pub fn clebsch_form(v: &VField) -> Result<PotentialPair> {
    let secondary = secondary_potential(v)?;
    Ok(PotentialPair { primary: Poly::delta(), secondary })
}

/// Whether ∇f and ∇g are independent at `point`.
pub fn gradients_independent(f: &Poly, g: &Poly, point: &[Rational; 3]) -> bool {
    VField::grad_cross(f, g).eval(point).iter().any(|c| !c.is_zero())
}

/// S(v)·∇Δ, whose curl is ∇S × ∇Δ = v.
pub fn vector_potential_delta(v: &VField) -> Result<VectorPotential> {
    let s = secondary_potential(v)?;
    let field = VField::gradient(&Poly::delta()).mul_poly(&s);
    if field.curl() != *v {
        return Err(Error::internal("curl of the Δ-form potential differs from the field"));
    }
    Ok(VectorPotential { field, gauge: Gauge::DeltaForm })
}

/// Σ_d (v_d × X)/(d+2) over the homogeneous slices of a solenoidal field.
pub fn vector_potential_radial(v: &VField) -> Result<VectorPotential> {
    let div = v.divergence();
    if !div.is_zero() {
        return Err(Error::pre(format!("field is not solenoidal: divergence {div}")));
    }
    let x = VField::position();
    let mut field = VField::zero();
    for d in v.degrees() {
        let slice = v.homogeneous_part(d).cross(&x);
        field = field + slice.scale(&rat(1, d as i64 + 2));
    }
    if field.curl() != *v {
        return Err(Error::internal("curl of the radial potential differs from the field"));
    }
    Ok(VectorPotential { field, gauge: Gauge::RadialForm })
}

/// f with p1 + ∇f = p2 and zero constant term.
pub fn gauge_difference(p1: &VectorPotential, p2: &VectorPotential) -> Result<Poly> {
    let d = p2.field.clone() - p1.field.clone();
    let c = d.curl();
    if !c.is_zero() {
        return Err(Error::pre(format!("potentials differ by a non-gradient field with curl {c}")));
    }
    let mut f = d.cx.integrate(Var::X);
    let ry = &d.cy - &f.diff(Var::Y);
    f += &ry.integrate(Var::Y);
    let rz = &d.cz - &f.diff(Var::Z);
    f += &rz.integrate(Var::Z);
    if VField::gradient(&f) != d {
        return Err(Error::internal("antiderivative does not reproduce the potential difference"));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rotationality {
    GradientLike,
    /// First nonzero curl component.
    Rotational(Var, Poly),
}

pub fn rotational_check(v: &VField) -> Rotationality {
    let c = v.curl();
    for var in Var::ALL {
        let comp = c.component(var);
        if !comp.is_zero() {
            return Rotationality::Rotational(var, comp.clone());
        }
    }
    Rotationality::GradientLike
}
