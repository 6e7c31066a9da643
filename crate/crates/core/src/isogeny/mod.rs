//! Isogenies in the canonical form `(x, y) -> (r(x), y s(x))`.
//!
//! On short-Weierstrass curves in characteristic at least 5 every isogeny
//! commutes with negation, so the general `s(x) y + z(x)` form always has
//! `z = 0`. Two maps are equal exactly when their curves and reduced
//! `(r, s)` pairs coincide.

mod frobenius;
mod isomorphism;
mod velu;

use std::fmt;
use std::sync::Arc;

pub use frobenius::frobenius_isogeny;
pub use isomorphism::Isomorphism;
pub use velu::{velu_codomain_pointwise, velu_from_kernel_poly, velu_isogeny, velu_pointwise};

use crate::curve::{Curve, Point, Subgroup};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext};
use crate::polyrat::{Poly, RatFunc};

#[derive(Clone, PartialEq, Eq)]
pub struct IsogenyMap {
    domain: Curve,
    codomain: Curve,
    r: RatFunc,
    s: RatFunc,
    degree: u64,
}

impl IsogenyMap {
    /// Checks that all data share one field, that `r` is non-constant and
    /// that `F(x) s^2 = r^3 + a' r + b'`, where `F` is the domain cubic and
    /// `a', b'` the codomain coefficients.
    pub fn new(domain: Curve, codomain: Curve, r: RatFunc, s: RatFunc) -> Result<Self> {
        let ctx = domain.field();
        if !FieldContext::same(ctx, codomain.field())
            || !FieldContext::same(ctx, r.field())
            || !FieldContext::same(ctx, s.field())
        {
            return Err(Error::ContextMismatch);
        }
        if r.is_constant().is_some() || s.is_zero() {
            return Err(Error::IncompatibleMap);
        }
        let map = IsogenyMap {
            degree: r.degree() as u64,
            domain,
            codomain,
            r,
            s,
        };
        if !map.satisfies_curve_equation() {
            return Err(Error::IncompatibleMap);
        }
        Ok(map)
    }

    fn satisfies_curve_equation(&self) -> bool {
        // cross-multiplied: F S^2 D^3 = T^2 (N^3 + a' N D^2 + b' D^3)
        let (n, d) = (self.r.num(), self.r.den());
        let (s, t) = (self.s.num(), self.s.den());
        let d2 = d * d;
        let d3 = &d2 * d;
        let lhs = &(&self.domain.cubic() * &(s * s)) * &d3;
        let cubic =
            &(&(n * n) * n) + &(&(n * &d2).scale(self.codomain.a()) + &d3.scale(self.codomain.b()));
        lhs == &(t * t) * &cubic
    }

    pub fn identity(curve: &Curve) -> Self {
        let ctx = curve.field();
        IsogenyMap {
            domain: curve.clone(),
            codomain: curve.clone(),
            r: RatFunc::x(ctx),
            s: RatFunc::one(ctx),
            degree: 1,
        }
    }

    /// `[-1]`: `(x, y) -> (x, -y)`.
    pub fn negation(curve: &Curve) -> Self {
        let ctx = curve.field();
        IsogenyMap {
            domain: curve.clone(),
            codomain: curve.clone(),
            r: RatFunc::x(ctx),
            s: RatFunc::one(ctx).neg(),
            degree: 1,
        }
    }

    pub fn domain(&self) -> &Curve {
        &self.domain
    }

    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    /// The x-coordinate map.
    pub fn r(&self) -> &RatFunc {
        &self.r
    }

    /// The y-coefficient: the y-coordinate map is `y s(x)`.
    pub fn s(&self) -> &RatFunc {
        &self.s
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        self.domain.field()
    }

    /// `r' != 0`.
    pub fn is_separable(&self) -> bool {
        !self.r.derivative().is_zero()
    }

    /// `self ∘ inner`: `(r ∘ r_in, y s_in (s ∘ r_in))`.
    pub fn compose(&self, inner: &IsogenyMap) -> Result<IsogenyMap> {
        if inner.codomain != self.domain {
            return Err(Error::CurveChainMismatch);
        }
        let r = self.r.compose(&inner.r)?;
        let s = inner.s.checked_mul(&self.s.compose(&inner.r)?)?;
        let degree = self.degree * inner.degree;
        debug_assert_eq!(r.degree() as u64, degree);
        Ok(IsogenyMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            r,
            s,
            degree,
        })
    }

    /// Image of a point of the domain, possibly over an extension field.
    pub fn eval(&self, p: &Point) -> Result<Point> {
        let emb = Embedding::new(self.field(), p.curve().field())?;
        self.eval_with(&emb, p)
    }

    /// Like [`eval`](Self::eval) with a prepared embedding of the map's
    /// field into the point's field.
    pub fn eval_with(&self, emb: &Embedding, p: &Point) -> Result<Point> {
        let codomain = self.codomain.embed(emb);
        if p.curve() != &self.domain.embed(emb) {
            return Err(Error::CurveMismatch);
        }
        let Some((x, y)) = p.coords() else {
            return Ok(codomain.infinity());
        };
        let Some(rx) = self.r.eval_embedded(emb, x) else {
            return Ok(codomain.infinity());
        };
        // poles of s lie among the poles of r for every valid map
        let sx = self.s.eval_embedded(emb, x).ok_or(Error::IncompatibleMap)?;
        codomain
            .point(rx, y * &sx)
            .map_err(|_| Error::IncompatibleMap)
    }

    /// Monic polynomial whose roots are the x-coordinates of the affine
    /// kernel points: the radical of `den(r)`.
    pub fn kernel_poly(&self) -> Poly {
        self.r.den().radical()
    }

    /// The kernel as a point set over `ctx`, which must contain every
    /// kernel point.
    pub fn kernel_in(&self, ctx: &Arc<FieldContext>) -> Result<Subgroup> {
        let emb = Embedding::new(self.field(), ctx)?;
        let h = self.kernel_poly();
        let roots = h.roots_in(&emb)?;
        if roots.len() != h.degree().unwrap_or(0) {
            return Err(Error::KernelNotRational(format!(
                "{} of {} kernel x-coordinates lie in the field",
                roots.len(),
                h.degree().unwrap_or(0)
            )));
        }
        let curve = self.domain.embed(&emb);
        let mut points = vec![curve.infinity()];
        for x in &roots {
            let lifted = curve.lift_x(x)?;
            if lifted.is_empty() {
                return Err(Error::KernelNotRational(format!(
                    "no point with x = {x} over the field"
                )));
            }
            points.extend(lifted);
        }
        Subgroup::from_points(&self.domain, &points)
    }

    /// The same map with coefficients embedded in a larger field.
    pub fn embed(&self, emb: &Embedding) -> IsogenyMap {
        IsogenyMap {
            domain: self.domain.embed(emb),
            codomain: self.codomain.embed(emb),
            r: self.r.embed(emb),
            s: self.s.embed(emb),
            degree: self.degree,
        }
    }
}

impl fmt::Debug for IsogenyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IsogenyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "isogeny of degree {}", self.degree)?;
        writeln!(f, "  from {}", self.domain)?;
        writeln!(f, "  to   {}", self.codomain)?;
        writeln!(f, "  x -> {}", self.r)?;
        write!(f, "  y -> y * {}", self.s)
    }
}
