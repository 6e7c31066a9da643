//! Short-Weierstrass curves `y^2 = x^3 + ax + b` over a finite field.
//!
//! Points carry their curve, so mixing points of different curves is an
//! error rather than a silent coercion. A curve over an extension field that
//! arises by embedding coefficients is a distinct [`Curve`] value; see
//! [`Curve::embed`].

mod divpoly;
mod point;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use divpoly::{division_polynomials, mul_by_m_map, MAX_MULTIPLIER};
pub use point::Point;
pub use subgroup::{Subgroup, MAX_SUBGROUP_ORDER};

use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext, FieldElement};
use crate::polyrat::Poly;

#[derive(PartialEq, Eq, Hash)]
struct CurveData {
    a: FieldElement,
    b: FieldElement,
}

/// `y^2 = x^3 + ax + b` with nonzero discriminant. Cheap to clone.
///
/// The invariant differential of every curve here is `dx / 2y`.
#[derive(Clone)]
pub struct Curve(Arc<CurveData>);

impl Curve {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self> {
        if !a.same_field(&b) {
            return Err(Error::ContextMismatch);
        }
        let curve = Curve(Arc::new(CurveData { a, b }));
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, a: i64, b: i64) -> Result<Self> {
        Self::new(ctx.from_i64(a), ctx.from_i64(b))
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        self.0.a.field()
    }

    pub fn a(&self) -> &FieldElement {
        &self.0.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.0.b
    }

    /// `-16 (4a^3 + 27b^2)`
    pub fn discriminant(&self) -> FieldElement {
        let ctx = self.field();
        let inner =
            &(&ctx.from_u64(4) * &self.a().pow(3)) + &(&ctx.from_u64(27) * &self.b().square());
        &ctx.from_i64(-16) * &inner
    }

    /// The cubic `x^3 + ax + b`.
    pub fn cubic(&self) -> Poly {
        let ctx = self.field();
        Poly::new(
            ctx,
            vec![self.b().clone(), self.a().clone(), ctx.zero(), ctx.one()],
        )
        .expect("coefficients share the curve's field")
    }

    /// `x^3 + ax + b` at `x`.
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        &(&(&x.square() + self.a()) * x) + self.b()
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        x.same_field(y) && FieldContext::same(x.field(), self.field()) && y.square() == self.rhs(x)
    }

    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<Point> {
        if !FieldContext::same(x.field(), self.field()) || !x.same_field(&y) {
            return Err(Error::ContextMismatch);
        }
        if !self.contains(&x, &y) {
            return Err(Error::NotOnCurve(format!("{x}, {y}")));
        }
        Ok(Point::affine_unchecked(self.clone(), x, y))
    }

    pub fn infinity(&self) -> Point {
        Point::infinity(self.clone())
    }

    /// The same equation over a larger field.
    pub fn embed(&self, emb: &Embedding) -> Curve {
        if emb.is_identity() {
            return self.clone();
        }
        Curve(Arc::new(CurveData {
            a: emb.apply(self.a()),
            b: emb.apply(self.b()),
        }))
    }

    /// The curve `y^2 = x^3 + u^4 a x + u^6 b`, image of `(x, y) -> (u^2 x, u^3 y)`.
    pub fn scaled(&self, u: &FieldElement) -> Curve {
        let u2 = u.square();
        let u4 = u2.square();
        let u6 = &u4 * &u2;
        Curve(Arc::new(CurveData {
            a: &u4 * self.a(),
            b: &u6 * self.b(),
        }))
    }

    /// Coefficients are Frobenius-conjugated: the curve `E^(p^j)`.
    pub fn frobenius_twist(&self, j: u64) -> Curve {
        Curve(Arc::new(CurveData {
            a: self.a().frobenius(j),
            b: self.b().frobenius(j),
        }))
    }

    /// Points with the given x-coordinate, found by scanning `y`.
    pub fn lift_x(&self, x: &FieldElement) -> Result<Vec<Point>> {
        let target = self.rhs(x);
        Ok(self
            .field()
            .elements()?
            .filter(|y| y.square() == target)
            .map(|y| Point::affine_unchecked(self.clone(), x.clone(), y))
            .collect())
    }

    /// Every point of `E(K)` including `O`: infinity first, then affine
    /// points ordered by `(x, y)` digit arrays.
    pub fn points(&self) -> Result<Vec<Point>> {
        let ctx = self.field();
        ctx.ensure_enumerable()?;
        // square -> square roots, in index order
        let mut roots: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
        for y in ctx.elements()? {
            roots.entry(y.square()).or_default().push(y);
        }
        let mut out = vec![self.infinity()];
        for x in ctx.elements()? {
            if let Some(ys) = roots.get(&self.rhs(&x)) {
                for y in ys {
                    out.push(Point::affine_unchecked(self.clone(), x.clone(), y.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// `#E(K)`, by enumeration.
    pub fn order(&self) -> Result<u64> {
        Ok(self.points()?.len() as u64)
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Curve {}

impl Hash for Curve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.field();
        write!(
            f,
            "y^2 = x^3 + {}*x + {} over F_{}",
            self.a(),
            self.b(),
            ctx.characteristic()
        )?;
        if ctx.degree() > 1 {
            write!(f, "^{}", ctx.degree())?;
        }
        Ok(())
    }
}
