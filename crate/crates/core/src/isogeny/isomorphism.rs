use super::IsogenyMap;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::polyrat::RatFunc;

/// The scaling `(x, y) -> (u^2 x, u^3 y)` from `E: (a, b)` to `(u^4 a, u^6 b)`.
///
/// Between short-Weierstrass curves these are all the isomorphisms; the
/// pullback of `dx/2y` along it is `(1/u) dx/2y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    u: FieldElement,
    from: Curve,
    to: Curve,
}

impl Isomorphism {
    pub fn new(from: &Curve, u: FieldElement) -> Result<Self> {
        if !u.same_field(from.a()) {
            return Err(Error::ContextMismatch);
        }
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Isomorphism {
            to: from.scaled(&u),
            from: from.clone(),
            u,
        })
    }

    pub fn identity(curve: &Curve) -> Self {
        Isomorphism {
            u: curve.field().one(),
            from: curve.clone(),
            to: curve.clone(),
        }
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }

    pub fn from(&self) -> &Curve {
        &self.from
    }

    pub fn to(&self) -> &Curve {
        &self.to
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    /// Scaling by `u^-1`, from `to` back to `from`.
    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            u: self.u.inv().expect("u is nonzero"),
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }

    /// Pullback constant `1/u`.
    pub fn pullback_constant(&self) -> FieldElement {
        self.u.inv().expect("u is nonzero")
    }

    pub fn to_map(&self) -> IsogenyMap {
        let ctx = self.from.field();
        let r = RatFunc::x(ctx).scale(&self.u.square());
        let s = RatFunc::constant(&self.u.pow(3));
        IsogenyMap::new(self.from.clone(), self.to.clone(), r, s)
            .expect("scalings preserve the curve equation")
    }
}
