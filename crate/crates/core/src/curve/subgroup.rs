use std::collections::BTreeSet;

use super::{Curve, Point};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext};
use crate::polyrat::Poly;

/// Closure is refused beyond this many points.
pub const MAX_SUBGROUP_ORDER: usize = 10_000;

/// A finite subgroup `G` of `E`, with its kernel polynomial.
///
/// The points may live over an extension of the base field (`curve()` is
/// then the base curve embedded there). Construction verifies that `G` is
/// stable under the Frobenius of the base field, which is what makes
/// `kernel_poly` descend to the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    base: Curve,
    curve: Curve,
    points: Vec<Point>,
    kernel_poly: Poly,
}

impl Subgroup {
    pub fn trivial(base: &Curve) -> Self {
        Subgroup {
            base: base.clone(),
            curve: base.clone(),
            points: vec![base.infinity()],
            kernel_poly: Poly::one(base.field()),
        }
    }

    /// `<P>` over the curve `P` lives on.
    pub fn generated_by(p: &Point) -> Result<Self> {
        Self::generated_by_over(p.curve(), p)
    }

    /// `<P>` where `P` may live on `base` embedded into an extension.
    pub fn generated_by_over(base: &Curve, p: &Point) -> Result<Self> {
        Self::closure(base, std::slice::from_ref(p))
    }

    /// The subgroup generated by `gens`.
    pub fn closure(base: &Curve, gens: &[Point]) -> Result<Self> {
        let curve = match gens.first() {
            Some(g) => g.curve().clone(),
            None => return Ok(Self::trivial(base)),
        };
        if gens.iter().any(|g| g.curve() != &curve) {
            return Err(Error::CurveMismatch);
        }
        let mut set: BTreeSet<Point> = BTreeSet::new();
        set.insert(curve.infinity());
        for g in gens {
            if set.contains(g) {
                continue;
            }
            // adjoin g: the new group is the union of cosets H + k*g
            let current: Vec<Point> = set.iter().cloned().collect();
            let mut shift = g.clone();
            while !set.contains(&shift) {
                for h in &current {
                    set.insert(h.add(&shift)?);
                }
                if set.len() > MAX_SUBGROUP_ORDER {
                    return Err(Error::SubgroupTooLarge {
                        order: set.len(),
                        limit: MAX_SUBGROUP_ORDER,
                    });
                }
                shift = shift.add(g)?;
            }
        }
        Self::finish(base, curve, set.into_iter().collect())
    }

    /// Validates that `points` already form a subgroup.
    pub fn from_points(base: &Curve, points: &[Point]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::NotClosed);
        };
        let curve = first.curve().clone();
        if points.iter().any(|p| p.curve() != &curve) {
            return Err(Error::CurveMismatch);
        }
        let set: BTreeSet<Point> = points.iter().cloned().collect();
        if !set.contains(&curve.infinity()) {
            return Err(Error::NotClosed);
        }
        for a in &set {
            if !set.contains(&a.neg()) {
                return Err(Error::NotClosed);
            }
            for b in &set {
                if !set.contains(&a.add(b)?) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Self::finish(base, curve, set.into_iter().collect())
    }

    fn finish(base: &Curve, curve: Curve, points: Vec<Point>) -> Result<Self> {
        let emb = Embedding::new(base.field(), curve.field())?;
        if base.embed(&emb) != curve {
            return Err(Error::CurveMismatch);
        }
        // Galois stability: x -> x^|base| permutes the points
        let j = base.field().degree() as u64;
        if !emb.is_identity() {
            let set: BTreeSet<&Point> = points.iter().collect();
            for p in &points {
                let q = p.frobenius(j);
                if !set.contains(&q) {
                    return Err(Error::NotGaloisStable);
                }
            }
        }
        let xs: BTreeSet<_> = points.iter().filter_map(|p| p.x().cloned()).collect();
        let lifted = xs.iter().fold(Poly::one(curve.field()), |acc, x| {
            &acc * &Poly::linear_root(x)
        });
        let kernel_poly = lifted.restrict(&emb).ok_or(Error::NotGaloisStable)?;
        Ok(Subgroup {
            base: base.clone(),
            curve,
            points,
            kernel_poly,
        })
    }

    /// The curve the subgroup belongs to, over its own field.
    pub fn base(&self) -> &Curve {
        &self.base
    }

    /// The curve the points live on (the base curve, possibly embedded).
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Sorted: `O` first, then affine points by `(x, y)`.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// `prod (x - x_Q)` over one `Q` per `{Q, -Q}` pair, over the base field.
    pub fn kernel_poly(&self) -> &Poly {
        &self.kernel_poly
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn field(&self) -> &std::sync::Arc<FieldContext> {
        self.curve.field()
    }
}
