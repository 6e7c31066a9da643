use std::cmp::Ordering;
use std::fmt;

use super::Curve;
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldElement};

/// A point of `E(K)`: either the identity `O` or an affine pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    curve: Curve,
    coords: Option<(FieldElement, FieldElement)>,
}

impl Point {
    pub(crate) fn affine_unchecked(curve: Curve, x: FieldElement, y: FieldElement) -> Self {
        debug_assert!(curve.contains(&x, &y));
        Point {
            curve,
            coords: Some((x, y)),
        }
    }

    pub fn infinity(curve: Curve) -> Self {
        Point {
            curve,
            coords: None,
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    pub fn coords(&self) -> Option<(&FieldElement, &FieldElement)> {
        self.coords.as_ref().map(|(x, y)| (x, y))
    }

    pub fn x(&self) -> Option<&FieldElement> {
        self.coords.as_ref().map(|(x, _)| x)
    }

    pub fn y(&self) -> Option<&FieldElement> {
        self.coords.as_ref().map(|(_, y)| y)
    }

    pub fn neg(&self) -> Point {
        Point {
            curve: self.curve.clone(),
            coords: self.coords.as_ref().map(|(x, y)| (x.clone(), -y)),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, other: &Point) -> Result<Point> {
        if self.curve != other.curve {
            return Err(Error::CurveMismatch);
        }
        let (x1, y1) = match &self.coords {
            None => return Ok(other.clone()),
            Some(c) => c,
        };
        let (x2, y2) = match &other.coords {
            None => return Ok(self.clone()),
            Some(c) => c,
        };
        let ctx = self.curve.field();
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Ok(self.curve.infinity());
            }
            // tangent: (3x^2 + a) / 2y
            let num = &(&ctx.from_u64(3) * &x1.square()) + self.curve.a();
            num / (y1 + y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &(&slope.square() - x1) - x2;
        let y3 = &(&slope * &(x1 - &x3)) - y1;
        Ok(Point::affine_unchecked(self.curve.clone(), x3, y3))
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.add(&other.neg())
    }

    pub fn double(&self) -> Point {
        self.add(self).expect("same curve")
    }

    /// `[n]P` by double-and-add; negative `n` negates.
    pub fn mul(&self, n: i64) -> Point {
        let mut acc = self.curve.infinity();
        let mut base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("same curve");
            }
            k >>= 1;
            if k > 0 {
                base = base.double();
            }
        }
        acc
    }

    /// Least `n >= 1` with `[n]P = O`.
    pub fn order(&self) -> u64 {
        let mut n = 1;
        let mut acc = self.clone();
        while !acc.is_infinity() {
            acc = acc.add(self).expect("same curve");
            n += 1;
        }
        n
    }

    /// Coordinate-wise `(x^(p^j), y^(p^j))`, a point of the conjugate curve.
    pub fn frobenius(&self, j: u64) -> Point {
        let curve = self.curve.frobenius_twist(j);
        match &self.coords {
            None => Point::infinity(curve),
            Some((x, y)) => Point::affine_unchecked(curve, x.frobenius(j), y.frobenius(j)),
        }
    }

    /// The same point on `curve`, which must be this point's curve embedded by `emb`.
    pub fn embed(&self, emb: &Embedding) -> Point {
        let curve = self.curve.embed(emb);
        match &self.coords {
            None => Point::infinity(curve),
            Some((x, y)) => Point::affine_unchecked(curve, emb.apply(x), emb.apply(y)),
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `O` first, then by `(x, y)` digit arrays.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.coords, &other.coords) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            None => write!(f, "O"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}
