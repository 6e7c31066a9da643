use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext, FieldElement};

/// A reduced rational function `num / den`.
///
/// The representation is canonical: `gcd(num, den) = 1` and `den` is monic.
/// Two rational functions are equal exactly when their representations are,
/// and isogeny equality is built on top of this.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if !FieldContext::same(num.field(), den.field()) {
            return Err(Error::ContextMismatch);
        }
        let Some(lead) = den.leading() else {
            return Err(Error::DivisionByZero);
        };
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let lead_inv = lead.inv()?;
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        // gcd is monic, so the leading coefficient of den is unchanged
        Ok(RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    pub fn x(ctx: &Arc<FieldContext>) -> Self {
        Self::from_poly(Poly::x(ctx))
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`; zero has degree 0.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    /// The constant value, if this function is constant.
    pub fn is_constant(&self) -> Option<FieldElement> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.den == other.den {
            return RatFunc::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        if !FieldContext::same(self.field(), other.field()) {
            return Err(Error::ContextMismatch);
        }
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&other.den)?;
        let g2 = other.num.gcd(&self.den)?;
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = other.den.exact_div(&g1).expect("gcd divides");
        let c = other.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        RatFunc::new(&a * &c, &b * &d)
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// `self(inner(x))`, reduced.
    ///
    /// With `self = A/B`, `d = max(deg A, deg B)` and `inner = N/D` this is
    /// `sum a_i N^i D^(d-i) / sum b_i N^i D^(d-i)`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        if !FieldContext::same(self.field(), inner.field()) {
            return Err(Error::ContextMismatch);
        }
        let d = self.degree();
        let ctx = self.field();
        let mut n_pows = Vec::with_capacity(d + 1);
        let mut d_pows = Vec::with_capacity(d + 1);
        n_pows.push(Poly::one(ctx));
        d_pows.push(Poly::one(ctx));
        for i in 1..=d {
            n_pows.push(&n_pows[i - 1] * &inner.num);
            d_pows.push(&d_pows[i - 1] * &inner.den);
        }
        let homogenize = |p: &Poly| -> Poly {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(Poly::zero(ctx), |acc, (i, c)| {
                    &acc + &(&n_pows[i] * &d_pows[d - i]).scale(c)
                })
        };
        RatFunc::new(homogenize(&self.num), homogenize(&self.den))
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den).expect("den is nonzero")
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_embedded(&self, emb: &Embedding, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval_embedded(emb, x);
        (!d.is_zero()).then(|| self.num.eval_embedded(emb, x) / d)
    }

    /// `g` with `self(x) = g(x^q)`, if one exists.
    pub fn deflate(&self, q: u64) -> Option<RatFunc> {
        Some(RatFunc {
            num: self.num.deflate(q)?,
            den: self.den.deflate(q)?,
        })
    }

    /// `self(x^q)`; a Bezout relation for `num, den` substitutes to one for the result, so it stays reduced.
    pub fn inflate(&self, q: u64) -> RatFunc {
        RatFunc {
            num: self.num.inflate(q),
            den: self.den.inflate(q),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> RatFunc {
        RatFunc::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
            .expect("coefficient maps used here are field automorphisms")
    }

    pub fn embed(&self, emb: &Embedding) -> RatFunc {
        RatFunc {
            num: self.num.embed(emb),
            den: self.den.embed(emb),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
