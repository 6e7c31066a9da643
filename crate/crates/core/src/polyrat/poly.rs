use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext, FieldElement};

/// Dense univariate polynomial, little-endian by degree.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is
/// the empty vector and `coeffs().len() - 1` is the degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: Arc<FieldContext>,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(ctx: &Arc<FieldContext>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !FieldContext::same(c.field(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_vec(ctx, coeffs))
    }

    pub(crate) fn from_vec(ctx: &Arc<FieldContext>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    /// Polynomial over a prime-field context from integer coefficients.
    pub fn from_ints(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> Self {
        Self::from_vec(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Poly {
            ctx: Arc::clone(ctx),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::constant(&ctx.one())
    }

    pub fn x(ctx: &Arc<FieldContext>) -> Self {
        Self::monomial(&ctx.one(), 1)
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_vec(c.field(), vec![c.clone()])
    }

    pub fn monomial(c: &FieldElement, degree: usize) -> Self {
        let ctx = c.field();
        let mut coeffs = vec![ctx.zero(); degree + 1];
        coeffs[degree] = c.clone();
        Self::from_vec(ctx, coeffs)
    }

    /// `x - c`
    pub fn linear_root(c: &FieldElement) -> Self {
        Self::from_vec(c.field(), vec![-c, c.field().one()])
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElement::is_one)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if FieldContext::same(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::from_vec(&self.ctx, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if self.ctx.is_prime_field() {
            // accumulate on raw residues; p < 2^31 keeps products in range
            let p = self.ctx.characteristic();
            let a: Vec<u64> = self.coeffs.iter().map(|c| c.digits()[0]).collect();
            let b: Vec<u64> = other.coeffs.iter().map(|c| c.digits()[0]).collect();
            let mut acc = vec![0u64; n];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + x * y) % p;
                }
            }
            let coeffs = acc.into_iter().map(|c| self.ctx.from_u64(c)).collect();
            return Ok(Self::from_vec(&self.ctx, coeffs));
        }
        let mut acc = vec![self.ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = &acc[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(&self.ctx, acc))
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Self::from_vec(&self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![self.ctx.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            let shift = i - dd;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[shift + j] = &rem[shift + j] - &(&c * d);
                }
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_vec(&self.ctx, quot),
            Self::from_vec(&self.ctx, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when `divisor` is known to divide `self`; `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        match self.divmod(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd by Euclid.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `g` with `self * g = 1 mod m`, if `self` is invertible modulo `m`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        if m.degree()? == 0 {
            return Some(Poly::zero(&self.ctx));
        }
        // invariant: old_s * self = old_r mod m
        let (mut old_r, mut r) = (self.rem(m).ok()?, m.clone());
        let (mut old_s, mut s) = (Poly::one(&self.ctx), Poly::zero(&self.ctx));
        while !r.is_zero() {
            let (q, rem) = old_r.divmod(&r).ok()?;
            let next_s = &old_s - &(&q * &s);
            old_r = std::mem::replace(&mut r, rem);
            old_s = std::mem::replace(&mut s, next_s);
        }
        if old_r.degree()? != 0 {
            return None;
        }
        let inv = old_r.coeffs[0].inv().ok()?;
        old_s.scale(&inv).rem(m).ok()
    }

    /// Formal derivative; coefficient `i * c_i` is reduced mod `p`.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.ctx.from_u64(i as u64))
            .collect();
        Self::from_vec(&self.ctx, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluates at a point of an extension, embedding coefficients on the fly.
    pub fn eval_embedded(&self, emb: &Embedding, x: &FieldElement) -> FieldElement {
        if emb.is_identity() {
            return self.eval(x);
        }
        self.coeffs
            .iter()
            .rev()
            .fold(emb.target().zero(), |acc, c| &(&acc * x) + &emb.apply(c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.check(inner)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.ctx), |acc, c| {
                &(&acc * inner) + &Poly::constant(c)
            }))
    }

    /// `g` with `self(x) = g(x^q)`, if every exponent in use is divisible by `q`.
    pub fn deflate(&self, q: u64) -> Option<Poly> {
        let q = q as usize;
        if q == 0 {
            return None;
        }
        let ok = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % q == 0 || c.is_zero());
        ok.then(|| Self::from_vec(&self.ctx, self.coeffs.iter().step_by(q).cloned().collect()))
    }

    /// `self(x^q)`.
    pub fn inflate(&self, q: u64) -> Poly {
        let q = q as usize;
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let mut coeffs = vec![self.ctx.zero(); d * q + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * q] = c.clone();
        }
        Self::from_vec(&self.ctx, coeffs)
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Poly {
        Self::from_vec(&self.ctx, self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise `c -> c^(p^j)`.
    pub fn frobenius_coeffs(&self, j: u64) -> Poly {
        self.map_coeffs(|c| c.frobenius(j))
    }

    /// Coefficient-wise `c -> c^(1/p^j)`.
    pub fn pth_root_coeffs(&self, j: u64) -> Poly {
        self.map_coeffs(|c| c.pth_root(j))
    }

    pub fn embed(&self, emb: &Embedding) -> Poly {
        if emb.is_identity() {
            return self.clone();
        }
        Self::from_vec(
            emb.target(),
            self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        )
    }

    /// Descends coefficients to the embedding's source field, if they all lie there.
    pub fn restrict(&self, emb: &Embedding) -> Option<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| emb.restrict(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_vec(emb.source(), coeffs))
    }

    /// Monic product of the distinct irreducible factors.
    ///
    /// Factors whose multiplicity is a multiple of `p` are recovered by
    /// taking `p`-th roots, which is where perfectness of the field is used.
    pub fn radical(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one(&self.ctx);
        }
        let d = self.derivative();
        if d.is_zero() {
            let p = self.ctx.characteristic();
            let root = self
                .deflate(p)
                .expect("zero derivative means a polynomial in x^p")
                .pth_root_coeffs(1);
            return root.radical();
        }
        let c = self.gcd(&d).expect("nonzero");
        let w = self.exact_div(&c).expect("gcd divides").monic();
        // strip from c every factor already present in w
        let mut rest = c;
        loop {
            let g = rest.gcd(&w).expect("nonzero");
            if g.is_one() {
                break;
            }
            rest = rest.exact_div(&g).expect("gcd divides");
        }
        (&w * &rest.radical()).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).is_ok_and(|g| g.is_one()),
        }
    }

    /// All roots in the polynomial's own field, by exhaustive evaluation.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        self.roots_in(&Embedding::identity(&self.ctx))
    }

    /// All roots in the embedding's target field, by exhaustive evaluation,
    /// in index order.
    pub fn roots_in(&self, emb: &Embedding) -> Result<Vec<FieldElement>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lifted = self.embed(emb);
        Ok(emb
            .target()
            .elements()?
            .filter(|z| lifted.eval(z).is_zero())
            .collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => {}
                _ => write!(f, "{c}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomials over different fields")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, checked_add);
forward_poly_binop!(Sub, sub, checked_sub);
forward_poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
