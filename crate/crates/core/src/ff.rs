//! Exact arithmetic in `F_p` and `F_{p^k}`.
//!
//! A [`FieldContext`] fixes the characteristic, the extension degree and the
//! defining modulus; it is immutable and shared through an [`Arc`]. A
//! [`FieldElement`] is a fully reduced coefficient vector over `F_p` with
//! respect to the power basis of that modulus, so equality of elements is
//! equality of representations.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Largest field that may be scanned element by element.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Extension degrees above this are refused outright.
pub const MAX_EXTENSION_DEGREE: usize = 16;

const MAX_CHARACTERISTIC: u64 = 1 << 31;

type Rep = SmallVec<[u64; 4]>;

/// The finite field `F_{p^k} = F_p[t] / (modulus)`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u64,
    k: usize,
    /// Monic, little-endian, length `k + 1`; empty for prime fields.
    modulus: Vec<u64>,
}

impl FieldContext {
    /// Builds `F_{p^k}`. For `k > 1` the modulus is the first monic
    /// irreducible polynomial of degree `k` when candidates are ordered by
    /// their little-endian coefficient vector read as a base-`p` integer
    /// (constant term varying fastest).
    pub fn new(p: u64, k: usize) -> Result<Arc<Self>> {
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::UnsupportedField(format!(
                "characteristic {p} is too large"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::CharTooSmall(p));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::UnsupportedField(format!(
                "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let modulus = if k == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, k)
        };
        Ok(Arc::new(FieldContext { p, k, modulus }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Monic defining polynomial, little-endian; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.k == 1 {
            None
        } else {
            Some(&self.modulus)
        }
    }

    /// `p^k`, or `None` if it overflows.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.k as u32)
    }

    /// Returns the field size if it is within [`ENUMERATION_LIMIT`].
    pub fn ensure_enumerable(&self) -> Result<u64> {
        match self.order() {
            Some(q) if q <= ENUMERATION_LIMIT => Ok(q),
            Some(q) => Err(Error::FieldTooLarge {
                size: q,
                limit: ENUMERATION_LIMIT,
            }),
            None => Err(Error::FieldTooLarge {
                size: u64::MAX,
                limit: ENUMERATION_LIMIT,
            }),
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            rep: smallvec![0; self.k],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(self: &Arc<Self>, n: u64) -> FieldElement {
        let mut rep: Rep = smallvec![0; self.k];
        rep[0] = n % self.p;
        FieldElement {
            ctx: Arc::clone(self),
            rep,
        }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// Element with the given base-`p` digits (little-endian). Shorter
    /// vectors are zero-padded; digits must already be reduced.
    pub fn element(self: &Arc<Self>, digits: &[u64]) -> Result<FieldElement> {
        if digits.len() > self.k {
            return Err(Error::parse(
                "field element",
                format!(
                    "{} digits given for an extension of degree {}",
                    digits.len(),
                    self.k
                ),
            ));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::parse(
                "field element",
                format!("digit {d} is not reduced mod {}", self.p),
            ));
        }
        let mut rep: Rep = smallvec![0; self.k];
        rep[..digits.len()].copy_from_slice(digits);
        Ok(FieldElement {
            ctx: Arc::clone(self),
            rep,
        })
    }

    /// The element whose digit vector, read as a base-`p` integer, is `n`.
    pub fn from_index(self: &Arc<Self>, mut n: u64) -> FieldElement {
        let mut rep: Rep = smallvec![0; self.k];
        for d in rep.iter_mut() {
            *d = n % self.p;
            n /= self.p;
        }
        FieldElement {
            ctx: Arc::clone(self),
            rep,
        }
    }

    /// The class of `t` in `F_p[t]/(modulus)`; for a prime field this is 1.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.k == 1 {
            return self.one();
        }
        let mut rep: Rep = smallvec![0; self.k];
        rep[1] = 1;
        FieldElement {
            ctx: Arc::clone(self),
            rep,
        }
    }

    /// All elements in index order. Refuses fields beyond [`ENUMERATION_LIMIT`].
    pub fn elements(self: &Arc<Self>) -> Result<impl Iterator<Item = FieldElement>> {
        let q = self.ensure_enumerable()?;
        let ctx = Arc::clone(self);
        Ok((0..q).map(move |n| ctx.from_index(n)))
    }

    /// Two contexts describe the same field (same `p`, `k` and modulus).
    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    fn add_rep(&self, a: &[u64], b: &[u64]) -> Rep {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect()
    }

    fn sub_rep(&self, a: &[u64], b: &[u64]) -> Rep {
        a.iter()
            .zip(b)
            .map(|(x, y)| if x >= y { x - y } else { x + self.p - y })
            .collect()
    }

    fn neg_rep(&self, a: &[u64]) -> Rep {
        a.iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect()
    }

    fn mul_rep(&self, a: &[u64], b: &[u64]) -> Rep {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return smallvec![a[0] * b[0] % p];
        }
        let mut prod: SmallVec<[u64; 8]> = smallvec![0; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] % p;
                let idx = d - k + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.truncate(k);
        prod.into_iter().collect()
    }
}

/// An element of a [`FieldContext`].
///
/// Arithmetic operators panic when the operands belong to different fields;
/// the `checked_*` methods report [`Error::ContextMismatch`] instead.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    rep: Rep,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Base-`p` digits, little-endian by power of the generator; length `k`.
    pub fn digits(&self) -> &[u64] {
        &self.rep
    }

    /// Digit vector read as a base-`p` integer.
    pub fn index(&self) -> u64 {
        self.rep
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.ctx.p + d)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&d| d == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&d| d == 0)
    }

    /// The element lies in the prime subfield `F_p`.
    pub fn in_prime_field(&self) -> bool {
        self.rep[1..].iter().all(|&d| d == 0)
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        FieldContext::same(&self.ctx, &other.ctx)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_rep(&self, rep: Rep) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            rep,
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_rep(self.ctx.add_rep(&self.rep, &other.rep)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_rep(self.ctx.sub_rep(&self.rep, &other.rep)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_rep(self.ctx.mul_rep(&self.rep, &other.rep)))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.with_rep(self.ctx.mul_rep(&self.rep, &inv.rep)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with_rep(self.ctx.neg_rep(&self.rep))
    }

    pub fn square(&self) -> FieldElement {
        self.with_rep(self.ctx.mul_rep(&self.rep, &self.rep))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.ctx.k == 1 {
            return Ok(self.with_rep(smallvec![inv_mod(self.rep[0], self.ctx.p)]));
        }
        // a^(q-2); q fits in u64 for every supported context
        let q = self.ctx.order().expect("field order overflows u64");
        Ok(self.pow(q - 2))
    }

    pub fn pow(&self, mut n: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `a^n` for any integer `n`; negative exponents need `a != 0`.
    pub fn pow_signed(&self, n: i64) -> Result<FieldElement> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, j: u64) -> FieldElement {
        let k = self.ctx.k as u64;
        if k == 1 {
            return self.clone();
        }
        let mut out = self.clone();
        for _ in 0..(j % k) {
            out = out.pow(self.ctx.p);
        }
        out
    }

    /// The unique `b` with `b^(p^j) = a`.
    pub fn pth_root(&self, j: u64) -> FieldElement {
        let k = self.ctx.k as u64;
        self.frobenius((k - j % k) % k)
    }

    /// Legendre-style test by exhaustive comparison is left to callers;
    /// this is Euler's criterion in `F_q`.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let q = self.ctx.order().expect("field order overflows u64");
        self.pow((q - 1) / 2).is_one()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the serialized digit array. Only meaningful within one field.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.as_slice().cmp(other.rep.as_slice())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            return write!(f, "{}", self.rep[0]);
        }
        write!(f, "[")?;
        for (i, d) in self.rep.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rep.as_slice().serialize(serializer)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .expect("field operands from different contexts")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

// Panics on a zero divisor.
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

/// An embedding `F_{p^k} -> F_{p^K}` with `k | K`.
///
/// For `k > 1` the image of the source generator is the smallest root (by
/// index) of the source modulus in the target, found by scanning.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<FieldContext>,
    target: Arc<FieldContext>,
    /// Images of `1, t, ..., t^{k-1}`.
    basis: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(source: &Arc<FieldContext>, target: &Arc<FieldContext>) -> Result<Self> {
        let mismatch = || Error::NotASubfield {
            source_p: source.p,
            source_k: source.k,
            target_p: target.p,
            target_k: target.k,
        };
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(mismatch());
        }
        let theta = if source.k == 1 || FieldContext::same(source, target) {
            target.generator()
        } else {
            let modulus: Vec<FieldElement> =
                source.modulus.iter().map(|&c| target.from_u64(c)).collect();
            target
                .elements()?
                .find(|z| {
                    modulus
                        .iter()
                        .rev()
                        .fold(target.zero(), |acc, c| &(&acc * z) + c)
                        .is_zero()
                })
                .ok_or_else(mismatch)?
        };
        let mut basis = Vec::with_capacity(source.k);
        let mut pw = target.one();
        for _ in 0..source.k {
            basis.push(pw.clone());
            pw = &pw * &theta;
        }
        Ok(Embedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            basis,
        })
    }

    pub fn identity(ctx: &Arc<FieldContext>) -> Self {
        Embedding::new(ctx, ctx).expect("a field embeds in itself")
    }

    pub fn source(&self) -> &Arc<FieldContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldContext> {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        FieldContext::same(&self.source, &self.target)
    }

    /// Image of a source element. Panics if `a` is not in the source field.
    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        assert!(
            FieldContext::same(a.field(), &self.source),
            "element outside the embedding's source field"
        );
        if self.is_identity() {
            return a.clone();
        }
        if self.source.k == 1 {
            return self.target.from_u64(a.rep[0]);
        }
        a.rep
            .iter()
            .zip(&self.basis)
            .filter(|(&d, _)| d != 0)
            .fold(self.target.zero(), |acc, (&d, b)| {
                &acc + &(b * &self.target.from_u64(d))
            })
    }

    /// Preimage of a target element, if it lies in the image.
    pub fn restrict(&self, a: &FieldElement) -> Option<FieldElement> {
        if !FieldContext::same(a.field(), &self.target) {
            return None;
        }
        if self.is_identity() {
            return Some(a.clone());
        }
        if self.source.k == 1 {
            return a.in_prime_field().then(|| self.source.from_u64(a.rep[0]));
        }
        let columns: Vec<&[u64]> = self.basis.iter().map(|b| b.digits()).collect();
        let coeffs = solve_mod_p(&columns, a.digits(), self.source.p)?;
        self.source.element(&coeffs).ok()
    }
}

/// Solves `sum_j x_j * columns[j] = rhs` over `F_p`; columns are linearly independent.
fn solve_mod_p(columns: &[&[u64]], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = columns.len();
    let rows = rhs.len();
    // augmented matrix, row-major
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(r) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = inv_mod(m[pivot_row][col], p);
        for v in m[pivot_row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] != 0 {
                let f = m[r][col];
                let pivot = m[pivot_row].clone();
                for (v, w) in m[r].iter_mut().zip(&pivot) {
                    *v = (*v + p - f * w % p) % p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    // inconsistent rows
    if m[pivot_row..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut x = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n];
    }
    Some(x)
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} has no inverse mod {p}");
    t.rem_euclid(p as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomials over F_p on raw coefficient vectors, for modulus search ----

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_fp(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mulmod_fp(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_fp(&prod, m, p)
}

fn gcd_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem_fp(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` of degree `k` is irreducible iff `gcd(x^(p^i) - x, f) = 1` for `i <= k/2`.
fn is_irreducible_fp(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..k / 2 {
        // h <- h^p mod f
        let mut acc = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_fp(&acc, &base, f, p);
            }
            base = mulmod_fp(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd_fp(&diff, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut candidate = vec![0u64; k + 1];
    candidate[k] = 1;
    loop {
        if is_irreducible_fp(&candidate, p) {
            return candidate;
        }
        // increment the little-endian counter in the low k digits
        let mut i = 0;
        loop {
            candidate[i] += 1;
            if candidate[i] < p {
                break;
            }
            candidate[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial of degree {k} over F_{p}");
        }
    }
}
