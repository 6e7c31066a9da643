//! Division polynomials and the multiplication-by-`m` map.
//!
//! With `F = x^3 + ax + b` we store `f_n` where `psi_n = f_n` for odd `n`
//! and `psi_n = y f_n` for even `n`, so every `f_n` is a polynomial in `x`.

use super::Curve;
use crate::error::{Error, Result};
use crate::isogeny::IsogenyMap;
use crate::polyrat::{Poly, RatFunc};

/// `|m|` above this is refused by [`mul_by_m_map`].
pub const MAX_MULTIPLIER: i64 = 12;

/// `[f_0, f_1, ..., f_n]`.
pub fn division_polynomials(curve: &Curve, n: usize) -> Vec<Poly> {
    let ctx = curve.field();
    let c = |v: i64| ctx.from_i64(v);
    let (a, b) = (curve.a(), curve.b());
    let big_f = curve.cubic();
    let f2 = big_f.pow(2);
    let half = c(2).inv().expect("p >= 5");

    let mut f = vec![
        Poly::zero(ctx),
        Poly::one(ctx),
        Poly::constant(&c(2)),
        // 3x^4 + 6ax^2 + 12bx - a^2
        Poly::new(
            ctx,
            vec![-a.square(), &c(12) * b, &c(6) * a, ctx.zero(), c(3)],
        )
        .expect("same field"),
        // 4(x^6 + 5ax^4 + 20bx^3 - 5a^2x^2 - 4abx - 8b^2 - a^3)
        Poly::new(
            ctx,
            vec![
                -(&(&c(8) * &b.square()) + &a.pow(3)),
                -(&(&c(4) * a) * b),
                -(&c(5) * &a.square()),
                &c(20) * b,
                &c(5) * a,
                ctx.zero(),
                ctx.one(),
            ],
        )
        .expect("same field")
        .scale(&c(4)),
    ];
    while f.len() <= n {
        let idx = f.len();
        let m = idx / 2;
        let next = if idx % 2 == 1 {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            let t1 = &f[m + 2] * &f[m].pow(3);
            let t2 = &f[m - 1] * &f[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &t1) - &t2
            } else {
                &t1 - &(&f2 * &t2)
            }
        } else {
            // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 2y
            let inner = &(&f[m + 2] * &f[m - 1].pow(2)) - &(&f[m - 2] * &f[m + 1].pow(2));
            (&f[m] * &inner).scale(&half)
        };
        f.push(next);
    }
    f.truncate(n + 1);
    f
}

/// `[m]` as an explicit endomorphism `(x, y) -> (r(x), y s(x))` of degree `m^2`.
///
/// `r = x - psi_{m-1} psi_{m+1} / psi_m^2` and `y s = psi_{2m} / (2 psi_m^4)`;
/// negative `m` flips the sign of `s`.
pub fn mul_by_m_map(curve: &Curve, m: i64) -> Result<IsogenyMap> {
    if m == 0 {
        return Err(Error::ZeroMultiplier);
    }
    if m.abs() > MAX_MULTIPLIER {
        return Err(Error::DegreeTooLarge {
            m,
            limit: MAX_MULTIPLIER,
        });
    }
    let n = m.unsigned_abs() as usize;
    let ctx = curve.field();
    let f = division_polynomials(curve, 2 * n);
    let big_f = curve.cubic();
    let x = Poly::x(ctx);
    let two = ctx.from_u64(2);
    let fm2 = f[n].pow(2);
    let (r, s) = if n % 2 == 1 {
        (
            RatFunc::new(
                &(&x * &fm2) - &(&big_f * &(&f[n - 1] * &f[n + 1])),
                fm2.clone(),
            )?,
            RatFunc::new(f[2 * n].clone(), fm2.pow(2).scale(&two))?,
        )
    } else {
        (
            RatFunc::new(
                &(&(&x * &big_f) * &fm2) - &(&f[n - 1] * &f[n + 1]),
                &big_f * &fm2,
            )?,
            RatFunc::new(f[2 * n].clone(), (&big_f.pow(2) * &fm2.pow(2)).scale(&two))?,
        )
    };
    let s = if m < 0 { s.neg() } else { s };
    IsogenyMap::new(curve.clone(), curve.clone(), r, s)
}
