//! Vélu's construction of the normalized isogeny with a given kernel.
//!
//! The pointwise evaluator sums coordinates over the kernel points:
//! `X = x_P + sum_{Q != O} (x_{P+Q} - x_Q)`, likewise for `Y`, and `P in G`
//! maps to `O`. The rational-map construction evaluates the same sums
//! symbolically. Pairing `Q` with `-Q`,
//!
//! ```text
//! x(P+Q) + x(P-Q) - 2 x_Q = v_Q / (x - x_Q) + u_Q / (x - x_Q)^2
//! ```
//!
//! with `v_Q = 2(3x_Q^2 + a)`, `u_Q = 4 y_Q^2` (and `v_Q = 3x_Q^2 + a`,
//! `u_Q = 0` when `Q` is 2-torsion). For a squarefree `h` with roots `x_Q`,
//! `sum g(x_Q)/(x - x_Q) = (g h' mod h) / h`, so everything is expressed
//! through the kernel polynomial and stays over the base field.

use super::IsogenyMap;
use crate::curve::{Curve, Point, Subgroup};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldElement};
use crate::polyrat::{Poly, RatFunc};

/// Codomain coefficients `(a - 5t, b - 7w)` computed from the points of `G`,
/// over the field the points live in.
pub fn velu_codomain_pointwise(g: &Subgroup) -> Result<Curve> {
    let curve = g.curve();
    let ctx = curve.field();
    let three = ctx.from_u64(3);
    let mut t = ctx.zero();
    let mut w = ctx.zero();
    let mut seen = std::collections::BTreeSet::new();
    for q in g.points() {
        let Some((xq, yq)) = q.coords() else { continue };
        if !seen.insert(xq.clone()) {
            continue;
        }
        let gx = &(&three * &xq.square()) + curve.a();
        let (v, u) = if yq.is_zero() {
            (gx, ctx.zero())
        } else {
            (&gx + &gx, &ctx.from_u64(4) * &yq.square())
        };
        w = &w + &(&u + &(xq * &v));
        t = &t + &v;
    }
    Curve::new(
        curve.a() - &(&ctx.from_u64(5) * &t),
        curve.b() - &(&ctx.from_u64(7) * &w),
    )
}

/// Vélu's formula evaluated at one point by summing over `G`.
///
/// `P` and the points of `G` may live over different fields as long as one
/// contains the other; the result lives over the larger one, on the
/// pointwise codomain of [`velu_codomain_pointwise`].
pub fn velu_pointwise(g: &Subgroup, p: &Point) -> Result<Point> {
    let g_field = g.field();
    let p_field = p.curve().field();
    // move everything to the larger field
    let (p, kernel, codomain) = if let Ok(emb) = Embedding::new(g_field, p_field) {
        if p.curve() != &g.curve().embed(&emb) {
            return Err(Error::CurveMismatch);
        }
        let kernel: Vec<Point> = g.points().iter().map(|q| q.embed(&emb)).collect();
        (p.clone(), kernel, velu_codomain_pointwise(g)?.embed(&emb))
    } else if let Ok(emb) = Embedding::new(p_field, g_field) {
        let lifted = p.embed(&emb);
        if lifted.curve() != g.curve() {
            return Err(Error::CurveMismatch);
        }
        (lifted, g.points().to_vec(), velu_codomain_pointwise(g)?)
    } else {
        return Err(Error::CurveMismatch);
    };

    if kernel.contains(&p) {
        return Ok(codomain.infinity());
    }
    let (xp, yp) = p.coords().expect("O lies in every subgroup");
    let mut x = xp.clone();
    let mut y = yp.clone();
    for q in kernel.iter().filter(|q| !q.is_infinity()) {
        let (xq, yq) = q.coords().expect("affine");
        // P + Q is affine since P is not in G
        let sum = p.add(q)?;
        let (xs, ys) = sum.coords().expect("P + Q != O for P outside G");
        x = &x + &(xs - xq);
        y = &y + &(ys - yq);
    }
    codomain.point(x, y).map_err(|_| Error::IncompatibleMap)
}

/// The normalized isogeny with kernel `G`, as rational maps over the base field.
pub fn velu_isogeny(curve: &Curve, g: &Subgroup) -> Result<IsogenyMap> {
    if g.base() != curve {
        return Err(Error::CurveMismatch);
    }
    let map = velu_from_kernel_poly(curve, g.kernel_poly())?;
    if map.degree() != g.order() as u64 {
        return Err(Error::InvalidKernel(format!(
            "map of degree {} for a subgroup of order {}",
            map.degree(),
            g.order()
        )));
    }
    Ok(map)
}

/// `(g h' mod h) / h`, i.e. `sum g(x_Q)/(x - x_Q)` over the roots of `h`.
fn root_sum(g: &Poly, h: &Poly) -> RatFunc {
    if h.is_one() {
        return RatFunc::zero(h.field());
    }
    let n = (g * &h.derivative()).rem(h).expect("h is nonzero");
    RatFunc::new(n, h.clone()).expect("h is nonzero")
}

/// `sum g(x_Q)` over the roots of monic `h`.
fn root_trace(g: &Poly, h: &Poly) -> FieldElement {
    match h.degree() {
        None | Some(0) => h.field().zero(),
        Some(d) => (g * &h.derivative())
            .rem(h)
            .expect("h is nonzero")
            .coeff(d - 1),
    }
}

/// Vélu's isogeny from a kernel polynomial: monic, squarefree, with roots
/// the x-coordinates of `(G \ O) / ±1`.
///
/// Polynomials that do not come from a subgroup are rejected with
/// [`Error::InvalidKernel`], detected through the curve-equation check on
/// the resulting map.
pub fn velu_from_kernel_poly(curve: &Curve, h: &Poly) -> Result<IsogenyMap> {
    let ctx = curve.field();
    if !h.is_monic() {
        return Err(Error::InvalidKernel(
            "kernel polynomial must be monic".into(),
        ));
    }
    if h.is_one() {
        return Ok(IsogenyMap::identity(curve));
    }
    if !h.is_squarefree() {
        return Err(Error::InvalidKernel(
            "kernel polynomial must be squarefree".into(),
        ));
    }
    let cubic = curve.cubic();
    let h2 = h.gcd(&cubic)?;
    let h1 = h.exact_div(&h2).expect("gcd divides");

    let x = Poly::x(ctx);
    // 3x^2 + a
    let gx = Poly::new(ctx, vec![curve.a().clone(), ctx.zero(), ctx.from_u64(3)])?;
    let two_gx = gx.scale(&ctx.from_u64(2));
    let four_f = cubic.scale(&ctx.from_u64(4));

    let r = RatFunc::x(ctx)
        .checked_add(&root_sum(&two_gx, &h1))?
        .checked_add(&root_sum(&gx, &h2))?
        .checked_sub(&root_sum(&four_f, &h1).derivative())?;

    let t = &root_trace(&two_gx, &h1) + &root_trace(&gx, &h2);
    let w = &root_trace(&(&four_f + &(&x * &two_gx)), &h1) + &root_trace(&(&x * &gx), &h2);
    let codomain = Curve::new(
        curve.a() - &(&ctx.from_u64(5) * &t),
        curve.b() - &(&ctx.from_u64(7) * &w),
    )
    .map_err(|_| Error::InvalidKernel("codomain would be singular".into()))?;

    // normalized: the pullback constant r'/s is 1
    let s = r.derivative();
    let map = IsogenyMap::new(curve.clone(), codomain, r, s).map_err(|e| match e {
        Error::IncompatibleMap => {
            Error::InvalidKernel("roots do not form a subgroup (curve equation fails)".into())
        }
        other => other,
    })?;
    let expected = 1 + 2 * h1.degree().unwrap_or(0) as u64 + h2.degree().unwrap_or(0) as u64;
    if map.degree() != expected || &map.kernel_poly() != h {
        return Err(Error::InvalidKernel(
            "resulting map does not have the requested kernel".into(),
        ));
    }
    Ok(map)
}
