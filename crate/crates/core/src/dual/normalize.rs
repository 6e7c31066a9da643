use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::isogeny::{velu_from_kernel_poly, IsogenyMap, Isomorphism};
use crate::polyrat::Poly;

/// The constant `c` with `phi^*(dx/2y) = c dx/2y`, computed as `r'(x) / s(x)`.
pub fn pullback_constant(phi: &IsogenyMap) -> Result<FieldElement> {
    let dr = phi.r().derivative();
    if dr.is_zero() {
        return Err(Error::InseparableMap);
    }
    dr.checked_div(phi.s())?
        .is_constant()
        .ok_or(Error::NonConstantRatio)
}

/// A separable map made normalized by an isomorphism on its codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// `(x, y) -> (c^2 x, c^3 y)` from the original codomain.
    pub iso: Isomorphism,
    /// `iso ∘ phi`, with pullback constant 1.
    pub map: IsogenyMap,
    /// The pullback constant `c` of the original map.
    pub constant: FieldElement,
}

/// Post-composes with the scaling `u = c`, whose pullback constant `1/u`
/// cancels `c`.
pub fn normalize(phi: &IsogenyMap) -> Result<Normalized> {
    let c = pullback_constant(phi)?;
    let iso = Isomorphism::new(phi.codomain(), c.clone())?;
    let map = iso.to_map().compose(phi)?;
    if !pullback_constant(&map)?.is_one() {
        return Err(Error::NotNormalized(
            "scaled map still has a non-trivial pullback constant".into(),
        ));
    }
    Ok(Normalized {
        iso,
        map,
        constant: c,
    })
}

/// The unique normalized `lambda` with `lambda ∘ phi_n = psi_n`, for
/// normalized separable maps with nested kernels.
///
/// The kernel polynomial of `lambda` has as roots the x-coordinates of
/// `phi_n(ker psi_n)`. Those are the values `r_phi(x_Q)` over the roots `x_Q`
/// of `k = kerpoly(psi_n) / kerpoly(phi_n)`, so it is the minimal polynomial
/// of `r_phi` in `F[x]/(k)`.
pub fn quotient_isogeny(phi_n: &IsogenyMap, psi_n: &IsogenyMap) -> Result<IsogenyMap> {
    if phi_n.domain() != psi_n.domain() {
        return Err(Error::CurveMismatch);
    }
    for (name, map) in [("first", phi_n), ("second", psi_n)] {
        if !pullback_constant(map)?.is_one() {
            return Err(Error::NotNormalized(format!("{name} map")));
        }
    }
    let kp = phi_n.kernel_poly();
    let kq = psi_n.kernel_poly();
    let k = kq.exact_div(&kp).ok_or(Error::KernelNotNested)?;
    if !psi_n.degree().is_multiple_of(phi_n.degree()) {
        return Err(Error::KernelNotNested);
    }
    let h = image_kernel_poly(phi_n, &k)?;
    let lambda = velu_from_kernel_poly(phi_n.codomain(), &h)?;
    if lambda.codomain() != psi_n.codomain() || &lambda.compose(phi_n)? != psi_n {
        return Err(Error::CompositionMismatch(
            "quotient map does not reproduce the target map".into(),
        ));
    }
    Ok(lambda)
}

/// `lambda` with `lambda ∘ phi = psi`, for separable maps with nested kernels
/// and any pullback constants.
pub fn factor_through(phi: &IsogenyMap, psi: &IsogenyMap) -> Result<IsogenyMap> {
    if phi.domain() != psi.domain() {
        return Err(Error::CurveMismatch);
    }
    let phi_n = normalize(phi)?;
    let psi_n = normalize(psi)?;
    let lambda = quotient_isogeny(&phi_n.map, &psi_n.map)?;
    let result = psi_n
        .iso
        .inverse()
        .to_map()
        .compose(&lambda)?
        .compose(&phi_n.iso.to_map())?;
    if &result.compose(phi)? != psi {
        return Err(Error::CompositionMismatch(
            "factor does not reproduce the target map".into(),
        ));
    }
    Ok(result)
}

/// Minimal polynomial of `N/D mod k` in `F[x]/(k)`, where `r = N/D`.
fn image_kernel_poly(phi: &IsogenyMap, k: &Poly) -> Result<Poly> {
    let ctx = k.field();
    let n = k.degree().expect("quotient of nonzero polynomials");
    if n == 0 {
        return Ok(Poly::one(ctx));
    }
    let r = phi.r();
    let den_inv = r.den().inverse_mod(k).ok_or_else(|| {
        Error::InvalidKernel("pole of the first map inside the second kernel".into())
    })?;
    let a = (r.num() * &den_inv).rem(k)?;

    let as_vec = |p: &Poly| -> Vec<FieldElement> { (0..n).map(|i| p.coeff(i)).collect() };
    // echelon rows: (vector with pivot entry 1, combination of powers of a)
    let mut rows: Vec<(usize, Vec<FieldElement>, Vec<FieldElement>)> = Vec::new();
    let mut power = Poly::one(ctx);
    for j in 0..=n {
        let mut v = as_vec(&power);
        let mut combo = vec![ctx.zero(); j + 1];
        combo[j] = ctx.one();
        for (pivot, row, row_combo) in &rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = &*vi - &(&c * ri);
            }
            for (ci, rc) in combo.iter_mut().zip(row_combo) {
                *ci = &*ci - &(&c * rc);
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return Poly::new(ctx, combo),
            Some(pivot) => {
                let inv = v[pivot].inv()?;
                let v = v.iter().map(|c| c * &inv).collect();
                let combo = combo.iter().map(|c| c * &inv).collect();
                rows.push((pivot, v, combo));
            }
        }
        power = (&power * &a).rem(k)?;
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}
