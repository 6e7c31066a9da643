use super::decompose::separable_decompose;
use super::normalize::{normalize, quotient_isogeny};
use crate::curve::{mul_by_m_map, Curve, Point};
use crate::error::{Error, Result};
use crate::ff::{Embedding, FieldContext, FieldElement, ENUMERATION_LIMIT};
use crate::isogeny::{frobenius_isogeny, IsogenyMap};

/// The dual of `pi: E -> E` over `F_p`, as `[p]_sep ∘ pi^(k-1)` where
/// `[p] = [p]_sep ∘ pi^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDual {
    pub map: IsogenyMap,
    /// 1 for ordinary curves, 2 for supersingular ones.
    pub inseparable_degree: u32,
    pub mul_sep: IsogenyMap,
}

pub fn frobenius_dual(curve: &Curve) -> Result<IsogenyMap> {
    frobenius_dual_parts(curve).map(|d| d.map)
}

pub fn frobenius_dual_parts(curve: &Curve) -> Result<FrobeniusDual> {
    let ctx = curve.field();
    if !ctx.is_prime_field() {
        return Err(Error::UnsupportedBaseField);
    }
    let p = ctx.characteristic() as i64;
    let mul_p = mul_by_m_map(curve, p)?;
    let dec = separable_decompose(&mul_p)?;
    let map = dec.sep.compose(&frobenius_isogeny(curve, dec.n - 1)?)?;
    if map.compose(&frobenius_isogeny(curve, 1)?)? != mul_p {
        return Err(Error::VerificationFailed(
            "Frobenius dual composed with Frobenius is not [p]".into(),
        ));
    }
    Ok(FrobeniusDual {
        map,
        inseparable_degree: dec.n,
        mul_sep: dec.sep,
    })
}

/// Every intermediate object of the dual construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub phi: IsogenyMap,
    pub dual: IsogenyMap,
    pub m: u64,
    /// Frobenius exponent of `phi`.
    pub n: u32,
    /// Frobenius exponent of `[m_s]`, where `m_s = deg phi_sep`.
    pub e: u32,
    pub c_phi: FieldElement,
    pub u_phi: FieldElement,
    pub c_m: FieldElement,
    pub u_m: FieldElement,
    pub lambda: IsogenyMap,
    pub frobenius_dual: Option<IsogenyMap>,
    pub mul_map: IsogenyMap,
    pub verified: bool,
    /// Whether `phi ∘ dual = [m]` also holds pointwise on the codomain.
    pub reverse_identity: bool,
}

/// Constructs the dual of `phi` and checks `dual ∘ phi = [m]`.
///
/// Writing `phi = phi_sep ∘ pi^n` and `[m_s] = [m_s]_sep ∘ pi^e`, the
/// normalized forms of `phi_sep` and `[m_s]_sep` have nested kernels, so
/// `[m_s]_norm = lambda ∘ phi_sep_norm`. Then
/// `dual_sep = i_m^-1 ∘ pi^e ∘ lambda ∘ i_phi` and `dual = pi_hat^n ∘ dual_sep`.
pub fn dual_isogeny(phi: &IsogenyMap) -> Result<DualCertificate> {
    let domain = phi.domain().clone();
    let m = phi.degree();

    let dec = separable_decompose(phi)?;
    let n = dec.n;
    let phi_sep = dec.sep;
    let m_s = phi_sep.degree();

    let pi_hat = if n > 0 {
        Some(frobenius_dual(&domain)?)
    } else {
        None
    };

    let mul_s = mul_by_m_map(&domain, m_s as i64)?;
    let mul_dec = separable_decompose(&mul_s)?;
    let e = mul_dec.n;
    if e > 0 && !domain.field().is_prime_field() {
        return Err(Error::UnsupportedBaseField);
    }

    let phi_norm = normalize(&phi_sep)?;
    let mul_norm = normalize(&mul_dec.sep)?;
    let lambda = quotient_isogeny(&phi_norm.map, &mul_norm.map)?;

    let frob_e = frobenius_isogeny(mul_norm.iso.to(), e)?;
    let mut dual = mul_norm
        .iso
        .inverse()
        .to_map()
        .compose(&frob_e)?
        .compose(&lambda)?
        .compose(&phi_norm.iso.to_map())?;
    if let Some(pi_hat) = &pi_hat {
        for _ in 0..n {
            dual = pi_hat.compose(&dual)?;
        }
    }

    let mul_map = mul_by_m_map(&domain, m as i64)?;
    if !identity_holds(phi, &dual, &mul_map)? {
        return Err(Error::VerificationFailed(format!(
            "dual composed with the degree-{m} map is not [{m}]"
        )));
    }
    let reverse_identity = reverse_identity_holds(phi, &dual, m)?;

    Ok(DualCertificate {
        u_phi: phi_norm.iso.u().clone(),
        c_phi: phi_norm.constant,
        u_m: mul_norm.iso.u().clone(),
        c_m: mul_norm.constant,
        phi: phi.clone(),
        dual,
        m,
        n,
        e,
        lambda,
        frobenius_dual: pi_hat,
        mul_map,
        verified: true,
        reverse_identity,
    })
}

/// Whether `dual ∘ phi = [deg phi]` on the domain of `phi`, both as rational
/// maps and pointwise on every enumerable point.
pub fn verify_dual(phi: &IsogenyMap, dual: &IsogenyMap) -> Result<bool> {
    if dual.domain() != phi.codomain() || dual.codomain() != phi.domain() {
        return Err(Error::CurveChainMismatch);
    }
    if dual.degree() != phi.degree() {
        return Ok(false);
    }
    let mul_map = mul_by_m_map(phi.domain(), phi.degree() as i64)?;
    identity_holds(phi, dual, &mul_map)
}

impl DualCertificate {
    /// Re-runs every check recorded in the certificate.
    pub fn recheck(&self) -> Result<bool> {
        let fields_consistent = self.m == self.phi.degree()
            && self.mul_map == mul_by_m_map(self.phi.domain(), self.m as i64)?;
        Ok(fields_consistent && self.verified && verify_dual(&self.phi, &self.dual)?)
    }
}

fn identity_holds(phi: &IsogenyMap, dual: &IsogenyMap, mul_map: &IsogenyMap) -> Result<bool> {
    if &dual.compose(phi)? != mul_map {
        return Ok(false);
    }
    let m = phi.degree() as i64;
    let (emb, points) = verification_points(phi.domain())?;
    for p in &points {
        let image = dual.eval_with(&emb, &phi.eval_with(&emb, p)?)?;
        if image != p.mul(m) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reverse_identity_holds(phi: &IsogenyMap, dual: &IsogenyMap, m: u64) -> Result<bool> {
    let (emb, points) = verification_points(phi.codomain())?;
    for q in &points {
        if phi.eval_with(&emb, &dual.eval_with(&emb, q)?)? != q.mul(m as i64) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of `E` over the quadratic extension of its base field when that is
/// small enough to enumerate, otherwise over the base field.
pub fn verification_points(curve: &Curve) -> Result<(Embedding, Vec<Point>)> {
    let base = curve.field();
    let (p, k) = (base.characteristic(), base.degree());
    let wide = match (p as u128).checked_pow(2 * k as u32) {
        Some(size) if size <= ENUMERATION_LIMIT as u128 => Some(FieldContext::new(p, 2 * k)?),
        _ => None,
    };
    let emb = match wide {
        Some(ctx) => Embedding::new(base, &ctx)?,
        None => Embedding::identity(base),
    };
    let points = curve.embed(&emb).points()?;
    Ok((emb, points))
}
