//! JSON interchange for curves, points, rational maps, isogenies and dual
//! certificates.
//!
//! Field elements are arrays of `k` base-`p` digits, constant digit first,
//! so `[2, 1]` is `2 + t` in `F_p[t]/(f)`. Polynomials are arrays of
//! elements, constant coefficient first. Encoding is canonical: decoding and
//! re-encoding a document produced here yields the same bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::dual::DualCertificate;
use crate::error::{Error, Result};
use crate::ff::{FieldContext, FieldElement};
use crate::isogeny::IsogenyMap;
use crate::polyrat::{Poly, RatFunc};

pub type ElementJson = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub p: u64,
    pub k: usize,
    pub a: ElementJson,
    pub b: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine { x: ElementJson, y: ElementJson },
    Infinity(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFuncJson {
    pub num: Vec<ElementJson>,
    pub den: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsogenyJson {
    pub domain: CurveJson,
    pub codomain: CurveJson,
    pub r: RatFuncJson,
    pub s: RatFuncJson,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub phi: IsogenyJson,
    pub dual: IsogenyJson,
    pub m: u64,
    pub n: u32,
    pub e: u32,
    pub c_phi: ElementJson,
    pub u_phi: ElementJson,
    pub c_m: ElementJson,
    pub u_m: ElementJson,
    pub lambda: IsogenyJson,
    pub frobenius_dual: Option<IsogenyJson>,
    pub mul_map: IsogenyJson,
    pub verified: bool,
    pub reverse_identity: bool,
}

/// Field contexts by `(p, k)`, so that every curve of one document shares
/// a single context.
#[derive(Default)]
pub struct Fields(Vec<Arc<FieldContext>>);

impl Fields {
    pub fn get(&mut self, p: u64, k: usize) -> Result<Arc<FieldContext>> {
        if let Some(ctx) = self
            .0
            .iter()
            .find(|c| c.characteristic() == p && c.degree() == k)
        {
            return Ok(Arc::clone(ctx));
        }
        let ctx = FieldContext::new(p, k)?;
        self.0.push(Arc::clone(&ctx));
        Ok(ctx)
    }
}

pub fn encode_element(a: &FieldElement) -> ElementJson {
    a.digits().to_vec()
}

pub fn decode_element(ctx: &Arc<FieldContext>, digits: &[u64], at: &str) -> Result<FieldElement> {
    if digits.len() != ctx.degree() {
        return Err(Error::parse(
            at,
            format!(
                "expected {} digit(s) for an element of F_{}^{}, got {}",
                ctx.degree(),
                ctx.characteristic(),
                ctx.degree(),
                digits.len()
            ),
        ));
    }
    ctx.element(digits)
        .map_err(|e| Error::parse(at, e.to_string()))
}

pub fn encode_curve(curve: &Curve) -> CurveJson {
    let ctx = curve.field();
    CurveJson {
        p: ctx.characteristic(),
        k: ctx.degree(),
        a: encode_element(curve.a()),
        b: encode_element(curve.b()),
    }
}

pub fn decode_curve(fields: &mut Fields, json: &CurveJson, at: &str) -> Result<Curve> {
    let ctx = fields.get(json.p, json.k)?;
    let a = decode_element(&ctx, &json.a, &format!("{at}.a"))?;
    let b = decode_element(&ctx, &json.b, &format!("{at}.b"))?;
    Curve::new(a, b)
}

pub fn encode_point(p: &Point) -> PointJson {
    match p.coords() {
        None => PointJson::Infinity("infinity".into()),
        Some((x, y)) => PointJson::Affine {
            x: encode_element(x),
            y: encode_element(y),
        },
    }
}

pub fn decode_point(curve: &Curve, json: &PointJson, at: &str) -> Result<Point> {
    match json {
        PointJson::Infinity(s) if s == "infinity" => Ok(curve.infinity()),
        PointJson::Infinity(s) => Err(Error::parse(at, format!("unexpected point string {s:?}"))),
        PointJson::Affine { x, y } => {
            let ctx = curve.field();
            let x = decode_element(ctx, x, &format!("{at}.x"))?;
            let y = decode_element(ctx, y, &format!("{at}.y"))?;
            curve.point(x, y)
        }
    }
}

fn encode_poly(p: &Poly) -> Vec<ElementJson> {
    p.coeffs().iter().map(encode_element).collect()
}

fn decode_poly(ctx: &Arc<FieldContext>, coeffs: &[ElementJson], at: &str) -> Result<Poly> {
    let coeffs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| decode_element(ctx, c, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Poly::new(ctx, coeffs)
}

pub fn encode_ratfunc(f: &RatFunc) -> RatFuncJson {
    RatFuncJson {
        num: encode_poly(f.num()),
        den: encode_poly(f.den()),
    }
}

/// Rejects inputs that are not already in canonical (reduced, monic
/// denominator) form, so that decoding never silently rewrites data.
pub fn decode_ratfunc(ctx: &Arc<FieldContext>, json: &RatFuncJson, at: &str) -> Result<RatFunc> {
    let num = decode_poly(ctx, &json.num, &format!("{at}.num"))?;
    let den = decode_poly(ctx, &json.den, &format!("{at}.den"))?;
    let f = RatFunc::new(num.clone(), den.clone()).map_err(|e| Error::parse(at, e.to_string()))?;
    if f.num() != &num || f.den() != &den {
        return Err(Error::parse(
            at,
            "rational function is not in canonical form (reduced, monic denominator)",
        ));
    }
    Ok(f)
}

pub fn encode_isogeny(phi: &IsogenyMap) -> IsogenyJson {
    IsogenyJson {
        domain: encode_curve(phi.domain()),
        codomain: encode_curve(phi.codomain()),
        r: encode_ratfunc(phi.r()),
        s: encode_ratfunc(phi.s()),
        degree: phi.degree(),
    }
}

pub fn decode_isogeny(fields: &mut Fields, json: &IsogenyJson, at: &str) -> Result<IsogenyMap> {
    let domain = decode_curve(fields, &json.domain, &format!("{at}.domain"))?;
    let codomain = decode_curve(fields, &json.codomain, &format!("{at}.codomain"))?;
    let ctx = domain.field().clone();
    let r = decode_ratfunc(&ctx, &json.r, &format!("{at}.r"))?;
    let s = decode_ratfunc(&ctx, &json.s, &format!("{at}.s"))?;
    let phi = IsogenyMap::new(domain, codomain, r, s)?;
    if phi.degree() != json.degree {
        return Err(Error::parse(
            format!("{at}.degree"),
            format!(
                "stated degree {} but the map has degree {}",
                json.degree,
                phi.degree()
            ),
        ));
    }
    Ok(phi)
}

pub fn encode_certificate(cert: &DualCertificate) -> CertificateJson {
    CertificateJson {
        phi: encode_isogeny(&cert.phi),
        dual: encode_isogeny(&cert.dual),
        m: cert.m,
        n: cert.n,
        e: cert.e,
        c_phi: encode_element(&cert.c_phi),
        u_phi: encode_element(&cert.u_phi),
        c_m: encode_element(&cert.c_m),
        u_m: encode_element(&cert.u_m),
        lambda: encode_isogeny(&cert.lambda),
        frobenius_dual: cert.frobenius_dual.as_ref().map(encode_isogeny),
        mul_map: encode_isogeny(&cert.mul_map),
        verified: cert.verified,
        reverse_identity: cert.reverse_identity,
    }
}

/// Rebuilds the certificate objects. Nothing is re-verified here; use
/// [`DualCertificate::recheck`] for that.
pub fn decode_certificate(json: &CertificateJson) -> Result<DualCertificate> {
    let mut fields = Fields::default();
    let phi = decode_isogeny(&mut fields, &json.phi, "phi")?;
    let ctx = phi.field().clone();
    let element = |digits: &[u64], at: &str| decode_element(&ctx, digits, at);
    Ok(DualCertificate {
        dual: decode_isogeny(&mut fields, &json.dual, "dual")?,
        m: json.m,
        n: json.n,
        e: json.e,
        c_phi: element(&json.c_phi, "c_phi")?,
        u_phi: element(&json.u_phi, "u_phi")?,
        c_m: element(&json.c_m, "c_m")?,
        u_m: element(&json.u_m, "u_m")?,
        lambda: decode_isogeny(&mut fields, &json.lambda, "lambda")?,
        frobenius_dual: json
            .frobenius_dual
            .as_ref()
            .map(|f| decode_isogeny(&mut fields, f, "frobenius_dual"))
            .transpose()?,
        mul_map: decode_isogeny(&mut fields, &json.mul_map, "mul_map")?,
        verified: json.verified,
        reverse_identity: json.reverse_identity,
        phi,
    })
}

pub fn to_string<T: Serialize>(value: &T, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    s.expect("wire types always serialize")
}

pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::parse(what, e.to_string()))
}

pub fn certificate_to_string(cert: &DualCertificate, pretty: bool) -> String {
    to_string(&encode_certificate(cert), pretty)
}

pub fn certificate_from_str(s: &str) -> Result<DualCertificate> {
    decode_certificate(&from_str(s, "certificate")?)
}

pub fn isogeny_to_string(phi: &IsogenyMap, pretty: bool) -> String {
    to_string(&encode_isogeny(phi), pretty)
}

pub fn isogeny_from_str(s: &str) -> Result<IsogenyMap> {
    decode_isogeny(&mut Fields::default(), &from_str(s, "isogeny")?, "isogeny")
}
