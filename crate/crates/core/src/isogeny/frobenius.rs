use super::IsogenyMap;
use crate::curve::Curve;
use crate::error::Result;
use crate::polyrat::{Poly, RatFunc};

/// `pi^n: (x, y) -> (x^q, y^q)` with `q = p^n`, written as
/// `r = x^q`, `s = F(x)^((q-1)/2)` since `y^q = y (y^2)^((q-1)/2)`.
///
/// The codomain is the conjugate curve `(a^q, b^q)`. It equals the domain,
/// making `pi^n` an endomorphism, when the coefficients lie in `F_p` or
/// when `k` divides `n`.
pub fn frobenius_isogeny(curve: &Curve, n: u32) -> Result<IsogenyMap> {
    let ctx = curve.field();
    if n == 0 {
        return Ok(IsogenyMap::identity(curve));
    }
    let q = ctx.characteristic().pow(n);
    let r = RatFunc::from_poly(Poly::monomial(&ctx.one(), q as usize));
    let s = RatFunc::from_poly(curve.cubic().pow((q - 1) / 2));
    let codomain = curve.frobenius_twist(n as u64);
    let codomain = if &codomain == curve {
        curve.clone()
    } else {
        codomain
    };
    IsogenyMap::new(curve.clone(), codomain, r, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Embedding, FieldContext};

    #[test]
    fn shape_for_p5() {
        let k = FieldContext::new(5, 1).unwrap();
        let e = Curve::from_ints(&k, 1, 0).unwrap();
        let pi = frobenius_isogeny(&e, 1).unwrap();
        assert_eq!(pi.degree(), 5);
        assert_eq!(pi.r().num(), &Poly::monomial(&k.one(), 5));
        assert_eq!(pi.s().num(), &e.cubic().pow(2));
        assert!(!pi.is_separable());
    }

    #[test]
    fn acts_as_power_map_over_f25() {
        let k = FieldContext::new(5, 1).unwrap();
        let ext = FieldContext::new(5, 2).unwrap();
        let e = Curve::from_ints(&k, 2, 1).unwrap();
        let pi = frobenius_isogeny(&e, 1).unwrap();
        let emb = Embedding::new(&k, &ext).unwrap();
        for p in e.embed(&emb).points().unwrap() {
            let img = pi.eval_with(&emb, &p).unwrap();
            match p.coords() {
                None => assert!(img.is_infinity()),
                Some((x, y)) => {
                    let (ix, iy) = img.coords().unwrap();
                    assert_eq!((ix, iy), (&x.pow(5), &y.pow(5)));
                }
            }
        }
        for p in e.points().unwrap() {
            assert_eq!(pi.eval(&p).unwrap(), p);
        }
    }

    #[test]
    fn lands_on_conjugate_over_extension() {
        let ext = FieldContext::new(5, 2).unwrap();
        let g = ext.generator();
        let e = Curve::new(g.clone(), ext.one()).unwrap();
        let pi = frobenius_isogeny(&e, 1).unwrap();
        assert_eq!(pi.codomain().a(), &g.pow(5));
        assert_ne!(pi.codomain(), &e);
        assert_eq!(frobenius_isogeny(&e, 2).unwrap().codomain(), &e);
    }
}
