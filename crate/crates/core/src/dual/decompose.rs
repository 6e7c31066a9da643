use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::isogeny::{frobenius_isogeny, IsogenyMap};
use crate::polyrat::RatFunc;

/// `phi = sep ∘ pi^n`, Frobenius on the right. `sep` starts on the
/// conjugate curve `E^(p^n)`, which is `E` itself for curves over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub sep: IsogenyMap,
    pub n: u32,
    pub original_degree: u64,
}

/// Splits off the largest power of Frobenius.
///
/// `n` is the largest exponent with `r(x) = r_1(x^(p^n))`, found by dividing
/// all exponents of `num(r)` and `den(r)` by `p` while possible. The
/// y-coefficient satisfies `s(x) = s_1(x^q) F(x)^((q-1)/2)` with `q = p^n`.
pub fn separable_decompose(phi: &IsogenyMap) -> Result<Decomposition> {
    let p = phi.field().characteristic();
    let mut r = phi.r().clone();
    let mut n = 0u32;
    while let Some(d) = r.deflate(p) {
        r = d;
        n += 1;
    }
    if n == 0 {
        return Ok(Decomposition {
            sep: phi.clone(),
            n,
            original_degree: phi.degree(),
        });
    }
    let domain = phi.domain();
    let q = p.pow(n);
    let twist = RatFunc::from_poly(domain.cubic().pow((q - 1) / 2));
    let s = phi
        .s()
        .checked_div(&twist)?
        .deflate(q)
        .ok_or(Error::IncompatibleMap)?;
    let conjugate = domain.frobenius_twist(n as u64);
    let sep = IsogenyMap::new(conjugate, phi.codomain().clone(), r, s)?;
    let decomposition = Decomposition {
        sep,
        n,
        original_degree: phi.degree(),
    };
    if &decomposition.recompose(domain)? != phi {
        return Err(Error::CompositionMismatch(
            "separable part composed with Frobenius does not reproduce the map".into(),
        ));
    }
    Ok(decomposition)
}

impl Decomposition {
    /// `sep ∘ pi^n`.
    pub fn recompose(&self, domain: &Curve) -> Result<IsogenyMap> {
        self.sep.compose(&frobenius_isogeny(domain, self.n)?)
    }

    /// The separable factor with Frobenius on the left, `phi = pi^n ∘ sep'`.
    ///
    /// `sep'` has the `p^n`-th roots of the coefficients of `sep` and runs
    /// from `E` to the conjugate `E'^(p^-n)` of the codomain.
    pub fn left_separable(&self, domain: &Curve) -> Result<IsogenyMap> {
        let n = self.n as u64;
        let root = |c: &FieldElement| c.pth_root(n);
        let target = self.sep.codomain();
        let codomain = Curve::new(root(target.a()), root(target.b()))?;
        IsogenyMap::new(
            domain.clone(),
            codomain,
            self.sep.r().map_coeffs(root),
            self.sep.s().map_coeffs(root),
        )
    }
}
