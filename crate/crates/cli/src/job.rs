//! Turning command-line strings into curves, points, kernels and maps.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use velu_dual::curve::{Curve, Point, Subgroup};
use velu_dual::ff::{Embedding, FieldContext, FieldElement, ENUMERATION_LIMIT};
use velu_dual::isogeny::{frobenius_isogeny, velu_isogeny, IsogenyMap};
use velu_dual::json;
use velu_dual::polyrat::Poly;
use velu_dual::Error;

use crate::cli::{CurveArgs, KernelArgs, MapSource};
use crate::CliError;

/// Kernels larger than this are refused.
pub const MAX_KERNEL_ORDER: usize = 50;

/// Largest extension degree scanned when resolving a kernel polynomial.
const MAX_SCAN_DEGREE: usize = 4;

fn usage(at: &str, message: impl Into<String>) -> CliError {
    CliError::Usage {
        at: at.to_string(),
        message: message.into(),
    }
}

fn desk_scale(size: u64) -> CliError {
    CliError::Math(Error::FieldTooLarge {
        size,
        limit: ENUMERATION_LIMIT,
    })
}

pub fn field(p: u64, k: usize) -> Result<Arc<FieldContext>, CliError> {
    let ctx = FieldContext::new(p, k).map_err(|e| match e {
        Error::NotPrime(_) | Error::CharTooSmall(_) | Error::UnsupportedField(_) => {
            usage(if k == 1 { "--p" } else { "--p/--k" }, e.to_string())
        }
        other => CliError::Math(other),
    })?;
    match ctx.order() {
        Some(q) if q <= ENUMERATION_LIMIT => Ok(ctx),
        q => Err(desk_scale(q.unwrap_or(u64::MAX))),
    }
}

fn parse_digits(s: &str, p: u64, at: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|d| {
            let d = d.trim();
            let v: u64 = d
                .parse()
                .map_err(|_| usage(at, format!("{d:?} is not a non-negative integer")))?;
            if v >= p {
                return Err(usage(at, format!("digit {v} is not below p = {p}")));
            }
            Ok(v)
        })
        .collect()
}

/// An element of `ctx` from its digit list.
pub fn parse_element(ctx: &Arc<FieldContext>, s: &str, at: &str) -> Result<FieldElement, CliError> {
    let digits = parse_digits(s, ctx.characteristic(), at)?;
    if digits.len() != ctx.degree() {
        return Err(usage(
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
    ctx.element(&digits).map_err(|e| usage(at, e.to_string()))
}

pub fn parse_curve(args: &CurveArgs) -> Result<Curve, CliError> {
    let p = args
        .p
        .ok_or_else(|| usage("--p", "the characteristic is required"))?;
    let ctx = field(p, args.k)?;
    let a = args
        .a
        .as_deref()
        .ok_or_else(|| usage("--a", "coefficient a is required"))?;
    let b = args
        .b
        .as_deref()
        .ok_or_else(|| usage("--b", "coefficient b is required"))?;
    let a = parse_element(&ctx, a, "--a")?;
    let b = parse_element(&ctx, b, "--b")?;
    Curve::new(a, b).map_err(CliError::Math)
}

/// A point given as `x,y` (prime field) or `x-digits;y-digits`.
///
/// The digit count fixes the field: `k` digits for the base field, a
/// multiple of `k` for an extension, into which the curve is embedded.
pub fn parse_point(curve: &Curve, s: &str, at: &str) -> Result<Point, CliError> {
    let s = s.trim();
    if s == "infinity" || s == "O" {
        return Ok(curve.infinity());
    }
    let base = curve.field();
    let p = base.characteristic();
    let (x, y) = if base.is_prime_field() && !s.contains(';') {
        let d = parse_digits(s, p, at)?;
        if d.len() != 2 {
            return Err(usage(at, "expected a point as x,y"));
        }
        (vec![d[0]], vec![d[1]])
    } else {
        let (x, y) = s
            .split_once(';')
            .ok_or_else(|| usage(at, "expected a point as x-digits;y-digits"))?;
        (parse_digits(x, p, at)?, parse_digits(y, p, at)?)
    };
    if x.len() != y.len() || x.len() % base.degree() != 0 {
        return Err(usage(
            at,
            format!(
                "coordinates need the same number of digits, a multiple of k = {}",
                base.degree()
            ),
        ));
    }
    let ctx = if x.len() == base.degree() {
        Arc::clone(base)
    } else {
        field(p, x.len())?
    };
    let emb = Embedding::new(base, &ctx).map_err(CliError::Math)?;
    let x = ctx.element(&x).map_err(|e| usage(at, e.to_string()))?;
    let y = ctx.element(&y).map_err(|e| usage(at, e.to_string()))?;
    curve.embed(&emb).point(x, y).map_err(CliError::Math)
}

fn parse_kernel_poly(curve: &Curve, s: &str) -> Result<Poly, CliError> {
    let ctx = curve.field();
    let at = "--kernel-poly";
    let coeffs = if ctx.is_prime_field() {
        parse_digits(s, ctx.characteristic(), at)?
            .into_iter()
            .map(|c| ctx.from_u64(c))
            .collect()
    } else {
        s.split(';')
            .map(|c| parse_element(ctx, c, at))
            .collect::<Result<Vec<_>, _>>()?
    };
    let h = Poly::new(ctx, coeffs).map_err(CliError::Math)?;
    if h.is_zero() {
        return Err(usage(at, "the zero polynomial is not a kernel polynomial"));
    }
    Ok(h.monic())
}

fn check_order(g: &Subgroup) -> Result<(), CliError> {
    if g.order() > MAX_KERNEL_ORDER {
        return Err(CliError::Math(Error::SubgroupTooLarge {
            order: g.order(),
            limit: MAX_KERNEL_ORDER,
        }));
    }
    Ok(())
}

/// Finds the kernel points of `h` by scanning `F_{p^k'}` for `k'` a multiple
/// of `k` up to 4, and returns the subgroup they form.
fn subgroup_from_kernel_poly(curve: &Curve, h: &Poly) -> Result<Subgroup, CliError> {
    let base = curve.field();
    let d = h.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Subgroup::trivial(curve));
    }
    if !h.is_squarefree() {
        return Err(CliError::Math(Error::InvalidKernel(
            "kernel polynomial must be squarefree".into(),
        )));
    }
    if 2 * d + 1 > MAX_KERNEL_ORDER {
        return Err(CliError::Math(Error::SubgroupTooLarge {
            order: 2 * d + 1,
            limit: MAX_KERNEL_ORDER,
        }));
    }
    let (p, k) = (base.characteristic(), base.degree());
    let mut last = String::new();
    for kk in (k..=MAX_SCAN_DEGREE.max(k)).step_by(k) {
        match (p as u128).checked_pow(kk as u32) {
            Some(q) if q <= ENUMERATION_LIMIT as u128 => {}
            _ => break,
        }
        let ctx = field(p, kk)?;
        let emb = Embedding::new(base, &ctx).map_err(CliError::Math)?;
        let roots = h.roots_in(&emb).map_err(CliError::Math)?;
        if roots.len() < d {
            last = format!("{} of {d} roots in F_{p}^{kk}", roots.len());
            continue;
        }
        let big = curve.embed(&emb);
        let mut points = vec![big.infinity()];
        let mut complete = true;
        for x in &roots {
            let lifted = big.lift_x(x).map_err(CliError::Math)?;
            if lifted.is_empty() {
                complete = false;
                break;
            }
            points.extend(lifted);
        }
        if !complete {
            last = format!("kernel x-coordinates have no points over F_{p}^{kk}");
            continue;
        }
        let g = Subgroup::from_points(curve, &points).map_err(|e| match e {
            Error::NotClosed => CliError::Math(Error::InvalidKernel(
                "the roots are not the x-coordinates of a subgroup".into(),
            )),
            other => CliError::Math(other),
        })?;
        return Ok(g);
    }
    Err(CliError::Math(Error::KernelNotRational(format!(
        "kernel points do not split over F_{p}^k' for k' <= {}: {last}",
        MAX_SCAN_DEGREE.max(k)
    ))))
}

/// The kernel subgroup named by exactly one of the kernel flags.
pub fn parse_kernel(curve: &Curve, args: &KernelArgs) -> Result<Subgroup, CliError> {
    let given = [
        args.kernel_gen.is_some(),
        args.kernel_poly.is_some(),
        !args.kernel_point.is_empty(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given != 1 {
        return Err(usage(
            "kernel",
            "give exactly one of --kernel-gen, --kernel-poly, --kernel-point",
        ));
    }
    let g = if let Some(s) = &args.kernel_gen {
        let pt = parse_point(curve, s, "--kernel-gen")?;
        let order = pt.order();
        if order as usize > MAX_KERNEL_ORDER {
            return Err(CliError::Math(Error::SubgroupTooLarge {
                order: order as usize,
                limit: MAX_KERNEL_ORDER,
            }));
        }
        Subgroup::generated_by_over(curve, &pt).map_err(CliError::Math)?
    } else if let Some(s) = &args.kernel_poly {
        let h = parse_kernel_poly(curve, s)?;
        subgroup_from_kernel_poly(curve, &h)?
    } else {
        let mut pts = args
            .kernel_point
            .iter()
            .map(|s| parse_point(curve, s, "--kernel-point"))
            .collect::<Result<Vec<_>, _>>()?;
        if pts.len() > MAX_KERNEL_ORDER {
            return Err(CliError::Math(Error::SubgroupTooLarge {
                order: pts.len(),
                limit: MAX_KERNEL_ORDER,
            }));
        }
        let infinity = pts[0].curve().infinity();
        if !pts.contains(&infinity) {
            pts.push(infinity);
        }
        Subgroup::from_points(curve, &pts).map_err(CliError::Math)?
    };
    check_order(&g)?;
    Ok(g)
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(&path.display().to_string(), e.to_string()))
}

pub fn read_isogeny(path: &Path) -> Result<IsogenyMap, CliError> {
    json::isogeny_from_str(&read_file(path)?).map_err(|e| match e {
        Error::Parse { message, .. } => usage(&path.display().to_string(), message),
        other => CliError::Math(other),
    })
}

/// The map described by `--map`, or by a curve and kernel, precomposed
/// with Frobenius when asked. The subgroup is returned when a kernel was given.
pub fn resolve_map(source: &MapSource) -> Result<(IsogenyMap, Option<Subgroup>), CliError> {
    let (map, kernel) = match &source.map {
        Some(path) => (read_isogeny(path)?, None),
        None => {
            let curve = parse_curve(&source.curve)?;
            let g = parse_kernel(&curve, &source.kernel)?;
            let phi = velu_isogeny(&curve, &g).map_err(CliError::Math)?;
            (phi, Some(g))
        }
    };
    if source.frobenius == 0 {
        return Ok((map, kernel));
    }
    let pi = frobenius_isogeny(map.domain(), source.frobenius).map_err(CliError::Math)?;
    let composite = if pi.codomain() == map.domain() {
        map.compose(&pi).map_err(CliError::Math)?
    } else {
        return Err(CliError::Math(Error::UnsupportedBaseField));
    };
    Ok((composite, kernel))
}
