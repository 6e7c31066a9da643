//! Plain-text reports for `--pretty`.

use std::fmt::Write;

use velu_dual::curve::Subgroup;
use velu_dual::dual::{Decomposition, DualCertificate};
use velu_dual::isogeny::IsogenyMap;

fn map_lines(out: &mut String, name: &str, map: &IsogenyMap) {
    let _ = writeln!(out, "{name}: {} -> {}", map.domain(), map.codomain());
    let _ = writeln!(
        out,
        "  degree {}{}",
        map.degree(),
        if map.is_separable() {
            ""
        } else {
            ", inseparable"
        }
    );
    let _ = writeln!(out, "  x -> {}", map.r());
    let _ = writeln!(out, "  y -> y * ({})", map.s());
}

pub fn isogeny(map: &IsogenyMap, kernel: Option<&Subgroup>) -> String {
    let mut out = String::new();
    if let Some(g) = kernel {
        let points: Vec<String> = g.points().iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "kernel ({} points): {}", g.order(), points.join(", "));
    }
    map_lines(&mut out, "map", map);
    out
}

pub fn decomposition(phi: &IsogenyMap, d: &Decomposition) -> String {
    let mut out = String::new();
    map_lines(&mut out, "phi", phi);
    let _ = writeln!(
        out,
        "phi = phi_sep o pi^{}, inseparable degree {}",
        d.n,
        d.original_degree / d.sep.degree()
    );
    map_lines(&mut out, "phi_sep", &d.sep);
    out
}

/// The construction of the dual, one line per step of the pipeline.
pub fn certificate(cert: &DualCertificate) -> String {
    let mut out = String::new();
    let p = cert.phi.field().characteristic();
    let sep_degree = cert.m / p.pow(cert.n);
    map_lines(&mut out, "phi", &cert.phi);
    let _ = writeln!(
        out,
        "step 1  phi = phi_sep o pi^n with n = {}, deg phi_sep = {sep_degree}",
        cert.n
    );
    let _ = writeln!(
        out,
        "step 2  normalize phi_sep: c = {}, u = {}",
        cert.c_phi, cert.u_phi
    );
    let _ = writeln!(
        out,
        "step 3  [{sep_degree}] = [{sep_degree}]_sep o pi^e with e = {}",
        cert.e
    );
    let _ = writeln!(
        out,
        "step 4  normalize [{sep_degree}]_sep: c = {}, u = {}",
        cert.c_m, cert.u_m
    );
    let _ = writeln!(
        out,
        "step 5  kernel nesting gives lambda of degree {}: {} -> {}",
        cert.lambda.degree(),
        cert.lambda.domain(),
        cert.lambda.codomain()
    );
    match &cert.frobenius_dual {
        Some(f) => {
            let _ = writeln!(
                out,
                "step 6  dual of pi has degree {}, raised to the power {}",
                f.degree(),
                cert.n
            );
        }
        None => {
            let _ = writeln!(out, "step 6  phi is separable, no Frobenius dual needed");
        }
    }
    let _ = writeln!(
        out,
        "step 7  dual o phi = [{}]: {}; phi o dual = [{}]: {}",
        cert.m,
        if cert.verified { "verified" } else { "FAILED" },
        cert.m,
        if cert.reverse_identity {
            "holds"
        } else {
            "fails"
        }
    );
    map_lines(&mut out, "dual", &cert.dual);
    out
}
