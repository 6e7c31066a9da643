use std::path::Path;
use std::thread;

use serde_json::{json, Value};
use velu_dual::curve::mul_by_m_map;
use velu_dual::dual::{dual_isogeny, separable_decompose, verify_dual};
use velu_dual::json::{self, CertificateJson};
use velu_dual::Error;

use crate::cli::{Cli, Command, MulArgs, VerifyArgs};
use crate::job::{self, parse_curve, parse_point, resolve_map};
use crate::report;
use crate::CliError;

/// What a command printed, and the failure to report after printing it.
pub struct Output {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Output {
    fn ok(mut text: String) -> Self {
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output {
            text,
            failure: None,
        }
    }
}

fn compact(value: &Value) -> String {
    json::to_string(value, false)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Velu(source) => {
            let (phi, kernel) = resolve_map(source)?;
            Ok(Output::ok(if pretty {
                report::isogeny(&phi, kernel.as_ref())
            } else {
                json::isogeny_to_string(&phi, false)
            }))
        }
        Command::Dual(source) => {
            let (phi, _) = resolve_map(source)?;
            let cert = dual_isogeny(&phi)?;
            Ok(Output::ok(if pretty {
                report::certificate(&cert)
            } else {
                json::certificate_to_string(&cert, false)
            }))
        }
        Command::Decompose(source) => {
            let (phi, _) = resolve_map(source)?;
            let d = separable_decompose(&phi)?;
            Ok(Output::ok(if pretty {
                report::decomposition(&phi, &d)
            } else {
                compact(&json!({
                    "n": d.n,
                    "original_degree": d.original_degree,
                    "sep": json::encode_isogeny(&d.sep),
                }))
            }))
        }
        Command::MulMap(args) => mul_map(args, pretty),
        Command::Verify(args) => verify(args, pretty),
        Command::Eval(args) => {
            let (map, _) = resolve_map(&args.source)?;
            let pt = parse_point(map.domain(), &args.point, "--point")?;
            let image = map.eval(&pt)?;
            Ok(Output::ok(if pretty {
                format!("{pt} -> {image}")
            } else {
                json::to_string(&json::encode_point(&image), false)
            }))
        }
    }
}

fn mul_map(args: &MulArgs, pretty: bool) -> Result<Output, CliError> {
    let curve = parse_curve(&args.curve)?;
    let map = mul_by_m_map(&curve, args.m)?;
    Ok(Output::ok(if pretty {
        report::isogeny(&map, None)
    } else {
        json::isogeny_to_string(&map, false)
    }))
}

fn failed(message: impl Into<String>) -> CliError {
    CliError::Math(Error::VerificationFailed(message.into()))
}

fn verify(args: &VerifyArgs, pretty: bool) -> Result<Output, CliError> {
    if let Some(path) = &args.batch {
        return verify_batch(path, pretty);
    }
    let (verified, degree, what) = if let Some(path) = &args.cert {
        let cert = json::certificate_from_str(&job::read_file(path)?)?;
        (cert.recheck()?, cert.m, "certificate")
    } else if let (Some(phi), Some(dual)) = (&args.phi, &args.dual) {
        let phi = job::read_isogeny(phi)?;
        let dual = job::read_isogeny(dual)?;
        let ok = match verify_dual(&phi, &dual) {
            Ok(ok) => ok,
            Err(Error::CurveChainMismatch) => false,
            Err(e) => return Err(e.into()),
        };
        (ok, phi.degree(), "pair")
    } else {
        return Err(CliError::Usage {
            at: "verify".into(),
            message: "give --cert FILE, --phi FILE --dual FILE, or --batch FILE".into(),
        });
    };
    if !verified {
        return Err(failed(format!(
            "the {what} does not satisfy dual o phi = [{degree}]"
        )));
    }
    Ok(Output::ok(if pretty {
        format!("verified: dual o phi = [{degree}]")
    } else {
        compact(&json!({ "verified": true, "degree": degree }))
    }))
}

fn check_entry(entry: &Value) -> Result<u64, CliError> {
    let wire: CertificateJson = serde_json::from_value(entry.clone()).map_err(|e| {
        CliError::Math(Error::Parse {
            at: "certificate".into(),
            message: e.to_string(),
        })
    })?;
    let cert = json::decode_certificate(&wire)?;
    if cert.recheck()? {
        Ok(cert.m)
    } else {
        Err(failed(format!(
            "the certificate does not satisfy dual o phi = [{}]",
            cert.m
        )))
    }
}

fn verify_batch(path: &Path, pretty: bool) -> Result<Output, CliError> {
    let entries: Vec<Value> = json::from_str(&job::read_file(path)?, "certificate batch")?;
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = entries.len().div_ceil(workers).max(1);
    let results: Vec<Result<u64, CliError>> = thread::scope(|s| {
        let handles: Vec<_> = entries
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(check_entry).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    });

    let failures = results.iter().filter(|r| r.is_err()).count();
    let text = if pretty {
        let mut out = String::new();
        for (i, r) in results.iter().enumerate() {
            match r {
                Ok(m) => out.push_str(&format!("#{i}: verified, degree {m}\n")),
                Err(e) => out.push_str(&format!("#{i}: FAILED, {}\n", e.message())),
            }
        }
        out.push_str(&format!(
            "{} of {} verified\n",
            results.len() - failures,
            results.len()
        ));
        out
    } else {
        let items: Vec<Value> = results
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                Ok(m) => json!({ "index": i, "verified": true, "degree": m }),
                Err(e) => json!({ "index": i, "verified": false, "error": e.to_json() }),
            })
            .collect();
        compact(&json!({
            "total": results.len(),
            "verified": results.len() - failures,
            "results": items,
        }))
    };
    let mut output = Output::ok(text);
    if failures > 0 {
        output.failure = Some(failed(format!(
            "{failures} of {} certificates failed",
            results.len()
        )));
    }
    Ok(output)
}
