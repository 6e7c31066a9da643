mod cli;
mod commands;
mod job;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

/// Exit 1 for mathematical failures, 2 for anything wrong with the request.
#[derive(Debug)]
pub enum CliError {
    Usage { at: String, message: String },
    Math(velu_dual::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(velu_dual::Error::Parse { .. }) | CliError::Usage { .. } => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage { message, .. } => message.clone(),
            CliError::Math(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Usage { at, message } => json!({
                "error": "ParseError",
                "at": at,
                "message": message,
            }),
            CliError::Math(velu_dual::Error::Parse { at, message }) => json!({
                "error": "ParseError",
                "at": at,
                "message": message,
            }),
            CliError::Math(e) => {
                let mut message = e.to_string();
                if matches!(
                    e,
                    velu_dual::Error::FieldTooLarge { .. }
                        | velu_dual::Error::SubgroupTooLarge { .. }
                ) {
                    message.push_str("; velu-dual is a desk-scale tool");
                }
                json!({ "error": e.kind(), "message": message })
            }
        }
    }
}

impl From<velu_dual::Error> for CliError {
    fn from(e: velu_dual::Error) -> Self {
        CliError::Math(e)
    }
}

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    let result = commands::run(&args).and_then(|output| {
        let text = output.text;
        match &args.out {
            Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Usage {
                at: path.display().to_string(),
                message: e.to_string(),
            })?,
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        output.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
