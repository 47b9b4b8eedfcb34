use std::io::Write;

use serde_json::{json, Value};

use hhc::Error;

/// Anything that ends a run with a nonzero exit code.
#[derive(Debug)]
pub enum Failure {
    /// An error raised by the library.
    Lib(Error),
    /// An invalid command-line configuration.
    Config(String),
    /// A check ran to completion and failed.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    /// 1 for failed numerical or identity checks, 2 for violated
    /// preconditions and malformed input, 3 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Config(_) => 2,
            Failure::Lib(e) => match e {
                Error::Io(_) => 3,
                Error::Numeric(_) | Error::Cancellation(_) => 1,
                Error::Domain(_)
                | Error::Precondition(_)
                | Error::Truncation { .. }
                | Error::Parse { .. }
                | Error::InsufficientCoefficients { .. } => 2,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Check(_) => "check",
            Failure::Config(_) => "config",
            Failure::Lib(e) => match e {
                Error::Domain(_) => "domain",
                Error::Precondition(_) => "precondition",
                Error::Truncation { .. } => "truncation",
                Error::Parse { .. } => "parse",
                Error::Io(_) => "io",
                Error::Numeric(_) => "numeric",
                Error::InsufficientCoefficients { .. } => "insufficient-coefficients",
                Error::Cancellation(_) => "cancellation",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Config(m) | Failure::Check(m) => m.clone(),
        }
    }
}

/// Prints a report envelope to stdout.
pub fn emit(command: &str, parameters: Value, result: Value) {
    let v = json!({
        "command": command,
        "status": "ok",
        "parameters": parameters,
        "result": result,
    });
    print_json(&v);
}

/// Prints a report envelope for a completed check that failed.
pub fn emit_failed(command: &str, parameters: Value, result: Value) {
    let v = json!({
        "command": command,
        "status": "failed",
        "parameters": parameters,
        "result": result,
    });
    print_json(&v);
}

/// Prints the error envelope to stdout and the message to stderr.
pub fn emit_error(command: &str, f: &Failure) {
    let v = json!({
        "command": command,
        "status": "error",
        "error": {
            "kind": f.kind(),
            "message": f.message(),
            "exit_code": f.exit_code(),
        },
    });
    print_json(&v);
    eprintln!("hhc {command}: {}", f.message());
}

/// Writes to stdout, ignoring a closed pipe.
pub fn out(text: &str) {
    let mut h = std::io::stdout().lock();
    let _ = h.write_all(text.as_bytes()).and_then(|_| h.flush());
}

fn print_json(v: &Value) {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    text.push('\n');
    out(&text);
}
