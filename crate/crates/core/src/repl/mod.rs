//! Calculator session: commands, variables and the ambient signature.

mod eval;
mod parser;

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

pub use eval::{EvalError, Value};
pub use parser::{parse_expr, parse_statement, BinOp, Expr, Statement, SyntaxError};

use crate::metric::{Count, ParseCountError, Signature};
use crate::multivector::Multivector;
use crate::textio::{self, PrintOptions, TextError};

/// Names that cannot be bound.
pub const RESERVED: [&str; 5] = ["e", "rand", "grades", "grade", "scalar"];

const HELP: &str = "\
commands:
  :signature p [q]    set the metric (q defaults to 0; later generators are null)
  :signature inf      positive-definite metric
  :basissep [sep]     separator printed between blade indices
  :load path [name]   bind a .mv file (default name: file stem)
  :save name path     write a variable as a .mv file
  :quit
expressions:
  + - * ^ _| |_ **, e(i), e_12, e[1,10], grade(A, r), grades(A), scalar(c),
  rand(d, g, fewer, seed); `name = expr` binds without printing";

#[derive(Debug, Error)]
pub enum ReplError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Count(#[from] ParseCountError),
    #[error("unknown command `:{0}`")]
    UnknownCommand(String),
    #[error("usage: {0}")]
    Usage(&'static str),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

/// What a line produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Silent,
    Print(String),
    Quit,
}

#[derive(Debug, Clone, Default)]
pub struct Session {
    pub signature: Signature,
    pub print_options: PrintOptions,
    variables: HashMap<String, Multivector>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    let blade_like = name
        .strip_prefix("e_")
        .is_some_and(|r| r.starts_with(|c: char| c.is_ascii_digit()));
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.ends_with('_')
        && !blade_like
        && !RESERVED.contains(&name)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn variable(&self, name: &str) -> Option<&Multivector> {
        self.variables.get(name)
    }

    pub fn bind(&mut self, name: &str, value: Multivector) -> Result<(), ReplError> {
        if !is_valid_name(name) {
            return Err(ReplError::InvalidName(name.to_string()));
        }
        self.variables.insert(name.to_string(), value);
        Ok(())
    }

    pub fn render(&self, m: &Multivector) -> String {
        textio::render(m, &self.print_options)
    }

    /// Evaluates an expression under the session's signature and variables.
    pub fn eval_expr(&self, expr: &Expr) -> Result<Value, EvalError> {
        eval::Env {
            signature: &self.signature,
            variables: &self.variables,
        }
        .eval(expr)
    }

    /// Runs one line. On error the session is left as it was.
    pub fn run_command(&mut self, line: &str) -> Result<Outcome, ReplError> {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            return Ok(Outcome::Silent);
        }
        if let Some(cmd) = line.strip_prefix(':') {
            return self.command(cmd);
        }
        match parse_statement(line)? {
            Statement::Assign(name, expr) => {
                if !is_valid_name(&name) {
                    return Err(ReplError::InvalidName(name));
                }
                match self.eval_expr(&expr)? {
                    Value::Multivector(m) => self.bind(&name, m)?,
                    Value::Grades(_) => {
                        return Err(EvalError::NotMultivector(expr.to_string()).into())
                    }
                }
                Ok(Outcome::Silent)
            }
            Statement::Expr(expr) => Ok(Outcome::Print(match self.eval_expr(&expr)? {
                Value::Multivector(m) => self.render(&m),
                grades => grades.to_string(),
            })),
        }
    }

    fn command(&mut self, cmd: &str) -> Result<Outcome, ReplError> {
        let mut words = cmd.split_whitespace();
        let name = words.next().unwrap_or("");
        let args: Vec<&str> = words.collect();
        match name {
            "signature" => {
                self.signature = match args.as_slice() {
                    [] => return Ok(Outcome::Print(self.signature.to_string())),
                    [p] => Signature::positive(p.parse::<Count>()?),
                    [p, q] => Signature::new(p.parse::<Count>()?, q.parse::<Count>()?),
                    _ => return Err(ReplError::Usage(":signature p [q] | :signature inf")),
                };
                Ok(Outcome::Silent)
            }
            "basissep" => {
                match args.as_slice() {
                    [] => self.print_options.set_basis_sep("")?,
                    [sep] => self.print_options.set_basis_sep(sep)?,
                    _ => return Err(ReplError::Usage(":basissep [separator]")),
                }
                Ok(Outcome::Silent)
            }
            "load" => {
                let (path, name) = match args.as_slice() {
                    [path] => {
                        let stem = Path::new(path)
                            .file_stem()
                            .and_then(|s| s.to_str())
                            .unwrap_or("");
                        (*path, stem)
                    }
                    [path, name] => (*path, *name),
                    _ => return Err(ReplError::Usage(":load path [name]")),
                };
                if !is_valid_name(name) {
                    return Err(ReplError::InvalidName(name.to_string()));
                }
                let m = textio::load(path)?;
                self.bind(name, m)?;
                Ok(Outcome::Silent)
            }
            "save" => {
                let [name, path] = args.as_slice() else {
                    return Err(ReplError::Usage(":save name path"));
                };
                let m = self
                    .variables
                    .get(*name)
                    .ok_or_else(|| EvalError::Unbound(name.to_string()))?;
                textio::save(m, path)?;
                Ok(Outcome::Silent)
            }
            "quit" | "q" => Ok(Outcome::Quit),
            "help" => Ok(Outcome::Print(HELP.to_string())),
            other => Err(ReplError::UnknownCommand(other.to_string())),
        }
    }

    /// Runs a script line by line, writing printed results to `out`. Stops at
    /// the first error, reporting its 1-based line number, or at `:quit`.
    pub fn run_script<W: Write>(&mut self, script: &str, mut out: W) -> Result<(), ScriptError> {
        for (n, line) in script.lines().enumerate() {
            match self.run_command(line) {
                Ok(Outcome::Silent) => {}
                Ok(Outcome::Print(text)) => {
                    writeln!(out, "{text}").map_err(|e| ScriptError {
                        line: n + 1,
                        source: ReplError::Text(e.into()),
                    })?;
                }
                Ok(Outcome::Quit) => break,
                Err(source) => {
                    return Err(ScriptError {
                        line: n + 1,
                        source,
                    })
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
#[error("line {line}: {source}")]
pub struct ScriptError {
    pub line: usize,
    #[source]
    pub source: ReplError,
}
