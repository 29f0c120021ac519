use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::parser::{BinOp, Expr};
use crate::metric::Signature;
use crate::multivector::{Multivector, MultivectorError};
use crate::products::{geometric_product, left_contraction, power, right_contraction, wedge};
use crate::random::{random_multivector, RandomSpec, RandomSpecError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{what} must be a non-negative integer, got {value}")]
    NotInteger { what: String, value: String },
    #[error("{0} is a grade list, not a multivector")]
    NotMultivector(String),
    #[error(transparent)]
    Random(#[from] RandomSpecError),
    #[error(transparent)]
    Multivector(#[from] MultivectorError),
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Multivector(Multivector),
    Grades(Vec<usize>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Multivector(m) => write!(f, "{m:?}"),
            Value::Grades(g) => {
                f.write_str("[")?;
                for (i, x) in g.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

pub(crate) struct Env<'a> {
    pub signature: &'a Signature,
    pub variables: &'a HashMap<String, Multivector>,
}

fn multivector(v: Value, what: &Expr) -> Result<Multivector, EvalError> {
    match v {
        Value::Multivector(m) => Ok(m),
        Value::Grades(_) => Err(EvalError::NotMultivector(what.to_string())),
    }
}

fn integer(m: &Multivector, what: &str, max: f64) -> Result<u64, EvalError> {
    let c = m.scalar_part();
    if m.is_scalar() && c.fract() == 0.0 && (0.0..=max).contains(&c) {
        Ok(c as u64)
    } else {
        let value = if m.is_scalar() {
            c.to_string()
        } else {
            "a non-scalar multivector".to_string()
        };
        Err(EvalError::NotInteger {
            what: what.to_string(),
            value,
        })
    }
}

fn flag(m: &Multivector, what: &str) -> Result<bool, EvalError> {
    if m.is_scalar() {
        Ok(m.scalar_part() != 0.0)
    } else {
        Err(EvalError::NotInteger {
            what: what.to_string(),
            value: "a non-scalar multivector".into(),
        })
    }
}

const MAX_EXACT: f64 = 9_007_199_254_740_992.0;

impl Env<'_> {
    fn mv(&self, e: &Expr) -> Result<Multivector, EvalError> {
        multivector(self.eval(e)?, e)
    }

    pub(crate) fn eval(&self, expr: &Expr) -> Result<Value, EvalError> {
        let sig = self.signature;
        let m = match expr {
            Expr::Number(x) => Multivector::from_scalar(*x),
            Expr::Blade(m) => m.clone(),
            Expr::Var(name) => self
                .variables
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::Unbound(name.clone()))?,
            Expr::Neg(e) => self.mv(e)?.negate(),
            Expr::Binary(op, l, r) => {
                let (a, b) = (self.mv(l)?, self.mv(r)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Geometric => geometric_product(&a, &b, sig),
                    BinOp::Wedge => wedge(&a, &b),
                    BinOp::LeftContract => left_contraction(&a, &b, sig),
                    BinOp::RightContract => right_contraction(&a, &b, sig),
                }
            }
            Expr::Power(base, k) => {
                if k.fract() != 0.0 || *k < 0.0 || *k > f64::from(u32::MAX) {
                    return Err(EvalError::NotInteger {
                        what: "exponent".into(),
                        value: k.to_string(),
                    });
                }
                power(&self.mv(base)?, *k as u32, sig)
            }
            Expr::Call(name, args) => return self.call(name, args),
        };
        Ok(Value::Multivector(m))
    }

    fn call(&self, name: &str, args: &[Expr]) -> Result<Value, EvalError> {
        let arity = |expected: usize| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(EvalError::Arity {
                    name: name.to_string(),
                    expected,
                    found: args.len(),
                })
            }
        };
        let m = match name {
            "e" => {
                arity(1)?;
                let i = integer(&self.mv(&args[0])?, "generator index", f64::from(u32::MAX))?;
                Multivector::basis(i as u32)?
            }
            "grade" => {
                arity(2)?;
                let a = self.mv(&args[0])?;
                let r = integer(&self.mv(&args[1])?, "grade", MAX_EXACT)?;
                a.grade_part(r as usize)
            }
            "grades" => {
                arity(1)?;
                return Ok(Value::Grades(self.mv(&args[0])?.grades()));
            }
            "scalar" => {
                arity(1)?;
                let c = self.mv(&args[0])?;
                if !c.is_scalar() {
                    return Err(EvalError::NotInteger {
                        what: "scalar()".into(),
                        value: "a non-scalar multivector".into(),
                    });
                }
                c
            }
            "rand" => {
                arity(4)?;
                let d = integer(&self.mv(&args[0])?, "dimension", f64::from(u32::MAX))?;
                let g = integer(&self.mv(&args[1])?, "max grade", f64::from(u32::MAX))?;
                let fewer = flag(&self.mv(&args[2])?, "include-fewer flag")?;
                let seed = integer(&self.mv(&args[3])?, "seed", MAX_EXACT)?;
                random_multivector(&RandomSpec {
                    dimension: d as u32,
                    max_grade: g as u32,
                    include_fewer: fewer,
                    seed,
                    ..RandomSpec::default()
                })?
            }
            _ => return Err(EvalError::UnknownFunction(name.to_string())),
        };
        Ok(Value::Multivector(m))
    }
}
