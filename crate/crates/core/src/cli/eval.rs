//! Flat call syntax: `name(arg, ...; key=value, ...)` with rational or
//! decimal literals.

use std::fmt;

use thiserror::Error;

use crate::awfamilies::{asc_eval, bpoly_eval, qhermite_density, qhermite_eval, rogers_density, rogers_eval, AscParams};
use crate::error::MathError;
use crate::jacobi::{chebyshev_t, chebyshev_u, conn_coeff, gegenbauer, jacobi_eval, legendre, JacobiParams};
use crate::numerics::{to_real, BigReal, ExactRational, PrecisionContext};
use crate::pochhammer::{binomial_rat, factorial_rat, falling, rising};
use crate::qkernel::{q_binomial, q_factorial, q_number, q_poch, q_poch_inf_at};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// 1-based character offset.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("{0}")]
    Arguments(String),
    #[error("evaluation failed: {0}")]
    Math(#[from] MathError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub name: String,
    pub positional: Vec<ExactRational>,
    pub named: Vec<(String, ExactRational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(ExactRational),
    Real(BigReal),
}

impl Value {
    /// Exact rationals as `p/q`, reals in scientific notation with as many
    /// digits as the precision carries.
    pub fn render(&self, ctx: &PrecisionContext) -> String {
        match self {
            Value::Exact(r) => r.to_string(),
            Value::Real(v) => v.to_sci((ctx.precision_bits() as f64 * std::f64::consts::LOG10_2).floor() as usize),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> = self.positional.iter().map(|r| r.to_string()).collect();
        write!(f, "{}({}", self.name, pos.join(", "))?;
        if !self.named.is_empty() {
            let named: Vec<String> = self.named.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "; {}", named.join(", "))?;
        }
        f.write_str(")")
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn error(&self, message: impl Into<String>) -> EvalError {
        EvalError::Parse { offset: self.pos + 1, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), EvalError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&keep) {
            self.pos += 1;
        }
        let begin = self.chars.get(start).map_or(self.src.len(), |&(i, _)| i);
        let end = self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i);
        &self.src[begin..end]
    }

    fn ident(&mut self) -> Result<String, EvalError> {
        self.skip_ws();
        let s = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.error("expected a name"));
        }
        Ok(s.to_string())
    }

    fn literal(&mut self) -> Result<ExactRational, EvalError> {
        self.skip_ws();
        let start = self.pos;
        let text = self.take_while(|c| c.is_ascii_digit() || matches!(c, '.' | '/' | '-' | '+' | 'e' | 'E'));
        if text.is_empty() {
            return Err(self.error(match self.peek() {
                Some(c) => format!("expected a number, found `{c}`"),
                None => "expected a number, found end of input".to_string(),
            }));
        }
        ExactRational::parse_literal(text).map_err(|e| EvalError::Parse { offset: start + 1, message: e.to_string() })
    }
}

/// Parses one call.
pub fn parse_call(src: &str) -> Result<Call, EvalError> {
    let mut cur = Cursor::new(src);
    let name = cur.ident()?;
    cur.expect('(')?;
    let mut positional = Vec::new();
    let mut named = Vec::new();
    cur.skip_ws();
    let mut in_named = false;
    if cur.peek() != Some(')') {
        loop {
            cur.skip_ws();
            if in_named {
                let key = cur.ident()?;
                cur.expect('=')?;
                named.push((key, cur.literal()?));
            } else {
                positional.push(cur.literal()?);
            }
            cur.skip_ws();
            match cur.peek() {
                Some(',') => cur.pos += 1,
                Some(';') if !in_named => {
                    cur.pos += 1;
                    in_named = true;
                }
                Some(')') => break,
                Some(c) => return Err(cur.error(format!("unexpected `{c}`"))),
                None => return Err(cur.error("expected `)`, found end of input")),
            }
        }
    }
    cur.expect(')')?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("trailing `{c}`")));
    }
    Ok(Call { name, positional, named })
}

struct Args<'a> {
    call: &'a Call,
}

impl Args<'_> {
    fn arity(&self, pos: usize, keys: &[&str]) -> Result<(), EvalError> {
        if self.call.positional.len() != pos {
            return Err(EvalError::Arguments(format!(
                "{} takes {pos} positional argument(s), got {}",
                self.call.name,
                self.call.positional.len()
            )));
        }
        for (k, _) in &self.call.named {
            if !keys.contains(&k.as_str()) {
                return Err(EvalError::Arguments(format!("{} has no argument `{k}`", self.call.name)));
            }
        }
        for k in keys {
            if !self.call.named.iter().any(|(n, _)| n == k) {
                return Err(EvalError::Arguments(format!("{} needs `{k}=`", self.call.name)));
            }
        }
        Ok(())
    }

    fn at(&self, i: usize) -> ExactRational {
        self.call.positional[i].clone()
    }

    fn key(&self, k: &str) -> ExactRational {
        self.call.named.iter().rev().find(|(n, _)| n == k).map(|(_, v)| v.clone()).expect("arity checked")
    }

    fn count(&self, i: usize) -> Result<usize, EvalError> {
        let v = &self.call.positional[i];
        v.to_i64()
            .filter(|n| *n >= 0 && v.is_integer())
            .map(|n| n as usize)
            .ok_or_else(|| EvalError::Arguments(format!("argument {} of {} must be a nonnegative integer", i + 1, self.call.name)))
    }

    fn integer(&self, i: usize) -> Result<i64, EvalError> {
        let v = &self.call.positional[i];
        v.to_i64()
            .filter(|_| v.is_integer())
            .ok_or_else(|| EvalError::Arguments(format!("argument {} of {} must be an integer", i + 1, self.call.name)))
    }
}

/// Names accepted by [`evaluate`] with their signatures.
pub const FUNCTIONS: &[&str] = &[
    "rising(x, n)",
    "falling(x, n)",
    "factorial(n)",
    "binomial(n, k)",
    "qnumber(n, q)",
    "qfactorial(n, q)",
    "qpoch(a, q, n)",
    "qbinom(n, k, q)",
    "qpoch_inf(a, q)",
    "jacobi(n, x; a=, b=)",
    "conn(n, j; a=, b=, c=, d=)",
    "chebyshev_t(n, x)",
    "chebyshev_u(n, x)",
    "legendre(n, x)",
    "gegenbauer(n, x; lambda=)",
    "qhermite(n, x, q)",
    "bpoly(n, x, q)",
    "rogers(n, x; beta=, q=)",
    "asc(n, x; y=, rho=, q=)",
    "qhermite_density(x; q=)",
    "rogers_density(x; beta=, q=)",
];

pub fn evaluate(call: &Call, ctx: &PrecisionContext) -> Result<Value, EvalError> {
    let a = Args { call };
    let exact = |v: ExactRational| Ok(Value::Exact(v));
    let real = |v: &ExactRational| to_real(v, ctx);
    match call.name.as_str() {
        "rising" => {
            a.arity(2, &[])?;
            exact(rising(&a.at(0), a.count(1)?))
        }
        "falling" => {
            a.arity(2, &[])?;
            exact(falling(&a.at(0), a.count(1)?))
        }
        "factorial" => {
            a.arity(1, &[])?;
            exact(factorial_rat(a.count(0)?))
        }
        "binomial" => {
            a.arity(2, &[])?;
            exact(binomial_rat(a.count(0)?, a.integer(1)?))
        }
        "qnumber" => {
            a.arity(2, &[])?;
            exact(q_number(a.count(0)?, &a.at(1)))
        }
        "qfactorial" => {
            a.arity(2, &[])?;
            exact(q_factorial(a.count(0)?, &a.at(1)))
        }
        "qpoch" => {
            a.arity(3, &[])?;
            exact(q_poch(&a.at(0), &a.at(1), a.count(2)?))
        }
        "qbinom" => {
            a.arity(3, &[])?;
            exact(q_binomial(a.count(0)?, a.integer(1)?, &a.at(2)))
        }
        "qpoch_inf" => {
            a.arity(2, &[])?;
            Ok(Value::Real(q_poch_inf_at(&real(&a.at(0)), &real(&a.at(1)), ctx)?))
        }
        "jacobi" => {
            a.arity(2, &["a", "b"])?;
            exact(jacobi_eval(a.count(0)?, &a.at(1), &JacobiParams::new(a.key("a"), a.key("b"))))
        }
        "conn" => {
            a.arity(2, &["a", "b", "c", "d"])?;
            let (n, j) = (a.count(0)?, a.count(1)?);
            if j > n {
                return Err(EvalError::Arguments("conn needs j <= n".into()));
            }
            let src = JacobiParams::new(a.key("a"), a.key("b"));
            let tgt = JacobiParams::new(a.key("c"), a.key("d"));
            exact(conn_coeff(n, j, &src, &tgt)?)
        }
        "chebyshev_t" => {
            a.arity(2, &[])?;
            exact(chebyshev_t(a.count(0)?, &a.at(1)))
        }
        "chebyshev_u" => {
            a.arity(2, &[])?;
            exact(chebyshev_u(a.count(0)?, &a.at(1)))
        }
        "legendre" => {
            a.arity(2, &[])?;
            exact(legendre(a.count(0)?, &a.at(1)))
        }
        "gegenbauer" => {
            a.arity(2, &["lambda"])?;
            exact(gegenbauer(a.count(0)?, &a.at(1), &a.key("lambda")))
        }
        "qhermite" => {
            a.arity(3, &[])?;
            exact(qhermite_eval(a.count(0)?, &a.at(1), &a.at(2)))
        }
        "bpoly" => {
            a.arity(3, &[])?;
            exact(bpoly_eval(a.count(0)?, &a.at(1), &a.at(2)))
        }
        "rogers" => {
            a.arity(2, &["beta", "q"])?;
            exact(rogers_eval(a.count(0)?, &a.at(1), &a.key("beta"), &a.key("q"))?)
        }
        "asc" => {
            a.arity(2, &["y", "rho", "q"])?;
            exact(asc_eval(a.count(0)?, &a.at(1), &AscParams::new(a.key("y"), a.key("rho"), a.key("q"))))
        }
        "qhermite_density" => {
            a.arity(1, &["q"])?;
            let q = real(&a.key("q"));
            if q.abs() >= ctx.one() {
                return Err(MathError::DivergentDomain.into());
            }
            Ok(Value::Real(qhermite_density(&real(&a.at(0)), &q, ctx)?))
        }
        "rogers_density" => {
            a.arity(1, &["beta", "q"])?;
            let (beta, q) = (real(&a.key("beta")), real(&a.key("q")));
            if q.abs() >= ctx.one() || beta.abs() >= ctx.one() {
                return Err(MathError::DivergentDomain.into());
            }
            Ok(Value::Real(rogers_density(&real(&a.at(0)), &beta, &q, ctx)?))
        }
        other => Err(EvalError::UnknownFunction(other.to_string())),
    }
}
