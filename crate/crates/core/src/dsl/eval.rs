use std::collections::{HashMap, HashSet};

use super::ast::{IntervalLit, SetExpr};
use super::parser::{is_reserved, parse};
use super::ParseError;
use crate::boxset::{BoxComplex, Cell, Interval};
use crate::{Error, Result, Scalar};

fn literal<T: Scalar>(iv: &IntervalLit) -> Result<Interval<T>> {
    match *iv {
        IntervalLit::Point(a) => Interval::point(T::of(a)),
        IntervalLit::Range {
            lo,
            hi,
            lo_closed,
            hi_closed,
        } => Interval::new(T::of(lo), T::of(hi), lo_closed, hi_closed),
    }
}

fn same_dim<T: Scalar>(a: &BoxComplex<T>, b: &BoxComplex<T>) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(())
}

/// Evaluates `e`, looking names up in `env`.
pub fn evaluate<T: Scalar>(
    e: &SetExpr,
    env: &HashMap<String, BoxComplex<T>>,
) -> Result<BoxComplex<T>> {
    let binary = |a: &SetExpr, b: &SetExpr| -> Result<(BoxComplex<T>, BoxComplex<T>)> {
        let (a, b) = (evaluate(a, env)?, evaluate(b, env)?);
        same_dim(&a, &b)?;
        Ok((a, b))
    };
    match e {
        SetExpr::Box(ivs) => {
            let factors = ivs.iter().map(literal).collect::<Result<Vec<_>>>()?;
            Ok(BoxComplex::from_cell(Cell::new(factors)))
        }
        SetExpr::Union(a, b) => {
            let (a, b) = binary(a, b)?;
            a.union(&b)
        }
        SetExpr::Intersect(a, b) => {
            let (a, b) = binary(a, b)?;
            a.intersect(&b)
        }
        SetExpr::Difference(a, b) => {
            let (a, b) = binary(a, b)?;
            a.difference(&b)
        }
        SetExpr::Complement(a) => Ok(evaluate(a, env)?.complement()),
        SetExpr::Product(a, b) => Ok(evaluate(a, env)?.cartesian_product(&evaluate(b, env)?)),
        SetExpr::Translate(a, v) => {
            let v: Vec<T> = v.iter().map(|x| T::of(*x)).collect();
            evaluate(a, env)?.translate(&v)
        }
        SetExpr::Scale(a, beta) => evaluate(a, env)?.scale(T::of(*beta)),
        SetExpr::Permute(a, p) => evaluate(a, env)?.axis_permute(p),
        SetExpr::Reflect(a, axis) => evaluate(a, env)?.reflect(*axis),
        SetExpr::Name(n) => env
            .get(n)
            .cloned()
            .ok_or_else(|| Error::UnknownName(n.clone())),
    }
}

fn names(e: &SetExpr, out: &mut Vec<String>) {
    match e {
        SetExpr::Box(_) => {}
        SetExpr::Union(a, b)
        | SetExpr::Intersect(a, b)
        | SetExpr::Difference(a, b)
        | SetExpr::Product(a, b) => {
            names(a, out);
            names(b, out);
        }
        SetExpr::Complement(a)
        | SetExpr::Translate(a, _)
        | SetExpr::Scale(a, _)
        | SetExpr::Permute(a, _)
        | SetExpr::Reflect(a, _) => names(a, out),
        SetExpr::Name(n) => out.push(n.clone()),
    }
}

/// A definitions file: one `name = expr` per line, `#` starts a comment.
/// Names may refer to each other in any order as long as there is no cycle.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Definitions {
    entries: Vec<(String, SetExpr)>,
}

impl Definitions {
    /// Parse errors carry offsets into `src`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut entries: Vec<(String, SetExpr)> = Vec::new();
        let mut base = 0;
        for raw in src.split_inclusive('\n') {
            let start = base;
            base += raw.len();
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                let at = start + line.trim_end().len();
                return Err(ParseError::new(src, at, vec!["\"=\"".into()], "end of line").into());
            };
            let lhs = &line[..eq];
            let name = lhs.trim();
            let name_at = start + lhs.len() - lhs.trim_start().len();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !is_reserved(name);
            if !valid {
                return Err(ParseError::new(src, name_at, vec!["IDENT".into()], name).into());
            }
            if entries.iter().any(|(n, _)| n == name) {
                return Err(Error::DuplicateDefinition(name.to_string()));
            }
            let body = &line[eq + 1..];
            let expr = parse(body).map_err(|e| e.shifted(src, start + eq + 1))?;
            entries.push((name.to_string(), expr));
        }
        Ok(Definitions { entries })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&SetExpr> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// Evaluates every definition.
    pub fn resolve<T: Scalar>(&self) -> Result<HashMap<String, BoxComplex<T>>> {
        let mut env = HashMap::new();
        let mut active = HashSet::new();
        for (name, _) in &self.entries {
            self.visit(name, &mut env, &mut active)?;
        }
        Ok(env)
    }

    fn visit<T: Scalar>(
        &self,
        name: &str,
        env: &mut HashMap<String, BoxComplex<T>>,
        active: &mut HashSet<String>,
    ) -> Result<()> {
        if env.contains_key(name) {
            return Ok(());
        }
        let expr = self
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if !active.insert(name.to_string()) {
            return Err(Error::CyclicDefinition(name.to_string()));
        }
        let mut deps = Vec::new();
        names(expr, &mut deps);
        for d in deps {
            self.visit(&d, env, active)?;
        }
        active.remove(name);
        let value = evaluate(expr, env)?;
        env.insert(name.to_string(), value);
        Ok(())
    }
}
