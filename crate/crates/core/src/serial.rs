//! JSON encoding of terms.
//!
//! Every node is an object with an `op` tag: `zero`, `one`, `var` (with a
//! `name`), `neg`, `inv` (one-element `args`), or `add`, `mul`, `div`
//! (two-element `args`).
//!
//! ```json
//! {"op":"mul","args":[{"op":"var","name":"x"},{"op":"inv","args":[{"op":"var","name":"x"}]}]}
//! ```

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::term::{is_identifier, Term};

pub fn to_json(t: &Term) -> Value {
    let node = |op: &str, args: Vec<&Term>| json!({ "op": op, "args": args.into_iter().map(to_json).collect::<Vec<_>>() });
    match t {
        Term::Zero => json!({ "op": "zero" }),
        Term::One => json!({ "op": "one" }),
        Term::Var(x) => json!({ "op": "var", "name": x }),
        Term::Add(a, b) => node("add", vec![a, b]),
        Term::Mul(a, b) => node("mul", vec![a, b]),
        Term::Div(a, b) => node("div", vec![a, b]),
        Term::Neg(a) => node("neg", vec![a]),
        Term::Inv(a) => node("inv", vec![a]),
    }
}

pub fn from_json(v: &Value) -> Result<Term> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema(format!("expected an object, found {v}")))?;
    let op = obj
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("missing string field `op`".into()))?;
    let args = |n: usize| -> Result<Vec<Term>> {
        let args = obj
            .get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema(format!("`{op}` needs an `args` array")))?;
        if args.len() != n {
            return Err(Error::Schema(format!(
                "`{op}` takes {n} argument(s), found {}",
                args.len()
            )));
        }
        args.iter().map(from_json).collect()
    };
    let allowed: &[&str] = match op {
        "zero" | "one" => &["op"],
        "var" => &["op", "name"],
        _ => &["op", "args"],
    };
    reject_extra_fields(obj, allowed)?;
    Ok(match op {
        "zero" => Term::Zero,
        "one" => Term::One,
        "var" => {
            let name = obj
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Schema("`var` needs a string `name`".into()))?;
            if !is_identifier(name) {
                return Err(Error::Schema(format!("bad variable name `{name}`")));
            }
            Term::Var(name.to_string())
        }
        "add" | "mul" | "div" => {
            let mut ab = args(2)?.into_iter();
            let (a, b) = (ab.next().unwrap(), ab.next().unwrap());
            match op {
                "add" => Term::add(a, b),
                "mul" => Term::mul(a, b),
                _ => Term::div(a, b),
            }
        }
        "neg" | "inv" => {
            let a = args(1)?.pop().unwrap();
            if op == "neg" {
                Term::neg(a)
            } else {
                Term::inv(a)
            }
        }
        other => return Err(Error::Schema(format!("unknown op `{other}`"))),
    })
}

fn reject_extra_fields(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Schema(format!("unexpected field `{k}`"))),
        None => Ok(()),
    }
}

pub fn serialize(t: &Term) -> String {
    to_json(t).to_string()
}

pub fn deserialize(text: &str) -> Result<Term> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    from_json(&v)
}
