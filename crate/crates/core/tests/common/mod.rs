#![allow(dead_code)]

use meadow::term::{Constructor, SignatureId, Term};
use proptest::prelude::*;
use proptest::strategy::Union;

/// Terms over `sig` using the given variables.
pub fn term(sig: SignatureId, vars: &'static [&'static str]) -> BoxedStrategy<Term> {
    term_with(sig, vars, Constructor::ALL.to_vec())
}

/// Terms over `sig` that avoid inverse and division.
pub fn polynomial(sig: SignatureId, vars: &'static [&'static str]) -> BoxedStrategy<Term> {
    term_with(sig, vars, vec![Constructor::Add, Constructor::Mul])
}

fn term_with(
    sig: SignatureId,
    vars: &'static [&'static str],
    ops: Vec<Constructor>,
) -> BoxedStrategy<Term> {
    let mut leaves = vec![Just(Term::One).boxed()];
    if sig.has_zero() {
        leaves.push(Just(Term::Zero).boxed());
    }
    if !vars.is_empty() {
        leaves.push(prop::sample::select(vars).prop_map(Term::var).boxed());
    }
    let ops: Vec<Constructor> = ops.into_iter().filter(|c| sig.permits(*c)).collect();
    Union::new(leaves)
        .prop_recursive(5, 28, 2, move |inner| {
            let mut branches = Vec::new();
            for &c in &ops {
                let s = match c {
                    Constructor::Add => (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Term::add(a, b))
                        .boxed(),
                    Constructor::Mul => (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Term::mul(a, b))
                        .boxed(),
                    Constructor::Div => (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Term::div(a, b))
                        .boxed(),
                    Constructor::Inv => inner.clone().prop_map(Term::inv).boxed(),
                    Constructor::Neg => inner.clone().prop_map(Term::neg).boxed(),
                    _ => continue,
                };
                branches.push(s);
            }
            Union::new(branches)
        })
        .boxed()
}

pub fn signature() -> impl Strategy<Value = SignatureId> {
    prop::sample::select(SignatureId::ALL.to_vec())
}

pub fn any_term() -> BoxedStrategy<Term> {
    signature()
        .prop_flat_map(|sig| term(sig, &["x", "y", "z"]))
        .boxed()
}
