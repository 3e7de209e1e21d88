//! Random terms for sampling-based tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::term::{numeral, Constructor, SignatureId, Term};

/// Generates terms over one signature with at most `max_size` nodes.
#[derive(Debug, Clone)]
pub struct TermGen {
    pub sig: SignatureId,
    pub vars: Vec<String>,
    pub max_size: usize,
}

impl TermGen {
    pub fn new(sig: SignatureId, vars: &[&str], max_size: usize) -> TermGen {
        assert!(max_size >= 1);
        TermGen {
            sig,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            max_size,
        }
    }

    pub fn closed(sig: SignatureId, max_size: usize) -> TermGen {
        TermGen::new(sig, &[], max_size)
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        let budget = rng.gen_range(1..=self.max_size);
        self.grow(rng, budget)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R, budget: usize) -> Term {
        let mut choices = vec![0u8, 0];
        if self.sig.has_zero() {
            choices.push(1);
        }
        if !self.vars.is_empty() {
            choices.extend([2, 2, 2]);
        }
        if budget >= 3 {
            choices.push(3);
        }
        match *choices.choose(rng).unwrap() {
            0 => Term::One,
            1 => Term::Zero,
            2 => Term::Var(self.vars.choose(rng).unwrap().clone()),
            _ => {
                // numeral n has 2n - 1 nodes
                let max_n = budget.div_ceil(2).min(5) as u64;
                numeral(rng.gen_range(2..=max_n), self.sig).unwrap()
            }
        }
    }

    fn grow<R: Rng + ?Sized>(&self, rng: &mut R, budget: usize) -> Term {
        if budget <= 1 || rng.gen_ratio(1, 5) {
            return self.leaf(rng, budget);
        }
        let mut ops = vec![Constructor::Add, Constructor::Mul];
        for c in [Constructor::Inv, Constructor::Neg, Constructor::Div] {
            if self.sig.permits(c) {
                ops.push(c);
            }
        }
        let op = *ops.choose(rng).unwrap();
        let unary = matches!(op, Constructor::Inv | Constructor::Neg);
        if unary {
            let arg = self.grow(rng, budget - 1);
            return match op {
                Constructor::Inv => Term::inv(arg),
                _ => Term::neg(arg),
            };
        }
        if budget < 3 {
            return self.leaf(rng, budget);
        }
        let left = rng.gen_range(1..=budget - 2);
        let a = self.grow(rng, left);
        let b = self.grow(rng, budget - 1 - left);
        match op {
            Constructor::Add => Term::add(a, b),
            Constructor::Mul => Term::mul(a, b),
            _ => Term::div(a, b),
        }
    }
}
