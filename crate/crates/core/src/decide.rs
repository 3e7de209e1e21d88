//! Decision procedures for equations between arithmetical-meadow terms.
//!
//! [`Decider::decide_iamd`] decides derivability from the arithmetical meadow
//! axioms: both sides are split into `p * q^-1` and the cross products are
//! compared as positive polynomials.
//!
//! [`Decider::decide_iamdz_gil`] handles the signature with zero under the
//! general inverse law `x != 0 => x * x^-1 = 1`, recursing on the number of
//! variables: an equation holds iff it holds with every variable positive
//! (the zero-free procedure) and with each variable in turn set to zero.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::{eval_total, Assignment, Carrier, ExactRational};
use crate::normalize::{zero_elim, ClosedNormal, Normalizer, ZeroElim};
use crate::poly::PosPoly;
use crate::syntax::print;
use crate::term::{check_signature, free_vars, substitute, SignatureId, Term};
use crate::theory::TheoryId;
use crate::translate::div_to_inv;

/// A normal form shown as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    Poly(PosPoly),
    Closed(ClosedNormal),
    Value(ExactRational),
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Poly(p) => write!(f, "{p}"),
            NormalForm::Closed(c) => write!(f, "{c}"),
            NormalForm::Value(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubDecision {
    /// `positive` for the zero-free check, `x := 0` for a zero substitution.
    pub label: String,
    pub decision: Arc<Decision>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    MatchedNormals { lhs: NormalForm, rhs: NormalForm },
    Counterexample(Assignment),
    RecursionTrace(Vec<SubDecision>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: bool,
    pub evidence: Evidence,
}

impl Decision {
    fn matched(verdict: bool, lhs: NormalForm, rhs: NormalForm) -> Decision {
        Decision {
            verdict,
            evidence: Evidence::MatchedNormals { lhs, rhs },
        }
    }

    fn refuted(env: Assignment) -> Decision {
        Decision {
            verdict: false,
            evidence: Evidence::Counterexample(env),
        }
    }

    pub fn counterexample(&self) -> Option<&Assignment> {
        match &self.evidence {
            Evidence::Counterexample(env) => Some(env),
            _ => None,
        }
    }
}

/// Carries the normalization limits and the seed for counterexample search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Decider {
    pub normalizer: Normalizer,
    pub seed: u64,
}

fn vars_of(t: &Term, u: &Term) -> BTreeSet<String> {
    let mut vars = free_vars(t);
    vars.extend(free_vars(u));
    vars
}

fn fill_ones(env: &mut Assignment, vars: &BTreeSet<String>) {
    for x in vars {
        env.entry(x.clone()).or_insert_with(ExactRational::one);
    }
}

type Memo = HashMap<(String, String), Arc<Decision>>;

impl Decider {
    pub fn new(normalizer: Normalizer, seed: u64) -> Decider {
        Decider { normalizer, seed }
    }

    /// Decides `t = u` over the signature without zero by comparing the
    /// polynomial cross products `t1 * u2` and `u1 * t2`.
    pub fn decide_iamd(&self, t: &Term, u: &Term) -> Result<Decision> {
        check_signature(t, SignatureId::Iamd)?;
        check_signature(u, SignatureId::Iamd)?;
        let n = &self.normalizer;
        let limit = n.max_monomials;
        let (tf, uf) = (n.split_inverse(t)?, n.split_inverse(u)?);
        let lhs = tf.numerator.mul(&uf.denominator, limit)?;
        let rhs = uf.numerator.mul(&tf.denominator, limit)?;
        if lhs == rhs {
            return Ok(Decision::matched(
                true,
                NormalForm::Poly(lhs),
                NormalForm::Poly(rhs),
            ));
        }
        let vars = vars_of(t, u);
        if !vars.is_empty() {
            if let Some(env) = self.search(t, u, Carrier::PositiveRationals, Vec::new())? {
                return Ok(Decision::refuted(env));
            }
        }
        Ok(Decision::matched(
            false,
            NormalForm::Poly(lhs),
            NormalForm::Poly(rhs),
        ))
    }

    /// Decides `t = u` over the signature with zero, under the alternative
    /// specification plus the general inverse law.
    pub fn decide_iamdz_gil(&self, t: &Term, u: &Term) -> Result<Decision> {
        check_signature(t, SignatureId::Iamdz)?;
        check_signature(u, SignatureId::Iamdz)?;
        let mut memo = Memo::new();
        let decision = self.gil(t, u, &mut memo)?;
        let mut decision = Arc::unwrap_or_clone(decision);
        if let Evidence::Counterexample(env) = &decision.evidence {
            let carrier = Carrier::NonNegativeRationals;
            if eval_total(t, env, carrier)? == eval_total(u, env, carrier)? {
                // Should not happen; fall back to a direct search.
                if let Some(env) = self.search(t, u, carrier, Vec::new())? {
                    decision.evidence = Evidence::Counterexample(env);
                }
            }
        }
        Ok(decision)
    }

    fn gil(&self, t: &Term, u: &Term, memo: &mut Memo) -> Result<Arc<Decision>> {
        let key = (print(t), print(u));
        if let Some(hit) = memo.get(&key) {
            return Ok(Arc::clone(hit));
        }
        let decision = Arc::new(self.gil_uncached(t, u, memo)?);
        memo.insert(key, Arc::clone(&decision));
        Ok(decision)
    }

    fn gil_uncached(&self, t: &Term, u: &Term, memo: &mut Memo) -> Result<Decision> {
        let vars = vars_of(t, u);
        if vars.is_empty() {
            let lhs = self.normalizer.closed_normal_iamdz(t)?;
            let rhs = self.normalizer.closed_normal_iamdz(u)?;
            return Ok(Decision::matched(
                lhs == rhs,
                NormalForm::Closed(lhs),
                NormalForm::Closed(rhs),
            ));
        }
        let (s, s2) = match (zero_elim(t)?, zero_elim(u)?) {
            (ZeroElim::Zero, ZeroElim::Zero) => {
                return Ok(Decision::matched(
                    true,
                    NormalForm::Closed(ClosedNormal::Zero),
                    NormalForm::Closed(ClosedNormal::Zero),
                ));
            }
            // A zero-free term is positive wherever its variables are, so
            // the all-ones point separates it from zero.
            (ZeroElim::Zero, ZeroElim::Term(_)) | (ZeroElim::Term(_), ZeroElim::Zero) => {
                let mut env = Assignment::new();
                fill_ones(&mut env, &vars);
                return Ok(Decision::refuted(env));
            }
            (ZeroElim::Term(s), ZeroElim::Term(s2)) => (s, s2),
        };

        let live = vars_of(&s, &s2);
        if live.is_empty() {
            let sub = self.gil(&s, &s2, memo)?;
            return Ok(if sub.verdict {
                Arc::unwrap_or_clone(sub)
            } else {
                let mut env = Assignment::new();
                fill_ones(&mut env, &vars);
                Decision::refuted(env)
            });
        }

        let positive = self.decide_iamd(&s, &s2)?;
        if !positive.verdict {
            let mut env = match positive.counterexample() {
                Some(env) => env.clone(),
                None => self
                    .search(&s, &s2, Carrier::PositiveRationals, Vec::new())?
                    .unwrap_or_default(),
            };
            fill_ones(&mut env, &vars);
            return Ok(Decision::refuted(env));
        }
        let mut steps = vec![SubDecision {
            label: "positive".into(),
            decision: Arc::new(positive),
        }];
        for x in &live {
            let zero_here = |term: &Term| substitute(term, x, &Term::Zero);
            let sub = self.gil(&zero_here(&s), &zero_here(&s2), memo)?;
            if !sub.verdict {
                let mut env = sub.counterexample().cloned().unwrap_or_default();
                env.insert(x.clone(), ExactRational::zero());
                fill_ones(&mut env, &vars);
                return Ok(Decision::refuted(env));
            }
            steps.push(SubDecision {
                label: format!("{x} := 0"),
                decision: sub,
            });
        }
        Ok(Decision {
            verdict: true,
            evidence: Evidence::RecursionTrace(steps),
        })
    }

    /// Decides a divisive equation by translating `p / q` to `p * q^-1` and
    /// running the inversive procedure for the matching theory.
    pub fn decide_divisive(&self, t: &Term, u: &Term, theory: TheoryId) -> Result<Decision> {
        match theory {
            TheoryId::EDamd => {
                check_signature(t, SignatureId::Damd)?;
                check_signature(u, SignatureId::Damd)?;
                self.decide_iamd(&div_to_inv(t)?, &div_to_inv(u)?)
            }
            TheoryId::RatdazGil => {
                check_signature(t, SignatureId::Damdz)?;
                check_signature(u, SignatureId::Damdz)?;
                self.decide_iamdz_gil(&div_to_inv(t)?, &div_to_inv(u)?)
            }
            other => Err(Error::SignatureMismatch(format!(
                "no divisive decision procedure for theory {other}"
            ))),
        }
    }

    /// Decides an equation between closed terms by exact evaluation in the
    /// rational instance of `sig`.
    pub fn decide_closed(&self, t: &Term, u: &Term, sig: SignatureId) -> Result<Decision> {
        check_signature(t, sig)?;
        check_signature(u, sig)?;
        let vars = vars_of(t, u);
        if !vars.is_empty() {
            return Err(Error::NotClosed(
                vars.into_iter().collect::<Vec<_>>().join(", "),
            ));
        }
        let carrier = Carrier::for_signature(sig);
        let empty = Assignment::new();
        let lhs = eval_total(t, &empty, carrier)?;
        let rhs = eval_total(u, &empty, carrier)?;
        Ok(Decision::matched(
            lhs == rhs,
            NormalForm::Value(lhs),
            NormalForm::Value(rhs),
        ))
    }

    /// Looks for an assignment over `carrier` that separates `t` and `u`.
    ///
    /// Order: the given hints, all ones, zero patterns (when the carrier has
    /// zero), then seeded random points on a widening grid.
    pub fn search(
        &self,
        t: &Term,
        u: &Term,
        carrier: Carrier,
        hints: Vec<Assignment>,
    ) -> Result<Option<Assignment>> {
        let vars = vars_of(t, u);
        let separates = |env: &Assignment| -> Result<bool> {
            Ok(eval_total(t, env, carrier)? != eval_total(u, env, carrier)?)
        };

        let mut candidates = hints;
        candidates.push(Assignment::new());
        if carrier != Carrier::PositiveRationals && vars.len() <= 6 {
            for mask in 1u32..(1 << vars.len()) {
                let env = vars
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, x)| (x.clone(), ExactRational::zero()))
                    .collect();
                candidates.push(env);
            }
        }
        for mut env in candidates {
            fill_ones(&mut env, &vars);
            if separates(&env)? {
                return Ok(Some(env));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for attempt in 0..2000u32 {
            let bound = 8u64 << (attempt / 100).min(40);
            let env: Assignment = vars
                .iter()
                .map(|x| {
                    let value = if carrier != Carrier::PositiveRationals && rng.gen_ratio(1, 5) {
                        ExactRational::zero()
                    } else {
                        let n = BigInt::from(rng.gen_range(1..=bound));
                        let d = BigInt::from(rng.gen_range(1..=4u32));
                        let q = ExactRational::new(n, d);
                        if carrier == Carrier::AllRationals && rng.gen_bool(0.5) {
                            -q
                        } else {
                            q
                        }
                    };
                    (x.clone(), value)
                })
                .collect();
            if separates(&env)? {
                return Ok(Some(env));
            }
        }
        Ok(None)
    }
}

pub fn decide_iamd(t: &Term, u: &Term) -> Result<Decision> {
    Decider::default().decide_iamd(t, u)
}

pub fn decide_iamdz_gil(t: &Term, u: &Term) -> Result<Decision> {
    Decider::default().decide_iamdz_gil(t, u)
}

pub fn decide_divisive(t: &Term, u: &Term, theory: TheoryId) -> Result<Decision> {
    Decider::default().decide_divisive(t, u, theory)
}

pub fn decide_closed(t: &Term, u: &Term, sig: SignatureId) -> Result<Decision> {
    Decider::default().decide_closed(t, u, sig)
}
