//! Exact rational evaluation with zero-totalized inverse and division.
//!
//! `0^-1 = 0` and `q / 0 = 0`; division is evaluated as `q * (1 / d)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::term::{free_vars, Constructor, SignatureId, Term};

pub type ExactRational = BigRational;

/// Values of variables, keyed by name.
pub type Assignment = BTreeMap<String, ExactRational>;

/// The set values are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    PositiveRationals,
    NonNegativeRationals,
    AllRationals,
}

impl Carrier {
    pub fn contains(self, q: &ExactRational) -> bool {
        match self {
            Carrier::PositiveRationals => q.is_positive(),
            Carrier::NonNegativeRationals => !q.is_negative(),
            Carrier::AllRationals => true,
        }
    }

    /// Whether terms built with `c` can be evaluated over this carrier.
    pub fn supports(self, c: Constructor) -> bool {
        match c {
            Constructor::Zero => self != Carrier::PositiveRationals,
            Constructor::Neg => self == Carrier::AllRationals,
            _ => true,
        }
    }

    /// The carrier of the rational instance of a signature.
    pub fn for_signature(sig: SignatureId) -> Carrier {
        match sig {
            SignatureId::Iamd | SignatureId::Damd => Carrier::PositiveRationals,
            SignatureId::Iamdz | SignatureId::Damdz => Carrier::NonNegativeRationals,
            SignatureId::Cr | SignatureId::Imd | SignatureId::Dmd => Carrier::AllRationals,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Carrier::PositiveRationals => "pos",
            Carrier::NonNegativeRationals => "nonneg",
            Carrier::AllRationals => "all",
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Carrier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pos" => Ok(Carrier::PositiveRationals),
            "nonneg" => Ok(Carrier::NonNegativeRationals),
            "all" => Ok(Carrier::AllRationals),
            _ => Err(format!("unknown carrier `{s}`")),
        }
    }
}

/// Multiplicative inverse with `0^-1 = 0`.
pub fn total_inverse(q: &ExactRational) -> ExactRational {
    if q.is_zero() {
        ExactRational::zero()
    } else {
        q.recip()
    }
}

/// `n / d = n * (1 / d)`, so `n / 0 = 0`.
pub fn total_division(n: &ExactRational, d: &ExactRational) -> ExactRational {
    n * total_inverse(d)
}

pub fn eval_total(t: &Term, env: &Assignment, carrier: Carrier) -> Result<ExactRational> {
    for (name, value) in env {
        if !carrier.contains(value) {
            return Err(Error::CarrierViolation(format!(
                "{name} = {value} lies outside {carrier}"
            )));
        }
    }
    let value = eval_unchecked(t, env, carrier)?;
    debug_assert!(carrier.contains(&value));
    Ok(value)
}

fn eval_unchecked(t: &Term, env: &Assignment, carrier: Carrier) -> Result<ExactRational> {
    if !carrier.supports(t.constructor()) {
        return Err(Error::CarrierViolation(format!(
            "`{}` cannot be evaluated over {carrier}",
            t.constructor()
        )));
    }
    let eval = |s: &Term| eval_unchecked(s, env, carrier);
    Ok(match t {
        Term::Zero => ExactRational::zero(),
        Term::One => ExactRational::one(),
        Term::Var(x) => env
            .get(x)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(x.clone()))?,
        Term::Add(a, b) => eval(a)? + eval(b)?,
        Term::Mul(a, b) => eval(a)? * eval(b)?,
        Term::Neg(a) => -eval(a)?,
        Term::Inv(a) => total_inverse(&eval(a)?),
        Term::Div(a, b) => total_division(&eval(a)?, &eval(b)?),
    })
}

/// Parses `n`, `-n`, `n/m` or `-n/m`.
pub fn parse_rational(text: &str) -> Result<ExactRational, String> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| -> Result<BigInt, String> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational `{text}`"));
        }
        s.parse::<BigInt>().map_err(|e| e.to_string())
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, digits(d)?),
        None => (digits(body)?, BigInt::one()),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    let q = ExactRational::new(numer, denom);
    Ok(if negative { -q } else { q })
}

/// Parses `x=1/2,y=3`, rejecting values outside `carrier`.
pub fn parse_assignment(text: &str, carrier: Carrier) -> Result<Assignment, String> {
    let mut env = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected `name=value`, got `{part}`"))?;
        let name = name.trim();
        if !crate::term::is_identifier(name) {
            return Err(format!("bad variable name `{name}`"));
        }
        let value = parse_rational(value)?;
        if !carrier.contains(&value) {
            return Err(format!("{name} = {value} lies outside {carrier}"));
        }
        env.insert(name.to_string(), value);
    }
    Ok(env)
}

/// A small pseudo-random value in `carrier`.
///
/// Numerators and denominators stay below 8; the non-positive values of a
/// carrier (zero, negatives) come up often enough to hit the edge cases.
pub fn sample_value<R: Rng + ?Sized>(rng: &mut R, carrier: Carrier) -> ExactRational {
    let positive = ExactRational::new(
        BigInt::from(rng.gen_range(1..8u32)),
        BigInt::from(rng.gen_range(1..8u32)),
    );
    match carrier {
        Carrier::PositiveRationals => positive,
        Carrier::NonNegativeRationals => {
            if rng.gen_ratio(1, 4) {
                ExactRational::zero()
            } else {
                positive
            }
        }
        Carrier::AllRationals => match rng.gen_range(0..5u32) {
            0 => ExactRational::zero(),
            1 | 2 => -positive,
            _ => positive,
        },
    }
}

/// Random values for every free variable of the given terms.
pub fn sample_assignment<'a, R: Rng + ?Sized>(
    rng: &mut R,
    terms: impl IntoIterator<Item = &'a Term>,
    carrier: Carrier,
) -> Assignment {
    let mut env = Assignment::new();
    for t in terms {
        for x in free_vars(t) {
            env.entry(x).or_insert_with(|| sample_value(rng, carrier));
        }
    }
    env
}
