//! Partial meadows obtained by making inverse or division undefined at zero,
//! and a syntactic criterion for definedness.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::eval::{total_division, total_inverse, Assignment, Carrier, ExactRational};
use crate::term::{check_signature, first_violation, SignatureId, Term};

/// Where the total operation is punched out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PunchId {
    /// `0^-1` undefined.
    Inv0,
    /// `q / 0` undefined for every `q`.
    DivAll0,
    /// `q / 0` undefined for `q != 0`; `0 / 0 = 0`.
    DivNonzero0,
}

impl PunchId {
    pub fn name(self) -> &'static str {
        match self {
            PunchId::Inv0 => "inv0",
            PunchId::DivAll0 => "divall0",
            PunchId::DivNonzero0 => "divnz0",
        }
    }

    /// The arithmetical-with-zero signature the punch applies to.
    pub fn signature(self) -> SignatureId {
        match self {
            PunchId::Inv0 => SignatureId::Iamdz,
            PunchId::DivAll0 | PunchId::DivNonzero0 => SignatureId::Damdz,
        }
    }
}

impl fmt::Display for PunchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PunchId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inv0" => Ok(PunchId::Inv0),
            "divall0" => Ok(PunchId::DivAll0),
            "divnz0" => Ok(PunchId::DivNonzero0),
            _ => Err(format!("unknown punch `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartialValue {
    Defined(ExactRational),
    Undefined,
}

impl PartialValue {
    pub fn is_defined(&self) -> bool {
        matches!(self, PartialValue::Defined(_))
    }

    pub fn defined(self) -> Option<ExactRational> {
        match self {
            PartialValue::Defined(q) => Some(q),
            PartialValue::Undefined => None,
        }
    }
}

impl fmt::Display for PartialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialValue::Defined(q) => write!(f, "{q}"),
            PartialValue::Undefined => f.write_str("undefined"),
        }
    }
}

/// Evaluates over the non-negative rationals with the given operation
/// punched. Undefinedness is strict: it propagates through every operator.
pub fn eval_punched(t: &Term, env: &Assignment, punch: PunchId) -> Result<PartialValue> {
    if let Some(c) = first_violation(t, punch.signature()) {
        return Err(Error::SignatureMismatch(format!(
            "punch {punch} applies to {} terms, found `{c}`",
            punch.signature()
        )));
    }
    for (name, value) in env {
        if !Carrier::NonNegativeRationals.contains(value) {
            return Err(Error::CarrierViolation(format!(
                "{name} = {value} is negative"
            )));
        }
    }
    eval_rec(t, env, punch).map(|v| v.map_or(PartialValue::Undefined, PartialValue::Defined))
}

fn eval_rec(t: &Term, env: &Assignment, punch: PunchId) -> Result<Option<ExactRational>> {
    let eval = |s: &Term| eval_rec(s, env, punch);
    Ok(match t {
        Term::Zero => Some(ExactRational::zero()),
        Term::One => Some(num_traits::One::one()),
        Term::Var(x) => Some(
            env.get(x)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(x.clone()))?,
        ),
        Term::Add(a, b) => match (eval(a)?, eval(b)?) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        },
        Term::Mul(a, b) => match (eval(a)?, eval(b)?) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        },
        Term::Inv(a) => match eval(a)? {
            Some(v) if v.is_zero() && punch == PunchId::Inv0 => None,
            Some(v) => Some(total_inverse(&v)),
            None => None,
        },
        Term::Div(a, b) => match (eval(a)?, eval(b)?) {
            (Some(n), Some(d)) => {
                let punched = d.is_zero()
                    && match punch {
                        PunchId::DivAll0 => true,
                        PunchId::DivNonzero0 => !n.is_zero(),
                        PunchId::Inv0 => false,
                    };
                (!punched).then(|| total_division(&n, &d))
            }
            _ => None,
        },
        Term::Neg(_) => unreachable!("signature checked"),
    })
}

/// Membership in the inductively defined sets of non-zero (`Nz`) and
/// defined (`Def`) terms. `InNz` implies membership in `Def`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefClass {
    Outside,
    InDefOnly,
    InNz,
}

impl DefClass {
    pub fn is_defined(self) -> bool {
        self != DefClass::Outside
    }

    pub fn name(self) -> &'static str {
        match self {
            DefClass::InNz => "nz",
            DefClass::InDefOnly => "def",
            DefClass::Outside => "outside",
        }
    }
}

impl fmt::Display for DefClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which reading of the additive `Nz` rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NzRule {
    /// `x ∈ Nz` and `y ∈ Def` give `x + y, y + x ∈ Nz`.
    #[default]
    Guarded,
    /// `x ∈ Nz` alone gives `x + y, y + x ∈ Nz`. Unsound: `1 + 0^-1` lands
    /// in `Nz` although it is undefined once `0^-1` is punched.
    Literal,
}

/// Classifies with the guarded additive rule.
pub fn classify_def(t: &Term) -> Result<DefClass> {
    classify_def_with(t, NzRule::Guarded)
}

/// The rules:
///
/// * `1 ∈ Nz`, `0 ∈ Def`, variables are in `Def` (they may be zero);
/// * `x ∈ Nz`, `y ∈ Def` give `x + y ∈ Nz` and `y + x ∈ Nz`;
/// * `x, y ∈ Nz` give `x * y ∈ Nz`;
/// * `x ∈ Nz` gives `x^-1 ∈ Nz`;
/// * `x, y ∈ Def` give `x + y ∈ Def` and `x * y ∈ Def`;
/// * `Nz ⊆ Def`.
pub fn classify_def_with(t: &Term, rule: NzRule) -> Result<DefClass> {
    check_signature(t, SignatureId::Iamdz)?;
    Ok(classify(t, rule))
}

fn classify(t: &Term, rule: NzRule) -> DefClass {
    use DefClass::*;
    match t {
        Term::One => InNz,
        Term::Zero | Term::Var(_) => InDefOnly,
        Term::Add(a, b) => {
            let (a, b) = (classify(a, rule), classify(b, rule));
            let nz = match rule {
                NzRule::Guarded => (a == InNz && b.is_defined()) || (b == InNz && a.is_defined()),
                NzRule::Literal => a == InNz || b == InNz,
            };
            if nz {
                InNz
            } else if a.is_defined() && b.is_defined() {
                InDefOnly
            } else {
                Outside
            }
        }
        Term::Mul(a, b) => match (classify(a, rule), classify(b, rule)) {
            (InNz, InNz) => InNz,
            (a, b) if a.is_defined() && b.is_defined() => InDefOnly,
            _ => Outside,
        },
        Term::Inv(a) => match classify(a, rule) {
            InNz => InNz,
            _ => Outside,
        },
        Term::Neg(_) | Term::Div(..) => unreachable!("signature checked"),
    }
}
