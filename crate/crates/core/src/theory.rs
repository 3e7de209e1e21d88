//! The named axiom sets, as data, and sampled model checking against the
//! exact rational evaluators.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::{eval_total, sample_assignment, Assignment, Carrier};
use crate::term::{power, Constructor, SignatureId, Term};

/// An unoriented equation between two terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn constructors(&self) -> impl Iterator<Item = Constructor> + '_ {
        Constructor::ALL
            .into_iter()
            .filter(|&c| self.lhs.contains(c) || self.rhs.contains(c))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `guard != 0 => equation`, the one non-equational law in the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalLaw {
    pub guard: String,
    pub equation: Equation,
}

impl fmt::Display for ConditionalLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} != 0 => {}", self.guard, self.equation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoryId {
    ECr,
    EAcrz,
    EAcr,
    EIamd,
    EDamd,
    EIamdz,
    EDamdz,
    EImd,
    EDmd,
    RatziSpec,
    RatzdSpec,
    RatiazSpec,
    RatdazSpec,
    RatiazAltSpec,
    RatiazGil,
    /// The divisive counterpart of `RatiazGil`.
    RatdazGil,
}

impl TheoryId {
    pub const ALL: [TheoryId; 16] = [
        TheoryId::ECr,
        TheoryId::EAcrz,
        TheoryId::EAcr,
        TheoryId::EIamd,
        TheoryId::EDamd,
        TheoryId::EIamdz,
        TheoryId::EDamdz,
        TheoryId::EImd,
        TheoryId::EDmd,
        TheoryId::RatziSpec,
        TheoryId::RatzdSpec,
        TheoryId::RatiazSpec,
        TheoryId::RatdazSpec,
        TheoryId::RatiazAltSpec,
        TheoryId::RatiazGil,
        TheoryId::RatdazGil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryId::ECr => "cr",
            TheoryId::EAcrz => "acrz",
            TheoryId::EAcr => "acr",
            TheoryId::EIamd => "iamd",
            TheoryId::EDamd => "damd",
            TheoryId::EIamdz => "iamdz",
            TheoryId::EDamdz => "damdz",
            TheoryId::EImd => "imd",
            TheoryId::EDmd => "dmd",
            TheoryId::RatziSpec => "ratzi",
            TheoryId::RatzdSpec => "ratzd",
            TheoryId::RatiazSpec => "ratiaz",
            TheoryId::RatdazSpec => "ratdaz",
            TheoryId::RatiazAltSpec => "ratiaz-alt",
            TheoryId::RatiazGil => "ratiaz-gil",
            TheoryId::RatdazGil => "ratdaz-gil",
        }
    }

    /// The signature the axioms are written in. The ring fragments without
    /// inverse are placed in the smallest inversive signature containing them.
    pub fn signature(self) -> SignatureId {
        match self {
            TheoryId::ECr => SignatureId::Cr,
            TheoryId::EAcrz => SignatureId::Iamdz,
            TheoryId::EAcr | TheoryId::EIamd => SignatureId::Iamd,
            TheoryId::EDamd => SignatureId::Damd,
            TheoryId::EIamdz
            | TheoryId::RatiazSpec
            | TheoryId::RatiazAltSpec
            | TheoryId::RatiazGil => SignatureId::Iamdz,
            TheoryId::EDamdz | TheoryId::RatdazSpec | TheoryId::RatdazGil => SignatureId::Damdz,
            TheoryId::EImd | TheoryId::RatziSpec => SignatureId::Imd,
            TheoryId::EDmd | TheoryId::RatzdSpec => SignatureId::Dmd,
        }
    }

    /// The equations of the theory.
    pub fn axioms(self) -> Vec<Equation> {
        axioms(self)
    }

    /// The general inverse law, for the two theories that carry it.
    pub fn conditional_law(self) -> Option<ConditionalLaw> {
        let x = Term::var("x");
        let equation = match self {
            TheoryId::RatiazGil => Equation::new(Term::mul(x.clone(), Term::inv(x)), Term::One),
            TheoryId::RatdazGil => Equation::new(Term::div(x.clone(), x), Term::One),
            _ => return None,
        };
        Some(ConditionalLaw {
            guard: "x".into(),
            equation,
        })
    }
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoryId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theory `{s}`"))
    }
}

fn x() -> Term {
    Term::var("x")
}
fn y() -> Term {
    Term::var("y")
}
fn z() -> Term {
    Term::var("z")
}

/// The eight commutative-ring equations, in table order.
pub fn ring_axioms() -> Vec<Equation> {
    vec![
        Equation::new((x() + y()) + z(), x() + (y() + z())),
        Equation::new(x() + y(), y() + x()),
        Equation::new(x() + Term::Zero, x()),
        Equation::new(x() + (-x()), Term::Zero),
        Equation::new((x() * y()) * z(), x() * (y() * z())),
        Equation::new(x() * y(), y() * x()),
        Equation::new(x() * Term::One, x()),
        Equation::new(x() * (y() + z()), x() * y() + x() * z()),
    ]
}

fn without(mut eqs: Vec<Equation>, removed: &Equation) -> Vec<Equation> {
    eqs.retain(|e| e != removed);
    eqs
}

fn with(mut eqs: Vec<Equation>, extra: impl IntoIterator<Item = Equation>) -> Vec<Equation> {
    eqs.extend(extra);
    eqs
}

fn inverse_axioms() -> [Equation; 2] {
    [
        Equation::new(Term::inv(Term::inv(x())), x()),
        Equation::new(x() * (x() * Term::inv(x())), x()),
    ]
}

fn division_axioms() -> [Equation; 3] {
    [
        Equation::new(Term::One / (Term::One / x()), x()),
        Equation::new((x() * x()) / x(), x()),
        Equation::new(x() / y(), x() * (Term::One / y())),
    ]
}

/// `1 + x^2 + y^2`.
pub fn sum_of_squares() -> Term {
    Term::One + power(&x(), 2) + power(&y(), 2)
}

/// `(1 + x^2 + y^2) * (1 + x^2 + y^2)^-1 = 1`.
pub fn sum_of_squares_inverse_law() -> Equation {
    Equation::new(sum_of_squares() * Term::inv(sum_of_squares()), Term::One)
}

fn sum_of_squares_division_law() -> Equation {
    Equation::new(sum_of_squares() / sum_of_squares(), Term::One)
}

/// `(x * (x + y)) * (x * (x + y))^-1 = x * x^-1`.
pub fn alternative_inverse_law() -> Equation {
    let base = x() * (x() + y());
    Equation::new(base.clone() * Term::inv(base), x() * Term::inv(x()))
}

fn alternative_division_law() -> Equation {
    let base = x() * (x() + y());
    Equation::new(base.clone() / base, x() / x())
}

pub fn axioms(id: TheoryId) -> Vec<Equation> {
    let cr = ring_axioms;
    let acrz = || without(cr(), &Equation::new(x() + (-x()), Term::Zero));
    let acr = || without(acrz(), &Equation::new(x() + Term::Zero, x()));
    let iamdz = || with(acrz(), inverse_axioms());
    let damdz = || with(acrz(), division_axioms());
    let imd = || with(cr(), inverse_axioms());
    let dmd = || with(cr(), division_axioms());
    match id {
        TheoryId::ECr => cr(),
        TheoryId::EAcrz => acrz(),
        TheoryId::EAcr => acr(),
        TheoryId::EIamd => with(acr(), [Equation::new(x() * Term::inv(x()), Term::One)]),
        TheoryId::EDamd => with(acr(), [Equation::new(x() / x(), Term::One)]),
        TheoryId::EIamdz => iamdz(),
        TheoryId::EDamdz => damdz(),
        TheoryId::EImd => imd(),
        TheoryId::EDmd => dmd(),
        TheoryId::RatziSpec => with(imd(), [sum_of_squares_inverse_law()]),
        TheoryId::RatzdSpec => with(dmd(), [sum_of_squares_division_law()]),
        TheoryId::RatiazSpec => with(iamdz(), [sum_of_squares_inverse_law()]),
        TheoryId::RatdazSpec => with(damdz(), [sum_of_squares_division_law()]),
        TheoryId::RatiazAltSpec | TheoryId::RatiazGil => with(iamdz(), [alternative_inverse_law()]),
        TheoryId::RatdazGil => with(damdz(), [alternative_division_law()]),
    }
}

/// A total evaluator over one of the rational carriers, with `0^-1 = 0` and
/// `q / 0 = 0`. The carrier fixes which operations exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interpretation {
    pub carrier: Carrier,
}

impl Interpretation {
    pub fn positive() -> Interpretation {
        Interpretation {
            carrier: Carrier::PositiveRationals,
        }
    }

    pub fn non_negative() -> Interpretation {
        Interpretation {
            carrier: Carrier::NonNegativeRationals,
        }
    }

    pub fn rationals() -> Interpretation {
        Interpretation {
            carrier: Carrier::AllRationals,
        }
    }

    pub fn supports(self, c: Constructor) -> bool {
        self.carrier.supports(c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomOutcome {
    pub law: String,
    /// The first sampled assignment that separates the two sides.
    pub witness: Option<Assignment>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelReport {
    pub theory: TheoryId,
    pub samples: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl ModelReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }
}

/// Evaluates both sides of every law of `id` under `samples` seeded random
/// assignments and records the first assignment where they differ.
pub fn check_model(
    id: TheoryId,
    interpretation: Interpretation,
    samples: usize,
    seed: u64,
) -> Result<ModelReport> {
    let eqs = axioms(id);
    let law = id.conditional_law();
    let used = eqs
        .iter()
        .chain(law.as_ref().map(|l| &l.equation))
        .flat_map(Equation::constructors);
    for c in used {
        if !interpretation.supports(c) {
            return Err(Error::SignatureMismatch(format!(
                "theory {id} uses `{c}`, which the {} evaluator lacks",
                interpretation.carrier
            )));
        }
    }

    let carrier = interpretation.carrier;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(eqs.len() + 1);
    for eq in &eqs {
        let mut witness = None;
        for _ in 0..samples {
            let env = sample_assignment(&mut rng, [&eq.lhs, &eq.rhs], carrier);
            if eval_total(&eq.lhs, &env, carrier)? != eval_total(&eq.rhs, &env, carrier)? {
                witness = Some(env);
                break;
            }
        }
        outcomes.push(AxiomOutcome {
            law: eq.to_string(),
            witness,
        });
    }
    if let Some(law) = law {
        let eq = &law.equation;
        let mut witness = None;
        for _ in 0..samples {
            let env = sample_assignment(&mut rng, [&eq.lhs, &eq.rhs], carrier);
            if env.get(&law.guard).is_some_and(Zero::is_zero) {
                continue;
            }
            if eval_total(&eq.lhs, &env, carrier)? != eval_total(&eq.rhs, &env, carrier)? {
                witness = Some(env);
                break;
            }
        }
        outcomes.push(AxiomOutcome {
            law: law.to_string(),
            witness,
        });
    }
    Ok(ModelReport {
        theory: id,
        samples,
        outcomes,
    })
}
