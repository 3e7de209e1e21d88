//! Canonical forms.
//!
//! * closed terms without zero reduce to a coprime fraction `n * m^-1`;
//! * closed terms with zero reduce to `0` or such a fraction;
//! * open inverse-free terms reduce to a [`PosPoly`];
//! * open terms with inverse split into a [`PolyFraction`] `p * q^-1`;
//! * terms with zero either collapse to `0` or lose every `0`
//!   ([`zero_elim`]).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::eval::{eval_total, Assignment, Carrier, ExactRational};
use crate::poly::{PosPoly, DEFAULT_MAX_MONOMIALS};
use crate::term::{check_signature, conforms, free_vars, numeral_from_int, SignatureId, Term};

/// `numerator * denominator^-1`, both inverse-free.
///
/// No common factors are cancelled; comparisons go through cross products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFraction {
    pub numerator: PosPoly,
    pub denominator: PosPoly,
}

impl PolyFraction {
    pub fn eval(&self, env: &Assignment) -> Result<ExactRational> {
        Ok(self.numerator.eval(env)? / self.denominator.eval(env)?)
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |p: &PosPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{} / {}", part(&self.numerator), part(&self.denominator))
        }
    }
}

/// Normal form of a closed term over a signature without `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClosedNormal {
    Zero,
    /// `n * m^-1` with `n, m >= 1` and `gcd(n, m) = 1`.
    Fraction {
        n: BigUint,
        m: BigUint,
    },
}

impl ClosedNormal {
    /// Reduces `n / m` to lowest terms. Both must be positive.
    pub fn fraction(n: BigUint, m: BigUint) -> ClosedNormal {
        assert!(!n.is_zero() && !m.is_zero());
        let g = n.gcd(&m);
        ClosedNormal::Fraction {
            n: n / &g,
            m: m / g,
        }
    }

    pub fn from_rational(q: &ExactRational) -> Option<ClosedNormal> {
        if q.is_zero() {
            return Some(ClosedNormal::Zero);
        }
        if q.is_negative() {
            return None;
        }
        Some(ClosedNormal::Fraction {
            n: q.numer().magnitude().clone(),
            m: q.denom().magnitude().clone(),
        })
    }

    pub fn to_rational(&self) -> ExactRational {
        match self {
            ClosedNormal::Zero => ExactRational::zero(),
            ClosedNormal::Fraction { n, m } => {
                ExactRational::new(n.clone().into(), m.clone().into())
            }
        }
    }

    /// The representative term `0` or `n * m^-1`.
    pub fn to_term(&self) -> Result<Term> {
        Ok(match self {
            ClosedNormal::Zero => Term::Zero,
            ClosedNormal::Fraction { n, m } => Term::mul(
                numeral_from_int(n, SignatureId::Iamd)?,
                Term::inv(numeral_from_int(m, SignatureId::Iamd)?),
            ),
        })
    }
}

impl fmt::Display for ClosedNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedNormal::Zero => f.write_str("0"),
            ClosedNormal::Fraction { n, m } if m.is_one() => write!(f, "{n}"),
            ClosedNormal::Fraction { n, m } => write!(f, "{n}/{m}"),
        }
    }
}

/// Normal form of a closed full-meadow term: zero or a signed coprime fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedClosedNormal {
    Zero,
    Fraction {
        negative: bool,
        n: BigUint,
        m: BigUint,
    },
}

impl SignedClosedNormal {
    pub fn from_rational(q: &ExactRational) -> SignedClosedNormal {
        if q.is_zero() {
            SignedClosedNormal::Zero
        } else {
            SignedClosedNormal::Fraction {
                negative: q.is_negative(),
                n: q.numer().magnitude().clone(),
                m: q.denom().magnitude().clone(),
            }
        }
    }

    pub fn to_rational(&self) -> ExactRational {
        match self {
            SignedClosedNormal::Zero => ExactRational::zero(),
            SignedClosedNormal::Fraction { negative, n, m } => {
                let q = ExactRational::new(n.clone().into(), m.clone().into());
                if *negative {
                    -q
                } else {
                    q
                }
            }
        }
    }
}

impl fmt::Display for SignedClosedNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Outcome of eliminating `0` from a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZeroElim {
    /// The whole term collapses to `0`.
    Zero,
    /// A term equal to the input in which `0` no longer occurs.
    Term(Term),
}

/// Polynomial normalization with a bound on intermediate sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalizer {
    pub max_monomials: usize,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            max_monomials: DEFAULT_MAX_MONOMIALS,
        }
    }
}

impl Normalizer {
    pub fn new(max_monomials: usize) -> Normalizer {
        Normalizer { max_monomials }
    }

    /// Normal form of an inverse-free term over the arithmetical signature:
    /// products fully distributed over sums, like monomials merged.
    pub fn poly_normal(&self, t: &Term) -> Result<PosPoly> {
        check_signature(t, SignatureId::Iamd)?;
        self.poly_rec(t)
    }

    fn poly_rec(&self, t: &Term) -> Result<PosPoly> {
        let limit = self.max_monomials;
        match t {
            Term::One => Ok(PosPoly::one()),
            Term::Var(x) => Ok(PosPoly::var(x)),
            // numerals are long left spines; read them without recursing
            Term::Add(..) if t.as_numeral().is_some() => {
                Ok(PosPoly::constant(t.as_numeral().unwrap().into()))
            }
            Term::Add(a, b) => self.poly_rec(a)?.add(&self.poly_rec(b)?, limit),
            Term::Mul(a, b) => self.poly_rec(a)?.mul(&self.poly_rec(b)?, limit),
            Term::Inv(_) => Err(Error::ContainsInverse),
            Term::Zero | Term::Neg(_) | Term::Div(..) => unreachable!("signature checked"),
        }
    }

    /// Splits a term into `p * q^-1` with `p`, `q` inverse-free, pushing
    /// inverses inward with `(x * y)^-1 = x^-1 * y^-1` and `(x^-1)^-1 = x`.
    pub fn split_inverse(&self, t: &Term) -> Result<PolyFraction> {
        check_signature(t, SignatureId::Iamd)?;
        self.split_rec(t)
    }

    fn split_rec(&self, t: &Term) -> Result<PolyFraction> {
        let limit = self.max_monomials;
        Ok(match t {
            Term::One => PolyFraction {
                numerator: PosPoly::one(),
                denominator: PosPoly::one(),
            },
            Term::Var(x) => PolyFraction {
                numerator: PosPoly::var(x),
                denominator: PosPoly::one(),
            },
            Term::Inv(a) => {
                let PolyFraction {
                    numerator,
                    denominator,
                } = self.split_rec(a)?;
                PolyFraction {
                    numerator: denominator,
                    denominator: numerator,
                }
            }
            Term::Mul(a, b) => {
                let (a, b) = (self.split_rec(a)?, self.split_rec(b)?);
                PolyFraction {
                    numerator: a.numerator.mul(&b.numerator, limit)?,
                    denominator: a.denominator.mul(&b.denominator, limit)?,
                }
            }
            Term::Add(..) if t.as_numeral().is_some() => PolyFraction {
                numerator: PosPoly::constant(t.as_numeral().unwrap().into()),
                denominator: PosPoly::one(),
            },
            Term::Add(a, b) => {
                let (a, b) = (self.split_rec(a)?, self.split_rec(b)?);
                if a.denominator == b.denominator {
                    PolyFraction {
                        numerator: a.numerator.add(&b.numerator, limit)?,
                        denominator: a.denominator,
                    }
                } else {
                    let lhs = a.numerator.mul(&b.denominator, limit)?;
                    let rhs = b.numerator.mul(&a.denominator, limit)?;
                    PolyFraction {
                        numerator: lhs.add(&rhs, limit)?,
                        denominator: a.denominator.mul(&b.denominator, limit)?,
                    }
                }
            }
            Term::Zero | Term::Neg(_) | Term::Div(..) => unreachable!("signature checked"),
        })
    }

    /// Coprime fraction of a closed term without zero. Never [`ClosedNormal::Zero`].
    pub fn closed_normal_iamd(&self, t: &Term) -> Result<ClosedNormal> {
        check_signature(t, SignatureId::Iamd)?;
        ensure_closed(t)?;
        let PolyFraction {
            numerator,
            denominator,
        } = self.split_rec(t)?;
        let constant = |p: &PosPoly| {
            p.as_constant()
                .cloned()
                .expect("closed term has a constant normal form")
        };
        Ok(ClosedNormal::fraction(
            constant(&numerator),
            constant(&denominator),
        ))
    }

    /// Normal form of a closed term with zero: `0` if the term collapses
    /// under zero elimination, otherwise the coprime fraction of what remains.
    pub fn closed_normal_iamdz(&self, t: &Term) -> Result<ClosedNormal> {
        check_signature(t, SignatureId::Iamdz)?;
        ensure_closed(t)?;
        match zero_elim(t)? {
            ZeroElim::Zero => Ok(ClosedNormal::Zero),
            ZeroElim::Term(s) => self.closed_normal_iamd(&s),
        }
    }
}

fn ensure_closed(t: &Term) -> Result<()> {
    let vars = free_vars(t);
    if vars.is_empty() {
        Ok(())
    } else {
        Err(Error::NotClosed(
            vars.into_iter().collect::<Vec<_>>().join(", "),
        ))
    }
}

/// Removes `0` bottom-up with `0 + u = u`, `u + 0 = u`, `0 * u = 0`,
/// `u * 0 = 0` and `0^-1 = 0`.
pub fn zero_elim(t: &Term) -> Result<ZeroElim> {
    check_signature(t, SignatureId::Iamdz)?;
    Ok(zero_elim_rec(t))
}

fn zero_elim_rec(t: &Term) -> ZeroElim {
    use ZeroElim::{Term as Live, Zero};
    match t {
        Term::Zero => Zero,
        Term::One | Term::Var(_) => Live(t.clone()),
        Term::Add(a, b) => match (zero_elim_rec(a), zero_elim_rec(b)) {
            (Zero, r) | (r, Zero) => r,
            (Live(a), Live(b)) => Live(Term::add(a, b)),
        },
        Term::Mul(a, b) => match (zero_elim_rec(a), zero_elim_rec(b)) {
            (Zero, _) | (_, Zero) => Zero,
            (Live(a), Live(b)) => Live(Term::mul(a, b)),
        },
        Term::Inv(a) => match zero_elim_rec(a) {
            Zero => Zero,
            Live(a) => Live(Term::inv(a)),
        },
        Term::Neg(_) | Term::Div(..) => unreachable!("signature checked"),
    }
}

pub fn poly_normal(t: &Term) -> Result<PosPoly> {
    Normalizer::default().poly_normal(t)
}

pub fn split_inverse(t: &Term) -> Result<PolyFraction> {
    Normalizer::default().split_inverse(t)
}

pub fn closed_normal_iamd(t: &Term) -> Result<ClosedNormal> {
    Normalizer::default().closed_normal_iamd(t)
}

pub fn closed_normal_iamdz(t: &Term) -> Result<ClosedNormal> {
    Normalizer::default().closed_normal_iamdz(t)
}

/// Value of a closed full-meadow term (inversive or divisive) in the
/// zero-totalized rationals, as a signed coprime fraction.
pub fn closed_normal_full(t: &Term) -> Result<SignedClosedNormal> {
    if !conforms(t, SignatureId::Imd) {
        check_signature(t, SignatureId::Dmd)?;
    }
    ensure_closed(t)?;
    let q = eval_total(t, &Assignment::new(), Carrier::AllRationals)?;
    Ok(SignedClosedNormal::from_rational(&q))
}
