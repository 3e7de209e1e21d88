//! Terms over the union of the meadow signatures.
//!
//! A single [`Term`] type covers every signature; which constructors a term
//! may use is checked dynamically with [`conforms`]. The decision procedures
//! move terms between signatures (zero elimination turns a term with `0`
//! into one without), so one representation serves all of them.

use std::collections::BTreeSet;
use std::fmt;
use std::ops;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest numeral built structurally from an integer literal.
///
/// Numerals are unary (`(1 + 1) + 1 ...`), so their depth grows with the value.
pub const MAX_NUMERAL: u64 = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Inv(Box<Term>),
    Div(Box<Term>, Box<Term>),
}

/// The constructor at the root of a term, without its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constructor {
    Zero,
    One,
    Var,
    Add,
    Mul,
    Neg,
    Inv,
    Div,
}

impl Constructor {
    pub const ALL: [Constructor; 8] = [
        Constructor::Zero,
        Constructor::One,
        Constructor::Var,
        Constructor::Add,
        Constructor::Mul,
        Constructor::Neg,
        Constructor::Inv,
        Constructor::Div,
    ];
}

impl fmt::Display for Constructor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constructor::Zero => "0",
            Constructor::One => "1",
            Constructor::Var => "variable",
            Constructor::Add => "+",
            Constructor::Mul => "*",
            Constructor::Neg => "-",
            Constructor::Inv => "^-1",
            Constructor::Div => "/",
        })
    }
}

/// The seven signatures: commutative rings, inversive and divisive meadows,
/// and their arithmetical variants with and without zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignatureId {
    Cr,
    Imd,
    Dmd,
    Iamdz,
    Damdz,
    Iamd,
    Damd,
}

impl SignatureId {
    pub const ALL: [SignatureId; 7] = [
        SignatureId::Cr,
        SignatureId::Imd,
        SignatureId::Dmd,
        SignatureId::Iamdz,
        SignatureId::Damdz,
        SignatureId::Iamd,
        SignatureId::Damd,
    ];

    pub fn permits(self, c: Constructor) -> bool {
        use Constructor as C;
        use SignatureId as S;
        match c {
            C::One | C::Var | C::Add | C::Mul => true,
            C::Zero => !matches!(self, S::Iamd | S::Damd),
            C::Neg => matches!(self, S::Cr | S::Imd | S::Dmd),
            C::Inv => matches!(self, S::Imd | S::Iamdz | S::Iamd),
            C::Div => matches!(self, S::Dmd | S::Damdz | S::Damd),
        }
    }

    pub fn has_zero(self) -> bool {
        self.permits(Constructor::Zero)
    }

    pub fn is_divisive(self) -> bool {
        self.permits(Constructor::Div)
    }

    pub fn is_inversive(self) -> bool {
        self.permits(Constructor::Inv)
    }

    /// The inversive signature with the same constants. Signatures without
    /// division map to themselves.
    pub fn inversive_counterpart(self) -> SignatureId {
        match self {
            SignatureId::Dmd => SignatureId::Imd,
            SignatureId::Damdz => SignatureId::Iamdz,
            SignatureId::Damd => SignatureId::Iamd,
            other => other,
        }
    }

    pub fn divisive_counterpart(self) -> SignatureId {
        match self {
            SignatureId::Imd => SignatureId::Dmd,
            SignatureId::Iamdz => SignatureId::Damdz,
            SignatureId::Iamd => SignatureId::Damd,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignatureId::Cr => "cr",
            SignatureId::Imd => "imd",
            SignatureId::Dmd => "dmd",
            SignatureId::Iamdz => "iamdz",
            SignatureId::Damdz => "damdz",
            SignatureId::Iamd => "iamd",
            SignatureId::Damd => "damd",
        }
    }
}

impl fmt::Display for SignatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignatureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignatureId::ALL
            .into_iter()
            .find(|sig| sig.name() == s)
            .ok_or_else(|| format!("unknown signature `{s}`"))
    }
}

/// Whether `name` is a valid variable identifier: `[a-z][a-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

// Associated constructors; the operator traits below delegate to them.
#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        let name = name.into();
        debug_assert!(is_identifier(&name), "bad identifier {name:?}");
        Term::Var(name)
    }

    pub fn add(lhs: Term, rhs: Term) -> Term {
        Term::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn mul(lhs: Term, rhs: Term) -> Term {
        Term::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn div(lhs: Term, rhs: Term) -> Term {
        Term::Div(Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(arg: Term) -> Term {
        Term::Neg(Box::new(arg))
    }

    pub fn inv(arg: Term) -> Term {
        Term::Inv(Box::new(arg))
    }

    pub fn constructor(&self) -> Constructor {
        match self {
            Term::Zero => Constructor::Zero,
            Term::One => Constructor::One,
            Term::Var(_) => Constructor::Var,
            Term::Add(..) => Constructor::Add,
            Term::Mul(..) => Constructor::Mul,
            Term::Neg(_) => Constructor::Neg,
            Term::Inv(_) => Constructor::Inv,
            Term::Div(..) => Constructor::Div,
        }
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::One | Term::Var(_) => vec![],
            Term::Neg(a) | Term::Inv(a) => vec![a],
            Term::Add(a, b) | Term::Mul(a, b) | Term::Div(a, b) => vec![a, b],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }

    pub fn contains(&self, c: Constructor) -> bool {
        self.constructor() == c || self.children().into_iter().any(|t| t.contains(c))
    }

    pub fn is_closed(&self) -> bool {
        !self.contains(Constructor::Var)
    }

    /// If this term is a numeral in its structural form, its value.
    ///
    /// `0` and `1` are numerals, and `n + 1` is one whenever `n >= 1` is.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut count = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::One => return Some(count + 1),
                Term::Zero if count == 0 => return Some(0),
                Term::Add(lhs, rhs) if **rhs == Term::One => {
                    count += 1;
                    cur = lhs;
                    if **lhs == Term::Zero {
                        return None;
                    }
                }
                _ => return None,
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("Zero"),
            Term::One => f.write_str("One"),
            Term::Var(x) => write!(f, "Var({x})"),
            Term::Add(a, b) => write!(f, "Add({a:?}, {b:?})"),
            Term::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            Term::Neg(a) => write!(f, "Neg({a:?})"),
            Term::Inv(a) => write!(f, "Inv({a:?})"),
            Term::Div(a, b) => write!(f, "Div({a:?}, {b:?})"),
        }
    }
}

impl ops::Add for Term {
    type Output = Term;
    fn add(self, rhs: Term) -> Term {
        Term::add(self, rhs)
    }
}

impl ops::Mul for Term {
    type Output = Term;
    fn mul(self, rhs: Term) -> Term {
        Term::mul(self, rhs)
    }
}

impl ops::Div for Term {
    type Output = Term;
    fn div(self, rhs: Term) -> Term {
        Term::div(self, rhs)
    }
}

impl ops::Neg for Term {
    type Output = Term;
    fn neg(self) -> Term {
        Term::neg(self)
    }
}

/// The numeral for `n`: `0`, `1`, `1 + 1`, `(1 + 1) + 1`, ...
pub fn numeral(n: u64, sig: SignatureId) -> Result<Term> {
    match n {
        0 if sig.has_zero() => Ok(Term::Zero),
        0 => Err(Error::ZeroNotInSignature(sig)),
        _ => Ok((1..n).fold(Term::One, |acc, _| Term::add(acc, Term::One))),
    }
}

/// Builds a numeral from an arbitrary-precision integer, refusing values
/// above [`MAX_NUMERAL`].
pub fn numeral_from_int(n: &BigUint, sig: SignatureId) -> Result<Term> {
    match n.to_u64() {
        Some(small) if small <= MAX_NUMERAL => numeral(small, sig),
        _ => Err(Error::SignatureMismatch(format!(
            "numeral {n} exceeds the structural limit {MAX_NUMERAL}"
        ))),
    }
}

/// `t^0 = 1`, `t^(n+1) = t^n * t`.
pub fn power(t: &Term, n: u32) -> Term {
    (0..n).fold(Term::One, |acc, _| Term::mul(acc, t.clone()))
}

/// The first constructor of `t` (in pre-order) that `sig` does not permit.
pub fn first_violation(t: &Term, sig: SignatureId) -> Option<Constructor> {
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        let c = t.constructor();
        if !sig.permits(c) {
            return Some(c);
        }
        stack.extend(t.children().into_iter().rev());
    }
    None
}

pub fn conforms(t: &Term, sig: SignatureId) -> bool {
    first_violation(t, sig).is_none()
}

/// Like [`conforms`], but reports the offending constructor.
pub fn check_signature(t: &Term, sig: SignatureId) -> Result<()> {
    match first_violation(t, sig) {
        None => Ok(()),
        Some(constructor) => Err(Error::NotInSignature { sig, constructor }),
    }
}

pub fn substitute(t: &Term, var: &str, s: &Term) -> Term {
    match t {
        Term::Var(x) if x == var => s.clone(),
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Add(a, b) => Term::add(substitute(a, var, s), substitute(b, var, s)),
        Term::Mul(a, b) => Term::mul(substitute(a, var, s), substitute(b, var, s)),
        Term::Div(a, b) => Term::div(substitute(a, var, s), substitute(b, var, s)),
        Term::Neg(a) => Term::neg(substitute(a, var, s)),
        Term::Inv(a) => Term::inv(substitute(a, var, s)),
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    fn walk(t: &Term, out: &mut BTreeSet<String>) {
        if let Term::Var(x) = t {
            out.insert(x.clone());
        }
        for child in t.children() {
            walk(child, out);
        }
    }
    let mut out = BTreeSet::new();
    walk(t, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral(0, SignatureId::Iamdz).unwrap(), Term::Zero);
        assert_eq!(numeral(1, SignatureId::Iamd).unwrap(), Term::One);
        assert_eq!(
            numeral(3, SignatureId::Iamd).unwrap(),
            Term::add(Term::add(Term::One, Term::One), Term::One)
        );
        assert_eq!(
            numeral(0, SignatureId::Iamd),
            Err(Error::ZeroNotInSignature(SignatureId::Iamd))
        );
        assert_eq!(
            numeral(0, SignatureId::Damd),
            Err(Error::ZeroNotInSignature(SignatureId::Damd))
        );
        for n in 0..30 {
            for sig in SignatureId::ALL {
                if let Ok(t) = numeral(n, sig) {
                    assert!(conforms(&t, sig));
                    assert_eq!(t.as_numeral(), Some(n));
                }
            }
        }
    }

    #[test]
    fn numeral_recognition_rejects_lookalikes() {
        assert_eq!(Term::add(Term::Zero, Term::One).as_numeral(), None);
        assert_eq!(Term::add(Term::One, x()).as_numeral(), None);
        assert_eq!(
            Term::add(Term::One, Term::add(Term::One, Term::One)).as_numeral(),
            None
        );
    }

    #[test]
    fn powers() {
        assert_eq!(power(&x(), 0), Term::One);
        assert_eq!(power(&x(), 2), Term::mul(Term::mul(Term::One, x()), x()));
        assert!(power(&Term::One, 5).is_closed());
    }

    #[test]
    fn conformance() {
        assert!(conforms(&Term::inv(x()), SignatureId::Iamd));
        assert!(!conforms(&Term::Zero, SignatureId::Iamd));
        assert!(!conforms(&Term::div(Term::One, x()), SignatureId::Iamdz));
        assert!(!conforms(&Term::neg(x()), SignatureId::Damdz));
        assert!(!conforms(&Term::inv(x()), SignatureId::Damdz));
        assert!(conforms(&Term::neg(Term::inv(x())), SignatureId::Imd));
        assert!(!conforms(&Term::inv(x()), SignatureId::Cr));
        assert_eq!(
            check_signature(&Term::add(x(), Term::Zero), SignatureId::Iamd),
            Err(Error::NotInSignature {
                sig: SignatureId::Iamd,
                constructor: Constructor::Zero
            })
        );
    }

    #[test]
    fn substitution() {
        let t = Term::mul(x(), Term::inv(x()));
        assert_eq!(
            substitute(&t, "x", &Term::Zero),
            Term::mul(Term::Zero, Term::inv(Term::Zero))
        );
        assert_eq!(substitute(&Term::var("y"), "x", &Term::One), Term::var("y"));
        let two = numeral(2, SignatureId::Iamd).unwrap();
        assert_eq!(
            substitute(&Term::add(x(), x()), "x", &two),
            Term::add(two.clone(), two)
        );
    }

    #[test]
    fn free_variables() {
        assert!(free_vars(&Term::One).is_empty());
        let fv: Vec<_> = free_vars(&Term::mul(Term::var("y"), x()))
            .into_iter()
            .collect();
        assert_eq!(fv, ["x", "y"]);
        assert_eq!(free_vars(&Term::inv(x())).len(), 1);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("x"));
        assert!(is_identifier("x_1a"));
        assert!(!is_identifier("X"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
    }

    #[test]
    fn signature_names_round_trip() {
        for sig in SignatureId::ALL {
            assert_eq!(sig.name().parse::<SignatureId>(), Ok(sig));
        }
    }
}
