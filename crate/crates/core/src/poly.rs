//! Sparse multivariate polynomials with strictly positive integer coefficients.
//!
//! These are the canonical forms of inverse-free arithmetical-meadow terms.
//! There is no zero polynomial and no subtraction: every stored coefficient
//! is at least one.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::eval::{Assignment, ExactRational};
use crate::term::{numeral_from_int, power, SignatureId, Term, MAX_NUMERAL};

/// Default bound on the number of monomials in any intermediate polynomial.
pub const DEFAULT_MAX_MONOMIALS: usize = 100_000;

/// A power product, stored sparsely: variables sorted by name, exponents `>= 1`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the alphabetically first variable where the two differ.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Monomial {
        Monomial(vec![(name.to_string(), 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// repeated variables add up and zero exponents are dropped.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Monomial {
        let mut map = BTreeMap::<&str, u32>::new();
        for (x, e) in pairs {
            *map.entry(x).or_default() += e;
        }
        Monomial(
            map.into_iter()
                .filter(|&(_, e)| e > 0)
                .map(|(x, e)| (x.to_string(), e))
                .collect(),
        )
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.iter().find(|(x, _)| x == var).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((xa, ea)), Some((xb, eb))) => match xa.cmp(xb) {
                    // `a` has a positive exponent where `b` has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        other => return other,
                    },
                },
            }
        }
    }

    fn eval(&self, env: &Assignment) -> Result<ExactRational> {
        let mut acc = ExactRational::one();
        for (x, e) in &self.0 {
            let v = env
                .get(x)
                .ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            acc *= num_traits::pow(v.clone(), *e as usize);
        }
        Ok(acc)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (x, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A non-empty polynomial with coefficients `>= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PosPoly {
    terms: BTreeMap<Monomial, BigUint>,
}

impl PosPoly {
    pub fn one() -> PosPoly {
        PosPoly::constant(BigUint::one())
    }

    /// A constant polynomial. Panics on zero, which has no representation.
    pub fn constant(k: BigUint) -> PosPoly {
        PosPoly::monomial(Monomial::one(), k)
    }

    pub fn var(name: &str) -> PosPoly {
        PosPoly::monomial(Monomial::var(name), BigUint::one())
    }

    pub fn monomial(m: Monomial, k: BigUint) -> PosPoly {
        assert!(
            !k.is_zero(),
            "positive polynomials have no zero coefficients"
        );
        PosPoly {
            terms: BTreeMap::from([(m, k)]),
        }
    }

    /// Collects `(monomial, coefficient)` pairs, summing duplicates.
    ///
    /// Returns `None` if nothing with a non-zero coefficient remains.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigUint)>) -> Option<PosPoly> {
        let mut map = BTreeMap::new();
        for (m, k) in terms {
            if k.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(BigUint::zero) += k;
        }
        (!map.is_empty()).then_some(PosPoly { terms: map })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false; kept alongside `len` for the usual pairing.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigUint> {
        self.terms.get(m)
    }

    /// Monomials in descending graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter().rev()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<&BigUint> {
        match self.terms.len() {
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(BigUint::is_one)
    }

    pub fn add(&self, other: &PosPoly, limit: usize) -> Result<PosPoly> {
        let mut terms = self.terms.clone();
        for (m, k) in &other.terms {
            match terms.entry(m.clone()) {
                Entry::Occupied(mut e) => *e.get_mut() += k,
                Entry::Vacant(e) => {
                    e.insert(k.clone());
                }
            }
        }
        check_limit(terms.len(), limit)?;
        Ok(PosPoly { terms })
    }

    pub fn mul(&self, other: &PosPoly, limit: usize) -> Result<PosPoly> {
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let mut terms: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (ma, ka) in &self.terms {
            for (mb, kb) in &other.terms {
                *terms.entry(ma.mul(mb)).or_insert_with(BigUint::zero) += ka * kb;
                check_limit(terms.len(), limit)?;
            }
        }
        Ok(PosPoly { terms })
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut vars: Vec<&str> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(x, _)| x.as_str()))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn eval(&self, env: &Assignment) -> Result<ExactRational> {
        let mut acc = ExactRational::zero();
        for (m, k) in &self.terms {
            acc += ExactRational::from_integer(BigInt::from(k.clone())) * m.eval(env)?;
        }
        Ok(acc)
    }

    /// Renders the polynomial back into an inverse-free term of the form
    /// `k * x1^i1 * ... * xm^im + ...`, monomials in descending order.
    ///
    /// Coefficients above [`MAX_NUMERAL`] cannot be written as structural
    /// numerals and are reported as a size-limit error.
    pub fn to_term(&self) -> Result<Term> {
        let mut sum: Option<Term> = None;
        for (m, k) in self.iter() {
            if *k > BigUint::from(MAX_NUMERAL) {
                return Err(Error::SizeLimit {
                    limit: MAX_NUMERAL as usize,
                });
            }
            let mut product: Option<Term> = (!k.is_one() || m.is_one())
                .then(|| numeral_from_int(k, SignatureId::Iamd))
                .transpose()?;
            for (x, e) in m.factors() {
                let factor = if *e == 1 {
                    Term::var(x.as_str())
                } else {
                    power(&Term::var(x.as_str()), *e)
                };
                product = Some(match product {
                    None => factor,
                    Some(p) => Term::mul(p, factor),
                });
            }
            let product = product.expect("monomial or coefficient present");
            sum = Some(match sum {
                None => product,
                Some(s) => Term::add(s, product),
            });
        }
        Ok(sum.expect("positive polynomials are non-empty"))
    }
}

fn check_limit(len: usize, limit: usize) -> Result<()> {
    if len > limit {
        Err(Error::SizeLimit { limit })
    } else {
        Ok(())
    }
}

impl fmt::Display for PosPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (m, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (m.is_one(), k.is_one()) {
                (true, _) => write!(f, "{k}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{k}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PosPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosPoly({self})")
    }
}
