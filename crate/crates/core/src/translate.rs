//! Syntax maps between the inversive and divisive signatures.
//!
//! `p / q` becomes `p * q^-1` and `p^-1` becomes `1 / p`. Nothing is
//! simplified along the way.

use crate::error::{Error, Result};
use crate::term::{Constructor, Term};

pub fn div_to_inv(t: &Term) -> Result<Term> {
    if t.contains(Constructor::Inv) {
        return Err(Error::MixedSignature);
    }
    Ok(div_to_inv_rec(t))
}

fn div_to_inv_rec(t: &Term) -> Term {
    match t {
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Div(a, b) => Term::mul(div_to_inv_rec(a), Term::inv(div_to_inv_rec(b))),
        Term::Add(a, b) => Term::add(div_to_inv_rec(a), div_to_inv_rec(b)),
        Term::Mul(a, b) => Term::mul(div_to_inv_rec(a), div_to_inv_rec(b)),
        Term::Neg(a) => Term::neg(div_to_inv_rec(a)),
        Term::Inv(_) => unreachable!("checked above"),
    }
}

pub fn inv_to_div(t: &Term) -> Result<Term> {
    if t.contains(Constructor::Div) {
        return Err(Error::MixedSignature);
    }
    Ok(inv_to_div_rec(t))
}

fn inv_to_div_rec(t: &Term) -> Term {
    match t {
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Inv(a) => Term::div(Term::One, inv_to_div_rec(a)),
        Term::Add(a, b) => Term::add(inv_to_div_rec(a), inv_to_div_rec(b)),
        Term::Mul(a, b) => Term::mul(inv_to_div_rec(a), inv_to_div_rec(b)),
        Term::Neg(a) => Term::neg(inv_to_div_rec(a)),
        Term::Div(..) => unreachable!("checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn division_to_inverse() {
        let y = Term::var("y");
        assert_eq!(
            div_to_inv(&Term::div(x(), y.clone())),
            Ok(Term::mul(x(), Term::inv(y)))
        );
        assert_eq!(div_to_inv(&Term::One), Ok(Term::One));
        assert_eq!(
            div_to_inv(&Term::div(Term::One, Term::div(Term::One, x()))),
            Ok(Term::mul(
                Term::One,
                Term::inv(Term::mul(Term::One, Term::inv(x())))
            ))
        );
        assert_eq!(div_to_inv(&Term::inv(x())), Err(Error::MixedSignature));
    }

    #[test]
    fn inverse_to_division() {
        assert_eq!(inv_to_div(&Term::inv(x())), Ok(Term::div(Term::One, x())));
        assert_eq!(
            inv_to_div(&Term::mul(x(), Term::inv(x()))),
            Ok(Term::mul(x(), Term::div(Term::One, x())))
        );
        assert_eq!(inv_to_div(&Term::Zero), Ok(Term::Zero));
        assert_eq!(inv_to_div(&Term::div(x(), x())), Err(Error::MixedSignature));
    }
}
