use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::CycNum;
use super::rational::Rational;

/// A sparse Laurent polynomial `Σ c_q t^q` with rational exponents and
/// cyclotomic coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    terms: BTreeMap<Rational, CycNum>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        TPoly::monomial(CycNum::one(), Rational::zero())
    }

    /// `c · t^q`.
    pub fn monomial(c: CycNum, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        TPoly { terms }
    }

    pub fn t_pow(q: Rational) -> Self {
        TPoly::monomial(CycNum::one(), q)
    }

    pub fn constant(c: CycNum) -> Self {
        TPoly::monomial(c, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q: &Rational) -> CycNum {
        self.terms.get(q).cloned().unwrap_or_else(CycNum::zero)
    }

    /// Lowest exponent present.
    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&Rational, &CycNum)> {
        if self.terms.len() == 1 { self.terms.iter().next() } else { None }
    }

    fn add_term(&mut self, q: Rational, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&q) {
            Some(e) => {
                *e = e.add_ref(&c);
                if e.is_zero() {
                    self.terms.remove(&q);
                }
            }
            None => {
                self.terms.insert(q, c);
            }
        }
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (q, c) in &other.terms {
            out.add_term(q.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(q, c)| (q.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> TPoly {
        let mut out = TPoly::zero();
        for (q, x) in &self.terms {
            out.add_term(q.clone(), x.mul_ref(c));
        }
        out
    }

    /// Multiply by `t^q`.
    pub fn shift(&self, q: &Rational) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(e, c)| (e + q, c.clone())).collect() }
    }

    /// Exact convolution; exponents add.
    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                out.add_term(qa + qb, ca.mul_ref(cb));
            }
        }
        out
    }

    /// Keep only the terms with the given exponent.
    pub fn part_at(&self, q: &Rational) -> TPoly {
        TPoly::monomial(self.coeff(q), q.clone())
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                if q.is_zero() {
                    cs
                } else if c.is_one() {
                    format!("t^{q}")
                } else {
                    format!("{cs}*t^{q}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64, d: i64) -> TPoly {
        TPoly::t_pow(Rational::new(n, d))
    }

    #[test]
    fn half_plus_half() {
        assert_eq!(t(1, 2).mul(&t(1, 2)), t(1, 1));
    }

    #[test]
    fn difference_of_squares() {
        let a = TPoly::one().add(&t(1, 1));
        let b = TPoly::one().sub(&t(1, 1));
        assert_eq!(a.mul(&b), TPoly::one().sub(&t(2, 1)));
    }

    #[test]
    fn third_plus_sixth() {
        assert_eq!(t(1, 3).mul(&t(1, 6)), t(1, 2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = t(1, 1).add(&t(1, 1).neg());
        assert!(a.is_zero());
        assert_eq!(t(-2, 3).mul(&t(2, 3)), TPoly::one());
    }
}
