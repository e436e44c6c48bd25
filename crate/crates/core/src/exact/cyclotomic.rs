//! Exact arithmetic in the cyclotomic fields ℚ(ζ_N).
//!
//! An element is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` of `ℚ[x]/Φ_N(x)`. Coordinates are always fully
//! reduced, so two elements of the same field are equal iff their coordinate
//! vectors agree. Elements of different fields are compared and combined in
//! the field of the least common multiple of their orders.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::poly::{poly_divrem, poly_ext_gcd, poly_trim};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Arithmetic context for ℚ(ζ_N): the cyclotomic polynomial and the reduced
/// forms of `x^j` for `0 ≤ j < N`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    degree: usize,
    modulus: Vec<Rational>,
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    fn build(order: u64) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then reduce the overflow coefficient
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] = &cur[i] - &(&top * &modulus[i]);
                }
            }
        }
        CyclotomicField { order, degree, modulus, powers }
    }

    /// Shared context for ℚ(ζ_N). Contexts are pure functions of `N` and are
    /// memoised process-wide.
    pub fn get(order: u64) -> Arc<CyclotomicField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&order) {
            return f.clone();
        }
        let field = Arc::new(CyclotomicField::build(order));
        cache.lock().unwrap().entry(order).or_insert(field).clone()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(N), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    fn reduce(&self, poly: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < self.degree {
                out[j] += c;
            } else {
                let p = &self.powers[j % self.order as usize];
                for (o, pc) in out.iter_mut().zip(p) {
                    if !pc.is_zero() {
                        *o += &(c * pc);
                    }
                }
            }
        }
        out
    }
}

/// Φ_N with integer coefficients, computed as `(x^N - 1) / ∏_{d | N, d < N} Φ_d`.
pub fn cyclotomic_polynomial(order: u64) -> Vec<Rational> {
    let mut num = vec![Rational::zero(); order as usize + 1];
    num[0] = Rational::from_int(-1);
    num[order as usize] = Rational::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            let (q, r) = poly_divrem(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(Rational::is_zero));
            num = q;
        }
    }
    poly_trim(&mut num);
    num
}

/// An element of ℚ(ζ_N).
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// A rational number, living in ℚ(ζ_1) = ℚ.
    pub fn from_rational(r: Rational) -> Self {
        CycNum { field: CyclotomicField::get(1), coeffs: vec![r] }
    }

    pub fn rational_in(order: u64, r: Rational) -> Self {
        let field = CyclotomicField::get(order);
        let mut coeffs = vec![Rational::zero(); field.degree];
        coeffs[0] = r;
        CycNum { field, coeffs }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let field = CyclotomicField::get(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let coeffs = field.powers[idx].clone();
        CycNum { field, coeffs }
    }

    /// Build from power-basis coordinates of arbitrary length; coordinates past
    /// φ(N) are reduced modulo Φ_N.
    pub fn from_power_coeffs(order: u64, coeffs: &[Rational]) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = field.reduce(coeffs);
        CycNum { field, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into ℚ(ζ_M) for a multiple M of the current order.
    pub fn promote(&self, order: u64) -> CycNum {
        let cur = self.field.order;
        if cur == order {
            return self.clone();
        }
        assert!(order.is_multiple_of(cur), "cannot embed Q(zeta_{cur}) into Q(zeta_{order})");
        let step = (order / cur) as usize;
        let field = CyclotomicField::get(order);
        let mut out = vec![Rational::zero(); field.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &field.powers[(k * step) % order as usize];
            for (o, pc) in out.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *o += &(c * pc);
                }
            }
        }
        CycNum { field, coeffs: out }
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let n = a.order().lcm(&b.order());
        (a.promote(n), b.promote(n))
    }

    fn with_same_field<F>(&self, other: &CycNum, f: F) -> CycNum
    where
        F: Fn(&Arc<CyclotomicField>, &[Rational], &[Rational]) -> Vec<Rational>,
    {
        if self.order() == other.order() {
            let coeffs = f(&self.field, &self.coeffs, &other.coeffs);
            CycNum { field: self.field.clone(), coeffs }
        } else {
            let (a, b) = CycNum::common(self, other);
            let coeffs = f(&a.field, &a.coeffs, &b.coeffs);
            CycNum { field: a.field, coeffs }
        }
    }

    pub fn add_ref(&self, other: &CycNum) -> CycNum {
        self.with_same_field(other, |_, a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub_ref(&self, other: &CycNum) -> CycNum {
        self.with_same_field(other, |_, a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn mul_ref(&self, other: &CycNum) -> CycNum {
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        self.with_same_field(other, |field, a, b| {
            let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        prod[i + j] += &(x * y);
                    }
                }
            }
            field.reduce(&prod)
        })
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn neg_ref(&self) -> CycNum {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in ℚ[x].
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in a cyclotomic field".into()));
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::rational_in(self.order(), r.recip()?));
        }
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, s, _t) = poly_ext_gcd(&a, &self.field.modulus);
        // Φ_N is irreducible, so the gcd is a nonzero constant
        if g.len() != 1 {
            return Err(Error::Invariant("cyclotomic polynomial is not coprime to a nonzero element".into()));
        }
        let c = g[0].recip()?;
        let s: Vec<Rational> = s.iter().map(|x| x * &c).collect();
        Ok(CycNum { field: self.field.clone(), coeffs: self.field.reduce(&s) })
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> CycNum {
        let n = self.field.order as usize;
        let mut out = vec![Rational::zero(); self.field.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(n - k % n) % n];
            for (o, pc) in out.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *o += &(c * pc);
                }
            }
        }
        CycNum { field: self.field.clone(), coeffs: out }
    }

    pub fn pow(&self, exp: u32) -> CycNum {
        let mut acc = CycNum::rational_in(self.order(), Rational::one());
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.order() == other.order() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = CycNum::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.add_ref(rhs)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        self.sub_ref(&rhs)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self.sub_ref(rhs)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.mul_ref(rhs)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl fmt::Display for CycNum {
    /// Renders as a sum of `c*z^k` terms in the power basis of ℚ(ζ_N).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.order())?;
                    } else {
                        write!(f, "z{}^{}", self.order(), k)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_ints = |n| -> Vec<i64> {
            cyclotomic_polynomial(n).iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_ints(1), vec![-1, 1]);
        assert_eq!(as_ints(3), vec![1, 1, 1]);
        assert_eq!(as_ints(4), vec![1, 0, 1]);
        assert_eq!(as_ints(6), vec![1, -1, 1]);
        assert_eq!(as_ints(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = CycNum::zeta_pow(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(-1));
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        // 1 + ζ = −ζ² in ℚ(ζ₃), so the inverse is −ζ (extended Euclid against
        // x² + x + 1 gives the same coordinates (0, −1)).
        let z = CycNum::zeta_pow(3, 1);
        let a = &CycNum::rational_in(3, Rational::one()) + &z;
        let inv = a.inv().unwrap();
        assert_eq!(inv.coeffs(), &[q(0, 1), q(-1, 1)]);
        assert_eq!(inv, -z);
        assert!((&a * &inv).is_one());
        // −ζ² is a itself, and a·a = ζ ≠ 1
        assert_eq!(-CycNum::zeta_pow(3, 2), a);
    }

    #[test]
    fn conj_of_zeta5() {
        assert_eq!(CycNum::zeta_pow(5, 1).conj(), CycNum::zeta_pow(5, 4));
    }

    #[test]
    fn zeta_times_zeta_pow_n_minus_one() {
        for n in [2u64, 3, 5, 8, 12] {
            let prod = &CycNum::zeta_pow(n, 1) * &CycNum::zeta_pow(n, n as i64 - 1);
            assert!(prod.is_one(), "order {n}");
        }
    }

    #[test]
    fn zero_inverse_fails() {
        assert!(matches!(CycNum::zero().inv(), Err(Error::Domain(_))));
        assert!(matches!(CycNum::rational_in(7, Rational::zero()).inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn mixed_orders_promote() {
        // ζ₆³ = −1 = ζ₂
        assert_eq!(CycNum::zeta_pow(6, 3), CycNum::zeta_pow(2, 1));
        // ζ₄ + ζ₃ computed in ℚ(ζ₁₂)
        let s = &CycNum::zeta_pow(4, 1) + &CycNum::zeta_pow(3, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(s, &CycNum::zeta_pow(12, 3) + &CycNum::zeta_pow(12, 4));
    }

    #[test]
    fn display() {
        let x = &CycNum::zeta_pow(3, 1).scale(&q(-1, 2)) + &CycNum::rational_in(3, q(2, 1));
        assert_eq!(x.to_string(), "2 - 1/2*z3");
        assert_eq!(CycNum::zero().to_string(), "0");
    }
}
