//! The S¹-equivariant de Rham model with product ∧_t, the Chen–Ruan product
//! ⋆_t, the intertwiner J between them, and the filtration whose associated
//! graded recovers the deformed ring.
//!
//! Over the linear model every restricted Thom class is t^{complex codim}, so
//! both products reduce to a power of t per pair of elements. The ∧_t power
//! comes from real codimensions, the ⋆_t power from ages, and J relates them.

use crate::deformed_ring::{hh_table, ClassFunctionElement, HhTable};
use crate::error::{Error, Result};
use crate::exact::{CycNum, Rational, TPoly};
use crate::inertia::{intersection_basis, Orbifold};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// deg e_g = ℓ(g), deg t = 2.
    Ht,
    /// deg e_g = 2ι(g), deg t = 2.
    Cr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedTElement {
    pub mode: Grading,
    pub value: ClassFunctionElement,
}

impl GradedTElement {
    pub fn new(mode: Grading, value: ClassFunctionElement) -> Self {
        GradedTElement { mode, value }
    }

    pub fn basis(mode: Grading, g: usize) -> Self {
        Self::new(mode, ClassFunctionElement::basis(g, TPoly::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Degree of `t^q e_g`: 2q plus ℓ(g) or 2ι(g) depending on the mode.
    pub fn term_degree(&self, orb: &Orbifold, g: usize, q: &Rational) -> Rational {
        let base = match self.mode {
            Grading::Ht => Rational::from_int(orb.ell(g) as i64),
            Grading::Cr => orb.age(g) * &Rational::from_int(2),
        };
        &base + &(q * &Rational::from_int(2))
    }

    /// The total degree if every term has the same degree.
    pub fn degree(&self, orb: &Orbifold) -> Option<Rational> {
        let mut degs = self
            .value
            .coeffs()
            .iter()
            .flat_map(|(g, c)| c.terms().map(move |(q, _)| (*g, q.clone())).collect::<Vec<_>>())
            .map(|(g, q)| self.term_degree(orb, g, &q));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Filtration level of an HT element: the minimum over terms of deg − ℓ(g) = 2q.
    pub fn filtration_level(&self) -> Option<Rational> {
        self.value
            .coeffs()
            .values()
            .filter_map(|c| c.min_exponent().cloned())
            .min()
            .map(|q| &q * &Rational::from_int(2))
    }
}

fn require_mode(x: &GradedTElement, mode: Grading) -> Result<()> {
    if x.mode != mode {
        return Err(Error::Usage(format!("expected an element in {mode:?} grading")));
    }
    Ok(())
}

/// Exponent (ℓ(a)+ℓ(b)−ℓ(ab))/2 of ∧_t, checked to be a nonnegative integer.
pub fn ht_exponent(orb: &Orbifold, a: usize, b: usize) -> Result<Rational> {
    let (la, lb, lab) = (orb.ell(a), orb.ell(b), orb.ell(orb.group().mul(a, b)));
    if la + lb < lab || (la + lb - lab) % 2 != 0 {
        return Err(Error::Invariant(format!("∧_t exponent for ({a},{b}) is not a nonnegative integer")));
    }
    Ok(Rational::from_int(((la + lb - lab) / 2) as i64))
}

pub fn ht_product(orb: &Orbifold, x: &GradedTElement, y: &GradedTElement) -> Result<GradedTElement> {
    require_mode(x, Grading::Ht)?;
    require_mode(y, Grading::Ht)?;
    let value = x
        .value
        .bilinear(&y.value, |a, b| Ok(Some((orb.group().mul(a, b), TPoly::t_pow(ht_exponent(orb, a, b)?)))))?;
    Ok(GradedTElement::new(Grading::Ht, value))
}

fn fixed_dim(orb: &Orbifold, g: usize) -> usize {
    orb.sector(g).fixed_basis.len()
}

/// rank_ℂ of the obstruction bundle:
/// dim(V^a ∩ V^b) − n + ι(a) + ι(b) + ι((ab)⁻¹).
pub fn obstruction_rank(orb: &Orbifold, a: usize, b: usize) -> Result<Rational> {
    let g = orb.group();
    let n = g.dim();
    let common = intersection_basis(n, &orb.sector(a).fixed_basis, &orb.sector(b).fixed_basis).len();
    let inv_ab = g.inverse(g.mul(a, b));
    let r = &(&(&Rational::from_int(common as i64 - n as i64) + orb.age(a)) + orb.age(b)) + orb.age(inv_ab);
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Invariant(format!("obstruction rank for ({a},{b}) is {r}")));
    }
    Ok(r)
}

/// Exponent ι(a)+ι(b)−ι(ab) of ⋆_t, checked against obstruction rank plus
/// codim_ℂ(V^a ∩ V^b ⊂ V^{ab}).
pub fn cr_exponent(orb: &Orbifold, a: usize, b: usize) -> Result<Rational> {
    let g = orb.group();
    let ab = g.mul(a, b);
    let by_age = &(orb.age(a) + orb.age(b)) - orb.age(ab);
    let common = intersection_basis(g.dim(), &orb.sector(a).fixed_basis, &orb.sector(b).fixed_basis).len();
    let codim = fixed_dim(orb, ab) as i64 - common as i64;
    let by_geometry = &obstruction_rank(orb, a, b)? + &Rational::from_int(codim);
    if by_age != by_geometry || codim < 0 {
        return Err(Error::Invariant(format!(
            "⋆_t exponent mismatch at ({a},{b}): ages give {by_age}, geometry gives {by_geometry}"
        )));
    }
    Ok(by_age)
}

pub fn cr_product(orb: &Orbifold, x: &GradedTElement, y: &GradedTElement) -> Result<GradedTElement> {
    require_mode(x, Grading::Cr)?;
    require_mode(y, Grading::Cr)?;
    let value = x
        .value
        .bilinear(&y.value, |a, b| Ok(Some((orb.group().mul(a, b), TPoly::t_pow(cr_exponent(orb, a, b)?)))))?;
    Ok(GradedTElement::new(Grading::Cr, value))
}

fn rescale(orb: &Orbifold, x: &ClassFunctionElement, sign: i64) -> ClassFunctionElement {
    let mut out = ClassFunctionElement::zero();
    for (g, c) in x.coeffs() {
        let q = orb.age(orb.group().inverse(*g)) * &Rational::from_int(sign);
        out.add_term(*g, c.shift(&q));
    }
    out
}

/// J(e_g) = t^{−ι(g⁻¹)} e_g, from CR grading to HT grading.
pub fn j_map(orb: &Orbifold, x: &GradedTElement) -> Result<GradedTElement> {
    require_mode(x, Grading::Cr)?;
    Ok(GradedTElement::new(Grading::Ht, rescale(orb, &x.value, -1)))
}

pub fn j_inverse(orb: &Orbifold, x: &GradedTElement) -> Result<GradedTElement> {
    require_mode(x, Grading::Ht)?;
    Ok(GradedTElement::new(Grading::Cr, rescale(orb, &x.value, 1)))
}

/// J(x ⋆_t y) = J(x) ∧_t J(y) for every pair of basis elements.
pub fn check_j_intertwines(orb: &Orbifold) -> Result<()> {
    let n = orb.group().size();
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (GradedTElement::basis(Grading::Cr, a), GradedTElement::basis(Grading::Cr, b));
            let left = j_map(orb, &cr_product(orb, &x, &y)?)?;
            let right = ht_product(orb, &j_map(orb, &x)?, &j_map(orb, &y)?)?;
            if left != right {
                return Err(Error::Invariant(format!("J does not intertwine the products at ({a},{b})")));
            }
            if j_inverse(orb, &j_map(orb, &x)?)? != x {
                return Err(Error::Invariant(format!("J⁻¹∘J is not the identity at {a}")));
            }
        }
    }
    Ok(())
}

/// The filtration level of each product is at least the sum of the levels of
/// the factors, on all pairs of HT basis elements with the given t-shifts.
pub fn check_filtration(orb: &Orbifold) -> Result<()> {
    let n = orb.group().size();
    let shifts = [Rational::zero(), Rational::one()];
    for a in 0..n {
        for b in 0..n {
            for qa in &shifts {
                for qb in &shifts {
                    let x = GradedTElement::new(Grading::Ht, ClassFunctionElement::basis(a, TPoly::t_pow(qa.clone())));
                    let y = GradedTElement::new(Grading::Ht, ClassFunctionElement::basis(b, TPoly::t_pow(qb.clone())));
                    let p = ht_product(orb, &x, &y)?;
                    let (lx, ly) = (x.filtration_level().unwrap(), y.filtration_level().unwrap());
                    if let Some(lp) = p.filtration_level() {
                        if lp < &lx + &ly {
                            return Err(Error::Invariant(format!("filtration decreases at ({a},{b})")));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// gr of (HT, ∧_t) in the class basis: keep the t⁰ part of each product of
/// class sums. Checked entrywise against the deformed ring table.
pub fn associated_graded(orb: &Orbifold) -> Result<HhTable> {
    let g = orb.group();
    let k = g.classes().len();
    let mut counts = vec![vec![vec![0u64; k]; k]; k];
    for a in 0..k {
        for b in 0..k {
            let x = GradedTElement::new(Grading::Ht, ClassFunctionElement::class_sum(orb, a));
            let y = GradedTElement::new(Grading::Ht, ClassFunctionElement::class_sum(orb, b));
            let p = ht_product(orb, &x, &y)?;
            for c in 0..k {
                let lead = p.value.coeff(g.class_rep(c)).coeff(&Rational::zero());
                counts[a][b][c] = to_count(&lead)?;
            }
        }
    }
    let table = HhTable { ells: g.classes().iter().map(|c| orb.ell(c[0])).collect(), counts };
    if table != hh_table(orb)? {
        return Err(Error::Invariant("associated graded differs from the deformed ring".into()));
    }
    Ok(table)
}

fn to_count(c: &CycNum) -> Result<u64> {
    c.to_rational()
        .and_then(|r| r.to_i64())
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Invariant(format!("leading coefficient {c} is not a count")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CycMatrix;
    use crate::group::{generate_group, DEFAULT_CAP};

    fn orbifold(d: Vec<CycNum>) -> Orbifold {
        Orbifold::new(generate_group(&[CycMatrix::diagonal(d)], DEFAULT_CAP).unwrap())
    }

    fn ints(d: &[i64]) -> Vec<CycNum> {
        d.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    fn t(n: i64, d: i64) -> TPoly {
        TPoly::t_pow(Rational::new(n, d))
    }

    #[test]
    fn ht_examples() {
        let z2 = orbifold(ints(&[-1]));
        let e = |m, g| GradedTElement::basis(m, g);
        assert_eq!(ht_product(&z2, &e(Grading::Ht, 0), &e(Grading::Ht, 0)).unwrap(), e(Grading::Ht, 0));
        let sq = ht_product(&z2, &e(Grading::Ht, 1), &e(Grading::Ht, 1)).unwrap();
        assert_eq!(sq.value, ClassFunctionElement::basis(0, t(2, 1)));
        let mi = orbifold(ints(&[-1, -1]));
        let sq = ht_product(&mi, &e(Grading::Ht, 1), &e(Grading::Ht, 1)).unwrap();
        assert_eq!(sq.value, ClassFunctionElement::basis(0, t(4, 1)));
    }

    #[test]
    fn cr_examples() {
        let z2 = orbifold(ints(&[-1]));
        assert_eq!(obstruction_rank(&z2, 0, 1).unwrap(), Rational::zero());
        assert_eq!(obstruction_rank(&z2, 1, 1).unwrap(), Rational::zero());
        let e = |g| GradedTElement::basis(Grading::Cr, g);
        assert_eq!(cr_product(&z2, &e(1), &e(1)).unwrap().value, ClassFunctionElement::basis(0, t(1, 1)));
        assert_eq!(cr_product(&z2, &e(0), &e(1)).unwrap(), e(1));
        let mi = orbifold(ints(&[-1, -1]));
        assert_eq!(obstruction_rank(&mi, 1, 1).unwrap(), Rational::zero());
        assert_eq!(cr_product(&mi, &e(1), &e(1)).unwrap().value, ClassFunctionElement::basis(0, t(2, 1)));
    }

    #[test]
    fn j_examples() {
        let z2 = orbifold(ints(&[-1]));
        let e = |g| GradedTElement::basis(Grading::Cr, g);
        assert_eq!(j_map(&z2, &e(0)).unwrap(), GradedTElement::basis(Grading::Ht, 0));
        assert_eq!(j_map(&z2, &e(1)).unwrap().value, ClassFunctionElement::basis(1, t(-1, 2)));
        let z3 = orbifold(vec![CycNum::zeta_pow(3, 1)]);
        let g = z3.group().find(&CycMatrix::diagonal(vec![CycNum::zeta_pow(3, 1)])).unwrap();
        assert_eq!(j_map(&z3, &e(g)).unwrap().value, ClassFunctionElement::basis(g, t(-2, 3)));
        let x = e(g);
        assert_eq!(x.degree(&z3), Some(Rational::new(2, 3)));
        assert_eq!(j_map(&z3, &x).unwrap().degree(&z3), Some(Rational::new(2, 3)));
        check_j_intertwines(&z3).unwrap();
        check_filtration(&z3).unwrap();
        associated_graded(&z3).unwrap();
    }

    #[test]
    fn mode_mismatch_is_usage_error() {
        let z2 = orbifold(ints(&[-1]));
        let x = GradedTElement::basis(Grading::Ht, 1);
        assert!(matches!(cr_product(&z2, &x, &x), Err(Error::Usage(_))));
    }
}
