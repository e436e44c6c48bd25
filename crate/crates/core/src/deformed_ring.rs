//! Hochschild ring of the deformed crossed product: one generator e_g per
//! group element in degree ℓ(g), with e_a·e_b = e_{ab} on ℓ-additive pairs and
//! zero otherwise. Invariant elements are spanned by the class sums E_(γ).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{CycNum, Rational, TPoly};
use crate::inertia::Orbifold;

/// Element-indexed TPoly coefficients `Σ c_g e_g`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ClassFunctionElement {
    coeffs: BTreeMap<usize, TPoly>,
}

impl ClassFunctionElement {
    pub fn zero() -> Self {
        ClassFunctionElement::default()
    }

    /// `c · e_g`.
    pub fn basis(g: usize, c: TPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(g, c);
        out
    }

    pub fn unit() -> Self {
        Self::basis(0, TPoly::one())
    }

    /// The class sum E_(γ) of conjugacy class `class`.
    pub fn class_sum(orb: &Orbifold, class: usize) -> Self {
        let mut out = Self::zero();
        for &g in &orb.group().classes()[class] {
            out.add_term(g, TPoly::one());
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, TPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> TPoly {
        self.coeffs.get(&g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, g: usize, c: TPoly) {
        let sum = self.coeff(g).add(&c);
        if sum.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.add_term(*g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = Self::zero();
        for (g, x) in &self.coeffs {
            out.add_term(*g, x.mul(c));
        }
        out
    }

    /// Constant on conjugacy classes.
    pub fn is_conjugation_invariant(&self, orb: &Orbifold) -> bool {
        let g = orb.group();
        (0..g.size()).all(|i| self.coeff(i) == self.coeff(g.class_rep(g.class_of(i))))
    }

    /// Bilinear extension of a rule on basis pairs: `e_a · e_b = rule(a, b)`.
    pub(crate) fn bilinear(
        &self,
        other: &Self,
        mut rule: impl FnMut(usize, usize) -> Result<Option<(usize, TPoly)>>,
    ) -> Result<Self> {
        let mut out = Self::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((g, w)) = rule(*a, *b)? {
                    out.add_term(g, ca.mul(cb).mul(&w));
                }
            }
        }
        Ok(out)
    }
}

/// `e_a · e_b = e_{ab}` if ℓ(a)+ℓ(b) = ℓ(ab), else 0.
pub fn hh_product(orb: &Orbifold, x: &ClassFunctionElement, y: &ClassFunctionElement) -> ClassFunctionElement {
    x.bilinear(y, |a, b| Ok(orb.l_additive(a, b).then(|| (orb.group().mul(a, b), TPoly::one()))))
        .expect("rule is infallible")
}

/// Class-basis structure constants: `E_(α)·E_(β) = Σ_γ counts[α][β][γ] E_(γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HhTable {
    /// ℓ of each class, which is the degree of E_(γ).
    pub ells: Vec<usize>,
    pub counts: Vec<Vec<Vec<u64>>>,
}

impl HhTable {
    pub fn num_classes(&self) -> usize {
        self.ells.len()
    }

    /// Number of classes in each degree 0..=2n.
    pub fn dims_by_degree(&self, n: usize) -> Vec<usize> {
        (0..=2 * n).map(|d| self.ells.iter().filter(|&&l| l == d).count()).collect()
    }

    pub fn check_commutativity(&self) -> Result<()> {
        let k = self.num_classes();
        for a in 0..k {
            for b in 0..k {
                if self.counts[a][b] != self.counts[b][a] {
                    return Err(Error::Invariant(format!("class product not commutative on ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn check_associativity(&self) -> Result<()> {
        let k = self.num_classes();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for r in 0..k {
                        let left: u64 = (0..k).map(|m| self.counts[a][b][m] * self.counts[m][c][r]).sum();
                        let right: u64 = (0..k).map(|m| self.counts[b][c][m] * self.counts[a][m][r]).sum();
                        if left != right {
                            return Err(Error::Invariant(format!("class product not associative on ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Degrees add: a nonzero constant c^γ_{αβ} forces ℓ(α)+ℓ(β) = ℓ(γ).
    pub fn check_grading(&self) -> Result<()> {
        let k = self.num_classes();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if self.counts[a][b][c] != 0 && self.ells[a] + self.ells[b] != self.ells[c] {
                        return Err(Error::Invariant(format!("grading broken on ({a},{b}) -> {c}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Counts `#{(a, b) ∈ (α)×(β) : ab = γ₀, ℓ-additive}` by pair enumeration,
/// cross-checked against the element-level product of class sums.
pub fn hh_table(orb: &Orbifold) -> Result<HhTable> {
    let g = orb.group();
    let classes = g.classes();
    let k = classes.len();
    let mut counts = vec![vec![vec![0u64; k]; k]; k];
    for (ai, ca) in classes.iter().enumerate() {
        for (bi, cb) in classes.iter().enumerate() {
            for &a in ca {
                for &b in cb {
                    let p = g.mul(a, b);
                    if orb.l_additive(a, b) && p == g.class_rep(g.class_of(p)) {
                        counts[ai][bi][g.class_of(p)] += 1;
                    }
                }
            }
        }
    }
    for ai in 0..k {
        for bi in 0..k {
            let prod = hh_product(
                orb,
                &ClassFunctionElement::class_sum(orb, ai),
                &ClassFunctionElement::class_sum(orb, bi),
            );
            for x in 0..g.size() {
                let expect = counts[ai][bi][g.class_of(x)];
                let got = prod.coeff(x);
                let ok = if expect == 0 {
                    got.is_zero()
                } else {
                    got == TPoly::constant(CycNum::from_rational(Rational::from_int(expect as i64)))
                };
                if !ok {
                    return Err(Error::Invariant(format!(
                        "class table disagrees with element product at classes ({ai},{bi}), element {x}"
                    )));
                }
            }
        }
    }
    let ells = classes.iter().map(|c| orb.ell(c[0])).collect();
    Ok(HhTable { ells, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CycMatrix;
    use crate::group::{generate_group, DEFAULT_CAP};

    fn orbifold(gens: Vec<CycMatrix>) -> Orbifold {
        Orbifold::new(generate_group(&gens, DEFAULT_CAP).unwrap())
    }

    fn diag(d: &[i64]) -> CycMatrix {
        CycMatrix::diagonal(d.iter().map(|&x| CycNum::from_int(x)).collect())
    }

    fn perm(p: &[usize]) -> CycMatrix {
        let mut m = CycMatrix::zeros(p.len(), p.len());
        for (i, &j) in p.iter().enumerate() {
            m[(j, i)] = CycNum::one();
        }
        m
    }

    #[test]
    fn unit_acts_trivially() {
        let orb = orbifold(vec![diag(&[-1, 1]), diag(&[1, -1])]);
        for g in 0..4 {
            let x = ClassFunctionElement::basis(g, TPoly::t_pow(Rational::new(1, 2)));
            assert_eq!(hh_product(&orb, &ClassFunctionElement::unit(), &x), x);
        }
    }

    #[test]
    fn minus_identity_squares_to_zero() {
        let orb = orbifold(vec![diag(&[-1, -1])]);
        let e = ClassFunctionElement::class_sum(&orb, orb.group().class_of(1));
        assert!(hh_product(&orb, &e, &e).is_zero());
    }

    #[test]
    fn reflections() {
        let orb = orbifold(vec![diag(&[-1, 1]), diag(&[1, -1])]);
        let g = orb.group();
        let (a, b, ab) = (g.find(&diag(&[-1, 1])).unwrap(), g.find(&diag(&[1, -1])).unwrap(), g.find(&diag(&[-1, -1])).unwrap());
        let e = |x: usize| ClassFunctionElement::class_sum(&orb, g.class_of(x));
        assert_eq!(hh_product(&orb, &e(a), &e(b)), e(ab));
        assert!(hh_product(&orb, &e(a), &e(a)).is_zero());
        let t = hh_table(&orb).unwrap();
        assert_eq!(t.counts[g.class_of(a)][g.class_of(b)][g.class_of(ab)], 1);
        t.check_associativity().unwrap();
        t.check_commutativity().unwrap();
        t.check_grading().unwrap();
        assert_eq!(t.dims_by_degree(2), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn s3_transposition_times_three_cycle() {
        let orb = orbifold(vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])]);
        let g = orb.group();
        let t = hh_table(&orb).unwrap();
        let tr = g.class_of(g.find(&perm(&[1, 0, 2])).unwrap());
        let cyc = g.class_of(g.find(&perm(&[1, 2, 0])).unwrap());
        // brute force: ℓ(transposition) = 2, ℓ(3-cycle) = 4, and τ·c is again a
        // transposition of ℓ 2, so no pair is additive
        let brute: u64 = g.classes()[tr]
            .iter()
            .flat_map(|&a| g.classes()[cyc].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| orb.ell(a) + orb.ell(b) == orb.ell(g.mul(a, b)))
            .count() as u64;
        assert_eq!(brute, 0);
        assert!(t.counts[tr][cyc].iter().all(|&c| c == 0));
        // two transpositions compose to a 3-cycle additively: (12)(23) has ℓ 2+2 = 4
        assert_eq!(t.counts[tr][tr][cyc], 3);
        t.check_associativity().unwrap();
        t.check_commutativity().unwrap();
    }
}
