use std::collections::{BTreeMap, HashMap};

use super::moyal::{moyal, Mono, WeylPoly};
use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Matrix, Rational, SparseEchelon, SparseVec};
use crate::group::{generate_group, Group};
use crate::multivector::{blade_indices, blades_of_grade, wedge_sign, AdaptedFrame, Blade, Multivector};

/// A linear symplectic map of ℝ²ⁿ with its action on linear functions.
#[derive(Clone, Debug)]
pub struct SpElement {
    n: usize,
    g: Matrix<Rational>,
    /// `γ·y_j = Σ_i a[i][j] y_i`, i.e. a = G^{−T}.
    a: Matrix<Rational>,
    ell: usize,
}

/// ω with ω(y_i, y_{i+n}) = 1.
pub fn omega(n: usize) -> Matrix<Rational> {
    let mut w = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        w[(i, i + n)] = Rational::one();
        w[(i + n, i)] = Rational::from_int(-1);
    }
    w
}

impl SpElement {
    pub fn new(g: Matrix<Rational>) -> Result<Self> {
        if !g.is_square() || !g.rows().is_multiple_of(2) || g.rows() == 0 {
            return Err(Error::Domain("a symplectic element must be a square matrix of even size".into()));
        }
        let n = g.rows() / 2;
        let w = omega(n);
        if g.transpose().mul(&w)?.mul(&g)? != w {
            return Err(Error::Domain("matrix does not preserve the symplectic form".into()));
        }
        let a = g.inverse()?.transpose();
        let ell = a.sub(&Matrix::identity(2 * n))?.rank();
        Ok(SpElement { n, g, a, ell })
    }

    pub fn identity(n: usize) -> Self {
        SpElement::new(Matrix::identity(2 * n)).expect("identity is symplectic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.g
    }

    /// Codimension of the fixed space.
    pub fn ell(&self) -> usize {
        self.ell
    }

    fn a_cyc(&self) -> CycMatrix {
        self.a.map(|r| CycNum::from_rational(r.clone()))
    }

    /// γ·y_j for every j.
    fn linear_images(&self) -> Vec<WeylPoly> {
        (0..2 * self.n).map(|j| WeylPoly::linear(self.n, &self.a.column(j))).collect()
    }

    pub fn compose(&self, other: &SpElement) -> Result<SpElement> {
        SpElement::new(self.g.mul(&other.g)?)
    }
}

/// A finite subgroup of Sp(2n, ℚ) with its multiplication table.
#[derive(Clone, Debug)]
pub struct SymplecticGroup {
    group: Group,
    elements: Vec<SpElement>,
}

impl SymplecticGroup {
    pub fn new(generators: &[Matrix<Rational>], cap: usize) -> Result<Self> {
        let gens: Vec<CycMatrix> = generators.iter().map(|g| g.map(|r| CycNum::from_rational(r.clone()))).collect();
        let group = generate_group(&gens, cap)?;
        let elements = group
            .elements()
            .iter()
            .map(|m| {
                let entries: Option<Vec<Rational>> = m.entries().iter().map(CycNum::to_rational).collect();
                let entries = entries.ok_or_else(|| Error::Domain("symplectic model must be rational".into()))?;
                let rows = entries.chunks(m.cols()).map(<[Rational]>::to_vec).collect();
                SpElement::new(Matrix::from_rows(rows)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymplecticGroup { group, elements })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn element(&self, i: usize) -> &SpElement {
        &self.elements[i]
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// `Σ_I a_I ⊗ y_I` in Λ^p V ⊗ W, with I a strictly increasing index set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KoszulChain {
    n: usize,
    degree: usize,
    terms: BTreeMap<Blade, WeylPoly>,
}

impl KoszulChain {
    pub fn zero(n: usize, degree: usize) -> Self {
        KoszulChain { n, degree, terms: BTreeMap::new() }
    }

    pub fn term(n: usize, blade: Blade, a: WeylPoly) -> Self {
        let mut c = KoszulChain::zero(n, blade.count_ones() as usize);
        c.add_term(blade, a);
        c
    }

    /// 1 ⊗ (empty wedge).
    pub fn unit(n: usize) -> Self {
        KoszulChain::term(n, 0, WeylPoly::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &WeylPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, blade: Blade, a: WeylPoly) {
        debug_assert_eq!(blade.count_ones() as usize, self.degree);
        let sum = match self.terms.get(&blade) {
            Some(x) => x.add(&a),
            None => a,
        };
        if sum.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, sum);
        }
    }

    fn check_compatible(&self, other: &KoszulChain) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::Usage("Koszul chains differ in dimension or degree".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &KoszulChain) -> Result<KoszulChain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, a) in &other.terms {
            out.add_term(*b, a.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KoszulChain) -> Result<KoszulChain> {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> KoszulChain {
        let mut out = KoszulChain::zero(self.n, self.degree);
        for (b, a) in &self.terms {
            out.add_term(*b, a.scale(c));
        }
        out
    }

    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.terms.values().flat_map(WeylPoly::weights).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn weight_part(&self, w: usize) -> KoszulChain {
        let mut out = KoszulChain::zero(self.n, self.degree);
        for (b, a) in &self.terms {
            out.add_term(*b, a.weight_part(w));
        }
        out
    }

    /// γ acting on both tensor factors.
    pub fn act(&self, el: &SpElement) -> Result<KoszulChain> {
        let a = el.a_cyc();
        let mut out = KoszulChain::zero(self.n, self.degree);
        for (b, poly) in &self.terms {
            let moved = poly.substitute(&el.a)?;
            let lam = Multivector::term(2 * self.n, *b, CycNum::one()).transform(&a)?;
            for (blade, c) in lam.terms() {
                out.add_term(*blade, moved.scale(&rational(c)?));
            }
        }
        Ok(out)
    }

    fn sparse(&self, index: &mut SliceIndex) -> SparseVec {
        let mut v = SparseVec::new();
        for (b, a) in &self.terms {
            for (m, c) in a.terms() {
                let next = index.len();
                let k = *index.entry((*b, m.clone())).or_insert(next);
                v.insert(k, c.clone());
            }
        }
        v
    }
}

fn rational(c: &CycNum) -> Result<Rational> {
    c.to_rational().ok_or_else(|| Error::Invariant(format!("expected a rational coefficient, got {c}")))
}

/// `d_γ(a ⊗ y_I) = Σ_j (−1)^j (y_j ⋆ a − a ⋆ γ·y_j) ⊗ y_j ∧ y_I`, j = 1..2n.
pub fn koszul_d(el: &SpElement, c: &KoszulChain) -> Result<KoszulChain> {
    if el.n != c.n {
        return Err(Error::Usage("chain and group element act on different spaces".into()));
    }
    let n = c.n;
    let images = el.linear_images();
    let mut out = KoszulChain::zero(n, c.degree + 1);
    for (blade, a) in &c.terms {
        for (j, gy) in images.iter().enumerate() {
            let Some(neg) = wedge_sign(1 << j, *blade) else { continue };
            let coeff = moyal(&WeylPoly::var(n, j), a)?.sub(&moyal(a, gy)?);
            // (−1)^j with j 1-based is −1 for even 0-based j
            let sign = if neg == (j % 2 == 0) { 1 } else { -1 };
            out.add_term(blade | (1 << j), coeff.scale(&Rational::from_int(sign)));
        }
    }
    Ok(out)
}

/// Monomials of the given weight in 2n variables, ħ powers included.
pub fn monomials_of_weight(vars: usize, w: usize) -> Vec<Mono> {
    fn compositions(vars: usize, total: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() + 1 == vars {
            cur.push(total as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=total).rev() {
            cur.push(e as u16);
            compositions(vars, total - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for h in 0..=w / 2 {
        let mut exps = Vec::new();
        if vars == 0 {
            if w == 2 * h {
                exps.push(Vec::new());
            }
        } else {
            compositions(vars, w - 2 * h, &mut Vec::new(), &mut exps);
        }
        out.extend(exps.into_iter().map(|exps| Mono { exps, h: h as u32 }));
    }
    out
}

/// Basis of the (degree k, weight w) slice of the Koszul complex.
pub fn slice_basis(n: usize, k: usize, w: usize) -> Vec<KoszulChain> {
    let monos = monomials_of_weight(2 * n, w);
    let mut out = Vec::new();
    for b in blades_of_grade(2 * n, k) {
        for m in &monos {
            out.push(KoszulChain::term(n, b, WeylPoly::monomial(n, m.clone(), Rational::one())));
        }
    }
    out
}

/// Column index of each (blade, monomial) pair met so far.
type SliceIndex = HashMap<(Blade, Mono), usize>;

/// Rank of d_γ restricted to the (k, w) slice, with its image rows.
fn image_of_slice(el: &SpElement, k: usize, w: usize) -> Result<(SparseEchelon, SliceIndex)> {
    let mut ech = SparseEchelon::new();
    let mut index = HashMap::new();
    if k < 2 * el.n {
        for c in slice_basis(el.n, k, w) {
            ech.insert(koszul_d(el, &c)?.sparse(&mut index));
        }
    }
    Ok((ech, index))
}

/// dim H^k of the twisted Koszul complex in weight w, computed from exact
/// ranks on the weight slices. Requires `w ≤ wmax − 1`.
pub fn koszul_cohomology_dims(el: &SpElement, k: usize, w: usize, wmax: usize) -> Result<usize> {
    if w + 1 > wmax {
        return Err(Error::Usage(format!("weight {w} is outside the band below {wmax}")));
    }
    if k > 2 * el.n {
        return Ok(0);
    }
    let dim = slice_basis(el.n, k, w).len();
    let rank_out = image_of_slice(el, k, w)?.0.rank();
    let rank_in = if k >= 1 && w >= 1 { image_of_slice(el, k - 1, w - 1)?.0.rank() } else { 0 };
    Ok(dim - rank_out - rank_in)
}

/// Ψ_γ = 1 ⊗ (Π^⊥)^{ℓ/2}/(ℓ/2)!, the divided top power of the Poisson
/// bivector restricted to the normal space; the unit when ℓ = 0.
pub fn psi_generator(el: &SpElement) -> Result<KoszulChain> {
    let n = el.n;
    if el.ell == 0 {
        return Ok(KoszulChain::unit(n));
    }
    let shifted = el.a.sub(&Matrix::identity(2 * n))?;
    let to_cyc = |vs: Vec<Vec<Rational>>| -> Vec<Vec<CycNum>> {
        vs.into_iter().map(|v| v.into_iter().map(CycNum::from_rational).collect()).collect()
    };
    let frame = AdaptedFrame::new(&to_cyc(shifted.kernel_basis()), &to_cyc(shifted.image_basis()))?;
    let mut pi = Multivector::zero(2 * n);
    for i in 0..n {
        pi.add_term((1 << i) | (1 << (i + n)), CycNum::from_int(-1));
    }
    let pi_perp = frame.project(&pi, 2)?;
    let half = el.ell / 2;
    let mut top = Multivector::one(2 * n);
    for _ in 0..half {
        top = top.wedge(&pi_perp)?;
    }
    let norm = Rational::factorial(half).recip()?;
    let mut out = KoszulChain::zero(n, el.ell);
    for (b, c) in top.terms() {
        out.add_term(*b, WeylPoly::constant(n, &rational(c)? * &norm));
    }
    Ok(out)
}

/// `(a₁ ⊗ y_P) ∪ (a₂ ⊗ y_Q) = (a₁ ⋆ γ₁(a₂)) ⊗ y_P ∧ γ₁(y_Q)` for x ∈ K_{γ₁},
/// y ∈ K_{γ₂}; the result lies in K_{γ₁γ₂}.
pub fn twisted_cup_koszul(g1: &SpElement, x: &KoszulChain, y: &KoszulChain) -> Result<KoszulChain> {
    if x.n != y.n || g1.n != x.n {
        return Err(Error::Usage("chains act on different spaces".into()));
    }
    let moved = y.act(g1)?;
    let mut out = KoszulChain::zero(x.n, x.degree + y.degree);
    for (p, a1) in &x.terms {
        for (q, a2) in &moved.terms {
            let Some(neg) = wedge_sign(*p, *q) else { continue };
            let c = moyal(a1, a2)?;
            out.add_term(p | q, if neg { c.scale(&Rational::from_int(-1)) } else { c });
        }
    }
    Ok(out)
}

/// Whether `a − b` is d_γ-exact, decided weight by weight.
pub fn class_equal_mod_exact(el: &SpElement, a: &KoszulChain, b: &KoszulChain) -> Result<bool> {
    let diff = a.sub(b)?;
    for w in diff.weights() {
        let part = diff.weight_part(w);
        if diff.degree == 0 || w == 0 {
            return Ok(false);
        }
        let (ech, mut index) = image_of_slice(el, diff.degree - 1, w - 1)?;
        if !ech.contains(part.sparse(&mut index)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ψ_a ∪ Ψ_b against Ψ_{ab} in H(K_{ab}): equal mod exact when the pair is
/// ℓ-additive, exact otherwise. Returns (ℓ-additive, verdict).
pub fn check_psi_cup(g: &SymplecticGroup, a: usize, b: usize) -> Result<(bool, bool)> {
    let (ea, eb) = (g.element(a), g.element(b));
    let ab = g.group().mul(a, b);
    let eab = g.element(ab);
    let cup = twisted_cup_koszul(ea, &psi_generator(ea)?, &psi_generator(eb)?)?;
    let additive = ea.ell + eb.ell == eab.ell;
    let target = if additive { psi_generator(eab)? } else { KoszulChain::zero(ea.n, cup.degree) };
    Ok((additive, class_equal_mod_exact(eab, &cup, &target)?))
}

/// h·Ψ_γ against Ψ_{hγh⁻¹} in H(K_{hγh⁻¹}).
pub fn check_psi_conjugation(g: &SymplecticGroup, h: usize, gamma: usize) -> Result<bool> {
    let conj = g.group().conjugate(h, gamma);
    let moved = psi_generator(g.element(gamma))?.act(g.element(h))?;
    class_equal_mod_exact(g.element(conj), &moved, &psi_generator(g.element(conj))?)
}

/// Human-readable listing of a chain.
pub fn describe(c: &KoszulChain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.terms
        .iter()
        .map(|(b, a)| {
            let wedge: Vec<String> = blade_indices(*b).into_iter().map(|i| format!("y{}", i + 1)).collect();
            format!("({a}) ⊗ {}", if wedge.is_empty() { "1".into() } else { wedge.join("^") })
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect()).unwrap()
    }

    fn minus_identity(n: usize) -> SpElement {
        SpElement::new(Matrix::identity(2 * n).scale(&q(-1))).unwrap()
    }

    fn random_chain(n: usize, k: usize, rng: &mut ChaCha8Rng) -> KoszulChain {
        let blades = blades_of_grade(2 * n, k);
        let mut c = KoszulChain::zero(n, k);
        for _ in 0..3 {
            let monos = monomials_of_weight(2 * n, rng.gen_range(0..4));
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let b = blades[rng.gen_range(0..blades.len())];
            c.add_term(b, WeylPoly::monomial(n, m, q(rng.gen_range(1..5))));
        }
        c
    }

    #[test]
    fn non_symplectic_rejected() {
        assert!(matches!(SpElement::new(mat(vec![vec![2, 0], vec![0, 1]])), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_kills_unit() {
        let d = koszul_d(&SpElement::identity(1), &KoszulChain::unit(1)).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn minus_identity_on_unit() {
        let d = koszul_d(&minus_identity(1), &KoszulChain::unit(1)).unwrap();
        // (−1)^j (y_j + y_j) ⊗ y_j
        let expect = KoszulChain::term(1, 1, WeylPoly::var(1, 0).scale(&q(-2)))
            .add(&KoszulChain::term(1, 2, WeylPoly::var(1, 1).scale(&q(2))))
            .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn d_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rot = SpElement::new(mat(vec![vec![0, -1], vec![1, -1]])).unwrap();
        for el in [minus_identity(1), rot, SpElement::identity(1)] {
            for k in 0..2 {
                for _ in 0..5 {
                    let c = random_chain(1, k, &mut rng);
                    let dd = koszul_d(&el, &koszul_d(&el, &c).unwrap()).unwrap();
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn d_raises_weight_by_one() {
        let c = KoszulChain::term(1, 1, WeylPoly::var(1, 1).commutative_mul(&WeylPoly::var(1, 0)));
        let d = koszul_d(&minus_identity(1), &c).unwrap();
        assert_eq!(d.weights(), vec![3]);
    }

    #[test]
    fn rotation_cohomology() {
        let rot = SpElement::new(mat(vec![vec![0, -1], vec![1, 0]])).unwrap();
        for w in 0..4 {
            let dims: Vec<usize> = (0..=2).map(|k| koszul_cohomology_dims(&rot, k, w, 5).unwrap()).collect();
            assert_eq!(dims, vec![0, 0, usize::from(w % 2 == 0)]);
        }
        assert!(matches!(koszul_cohomology_dims(&rot, 0, 5, 5), Err(Error::Usage(_))));
    }

    #[test]
    fn untwisted_weight_zero() {
        let e = SpElement::identity(1);
        let dims: Vec<usize> = (0..=2).map(|k| koszul_cohomology_dims(&e, k, 0, 3).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 1]);
    }

    #[test]
    fn psi_is_a_cocycle_and_multiplies() {
        let el = minus_identity(1);
        let psi = psi_generator(&el).unwrap();
        assert_eq!(psi.degree(), 2);
        assert!(koszul_d(&el, &psi).unwrap().is_zero());
        let sq = twisted_cup_koszul(&el, &psi, &psi).unwrap();
        assert!(sq.is_zero());
        assert_eq!(psi_generator(&SpElement::identity(1)).unwrap(), KoszulChain::unit(1));
    }

    #[test]
    fn exactness_decision() {
        let el = minus_identity(1);
        let d = koszul_d(&el, &KoszulChain::unit(1)).unwrap();
        assert!(class_equal_mod_exact(&el, &d, &KoszulChain::zero(1, 1)).unwrap());
        let psi = psi_generator(&el).unwrap();
        assert!(!class_equal_mod_exact(&el, &psi, &KoszulChain::zero(1, 2)).unwrap());
    }
}
