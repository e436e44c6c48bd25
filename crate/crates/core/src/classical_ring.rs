//! The constant-coefficient classical sector ring: Γ-invariant families of
//! multivectors ξ_γ ∈ Λ^{•−ℓ(γ)}(V^γ) ⊗ Λ^{ℓ(γ)}(N^γ), multiplied by the
//! ℓ-additive wedge followed by projection onto the top normal bigrade.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Matrix, Rational};
use crate::inertia::Orbifold;
use crate::multivector::{ambient_action, blades_of_grade, AdaptedFrame, Blade, Multivector};

/// A family of homogeneous multivectors indexed by group elements.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorClass {
    dim: usize,
    degree: usize,
    components: BTreeMap<usize, Multivector>,
}

impl SectorClass {
    /// `dim` is the number of ambient generators, 2n.
    pub fn zero(dim: usize, degree: usize) -> Self {
        SectorClass { dim, degree, components: BTreeMap::new() }
    }

    /// The class supported at one element.
    pub fn single(element: usize, xi: Multivector, degree: usize) -> Result<Self> {
        let mut out = SectorClass::zero(xi.dim(), degree);
        out.add_component(element, xi)?;
        Ok(out)
    }

    /// The constant 1 in the identity sector.
    pub fn unit(dim: usize) -> Self {
        SectorClass::single(0, Multivector::one(dim), 0).expect("degree 0 scalar")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &BTreeMap<usize, Multivector> {
        &self.components
    }

    pub fn component(&self, element: usize) -> Multivector {
        self.components.get(&element).cloned().unwrap_or_else(|| Multivector::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Elements at which the class is nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    pub fn add_component(&mut self, element: usize, xi: Multivector) -> Result<()> {
        if xi.is_zero() {
            return Ok(());
        }
        if xi.dim() != self.dim || xi.degree() != Some(self.degree) {
            return Err(Error::Usage(format!("component is not homogeneous of degree {}", self.degree)));
        }
        let sum = self.component(element).add(&xi)?;
        if sum.is_zero() {
            self.components.remove(&element);
        } else {
            self.components.insert(element, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &SectorClass) -> Result<SectorClass> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Usage("cannot add classes of different degree".into()));
        }
        let mut out = self.clone();
        for (g, xi) in &other.components {
            out.add_component(*g, xi.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> SectorClass {
        let mut out = SectorClass::zero(self.dim, self.degree);
        for (g, xi) in &self.components {
            let s = xi.scale(c);
            if !s.is_zero() {
                out.components.insert(*g, s);
            }
        }
        out
    }

    /// Coordinates over (element, blade) pairs, element-major.
    fn coordinates(&self, group_size: usize, blades: &[Blade]) -> Vec<CycNum> {
        let mut v = Vec::with_capacity(group_size * blades.len());
        for g in 0..group_size {
            match self.components.get(&g) {
                Some(xi) => v.extend(xi.coordinates(blades)),
                None => v.extend(std::iter::repeat_n(CycNum::zero(), blades.len())),
            }
        }
        v
    }
}

/// Structure constants of the invariant ring in its invariant basis.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub basis: Vec<SectorClass>,
    /// `products[i][j]` are the coordinates of `basis[i] ∪ basis[j]` in `basis`.
    pub products: Vec<Vec<Vec<CycNum>>>,
}

impl StructureTable {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    fn degree(&self, i: usize) -> usize {
        self.basis[i].degree()
    }

    /// `((e_i e_j) e_k)` and `(e_i (e_j e_k))` compared through the constants.
    pub fn check_associativity(&self) -> Result<()> {
        let b = self.size();
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    let left = self.combine(&self.products[i][j], |m| &self.products[m][k]);
                    let right = self.combine(&self.products[j][k], |m| &self.products[i][m]);
                    if left != right {
                        return Err(Error::Invariant(format!("cup is not associative on basis ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn combine<'a>(&'a self, coeffs: &[CycNum], row: impl Fn(usize) -> &'a Vec<CycNum>) -> Vec<CycNum> {
        let mut out = vec![CycNum::zero(); self.size()];
        for (m, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, x) in row(m).iter().enumerate() {
                if !x.is_zero() {
                    out[r] = out[r].add_ref(&c.mul_ref(x));
                }
            }
        }
        out
    }

    /// `e_i ∪ e_j = (−1)^{|i||j|} e_j ∪ e_i`.
    pub fn check_graded_commutativity(&self) -> Result<()> {
        for i in 0..self.size() {
            for j in 0..self.size() {
                let sign = if self.degree(i) * self.degree(j) % 2 == 1 { -1 } else { 1 };
                let flipped: Vec<CycNum> =
                    self.products[j][i].iter().map(|c| c.scale(&Rational::from_int(sign))).collect();
                if self.products[i][j] != flipped {
                    return Err(Error::Invariant(format!("cup is not graded commutative on ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

/// The classical ring of an orbifold, with per-sector frames cached.
#[derive(Clone, Debug)]
pub struct ClassicalRing {
    orb: Orbifold,
    frames: Vec<AdaptedFrame>,
    actions: Vec<CycMatrix>,
}

impl ClassicalRing {
    pub fn new(orb: Orbifold) -> Result<Self> {
        let frames = orb
            .sectors()
            .iter()
            .map(|s| AdaptedFrame::new(&s.ambient_fixed, &s.ambient_normal))
            .collect::<Result<Vec<_>>>()?;
        let actions = orb.group().elements().iter().map(ambient_action).collect();
        Ok(ClassicalRing { orb, frames, actions })
    }

    pub fn orbifold(&self) -> &Orbifold {
        &self.orb
    }

    /// Number of ambient generators, 2n.
    pub fn ambient_dim(&self) -> usize {
        2 * self.orb.group().dim()
    }

    pub fn unit(&self) -> SectorClass {
        SectorClass::unit(self.ambient_dim())
    }

    /// Every component has exactly ℓ(γ) normal factors.
    pub fn is_valid(&self, x: &SectorClass) -> Result<bool> {
        for (g, xi) in x.components() {
            if self.frames[*g].project(xi, self.orb.ell(*g))? != *xi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reynolds operator with sector transport: ξ_γ ↦ (1/|Γ|) Σ_g act(g, ξ_γ) at gγg⁻¹.
    pub fn reynolds(&self, x: &SectorClass) -> Result<SectorClass> {
        let group = self.orb.group();
        let weight = CycNum::from_rational(Rational::new(1, group.size() as i64));
        let mut out = SectorClass::zero(x.dim(), x.degree());
        for (gamma, xi) in x.components() {
            for (g, a) in self.actions.iter().enumerate() {
                out.add_component(group.conjugate(g, *gamma), xi.transform(a)?)?;
            }
        }
        Ok(out.scale(&weight))
    }

    pub fn is_invariant(&self, x: &SectorClass) -> Result<bool> {
        Ok(self.reynolds(x)? == *x)
    }

    /// Single-sector classes spanning the degree-`degree` part, one family per
    /// conjugacy class representative.
    pub fn spanning_set(&self, degree: usize) -> Vec<SectorClass> {
        let mut out = Vec::new();
        for class in self.orb.group().classes() {
            for xi in sector_basis(&self.orb, class[0], degree) {
                out.push(SectorClass::single(class[0], xi, degree).expect("homogeneous by construction"));
            }
        }
        out
    }

    /// Exact basis of the invariant classes of the given degree.
    pub fn invariant_basis(&self, degree: usize) -> Result<Vec<SectorClass>> {
        if degree > self.ambient_dim() {
            return Ok(Vec::new());
        }
        let averaged = self
            .spanning_set(degree)
            .iter()
            .map(|x| self.reynolds(x))
            .collect::<Result<Vec<_>>>()?;
        let blades = blades_of_grade(self.ambient_dim(), degree);
        let size = self.orb.group().size();
        let cols: Vec<Vec<CycNum>> = averaged.iter().map(|x| x.coordinates(size, &blades)).collect();
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let (pivots, _) = Matrix::from_columns(size * blades.len(), &cols)?.rref();
        Ok(pivots.into_iter().map(|p| averaged[p].clone()).collect())
    }

    /// (x ∪ y)_γ = Σ_{αβ=γ, ℓ additive} pr_γ(ξ_α ∧ η_β).
    pub fn cup(&self, x: &SectorClass, y: &SectorClass) -> Result<SectorClass> {
        let group = self.orb.group();
        let mut out = SectorClass::zero(self.ambient_dim(), x.degree() + y.degree());
        for (a, xi) in x.components() {
            for (b, eta) in y.components() {
                if !self.orb.l_additive(*a, *b) {
                    continue;
                }
                let gamma = group.mul(*a, *b);
                let w = xi.wedge(eta)?;
                if w.is_zero() {
                    continue;
                }
                out.add_component(gamma, self.frames[gamma].project(&w, self.orb.ell(gamma))?)?;
            }
        }
        Ok(out)
    }

    /// The multiplication table of the invariant ring over all degrees.
    pub fn structure_constants(&self) -> Result<StructureTable> {
        let top = self.ambient_dim();
        let size = self.orb.group().size();
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        let mut solvers = Vec::new();
        for d in 0..=top {
            offsets.push(basis.len());
            let b = self.invariant_basis(d)?;
            let blades = blades_of_grade(top, d);
            let cols: Vec<Vec<CycNum>> = b.iter().map(|x| x.coordinates(size, &blades)).collect();
            solvers.push((Matrix::from_columns(size * blades.len(), &cols)?, blades));
            basis.extend(b);
        }
        let total = basis.len();
        let mut products = vec![vec![vec![CycNum::zero(); total]; total]; total];
        for i in 0..total {
            for j in 0..total {
                let d = basis[i].degree() + basis[j].degree();
                if d > top {
                    continue;
                }
                let p = self.cup(&basis[i], &basis[j])?;
                if p.is_zero() {
                    continue;
                }
                let (m, blades) = &solvers[d];
                let coords = m.solve(&p.coordinates(size, blades))?.ok_or_else(|| {
                    Error::Invariant(format!("product of basis classes {i} and {j} is not invariant"))
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    products[i][j][offsets[d] + k] = c;
                }
            }
        }
        Ok(StructureTable { basis, products })
    }

    /// Invariant dimension in each degree 0..=2n.
    pub fn betti(&self) -> Result<Vec<usize>> {
        (0..=self.ambient_dim()).map(|d| Ok(self.invariant_basis(d)?.len())).collect()
    }
}

/// Basis of Λ^{degree−ℓ}(V^γ) ⊗ Λ^ℓ(N^γ) at element `gamma`: wedges of
/// fixed basis vectors followed by the full normal wedge.
pub fn sector_basis(orb: &Orbifold, gamma: usize, degree: usize) -> Vec<Multivector> {
    let s = orb.sector(gamma);
    let dim = 2 * orb.group().dim();
    if degree < s.ell || degree - s.ell > s.ambient_fixed.len() {
        return Vec::new();
    }
    let top_normal = Multivector::wedge_of(dim, &s.ambient_normal);
    subsets(s.ambient_fixed.len(), degree - s.ell)
        .into_iter()
        .map(|subset| {
            let chosen: Vec<Vec<CycNum>> = subset.iter().map(|&i| s.ambient_fixed[i].clone()).collect();
            Multivector::wedge_of(dim, &chosen).wedge(&top_normal).expect("same dimension")
        })
        .collect()
}

/// Increasing k-subsets of 0..n in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, DEFAULT_CAP};

    fn ring(gens: Vec<Vec<i64>>) -> ClassicalRing {
        let gens: Vec<CycMatrix> = gens
            .into_iter()
            .map(|d| CycMatrix::diagonal(d.into_iter().map(CycNum::from_int).collect()))
            .collect();
        ClassicalRing::new(Orbifold::new(generate_group(&gens, DEFAULT_CAP).unwrap())).unwrap()
    }

    #[test]
    fn trivial_group_is_exterior_algebra() {
        let r = ring(vec![vec![1, 1]]);
        assert_eq!(r.betti().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn z2_on_c1() {
        let r = ring(vec![vec![-1]]);
        assert_eq!(r.betti().unwrap(), vec![1, 0, 2]);
        let twisted = r.invariant_basis(2).unwrap().into_iter().find(|x| x.support() == vec![1]).unwrap();
        assert!(r.cup(&twisted, &twisted).unwrap().is_zero());
        assert_eq!(r.cup(&r.unit(), &twisted).unwrap(), twisted);
        assert!(r.is_valid(&twisted).unwrap());
        assert!(r.is_invariant(&twisted).unwrap());
    }

    #[test]
    fn minus_identity_on_c2_has_twisted_top_class() {
        let r = ring(vec![vec![-1, -1]]);
        let top = r.invariant_basis(4).unwrap();
        assert!(top.iter().any(|x| x.support() == vec![1]));
    }

    #[test]
    fn reflections_multiply_to_top_class() {
        let r = ring(vec![vec![-1, 1], vec![1, -1]]);
        let g = r.orbifold().group();
        let find = |d: Vec<i64>| g.find(&CycMatrix::diagonal(d.into_iter().map(CycNum::from_int).collect())).unwrap();
        let (a, b, ab) = (find(vec![-1, 1]), find(vec![1, -1]), find(vec![-1, -1]));
        let top = |e: usize| {
            let s = r.orbifold().sector(e);
            SectorClass::single(e, Multivector::wedge_of(4, &s.ambient_normal), 2).unwrap()
        };
        let p = r.cup(&top(a), &top(b)).unwrap();
        assert_eq!(p.support(), vec![ab]);
        // the product is ± the top normal class at ab, with the sign fixed by orientations
        let expected = Multivector::wedge_of(4, &r.orbifold().sector(ab).ambient_normal);
        let got = p.component(ab);
        assert!(got == expected || got == expected.scale(&CycNum::from_int(-1)));
    }

    #[test]
    fn table_laws() {
        for r in [ring(vec![vec![-1]]), ring(vec![vec![-1, 1], vec![1, -1]]), ring(vec![vec![-1, -1]])] {
            let t = r.structure_constants().unwrap();
            t.check_associativity().unwrap();
            t.check_graded_commutativity().unwrap();
            let unit = t.basis.iter().position(|x| *x == r.unit()).unwrap();
            for j in 0..t.size() {
                let mut e = vec![CycNum::zero(); t.size()];
                e[j] = CycNum::one();
                assert_eq!(t.products[unit][j], e);
            }
        }
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}
