//! Sector geometry of each group element: fixed space, normal space, real
//! codimension ℓ, eigen-angles and age.
//!
//! Conventions: ℓ(γ) is the real codimension of V^γ, i.e. twice the complex
//! dimension of the normal space N^γ = im(γ − I). Anything that needs a
//! complex rank uses ℓ/2 explicitly.

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Field, Matrix, Rational};
use crate::group::Group;
use crate::multivector::ambient_action;

#[derive(Clone, Debug)]
pub struct SectorData {
    pub element: usize,
    /// Basis of V^γ = ker(γ − I) in ℂⁿ.
    pub fixed_basis: Vec<Vec<CycNum>>,
    /// Basis of N^γ = im(γ − I) in ℂⁿ.
    pub normal_basis: Vec<Vec<CycNum>>,
    /// Real codimension, 2·dim_ℂ N^γ.
    pub ell: usize,
    /// Distinct angles θ ∈ (0, 1) with multiplicities; eigenvalue e^{2πiθ}.
    pub angles: Vec<(Rational, usize)>,
    pub age: Rational,
    /// Fixed and normal bases in the 2n-dimensional complexified real
    /// tangent space, with respect to the action used on multivectors.
    pub ambient_fixed: Vec<Vec<CycNum>>,
    pub ambient_normal: Vec<Vec<CycNum>>,
}

impl SectorData {
    /// Complex codimension ℓ/2.
    pub fn complex_codim(&self) -> usize {
        self.ell / 2
    }
}

fn minus_identity(m: &CycMatrix, lambda: &CycNum) -> CycMatrix {
    let n = m.rows();
    let shift = CycMatrix::identity(n).scale(lambda);
    m.sub(&shift).expect("square matrices of equal size")
}

pub fn sector(g: &Group, idx: usize) -> SectorData {
    let n = g.dim();
    let gamma = g.element(idx);
    let one = CycNum::rational_in(g.field_order(), Rational::one());
    let shifted = minus_identity(gamma, &one);
    let fixed_basis = shifted.kernel_basis();
    let normal_basis = shifted.image_basis();
    debug_assert_eq!(fixed_basis.len() + normal_basis.len(), n);

    let m = g.element_order(idx) as u64;
    let step = g.field_order() / m;
    let mut angles = Vec::new();
    let mut age = Rational::zero();
    for k in 1..m {
        let theta = Rational::new(k as i64, m as i64);
        let lambda = CycNum::zeta_pow(g.field_order(), (k * step) as i64);
        let mult = n - minus_identity(gamma, &lambda).rank();
        if mult > 0 {
            age += &(&theta * &Rational::from(mult));
            angles.push((theta, mult));
        }
    }

    let a = ambient_action(gamma);
    let a_shift = minus_identity(&a, &one);
    SectorData {
        element: idx,
        ell: 2 * normal_basis.len(),
        fixed_basis,
        normal_basis,
        angles,
        age,
        ambient_fixed: a_shift.kernel_basis(),
        ambient_normal: a_shift.image_basis(),
    }
}

/// A group together with the sector data of every element.
#[derive(Clone, Debug)]
pub struct Orbifold {
    group: Group,
    sectors: Vec<SectorData>,
}

impl Orbifold {
    pub fn new(group: Group) -> Self {
        let sectors = (0..group.size()).map(|i| sector(&group, i)).collect();
        Orbifold { group, sectors }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn sector(&self, i: usize) -> &SectorData {
        &self.sectors[i]
    }

    pub fn sectors(&self) -> &[SectorData] {
        &self.sectors
    }

    pub fn ell(&self, i: usize) -> usize {
        self.sectors[i].ell
    }

    pub fn age(&self, i: usize) -> &Rational {
        &self.sectors[i].age
    }

    /// ℓ(γᵢ) + ℓ(γⱼ) = ℓ(γᵢγⱼ).
    pub fn l_additive(&self, i: usize, j: usize) -> bool {
        self.ell(i) + self.ell(j) == self.ell(self.group.mul(i, j))
    }

    /// The two sides of the codimension lemma, computed independently:
    /// ℓ-additivity, and `V^a + V^b = V` together with `V^a ∩ V^b = V^{ab}`.
    pub fn codim_lemma_check(&self, i: usize, j: usize) -> (bool, bool) {
        let lhs = self.l_additive(i, j);
        let n = self.group.dim();
        let (va, vb) = (&self.sectors[i].fixed_basis, &self.sectors[j].fixed_basis);
        let vab = &self.sectors[self.group.mul(i, j)].fixed_basis;
        let spans = subspace_sum_dim(n, va, vb) == n;
        let rhs = spans && subspace_equal(n, &intersection_basis(n, va, vb), vab);
        (lhs, rhs)
    }
}

pub fn l_additive(orb: &Orbifold, i: usize, j: usize) -> bool {
    orb.l_additive(i, j)
}

/// dim(A + B) as the rank of the stacked bases.
pub fn subspace_sum_dim<F: Field>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> usize {
    let all: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    crate::exact::linalg::span_rank(dim, &all)
}

/// Basis of A ∩ B from the kernel of the concatenation `[A | −B]`.
pub fn intersection_basis<F: Field>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let neg_b: Vec<Vec<F>> = b.iter().map(|v| v.iter().map(F::neg).collect()).collect();
    let cols: Vec<Vec<F>> = a.iter().cloned().chain(neg_b).collect();
    let m = Matrix::from_columns(dim, &cols).expect("vectors share the ambient dimension");
    let kernel = m.kernel_basis();
    let combos: Vec<Vec<F>> = kernel
        .iter()
        .map(|k| {
            (0..dim)
                .map(|r| {
                    a.iter()
                        .zip(k)
                        .fold(F::zero(), |acc, (v, c)| acc.add(&v[r].mul(c)))
                })
                .collect()
        })
        .collect();
    let basis_matrix = Matrix::from_columns(dim, &combos).expect("same dimension");
    basis_matrix.image_basis()
}

pub fn subspace_equal<F: Field>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = crate::exact::linalg::span_rank(dim, a);
    let rb = crate::exact::linalg::span_rank(dim, b);
    ra == rb && subspace_sum_dim(dim, a, b) == ra
}

/// Checks ι(γ)+ι(γ⁻¹) = ℓ(γ)/2 and conjugation invariance of ℓ and ι for
/// every element; returns the first violation.
pub fn check_age_identities(orb: &Orbifold) -> Result<()> {
    let g = orb.group();
    for i in 0..g.size() {
        let inv = g.inverse(i);
        let lhs = orb.age(i) + orb.age(inv);
        let rhs = Rational::new(orb.ell(i) as i64, 2);
        if lhs != rhs {
            return Err(Error::Invariant(format!("age pair identity fails at element {i}: {lhs} != {rhs}")));
        }
        for h in 0..g.size() {
            let c = g.conjugate(h, i);
            if orb.age(c) != orb.age(i) || orb.ell(c) != orb.ell(i) {
                return Err(Error::Invariant(format!("age or ℓ not conjugation invariant at {i} by {h}")));
            }
        }
    }
    Ok(())
}
