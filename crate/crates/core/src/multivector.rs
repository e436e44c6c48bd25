//! Exterior algebra on the 2n complexified real tangent directions
//! `∂z₁ … ∂zₙ, ∂z̄₁ … ∂z̄ₙ` (generator `i < n` is ∂z_{i+1}, generator
//! `n + i` is ∂z̄_{i+1}).
//!
//! A group element g ∈ GL(n) acts on the generators by the block matrix
//! `diag(ḡ, g)`: the conjugate on the ∂z block and g itself on the ∂z̄ block.
//! This is a homomorphism, keeps every ∂zᵢ∧∂z̄ᵢ invariant under unitary
//! scalars, and is the complexification of the real action up to swapping the
//! names of the two blocks.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Matrix};

/// Basis blade: bit i set means generator i occurs. Increasing index order.
pub type Blade = u64;

pub fn blade_from_indices(idx: &[usize]) -> Blade {
    idx.iter().fold(0, |acc, &i| acc | (1 << i))
}

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..64).filter(|i| b >> i & 1 == 1).collect()
}

pub fn blade_grade(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Sign of `e_a ∧ e_b` relative to the sorted blade `a | b`; `None` if they share a generator.
pub fn wedge_sign(a: Blade, b: Blade) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<Blade, CycNum>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 64, "at most 64 generators");
        Multivector { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: CycNum) -> Self {
        Self::term(dim, 0, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, CycNum::one())
    }

    pub fn term(dim: usize, blade: Blade, c: CycNum) -> Self {
        let mut m = Self::zero(dim);
        m.add_term(blade, c);
        m
    }

    /// The single generator `e_i`.
    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        Self::term(dim, 1 << i, CycNum::one())
    }

    /// `Σ v_i e_i`.
    pub fn vector(v: &[CycNum]) -> Self {
        let mut m = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            m.add_term(1 << i, c.clone());
        }
        m
    }

    /// Wedge of the given vectors in order.
    pub fn wedge_of(dim: usize, vectors: &[Vec<CycNum>]) -> Self {
        vectors
            .iter()
            .fold(Self::one(dim), |acc, v| acc.wedge(&Self::vector(v)).expect("same dimension"))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: Blade) -> CycNum {
        self.terms.get(&blade).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade if the multivector is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|&b| blade_grade(b));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn grade_part(&self, k: usize) -> Multivector {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| blade_grade(**b) == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, blade: Blade, c: CycNum) {
        if c.is_zero() {
            return;
        }
        debug_assert!(blade >> self.dim == 0);
        match self.terms.get_mut(&blade) {
            Some(e) => {
                *e = e.add_ref(&c);
                if e.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    fn check_dim(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Usage(format!(
                "multivector dimensions differ: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for (b, x) in &self.terms {
            out.add_term(*b, x.mul_ref(c));
        }
        out
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_dim(other)?;
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(neg) = wedge_sign(*a, *b) {
                    let c = ca.mul_ref(cb);
                    out.add_term(a | b, if neg { c.neg_ref() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Apply the algebra automorphism induced by `e_j ↦ Σ_i m[i][j] e_i`.
    pub fn transform(&self, m: &CycMatrix) -> Result<Multivector> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Usage("transformation matrix does not match multivector dimension".into()));
        }
        let images: Vec<Multivector> = (0..self.dim).map(|j| Multivector::vector(&m.column(j))).collect();
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            let mut img = Multivector::scalar(self.dim, c.clone());
            for i in blade_indices(*b) {
                img = img.wedge(&images[i])?;
                if img.is_zero() {
                    break;
                }
            }
            out = out.add(&img)?;
        }
        Ok(out)
    }

    /// Coordinates along a list of blades (missing blades read as zero).
    pub fn coordinates(&self, blades: &[Blade]) -> Vec<CycNum> {
        blades.iter().map(|b| self.coeff(*b)).collect()
    }
}

/// All blades of grade `k` in `dim` generators, in increasing numeric order.
pub fn blades_of_grade(dim: usize, k: usize) -> Vec<Blade> {
    (0..(1u64 << dim)).filter(|b| blade_grade(*b) == k).collect()
}

/// The 2n×2n matrix `diag(ḡ, g)` by which an n×n group element acts on the
/// generators.
pub fn ambient_action(g: &CycMatrix) -> CycMatrix {
    let n = g.rows();
    let gc = g.conj();
    let mut a = CycMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = gc[(i, j)].clone();
            a[(n + i, n + j)] = g[(i, j)].clone();
        }
    }
    a
}

/// Induced action of the group element `g` (an n×n matrix) on multivectors in 2n generators.
pub fn act(g: &CycMatrix, x: &Multivector) -> Result<Multivector> {
    x.transform(&ambient_action(g))
}

/// A splitting `fixed ⊕ normal` of the ambient space, with the change of
/// basis precomputed.
#[derive(Clone, Debug)]
pub struct AdaptedFrame {
    basis: CycMatrix,
    inverse: CycMatrix,
    normal_mask: Blade,
}

impl AdaptedFrame {
    pub fn new(fixed_basis: &[Vec<CycNum>], normal_basis: &[Vec<CycNum>]) -> Result<Self> {
        let dim = fixed_basis.len() + normal_basis.len();
        let spans_err = || Error::Domain("adapted bases do not span the ambient space".into());
        let cols: Vec<Vec<CycNum>> = fixed_basis.iter().chain(normal_basis).cloned().collect();
        if cols.iter().any(|c| c.len() != dim) {
            return Err(spans_err());
        }
        let basis = Matrix::from_columns(dim, &cols)?;
        let inverse = basis.inverse().map_err(|_| spans_err())?;
        let all: Blade = if dim == 64 { !0 } else { (1u64 << dim) - 1 };
        let normal_mask = all & !((1u64 << fixed_basis.len()) - 1);
        Ok(AdaptedFrame { basis, inverse, normal_mask })
    }

    /// Component of `x` with exactly `p` normal factors.
    pub fn project(&self, x: &Multivector, p: usize) -> Result<Multivector> {
        let adapted = x.transform(&self.inverse)?;
        let mut kept = Multivector::zero(x.dim());
        for (b, c) in adapted.terms() {
            if blade_grade(b & self.normal_mask) == p {
                kept.add_term(*b, c.clone());
            }
        }
        kept.transform(&self.basis)
    }
}

/// Component of `x` with exactly `p` factors from `normal_basis`, in the
/// splitting `fixed ⊕ normal` of the ambient space.
pub fn project_adapted(
    x: &Multivector,
    fixed_basis: &[Vec<CycNum>],
    normal_basis: &[Vec<CycNum>],
    p: usize,
) -> Result<Multivector> {
    if fixed_basis.len() + normal_basis.len() != x.dim() {
        return Err(Error::Domain("adapted bases do not span the ambient space".into()));
    }
    AdaptedFrame::new(fixed_basis, normal_basis)?.project(x, p)
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.dim / 2;
        let name = |i: usize| {
            if self.dim.is_multiple_of(2) && i >= n { format!("dzb{}", i - n + 1) } else { format!("dz{}", i + 1) }
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let w = if *b == 0 {
                    "1".to_string()
                } else {
                    blade_indices(*b).into_iter().map(name).collect::<Vec<_>>().join("^")
                };
                format!("({c})*{w}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
