//! Explicit cochain-level maps on polynomial functions: the normal twisted
//! cocycle Ω_γ, the maps T₁, T₂, L₁, L₂, L₃, and the roundtrip L∘T = id.
//!
//! Everything for a fixed γ is computed in eigencoordinates w₁…w₂ₙ of its
//! ambient action A(γ) on the 2n-dimensional complexified tangent space, so
//! that γ acts on a point by w_j ↦ λ_j w_j. The twisted right action on
//! functions is the pullback f ↦ f(γ·), matching the tilde substitution
//! ỹ = γy in the divided differences.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Rational};
use crate::group::Group;
use crate::inertia::Orbifold;
use crate::multivector::{ambient_action, blade_indices, project_adapted, wedge_sign, Blade, Multivector};

/// Polynomial in `vars` commuting variables with cyclotomic coefficients.
#[derive(Clone, PartialEq)]
pub struct PolyFun {
    vars: usize,
    terms: BTreeMap<Vec<u16>, CycNum>,
}

impl PolyFun {
    pub fn zero(vars: usize) -> Self {
        PolyFun { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: CycNum) -> Self {
        Self::monomial(vars, vec![0; vars], c)
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, CycNum::one())
    }

    pub fn monomial(vars: usize, exps: Vec<u16>, c: CycNum) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, CycNum::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &CycNum)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                *e = e.add_ref(&c);
                if e.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &PolyFun) -> PolyFun {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyFun) -> PolyFun {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> PolyFun {
        let mut out = PolyFun::zero(self.vars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, other: &PolyFun) -> PolyFun {
        let mut out = PolyFun::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> PolyFun {
        let mut out = PolyFun::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.scale(&Rational::from_int(e[i] as i64)));
            }
        }
        out
    }

    /// `w_j ↦ λ_j w_j` for the listed variables.
    pub fn scale_vars(&self, scaling: &[(usize, CycNum)]) -> PolyFun {
        let mut out = PolyFun::zero(self.vars);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            for (j, lam) in scaling {
                c = c.mul_ref(&lam.pow(e[*j] as u32));
            }
            out.add_term(e.clone(), c);
        }
        out
    }

    /// `(f − f|_{w_i ↦ λ w_i}) / ((1 − λ) w_i)`, an exact division.
    pub fn divided_difference(&self, i: usize, lambda: &CycNum) -> Result<PolyFun> {
        let denom = CycNum::one().sub_ref(lambda);
        let inv = denom
            .inv()
            .map_err(|_| Error::Invariant(format!("divided difference along a fixed coordinate {i}")))?;
        let mut out = PolyFun::zero(self.vars);
        for (e, c) in &self.terms {
            let numer = c.mul_ref(&CycNum::one().sub_ref(&lambda.pow(e[i] as u32)));
            if numer.is_zero() {
                continue;
            }
            if e[i] == 0 {
                return Err(Error::Invariant("divided difference is not an exact division".into()));
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, numer.mul_ref(&inv));
        }
        Ok(out)
    }

    /// Linear substitution `f ↦ f(M w)`.
    pub fn substitute(&self, m: &CycMatrix) -> Result<PolyFun> {
        if m.rows() != self.vars || m.cols() != self.vars {
            return Err(Error::Usage("substitution matrix does not match the number of variables".into()));
        }
        let images: Vec<PolyFun> = (0..self.vars)
            .map(|j| {
                let mut p = PolyFun::zero(self.vars);
                for (i, c) in m.row(j).iter().enumerate() {
                    let mut e = vec![0; self.vars];
                    e[i] = 1;
                    p.add_term(e, c.clone());
                }
                p
            })
            .collect();
        let mut out = PolyFun::zero(self.vars);
        for (e, c) in &self.terms {
            let mut t = PolyFun::constant(self.vars, c.clone());
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&images[j]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[CycNum]) -> CycNum {
        let mut total = CycNum::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v = v.mul_ref(&x.pow(k as u32));
                }
            }
            total = total.add_ref(&v);
        }
        total
    }
}

impl fmt::Display for PolyFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("({c})");
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*w{}", i + 1)),
                        _ => s.push_str(&format!("*w{}^{k}", i + 1)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All permutations of 0..k with their signs.
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

/// Ω_γ over the listed normal coordinates `(index, eigenvalue)`:
///
/// `Ω(f₁…f_ℓ) = (1/ℓ!) Σ_σ sgn σ Π_m Δ_{σ(m)}(f_m(z^{m−1}))`, where z^m has the
/// coordinates σ(1)…σ(m) replaced by their γ-images and Δ_i is the divided
/// difference along coordinate i.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalCocycle {
    vars: usize,
    normal: Vec<(usize, CycNum)>,
}

impl NormalCocycle {
    pub fn new(vars: usize, normal: Vec<(usize, CycNum)>) -> Result<Self> {
        for (i, lam) in &normal {
            if *i >= vars || lam.is_one() {
                return Err(Error::Domain(format!("coordinate {i} is not a normal coordinate")));
            }
        }
        Ok(NormalCocycle { vars, normal })
    }

    pub fn arity(&self) -> usize {
        self.normal.len()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// The twisted right action f ↦ f(γ·).
    pub fn twist(&self, f: &PolyFun) -> PolyFun {
        f.scale_vars(&self.normal)
    }

    pub fn eval(&self, inputs: &[PolyFun]) -> Result<PolyFun> {
        let l = self.arity();
        check_inputs(self.vars, l, inputs)?;
        let mut total = PolyFun::zero(self.vars);
        for (sigma, odd) in permutations(l) {
            let mut prod = PolyFun::one(self.vars);
            for (m, f) in inputs.iter().enumerate() {
                let earlier: Vec<(usize, CycNum)> = sigma[..m].iter().map(|&s| self.normal[s].clone()).collect();
                let (i, lam) = &self.normal[sigma[m]];
                prod = prod.mul(&f.scale_vars(&earlier).divided_difference(*i, lam)?);
                if prod.is_zero() {
                    break;
                }
            }
            total = if odd { total.sub(&prod) } else { total.add(&prod) };
        }
        Ok(total.scale(&CycNum::from_rational(Rational::factorial(l).recip()?)))
    }

    /// Twisted Hochschild coboundary of Ω on `arity + 1` inputs:
    /// `f₀F(f₁…) + Σ_i (−1)^i F(…, f_{i−1}f_i, …) + (−1)^{ℓ+1} F(f₀…f_{ℓ−1})·γ(f_ℓ)`.
    pub fn coboundary(&self, inputs: &[PolyFun]) -> Result<PolyFun> {
        let l = self.arity();
        check_inputs(self.vars, l + 1, inputs)?;
        let mut total = inputs[0].mul(&self.eval(&inputs[1..])?);
        for i in 1..=l {
            let mut merged: Vec<PolyFun> = inputs[..i - 1].to_vec();
            merged.push(inputs[i - 1].mul(&inputs[i]));
            merged.extend_from_slice(&inputs[i + 1..]);
            let v = self.eval(&merged)?;
            total = if i % 2 == 1 { total.sub(&v) } else { total.add(&v) };
        }
        let last = self.eval(&inputs[..l])?.mul(&self.twist(&inputs[l]));
        Ok(if (l + 1) % 2 == 1 { total.sub(&last) } else { total.add(&last) })
    }
}

fn check_inputs(vars: usize, arity: usize, inputs: &[PolyFun]) -> Result<()> {
    if inputs.len() != arity {
        return Err(Error::Usage(format!("expected {arity} inputs, got {}", inputs.len())));
    }
    if inputs.iter().any(|f| f.vars() != vars) {
        return Err(Error::Usage("input has the wrong number of variables".into()));
    }
    Ok(())
}

/// `bΩ_γ(f₀, …, f_ℓ) == 0`.
pub fn verify_twisted_cocycle(omega: &NormalCocycle, inputs: &[PolyFun]) -> Result<bool> {
    Ok(omega.coboundary(inputs)?.is_zero())
}

/// Multilinear cochains on polynomial functions, built from a few constructors.
#[derive(Clone, Debug)]
pub enum PolyCochain {
    Omega(NormalCocycle),
    /// `X(f₁…f_m) = (1/m!)⟨X, df₁∧…∧df_m⟩` for a constant m-vector X.
    Derivation(Multivector),
    /// `X♯Ω(f₁…f_k) = X(f₁…f_{k−ℓ}) · Ω(f_{k−ℓ+1}…f_k)`.
    Sharp(Box<PolyCochain>, Box<PolyCochain>),
    Scaled(CycNum, Box<PolyCochain>),
    /// Sum of cochains of the given arity.
    Sum(usize, Vec<PolyCochain>),
}

impl PolyCochain {
    pub fn arity(&self) -> usize {
        match self {
            PolyCochain::Omega(o) => o.arity(),
            PolyCochain::Derivation(x) => x.degree().unwrap_or(0),
            PolyCochain::Sharp(a, b) => a.arity() + b.arity(),
            PolyCochain::Scaled(_, c) => c.arity(),
            PolyCochain::Sum(k, _) => *k,
        }
    }

    pub fn eval(&self, inputs: &[PolyFun]) -> Result<PolyFun> {
        if inputs.len() != self.arity() {
            return Err(Error::Usage(format!("expected {} inputs, got {}", self.arity(), inputs.len())));
        }
        let vars = inputs.first().map(PolyFun::vars);
        match self {
            PolyCochain::Omega(o) => o.eval(inputs),
            PolyCochain::Derivation(x) => {
                let m = inputs.len();
                let mut total = PolyFun::zero(vars.unwrap_or(x.dim()));
                if m == 0 {
                    return Ok(PolyFun::constant(x.dim(), x.coeff(0)));
                }
                let perms = permutations(m);
                for (blade, c) in x.terms() {
                    let idx = blade_indices(*blade);
                    for (tau, odd) in &perms {
                        let mut prod = PolyFun::constant(x.dim(), c.clone());
                        for (a, &i) in idx.iter().enumerate() {
                            prod = prod.mul(&inputs[tau[a]].partial(i));
                        }
                        total = if *odd { total.sub(&prod) } else { total.add(&prod) };
                    }
                }
                Ok(total.scale(&CycNum::from_rational(Rational::factorial(m).recip()?)))
            }
            PolyCochain::Sharp(a, b) => {
                let split = a.arity();
                Ok(a.eval(&inputs[..split])?.mul(&b.eval(&inputs[split..])?))
            }
            PolyCochain::Scaled(c, inner) => Ok(inner.eval(inputs)?.scale(c)),
            PolyCochain::Sum(_, parts) => {
                let mut total: Option<PolyFun> = None;
                for p in parts {
                    let v = p.eval(inputs)?;
                    total = Some(match total {
                        Some(t) => t.add(&v),
                        None => v,
                    });
                }
                Ok(total.unwrap_or_else(|| PolyFun::zero(vars.unwrap_or(0))))
            }
        }
    }
}

/// Eigencoordinates of the ambient action of one group element.
#[derive(Clone, Debug)]
pub struct CochainFrame {
    /// Columns are eigenvectors in ambient coordinates.
    basis: CycMatrix,
    inverse: CycMatrix,
    eigenvalues: Vec<CycNum>,
}

impl CochainFrame {
    pub fn new(group: &Group, gamma: usize) -> Result<Self> {
        let a = ambient_action(group.element(gamma));
        let dim = a.rows();
        let is_diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || a[(i, j)].is_zero()));
        if is_diagonal {
            let eigenvalues = (0..dim).map(|i| a[(i, i)].clone()).collect();
            let id = CycMatrix::identity(dim).promote(group.field_order());
            return Ok(CochainFrame { basis: id.clone(), inverse: id, eigenvalues });
        }
        let order = group.element_order(gamma) as u64;
        let fo = group.field_order();
        let mut cols = Vec::new();
        let mut eigenvalues = Vec::new();
        for k in 0..order {
            let lam = CycNum::zeta_pow(fo, (k * (fo / order)) as i64);
            let shifted = a.sub(&CycMatrix::identity(dim).scale(&lam))?;
            for v in shifted.kernel_basis() {
                cols.push(v);
                eigenvalues.push(lam.clone());
            }
        }
        let basis = CycMatrix::from_columns(dim, &cols)?;
        let inverse = basis.inverse()?;
        Ok(CochainFrame { basis, inverse, eigenvalues })
    }

    /// A frame already in eigencoordinates.
    pub fn diagonal(eigenvalues: Vec<CycNum>) -> Self {
        let id = CycMatrix::identity(eigenvalues.len());
        CochainFrame { basis: id.clone(), inverse: id, eigenvalues }
    }

    pub fn vars(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[CycNum] {
        &self.eigenvalues
    }

    pub fn normal_coordinates(&self) -> Vec<usize> {
        (0..self.vars()).filter(|&i| !self.eigenvalues[i].is_one()).collect()
    }

    pub fn fixed_coordinates(&self) -> Vec<usize> {
        (0..self.vars()).filter(|&i| self.eigenvalues[i].is_one()).collect()
    }

    /// Ω_γ over all normal eigencoordinates, in increasing order.
    pub fn omega(&self) -> NormalCocycle {
        let normal = self.normal_coordinates().into_iter().map(|i| (i, self.eigenvalues[i].clone())).collect();
        NormalCocycle::new(self.vars(), normal).expect("normal coordinates have eigenvalue ≠ 1")
    }

    pub fn to_eigen(&self, x: &Multivector) -> Result<Multivector> {
        x.transform(&self.inverse)
    }

    pub fn from_eigen(&self, x: &Multivector) -> Result<Multivector> {
        x.transform(&self.basis)
    }

    /// Action of an ambient matrix on points, in these coordinates.
    pub fn point_action(&self, m: &CycMatrix) -> Result<CycMatrix> {
        self.inverse.mul(m)?.mul(&self.basis)
    }

    fn normal_mask(&self) -> Blade {
        self.normal_coordinates().iter().fold(0, |acc, &i| acc | (1 << i))
    }
}

/// T₁(ξ) = Σ_blades c · X_F ♯ Ω_γ for ξ written in eigencoordinates, where each
/// blade splits as (fixed part F) ∧ (all normal coordinates).
pub fn t1(frame: &CochainFrame, xi: &Multivector) -> Result<PolyCochain> {
    let mask = frame.normal_mask();
    let k = xi.degree().unwrap_or(mask.count_ones() as usize);
    let mut parts = Vec::new();
    for (blade, c) in xi.terms() {
        if blade & mask != mask {
            return Err(Error::Domain("class does not contain the full normal wedge".into()));
        }
        let fixed = blade & !mask;
        let neg = wedge_sign(fixed, mask).expect("disjoint");
        let coeff = if neg { c.neg_ref() } else { c.clone() };
        let x = PolyCochain::Derivation(Multivector::term(frame.vars(), fixed, CycNum::one()));
        parts.push(PolyCochain::Scaled(
            coeff,
            Box::new(PolyCochain::Sharp(Box::new(x), Box::new(PolyCochain::Omega(frame.omega())))),
        ));
    }
    Ok(PolyCochain::Sum(k, parts))
}

/// L₂(F) at the point `x`: for each increasing index set I, the antisymmetrised
/// value Σ_τ sgn τ F(ℓ_{I_τ(1)}, …) at x, with ℓ_i = w_i − x_i.
pub fn l2_extract(f: &PolyCochain, x: &[CycNum]) -> Result<Multivector> {
    let vars = x.len();
    let k = f.arity();
    let displaced: Vec<PolyFun> =
        (0..vars).map(|i| PolyFun::var(vars, i).sub(&PolyFun::constant(vars, x[i].clone()))).collect();
    let perms = permutations(k);
    let mut out = Multivector::zero(vars);
    for subset in crate::classical_ring::subsets(vars, k) {
        let mut coeff = CycNum::zero();
        for (tau, odd) in &perms {
            let inputs: Vec<PolyFun> = tau.iter().map(|&t| displaced[subset[t]].clone()).collect();
            let v = f.eval(&inputs)?.eval(x);
            coeff = if *odd { coeff.sub_ref(&v) } else { coeff.add_ref(&v) };
        }
        let blade = subset.iter().fold(0, |acc, &i| acc | (1 << i));
        out.add_term(blade, coeff);
    }
    Ok(out)
}

/// L₃: keep the component with exactly ℓ(γ) normal factors.
pub fn l3_project(orb: &Orbifold, gamma: usize, m: &Multivector) -> Result<Multivector> {
    let s = orb.sector(gamma);
    project_adapted(m, &s.ambient_fixed, &s.ambient_normal, s.ell)
}

/// Sample points of V^γ in eigencoordinates: the origin and one generic point.
fn fixed_points(frame: &CochainFrame) -> Vec<Vec<CycNum>> {
    let mut generic = vec![CycNum::zero(); frame.vars()];
    for (k, i) in frame.fixed_coordinates().into_iter().enumerate() {
        generic[i] = CycNum::from_int(k as i64 + 1);
    }
    vec![vec![CycNum::zero(); frame.vars()], generic]
}

/// L₃(L₂(T₁(ξ))) = ξ for a sector multivector ξ at `gamma` (ambient basis).
pub fn roundtrip_check(orb: &Orbifold, gamma: usize, xi: &Multivector) -> Result<bool> {
    let frame = CochainFrame::new(orb.group(), gamma)?;
    let f = t1(&frame, &frame.to_eigen(xi)?)?;
    for x in fixed_points(&frame) {
        let back = l3_project(orb, gamma, &frame.from_eigen(&l2_extract(&f, &x)?)?)?;
        if back != *xi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cochain on the crossed product, `Σ_γ F_γ δ_γ`, extended by T₂.
#[derive(Clone, Debug)]
pub struct CrossedCochain {
    group: Group,
    /// Point action of every group element in the working coordinates.
    actions: Vec<CycMatrix>,
    family: BTreeMap<usize, PolyCochain>,
}

/// T₂(F)(f₁δ_{g₁}, …, f_kδ_{g_k}) = Σ_γ F_γ(f₁, g₁(f₂), g₁g₂(f₃), …) δ_{γg₁⋯g_k},
/// with g(f) = f(g⁻¹·).
pub fn t2_extend(group: &Group, frame: &CochainFrame, family: BTreeMap<usize, PolyCochain>) -> Result<CrossedCochain> {
    let actions = group
        .elements()
        .iter()
        .map(|g| frame.point_action(&ambient_action(g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossedCochain { group: group.clone(), actions, family })
}

impl CrossedCochain {
    pub fn eval(&self, inputs: &[(PolyFun, usize)]) -> Result<BTreeMap<usize, PolyFun>> {
        let mut twisted = Vec::with_capacity(inputs.len());
        let mut prefix = 0usize;
        for (f, g) in inputs {
            let inv = self.group.inverse(prefix);
            twisted.push(f.substitute(&self.actions[inv])?);
            prefix = self.group.mul(prefix, *g);
        }
        let mut out = BTreeMap::new();
        for (gamma, f) in &self.family {
            let v = f.eval(&twisted)?;
            if !v.is_zero() {
                out.insert(self.group.mul(*gamma, prefix), v);
            }
        }
        Ok(out)
    }
}

/// L₁(G)(f₁, …, f_k) = G(f₁δ_e, …, f_kδ_e), split by sector.
pub fn l1_restrict(g: &CrossedCochain, inputs: &[PolyFun]) -> Result<BTreeMap<usize, PolyFun>> {
    let lifted: Vec<(PolyFun, usize)> = inputs.iter().map(|f| (f.clone(), 0)).collect();
    g.eval(&lifted)
}

/// `count` random monomials of degree ≤ `max_degree` with small integer
/// coefficients, from a fixed seed.
pub fn random_monomials(vars: usize, count: usize, max_degree: u16, seed: u64) -> Vec<PolyFun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut e = vec![0u16; vars];
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                e[rng.gen_range(0..vars)] += 1;
            }
            PolyFun::monomial(vars, e, CycNum::from_int(rng.gen_range(1..=5)))
        })
        .collect()
}

/// Ω_γ cocycle identity on random monomial tuples; returns the number of
/// trials that passed.
pub fn cocycle_trials(omega: &NormalCocycle, trials: usize, seed: u64) -> Result<usize> {
    let k = omega.arity() + 1;
    let pool = random_monomials(omega.vars(), trials * k, 5, seed);
    let mut passed = 0;
    for chunk in pool.chunks(k) {
        if verify_twisted_cocycle(omega, chunk)? {
            passed += 1;
        }
    }
    Ok(passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_ring::sector_basis;
    use crate::group::{generate_group, DEFAULT_CAP};

    fn c1_minus_one() -> NormalCocycle {
        NormalCocycle::new(1, vec![(0, CycNum::from_int(-1))]).unwrap()
    }

    fn y_pow(k: u16) -> PolyFun {
        PolyFun::monomial(1, vec![k], CycNum::one())
    }

    #[test]
    fn omega_on_c1() {
        let o = c1_minus_one();
        assert!(o.eval(&[y_pow(2)]).unwrap().is_zero());
        assert_eq!(o.eval(&[y_pow(1)]).unwrap(), PolyFun::one(1));
        assert_eq!(o.eval(&[y_pow(3)]).unwrap(), y_pow(2));
    }

    #[test]
    fn cocycle_examples() {
        let o = c1_minus_one();
        assert!(verify_twisted_cocycle(&o, &[y_pow(1), y_pow(1)]).unwrap());
        assert!(verify_twisted_cocycle(&o, &[PolyFun::one(1), y_pow(4)]).unwrap());
        assert_eq!(cocycle_trials(&o, 50, 1).unwrap(), 50);
    }

    #[test]
    fn full_arity_cocycle_zeta3() {
        let z = CycNum::zeta_pow(3, 1);
        let frame = CochainFrame::diagonal(vec![z.conj(), z.clone(), CycNum::one(), CycNum::one()]);
        let o = frame.omega();
        assert_eq!(o.arity(), 2);
        assert_eq!(cocycle_trials(&o, 20, 2).unwrap(), 20);
    }

    #[test]
    fn wrong_arity_is_usage_error() {
        assert!(matches!(c1_minus_one().eval(&[]), Err(Error::Usage(_))));
    }

    #[test]
    fn derivation_cochain_recovered_by_l2() {
        let frame = CochainFrame::diagonal(vec![CycNum::one(); 2]);
        let x = Multivector::generator(2, 0).add(&Multivector::generator(2, 1).scale(&CycNum::from_int(3))).unwrap();
        let f = t1(&frame, &x).unwrap();
        let p = PolyFun::monomial(2, vec![2, 1], CycNum::one());
        // T₁(∂₁ + 3∂₂)(f) = ∂₁f + 3∂₂f
        assert_eq!(f.eval(std::slice::from_ref(&p)).unwrap(), p.partial(0).add(&p.partial(1).scale(&CycNum::from_int(3))));
        assert_eq!(l2_extract(&f, &[CycNum::from_int(2), CycNum::from_int(5)]).unwrap(), x);
    }

    #[test]
    fn roundtrips() {
        let cases = vec![
            CycMatrix::diagonal(vec![CycNum::from_int(-1)]),
            CycMatrix::diagonal(vec![CycNum::zeta_pow(3, 1)]),
            CycMatrix::diagonal(vec![CycNum::from_int(-1), CycNum::one()]),
        ];
        for g in cases {
            let orb = Orbifold::new(generate_group(&[g], DEFAULT_CAP).unwrap());
            for gamma in 0..orb.group().size() {
                for d in 0..=2 * orb.group().dim() {
                    for xi in sector_basis(&orb, gamma, d) {
                        assert!(roundtrip_check(&orb, gamma, &xi).unwrap(), "γ={gamma} degree {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn t2_then_l1_is_identity() {
        let orb = Orbifold::new(generate_group(&[CycMatrix::diagonal(vec![CycNum::from_int(-1)])], DEFAULT_CAP).unwrap());
        let frame = CochainFrame::new(orb.group(), 1).unwrap();
        let family = BTreeMap::from([(1usize, PolyCochain::Omega(frame.omega()))]);
        let crossed = t2_extend(orb.group(), &frame, family.clone()).unwrap();
        for pair in random_monomials(2, 10, 4, 3).chunks(2) {
            let got = l1_restrict(&crossed, pair).unwrap();
            let want = family[&1].eval(pair).unwrap();
            assert_eq!(got.get(&1).cloned().unwrap_or_else(|| PolyFun::zero(2)), want);
        }
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|(_, odd)| *odd).count(), 3);
    }
}
