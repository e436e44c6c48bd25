use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

/// `y^exps · ħ^h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub exps: Vec<u16>,
    pub h: u32,
}

impl Mono {
    pub fn one(vars: usize) -> Self {
        Mono { exps: vec![0; vars], h: 0 }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Polynomial degree plus twice the ħ power.
    pub fn weight(&self) -> usize {
        self.degree() + 2 * self.h as usize
    }
}

/// Polynomial in y₁…y₂ₙ and ħ with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylPoly {
    n: usize,
    terms: BTreeMap<Mono, Rational>,
}

/// Nonzero entries of Π = ω⁻¹ for ω(y_i, y_{i+n}) = 1: Π^{i,i+n} = −1, Π^{i+n,i} = 1.
fn poisson_entries(n: usize) -> Vec<(usize, usize, Rational)> {
    (0..n)
        .flat_map(|i| [(i, i + n, Rational::from_int(-1)), (i + n, i, Rational::one())])
        .collect()
}

impl WeylPoly {
    pub fn zero(n: usize) -> Self {
        WeylPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, m: Mono, c: Rational) -> Self {
        assert_eq!(m.exps.len(), 2 * n);
        let mut p = Self::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Mono::one(2 * n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The coordinate y_{i+1} (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Mono::one(2 * n);
        m.exps[i] = 1;
        Self::monomial(n, m, Rational::one())
    }

    pub fn hbar(n: usize) -> Self {
        Self::monomial(n, Mono { exps: vec![0; 2 * n], h: 1 }, Rational::one())
    }

    /// `Σ_i v_i y_i`.
    pub fn linear(n: usize, v: &[Rational]) -> Self {
        let mut p = Self::zero(n);
        for (i, c) in v.iter().enumerate() {
            let mut m = Mono::one(2 * n);
            m.exps[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &WeylPoly) -> WeylPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylPoly) -> WeylPoly {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> WeylPoly {
        let mut out = WeylPoly::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    /// Distinct weights present.
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.terms.keys().map(Mono::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn weight_part(&self, w: usize) -> WeylPoly {
        WeylPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Ordinary commutative product.
    pub fn commutative_mul(&self, other: &WeylPoly) -> WeylPoly {
        let mut out = WeylPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                out.add_term(Mono { exps, h: ma.h + mb.h }, ca * cb);
            }
        }
        out
    }

    /// Linear substitution y_j ↦ Σ_i a[i][j] y_i; ħ is fixed.
    pub fn substitute(&self, a: &Matrix<Rational>) -> Result<WeylPoly> {
        let vars = 2 * self.n;
        if a.rows() != vars || a.cols() != vars {
            return Err(Error::Usage("substitution matrix does not match the number of variables".into()));
        }
        let images: Vec<WeylPoly> = (0..vars).map(|j| WeylPoly::linear(self.n, &a.column(j))).collect();
        let mut out = WeylPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut t = WeylPoly::monomial(self.n, Mono { exps: vec![0; vars], h: m.h }, c.clone());
            for (j, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t = t.commutative_mul(&images[j]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

/// Moyal product
/// `f ⋆ g = Σ_k ħ^k/k! Π^{i₁j₁}⋯Π^{i_kj_k} ∂_{i₁…i_k} f · ∂_{j₁…j_k} g`.
///
/// The bidifferential operator `P = Σ Π^{ij} ∂_i ⊗ ∂_j` is applied repeatedly
/// to `f ⊗ g`, dividing by k at step k; the series stops once a derivative
/// exhausts either factor.
pub fn moyal(f: &WeylPoly, g: &WeylPoly) -> Result<WeylPoly> {
    if f.n != g.n {
        return Err(Error::Usage(format!("Weyl algebras differ: n = {} vs {}", f.n, g.n)));
    }
    let pi = poisson_entries(f.n);
    let mut out = WeylPoly::zero(f.n);
    for (mf, cf) in &f.terms {
        for (mg, cg) in &g.terms {
            let mut layer: BTreeMap<(Vec<u16>, Vec<u16>), Rational> =
                BTreeMap::from([((mf.exps.clone(), mg.exps.clone()), cf * cg)]);
            let mut k = 0u32;
            while !layer.is_empty() {
                for ((a, b), c) in &layer {
                    let exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    out.add_term(Mono { exps, h: mf.h + mg.h + k }, c.clone());
                }
                k += 1;
                let inv_k = Rational::new(1, k as i64);
                let mut next: BTreeMap<(Vec<u16>, Vec<u16>), Rational> = BTreeMap::new();
                for ((a, b), c) in &layer {
                    for (i, j, p) in &pi {
                        if a[*i] == 0 || b[*j] == 0 {
                            continue;
                        }
                        let mut a2 = a.clone();
                        let mut b2 = b.clone();
                        let factor = Rational::from_int(a[*i] as i64 * b[*j] as i64);
                        a2[*i] -= 1;
                        b2[*j] -= 1;
                        let e = next.entry((a2, b2)).or_default();
                        *e += &(&(&(c * p) * &factor) * &inv_k);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                layer = next;
            }
        }
    }
    Ok(out)
}

impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = vec![c.to_string()];
                if m.h > 0 {
                    factors.push(if m.h == 1 { "h".into() } else { format!("h^{}", m.h) });
                }
                for (i, &e) in m.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("y{}", i + 1)),
                        _ => factors.push(format!("y{}^{}", i + 1, e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn y(n: usize, i: usize) -> WeylPoly {
        WeylPoly::var(n, i)
    }

    fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> WeylPoly {
        let mut p = WeylPoly::zero(n);
        for _ in 0..4 {
            let mut m = Mono::one(2 * n);
            for _ in 0..rng.gen_range(0..=3) {
                m.exps[rng.gen_range(0..2 * n)] += 1;
            }
            p.add_term(m, Rational::from_int(rng.gen_range(-3..=3)));
        }
        p
    }

    #[test]
    fn unit_and_squares() {
        let a = y(1, 0).add(&y(1, 1).scale(&Rational::from_int(3)));
        assert_eq!(moyal(&WeylPoly::one(1), &a).unwrap(), a);
        assert_eq!(moyal(&y(1, 0), &y(1, 0)).unwrap(), y(1, 0).commutative_mul(&y(1, 0)));
    }

    #[test]
    fn canonical_commutator() {
        for n in 1..=2 {
            let c = moyal(&y(n, 0), &y(n, n)).unwrap().sub(&moyal(&y(n, n), &y(n, 0)).unwrap());
            // 2ħΠ^{1,n+1} with Π^{1,n+1} = −1
            assert_eq!(c, WeylPoly::hbar(n).scale(&Rational::from_int(-2)));
        }
    }

    #[test]
    fn associative_and_weight_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=2 {
            for _ in 0..10 {
                let (a, b, c) = (random_poly(n, &mut rng), random_poly(n, &mut rng), random_poly(n, &mut rng));
                let left = moyal(&moyal(&a, &b).unwrap(), &c).unwrap();
                let right = moyal(&a, &moyal(&b, &c).unwrap()).unwrap();
                assert_eq!(left, right);
                for wa in a.weights() {
                    for wb in b.weights() {
                        let p = moyal(&a.weight_part(wa), &b.weight_part(wb)).unwrap();
                        assert!(p.weights().iter().all(|&w| w == wa + wb));
                    }
                }
            }
        }
    }

    #[test]
    fn substitution_is_linear_change_of_variables() {
        let swap = Matrix::from_rows(vec![
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::zero()],
        ])
        .unwrap();
        let p = y(1, 0).commutative_mul(&y(1, 0)).add(&WeylPoly::hbar(1));
        let q = y(1, 1).commutative_mul(&y(1, 1)).add(&WeylPoly::hbar(1));
        assert_eq!(p.substitute(&swap).unwrap(), q);
    }

    #[test]
    fn mismatched_dimension() {
        assert!(matches!(moyal(&y(1, 0), &y(2, 0)), Err(Error::Usage(_))));
    }
}
