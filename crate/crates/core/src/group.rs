//! Finite matrix groups: closure from generators, multiplication table,
//! inverses, element orders, conjugacy classes and centralizers.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, Matrix, Rational};

/// Default closure cap; only guards against infinite groups.
pub const DEFAULT_CAP: usize = 10_000;

/// A finite subgroup of GL(n, ℚ(ζ_N)) with all of its combinatorial data.
///
/// Element 0 is the identity. Every matrix is stored over the field
/// ℚ(ζ_N) where N is a multiple of the group exponent, so that all
/// eigenvalues of all elements live in the same field.
#[derive(Clone, Debug)]
pub struct Group {
    dim: usize,
    field_order: u64,
    elements: Vec<CycMatrix>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    centralizer_sizes: Vec<usize>,
}

type Key = Vec<Rational>;

/// Power-basis coordinates of every entry, all taken over ℚ(ζ_order) so that
/// equal matrices give equal keys.
fn key(m: &CycMatrix, order: u64) -> Key {
    m.entries().iter().flat_map(|x| x.promote(order).coeffs().to_vec()).collect()
}

/// Enumerate the group generated by `generators`.
///
/// Elements are ordered breadth-first from the identity by word length in the
/// generators; elements first reached at the same length are sorted by their
/// entries' power-basis coordinates.
pub fn generate_group(generators: &[CycMatrix], cap: usize) -> Result<Group> {
    let dim = match generators.first() {
        Some(g) => g.rows(),
        None => return Err(Error::Usage("at least one generator is required".into())),
    };
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::Usage(format!("generator {i} is not a {dim}x{dim} matrix")));
        }
        if g.rank() < dim {
            return Err(Error::Domain(format!("generator {i} is not invertible")));
        }
    }
    let base_order = generators.iter().fold(1u64, |acc, g| acc.lcm(&g.order()));
    let gens: Vec<CycMatrix> = generators.iter().map(|g| g.promote(base_order)).collect();
    let identity = CycMatrix::identity(dim).promote(base_order);

    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Key, usize> = HashMap::from([(key(&identity, base_order), 0)]);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut fresh: Vec<(Key, CycMatrix)> = Vec::new();
        for &i in &level {
            for g in &gens {
                let p = elements[i].mul(g)?;
                let k = key(&p, base_order);
                if index.contains_key(&k) || fresh.iter().any(|(fk, _)| *fk == k) {
                    continue;
                }
                fresh.push((k, p));
                if elements.len() + fresh.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        fresh.sort_by(|a, b| a.0.cmp(&b.0));
        level.clear();
        for (k, m) in fresh {
            index.insert(k, elements.len());
            level.push(elements.len());
            elements.push(m);
        }
    }

    let size = elements.len();
    let mut mult = vec![vec![0usize; size]; size];
    for i in 0..size {
        for j in 0..size {
            let p = elements[i].mul(&elements[j])?;
            mult[i][j] = *index
                .get(&key(&p, base_order))
                .ok_or_else(|| Error::Invariant("group is not closed under multiplication".into()))?;
        }
    }
    let inverse: Vec<usize> = (0..size)
        .map(|i| (0..size).find(|&j| mult[i][j] == 0).expect("finite group elements are invertible"))
        .collect();
    let orders: Vec<usize> = (0..size)
        .map(|i| {
            let mut k = 1;
            let mut cur = i;
            while cur != 0 {
                cur = mult[cur][i];
                k += 1;
            }
            k
        })
        .collect();

    // promote to a field containing every eigenvalue
    let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
    let field_order = base_order.lcm(&exponent);
    let elements: Vec<CycMatrix> = elements.iter().map(|m| m.promote(field_order)).collect();

    let mut class_of = vec![usize::MAX; size];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..size {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = (0..size).map(|g| mult[mult[g][i]][inverse[g]]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            class_of[x] = classes.len();
        }
        classes.push(orbit);
    }
    let centralizer_sizes =
        classes.iter().map(|c| (0..size).filter(|&g| mult[g][c[0]] == mult[c[0]][g]).count()).collect();

    Ok(Group { dim, field_order, elements, mult, inverse, orders, classes, class_of, centralizer_sizes })
}

impl Group {
    /// Complex dimension n of the ambient space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cyclotomic order of the field all elements are stored over.
    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mult[self.mult[g][x]][self.inverse[g]]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Conjugacy classes, each sorted; the representative is the first entry.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Conjugacy class of element `i`.
    pub fn conjugacy_class(&self, i: usize) -> &[usize] {
        &self.classes[self.class_of[i]]
    }

    /// Indices of the elements commuting with element `i`.
    pub fn centralizer(&self, i: usize) -> Vec<usize> {
        (0..self.size()).filter(|&g| self.mult[g][i] == self.mult[i][g]).collect()
    }

    pub fn centralizer_size(&self, i: usize) -> usize {
        self.centralizer_sizes[self.class_of[i]]
    }

    /// The identity matrix over the group's field.
    pub fn identity_matrix(&self) -> CycMatrix {
        Matrix::identity(self.dim).promote(self.field_order)
    }

    /// Index of the element equal to `m`, if any.
    pub fn find(&self, m: &CycMatrix) -> Option<usize> {
        let k = key(m, self.field_order);
        self.elements.iter().position(|e| key(e, self.field_order) == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CycNum;

    fn perm(p: &[usize]) -> CycMatrix {
        let n = p.len();
        let mut m = CycMatrix::zeros(n, n);
        for (i, &j) in p.iter().enumerate() {
            m[(j, i)] = CycNum::one();
        }
        m
    }

    fn q8() -> Group {
        let i = CycNum::zeta_pow(4, 1);
        let a = CycMatrix::diagonal(vec![i.clone(), i.conj()]);
        let b = CycMatrix::from_rows(vec![
            vec![CycNum::zero(), CycNum::one()],
            vec![CycNum::from_int(-1), CycNum::zero()],
        ])
        .unwrap();
        generate_group(&[a, b], DEFAULT_CAP).unwrap()
    }

    /// Independent closure oracle: repeatedly multiply every pair until no new
    /// matrix appears.
    fn brute_closure(gens: &[CycMatrix]) -> usize {
        let mut set: Vec<CycMatrix> = gens.to_vec();
        loop {
            let mut added = false;
            let snapshot = set.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let p = a.mul(b).unwrap();
                    if !set.contains(&p) {
                        set.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                return set.len();
            }
        }
    }

    #[test]
    fn cyclic_three() {
        let g = generate_group(&[CycMatrix::diagonal(vec![CycNum::zeta_pow(3, 1)])], DEFAULT_CAP).unwrap();
        assert_eq!(g.size(), 3);
        assert!(g.element(0).is_identity());
        assert_eq!(g.classes().len(), 3);
    }

    #[test]
    fn s3_permutation_matrices() {
        let gens = [perm(&[1, 0, 2]), perm(&[1, 2, 0])];
        assert_eq!(brute_closure(&gens), 6);
        let g = generate_group(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(g.size(), 6);
        assert_eq!(g.classes().len(), 3);
        let t = g.find(&perm(&[1, 0, 2])).unwrap();
        assert_eq!(g.conjugacy_class(t).len(), 3);
        assert_eq!(g.centralizer(t).len(), 2);
        assert_eq!(g.field_order() % 6, 0);
    }

    #[test]
    fn quaternion_group() {
        let g = q8();
        assert_eq!(g.size(), 8);
        assert_eq!(g.classes().len(), 5);
        let minus_one = g.find(&CycMatrix::identity(2).scale(&CycNum::from_int(-1))).unwrap();
        assert_eq!(g.conjugacy_class(minus_one), &[minus_one]);
        assert_eq!(g.centralizer(minus_one).len(), 8);
    }

    #[test]
    fn identity_class_and_class_equation() {
        for g in [q8()] {
            assert_eq!(g.conjugacy_class(0), &[0]);
            assert_eq!(g.centralizer(0).len(), g.size());
            let total: usize = g.classes().iter().map(Vec::len).sum();
            assert_eq!(total, g.size());
            for c in g.classes() {
                assert_eq!(c.len() * g.centralizer_size(c[0]), g.size());
            }
        }
    }

    #[test]
    fn table_associative_and_inverses() {
        let g = q8();
        let n = g.size();
        for a in 0..n {
            assert_eq!(g.inverse(g.inverse(a)), a);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn infinite_group_hits_cap() {
        let g = CycMatrix::diagonal(vec![CycNum::from_int(2)]);
        assert_eq!(generate_group(&[g], 50).unwrap_err(), Error::CapExceeded { cap: 50 });
    }

    #[test]
    fn singular_generator_rejected() {
        let g = CycMatrix::diagonal(vec![CycNum::one(), CycNum::zero()]);
        assert!(matches!(generate_group(&[g], 10), Err(Error::Domain(_))));
    }
}
