use orbifold_cohomology::exact::{CycNum, Matrix, Rational};
use orbifold_cohomology::group::{generate_group, DEFAULT_CAP};
use orbifold_cohomology::multivector::{act, blade_grade, Multivector};
use orbifold_cohomology::presets::preset_generators;
use orbifold_cohomology::weyl::{moyal, Mono, WeylPoly};
use proptest::prelude::*;

const ORDERS: [u64; 6] = [1, 3, 4, 5, 8, 12];

fn phi(n: u64) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

fn cyc_in(order: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(rational(), phi(order)).prop_map(move |c| CycNum::from_power_coeffs(order, &c))
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| (cyc_in(n), cyc_in(n), cyc_in(n)))
}

fn rational_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(Rational::from_int), c), r)
            .prop_map(|rows| Matrix::from_rows(rows).unwrap())
    })
}

fn multivector(dim: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u64..(1 << dim), -3i64..=3), 0..5).prop_map(move |terms| {
        let mut m = Multivector::zero(dim);
        for (b, c) in terms {
            m.add_term(b, CycNum::from_int(c));
        }
        m
    })
}

fn homogeneous(dim: usize) -> impl Strategy<Value = Multivector> {
    (0..=dim).prop_flat_map(move |k| {
        multivector(dim).prop_map(move |m| {
            let mut out = Multivector::zero(dim);
            for (b, c) in m.terms() {
                if blade_grade(*b) == k {
                    out.add_term(*b, c.clone());
                }
            }
            out
        })
    })
}

fn weyl_poly() -> impl Strategy<Value = WeylPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 2), 0u32..2, -3i64..=3), 0..4).prop_map(|terms| {
        let mut p = WeylPoly::zero(1);
        for (exps, h, c) in terms {
            p.add_term(Mono { exps, h }, Rational::from_int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _c) in cyc_triple(), k in 2u64..4) {
        let m = a.order() * k;
        prop_assert_eq!((&a * &b).promote(m), &a.promote(m) * &b.promote(m));
        prop_assert_eq!((&a + &b).promote(m), &a.promote(m) + &b.promote(m));
        prop_assert_eq!(a.promote(m), a);
    }

    #[test]
    fn rref_idempotent_and_rank_of_transpose(m in rational_matrix()) {
        let (_, r) = m.rref();
        prop_assert_eq!(r.rref().1, r);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Rational::is_zero));
        }
        prop_assert_eq!(m.kernel_basis().len() + m.rank(), m.cols());
    }

    #[test]
    fn wedge_associative(a in multivector(4), b in multivector(4), c in multivector(4)) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn wedge_graded_commutative(a in homogeneous(4), b in homogeneous(4)) {
        let (Some(p), Some(q)) = (a.degree(), b.degree()) else { return Ok(()) };
        let sign = if p * q % 2 == 0 { CycNum::one() } else { CycNum::from_int(-1) };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
    }

    #[test]
    fn action_is_multiplicative_and_respects_wedge(x in multivector(4), y in multivector(4), i in 0usize..8, j in 0usize..8) {
        let g = generate_group(&preset_generators("q8-c2").unwrap(), DEFAULT_CAP).unwrap();
        let (gi, gj) = (g.element(i), g.element(j));
        let gij = g.element(g.mul(i, j));
        prop_assert_eq!(act(gij, &x).unwrap(), act(gi, &act(gj, &x).unwrap()).unwrap());
        prop_assert_eq!(act(gi, &x.wedge(&y).unwrap()).unwrap(), act(gi, &x).unwrap().wedge(&act(gi, &y).unwrap()).unwrap());
    }

    #[test]
    fn moyal_associative_with_unit(a in weyl_poly(), b in weyl_poly(), c in weyl_poly()) {
        let ab_c = moyal(&moyal(&a, &b).unwrap(), &c).unwrap();
        let a_bc = moyal(&a, &moyal(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(moyal(&WeylPoly::one(1), &a).unwrap(), a);
    }
}
