//! Built-in groups, as complex matrix generators and as rational symplectic
//! models on ℝ²ⁿ for the Weyl-algebra computations.

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, Matrix, Rational};

pub const PRESETS: &[(&str, &str)] = &[
    ("z2-c1", "Z/2 = <-1> on C^1"),
    ("z3-c1", "Z/3 = <zeta_3> on C^1"),
    ("z4-c1", "Z/4 = <i> on C^1"),
    ("z2-c2", "Z/2 = <-I> on C^2"),
    ("z2xz2-c2", "Z/2 x Z/2 generated by the coordinate reflections on C^2"),
    ("s3-perm", "S_3 permuting the coordinates of C^3"),
    ("q8-c2", "quaternion group in GL(2, C)"),
];

fn int(n: i64) -> CycNum {
    CycNum::from_int(n)
}

fn diag(entries: Vec<CycNum>) -> CycMatrix {
    CycMatrix::diagonal(entries)
}

fn perm(p: &[usize]) -> CycMatrix {
    let mut m = CycMatrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m[(j, i)] = CycNum::one();
    }
    m
}

/// Generators of a preset group.
pub fn preset_generators(name: &str) -> Result<Vec<CycMatrix>> {
    let i = CycNum::zeta_pow(4, 1);
    Ok(match name {
        "z2-c1" => vec![diag(vec![int(-1)])],
        "z3-c1" => vec![diag(vec![CycNum::zeta_pow(3, 1)])],
        "z4-c1" => vec![diag(vec![i])],
        "z2-c2" => vec![diag(vec![int(-1), int(-1)])],
        "z2xz2-c2" => vec![diag(vec![int(-1), int(1)]), diag(vec![int(1), int(-1)])],
        "s3-perm" => vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])],
        "q8-c2" => vec![
            diag(vec![i.clone(), i.conj()]),
            CycMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]])?,
        ],
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

/// `[[Re g, −Im g], [Im g, Re g]]` in the real coordinates (x, y) with z = x + iy.
/// Only entries in ℚ(i) can be realified this way.
pub fn realify(g: &CycMatrix) -> Result<Matrix<Rational>> {
    let n = g.rows();
    let mut out = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let x = &g[(r, c)];
            if 4 % x.order() != 0 {
                return Err(Error::Domain("entry is not in Q(i); no rational real form".into()));
            }
            let x = x.promote(4);
            let (re, im) = (x.coeffs()[0].clone(), x.coeffs()[1].clone());
            out[(r, c)] = re.clone();
            out[(n + r, n + c)] = re;
            out[(r, n + c)] = -im.clone();
            out[(n + r, c)] = im;
        }
    }
    Ok(out)
}

/// Rational symplectic generators modelling a preset on ℝ²ⁿ. Every preset
/// with entries in ℚ(i) is realified; Z/3 uses the integral order-3 matrix
/// [[0, −1], [1, −1]] of SL(2, ℤ), which is conjugate in Sp(2, ℝ) to the
/// rotation by 2π/3.
pub fn symplectic_generators(name: &str) -> Result<Vec<Matrix<Rational>>> {
    if name == "z3-c1" {
        let q = |n: i64| Rational::from_int(n);
        return Ok(vec![Matrix::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(-1)]])?]);
    }
    preset_generators(name)?.iter().map(realify).collect()
}
