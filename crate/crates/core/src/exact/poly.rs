//! Dense univariate polynomials over ℚ, lowest degree first. Only what the
//! cyclotomic field arithmetic needs.

use super::rational::Rational;

pub fn poly_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Rational::is_zero)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division `a = q·b + r` with `deg r < deg b`.
pub fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    poly_trim(&mut b);
    assert!(!is_zero_poly(&b), "polynomial division by zero");
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bc);
        }
        q[shift] = c;
        r.pop();
        poly_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`.
pub fn poly_ext_gcd(
    a: &[Rational],
    b: &[Rational],
) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    let (mut t0, mut t1) = (vec![Rational::zero()], vec![Rational::one()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    poly_trim(&mut r0);
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn divrem_exact() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let (q, r) = poly_divrem(&p(&[-1, 0, 0, 1]), &p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert_eq!(r, p(&[0]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, 1]);
        let b = p(&[1, 1, 1]);
        let (g, s, t) = poly_ext_gcd(&a, &b);
        assert_eq!(g.len(), 1);
        let lhs = {
            let x = poly_mul(&s, &a);
            let y = poly_mul(&t, &b);
            let mut out = poly_sub(&x, &y.iter().map(|c| -c).collect::<Vec<_>>());
            poly_trim(&mut out);
            out
        };
        assert_eq!(lhs, g);
    }
}
