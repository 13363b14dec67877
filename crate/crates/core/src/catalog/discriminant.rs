use crate::error::{Error, Result};
use crate::exactmath::{rat, Matrix};
use crate::polyring::{Polynomial, Ring, RingSpec};

/// Symmetric Gram matrix of a quadratic form: `q(v) = v^T M v`, so the
/// off-diagonal entries are half the mixed coefficients.
pub fn gram_matrix(q: &Polynomial) -> Result<Matrix> {
    let n = q.ring().nvars();
    let mut m = Matrix::zeros(n, n);
    for (mono, c) in q.terms() {
        let e = mono.exponents();
        if mono.degree() != 2 {
            return Err(Error::NotQuadratic(q.to_string()));
        }
        let vars: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m[(i, i)] = c.clone();
        } else {
            let half = c * rat(1, 2);
            m[(i, j)] = half.clone();
            m[(j, i)] = half;
        }
    }
    Ok(m)
}

/// Rank of the Gram matrix.
pub fn conic_rank(q: &Polynomial) -> Result<usize> {
    Ok(gram_matrix(q)?.rank())
}

/// Ring `x0, x1, x2` of the discriminant.
pub fn discriminant_ring() -> Ring {
    RingSpec::projective("x", 3)
}

/// `det(x0 M0 + x1 M1 + x2 M2)` for the Gram matrices `Mi` of three
/// ternary quadratic forms.
pub fn discriminant_cubic(q: [&Polynomial; 3]) -> Result<Polynomial> {
    let grams: Vec<Matrix> = q.iter().map(|f| gram_matrix(f)).collect::<Result<_>>()?;
    if grams.iter().any(|g| g.rows() != 3) {
        return Err(Error::NotQuadratic("forms must be in three variables".into()));
    }
    let ring = discriminant_ring();
    let entry = |i: usize, j: usize| {
        (0..3).fold(Polynomial::zero(&ring), |acc, k| &acc + &Polynomial::var(&ring, k).scale(&grams[k][(i, j)]))
    };
    let a: Vec<Vec<Polynomial>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1]);
    let det = &(&(&a[0][0] * &minor(1, 2, 1, 2)) - &(&a[0][1] * &minor(1, 2, 0, 2))) + &(&a[0][2] * &minor(1, 2, 0, 1));
    Ok(det)
}

/// Exact divisibility of a form by a linear form.
pub fn linear_factor_divides(l: &Polynomial, c: &Polynomial) -> Result<bool> {
    if l.is_zero() || l.terms().any(|(m, _)| m.degree() != 1) {
        return Err(Error::Dimension(format!("`{l}` is not a linear form")));
    }
    Ok(c.divide_exact(l)?.is_some())
}

/// Quotient `c / l` when it exists.
pub fn linear_quotient(l: &Polynomial, c: &Polynomial) -> Result<Option<Polynomial>> {
    c.divide_exact(l)
}
