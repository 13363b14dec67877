use fano_core::exactmath::int;
use fano_core::polyring::Ideal;
use fano_core::{stabilizer, AlgElement, AmbientAlgebra, Matrix, Polynomial, RingSpec, Subalgebra};
use proptest::prelude::*;

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| {
            let rows: Vec<Vec<_>> = v.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            Matrix::from_rows(&rows, n)
        })
        .prop_filter("invertible", |m| m.rank() == m.rows())
}

fn transform(ideal: &Ideal, g: &[Matrix]) -> Ideal {
    let gens: Vec<Polynomial> = ideal.generators().iter().map(|f| f.linear_substitute(g).unwrap()).collect();
    Ideal::new(ideal.ring(), gens).unwrap()
}

/// `f -> f(g x)` moves the zero set by `g^{-1}`, so the stabilizer is
/// conjugated by `g^{-1}`.
fn check(ideal: &Ideal, g: &[Matrix]) -> Result<(), TestCaseError> {
    let amb = AmbientAlgebra::new(ideal.ring());
    let s = stabilizer(ideal, &amb).unwrap();
    let moved = stabilizer(&transform(ideal, g), &amb).unwrap();
    let ginv: Vec<Matrix> = g.iter().map(|m| m.inverse().unwrap()).collect();
    let conj: Vec<AlgElement> = s.basis().iter().map(|x| x.conjugate(&ginv).unwrap()).collect();
    let expected = Subalgebra::from_basis(&amb, conj).unwrap();
    prop_assert!(moved.same_span(&expected));
    moved.check_closure().unwrap();
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_conic_pairs(g in invertible(3)) {
        let r = RingSpec::projective("x", 3);
        check(&Ideal::parse(&r, &["(x0^2 - x1*x2)*(x0^2 - 2*x1*x2)"]).unwrap(), std::slice::from_ref(&g))?;
        check(&Ideal::parse(&r, &["x0*x1"]).unwrap(), &[g])?;
    }

    #[test]
    fn twisted_cubic(g in invertible(4)) {
        check(&fano_core::sl2rep::rational_normal_curve_ideal(3), &[g])?;
    }

    #[test]
    fn product_of_lines(a in invertible(2), b in invertible(2)) {
        let r = RingSpec::product(&[("x", 2), ("y", 2)]);
        check(&Ideal::parse(&r, &["x0*y0^2 + x1*y1^2"]).unwrap(), &[a, b])?;
    }
}
