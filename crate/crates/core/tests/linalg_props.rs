use perverse_hodge::linalg::{kernel, solve, Matrix, Rational, Subspace};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_i64(rows, cols, &v))
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace<Rational>> {
    (0..=ambient)
        .prop_flat_map(move |k| matrix(ambient, k))
        .prop_map(|m| Subspace::column_space(&m))
}

proptest! {
    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rational::from(0)));
        }
    }

    #[test]
    fn grassmann_formula(a in subspace(4), b in subspace(4)) {
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        prop_assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        prop_assert_eq!(s.quotient_dim(&a).unwrap(), s.dim() - a.dim());
    }

    #[test]
    fn solve_finds_preimages(m in matrix(3, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let x: Vec<Rational> = x.into_iter().map(Rational::from).collect();
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn span_is_canonical(m in matrix(4, 3)) {
        let a = Subspace::column_space(&m);
        prop_assert_eq!(a.canonicalize(), a.clone());
        let mut b = Subspace::zero(4);
        for c in m.col_vecs().into_iter().rev() {
            b.insert(&c);
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix(3, 3)) {
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(3)),
            None => prop_assert!(m.rank() < 3),
        }
    }
}
