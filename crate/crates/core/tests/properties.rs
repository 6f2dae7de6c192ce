use crkit::cralg::RealFormContext;
use crkit::exact::poly::minimal_polynomial;
use crkit::exact::{ExactMatrix, Scalar, Subspace};
use crkit::levi::hermitian_signature;
use crkit::liealg::{bracket, jordan_chevalley, LieSubalgebra};
use crkit::roots::{chamber_representative, compact_conjugate};
use num_rational::BigRational;
use proptest::prelude::*;

fn gaussian(range: i64) -> impl Strategy<Value = Scalar> {
    (-range..=range, -range..=range).prop_map(|(a, b)| Scalar::gaussian(a, b))
}

fn matrix(n: usize, range: i64) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(gaussian(range), n * n).prop_map(move |d| ExactMatrix::from_vec(n, n, d).unwrap())
}

fn vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(gaussian(2), dim), 0..=count)
}

fn combo(basis: &[ExactMatrix], coeffs: &[Scalar]) -> ExactMatrix {
    let n = basis[0].rows();
    basis.iter().zip(coeffs).fold(ExactMatrix::zeros(n, n), |acc, (b, c)| &acc + &b.scale(c))
}

fn jordan_block(n: usize, lambda: &Scalar) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n).scale(lambda);
    for i in 0..n - 1 {
        m[(i, i + 1)] = Scalar::one();
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rref_is_idempotent(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(gaussian(3), r * c).prop_map(move |d| ExactMatrix::from_vec(r, c, d).unwrap())
    })) {
        let once = m.rref();
        prop_assert_eq!(once.rref(), once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn sum_and_intersection_dimensions(a in vectors(5, 4), b in vectors(5, 4)) {
        let sa = Subspace::from_vectors(5, &a).unwrap();
        let sb = Subspace::from_vectors(5, &b).unwrap();
        let sum = sa.sum(&sb).unwrap();
        let cap = sa.intersect(&sb).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains(&cap).unwrap() && sb.contains(&cap).unwrap());
        prop_assert!(sum.contains(&sa).unwrap() && sum.contains(&sb).unwrap());
    }

    #[test]
    fn jacobi_identity(x in matrix(3, 3), y in matrix(3, 3), z in matrix(3, 3)) {
        let b = |u: &ExactMatrix, v: &ExactMatrix| bracket(u, v).unwrap();
        let total = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn killing_form_is_invariant(c in prop::collection::vec(gaussian(2), 24)) {
        let g = LieSubalgebra::special_linear(3);
        let basis = g.basis();
        let x = combo(&basis, &c[0..8]);
        let y = combo(&basis, &c[8..16]);
        let z = combo(&basis, &c[16..24]);
        let kf = |u: &ExactMatrix, v: &ExactMatrix| (&g.ad_matrix(u).unwrap() * &g.ad_matrix(v).unwrap()).trace();
        let lhs = kf(&bracket(&x, &y).unwrap(), &z);
        let rhs = kf(&x, &bracket(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        // sl_3: B(X, Y) = 6 tr(XY)
        prop_assert_eq!(kf(&x, &y), (&x * &y).trace() * Scalar::from_int(6));
    }

    #[test]
    fn jordan_chevalley_on_conjugated_jordan_forms(
        p in matrix(3, 2),
        l1 in gaussian(2),
        l2 in gaussian(2),
    ) {
        prop_assume!(p.inverse().is_some());
        let mut j = ExactMatrix::zeros(3, 3);
        let block = jordan_block(2, &l1);
        for r in 0..2 {
            for c in 0..2 {
                j[(r, c)] = block[(r, c)].clone();
            }
        }
        j[(2, 2)] = l2.clone();
        let p_inv = p.inverse().unwrap();
        let x = &(&p * &j) * &p_inv;
        let jc = jordan_chevalley(&x).unwrap();
        let s_expected = &(&p * &ExactMatrix::diagonal(&[l1.clone(), l1.clone(), l2.clone()])) * &p_inv;
        prop_assert_eq!(&jc.semisimple_part, &s_expected);
        prop_assert_eq!(&(&jc.semisimple_part + &jc.nilpotent_part), &x);
        prop_assert!(bracket(&jc.semisimple_part, &jc.nilpotent_part).unwrap().is_zero());
        prop_assert!(jc.nilpotent_part.pow(3).is_zero());
        prop_assert!(minimal_polynomial(&jc.semisimple_part).is_squarefree());
    }

    #[test]
    fn jordan_chevalley_random(x in matrix(4, 2)) {
        let jc = jordan_chevalley(&x).unwrap();
        prop_assert_eq!(&(&jc.semisimple_part + &jc.nilpotent_part), &x);
        prop_assert!(bracket(&jc.semisimple_part, &jc.nilpotent_part).unwrap().is_zero());
        prop_assert!(jc.nilpotent_part.pow(4).is_zero());
        prop_assert!(minimal_polynomial(&jc.semisimple_part).is_squarefree());
    }

    #[test]
    fn chamber_representative_properties(
        entries in prop::collection::vec((-9i64..=9, 1i64..=5), 1..5),
        perm_seed in any::<u64>(),
    ) {
        let mut vals: Vec<BigRational> = entries.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
        let s: BigRational = vals.iter().cloned().sum();
        vals.push(-s);
        let diag = |v: &[BigRational]| ExactMatrix::diagonal(&v.iter().cloned().map(Scalar::from_real).collect::<Vec<_>>());
        let rep = chamber_representative(&diag(&vals)).unwrap();
        prop_assert_eq!(chamber_representative(&rep).unwrap(), rep.clone());
        let mut perm = vals.clone();
        let k = perm.len();
        perm.rotate_left((perm_seed as usize) % k);
        perm.swap(0, (perm_seed as usize / 7) % k);
        prop_assert_eq!(chamber_representative(&diag(&perm)).unwrap(), rep);
    }

    #[test]
    fn signature_is_congruence_invariant(
        a in prop::collection::vec(gaussian(3), 16),
        p in matrix(4, 2),
    ) {
        prop_assume!(p.inverse().is_some());
        let m = ExactMatrix::from_vec(4, 4, a).unwrap();
        let g = &m + &m.conj_transpose();
        let moved = &(&p.conj_transpose() * &g) * &p;
        prop_assert_eq!(hermitian_signature(&moved).unwrap(), hermitian_signature(&g).unwrap());
        let sig = hermitian_signature(&g).unwrap();
        prop_assert_eq!(sig.total(), 4);
        prop_assert_eq!(sig.plus + sig.minus, g.rank());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(c in prop::collection::vec(gaussian(2), 16)) {
        let ctx = RealFormContext::new(2, 2).unwrap();
        let basis = ctx.k.basis();
        let x = combo(&basis, &c[0..7]);
        let y = combo(&basis, &c[7..14]);
        let lhs = compact_conjugate(&bracket(&x, &y).unwrap());
        let rhs = bracket(&compact_conjugate(&x), &compact_conjugate(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(compact_conjugate(&compact_conjugate(&x)), x.clone());
        prop_assert!(ctx.k.contains(&compact_conjugate(&x)));
        // antilinear: conj(iX) = -i conj(X)
        prop_assert_eq!(compact_conjugate(&x.scale(&Scalar::i())), compact_conjugate(&x).scale(&-Scalar::i()));
    }
}
