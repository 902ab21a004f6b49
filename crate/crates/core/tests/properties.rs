use dias_core::algebra::{DiassociativeAlgebra, Op, Side, StructureTable};
use dias_core::exactlin::{vector, FieldSpec, Matrix, Scalar, Subspace};
use dias_core::format::{parse_algebra, write_algebra, write_rep, RepFile};
use dias_core::genlab::{generate, mutate, GeneratorMode, GeneratorSpec};
use dias_core::ideals::{annihilator, dias_subspace, ideal_closure, is_ideal, lozenge};
use dias_core::nilpotency::{dias_series, engel_criterion, SeriesOutcome};
use dias_core::representation::Representation;
use proptest::prelude::*;

fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::RATIONALS),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
    ]
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(field, r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |vals| {
            let data = vals.into_iter().map(|v| field.from_i64(v)).collect();
            Matrix::new(field, r, c, data).unwrap()
        })
    })
}

fn vectors_strategy(field: FieldSpec, n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=max)
        .prop_map(move |vs| vs.into_iter().map(|v| v.into_iter().map(|x| field.from_i64(x)).collect()).collect())
}

fn mode_strategy() -> impl Strategy<Value = GeneratorMode> {
    prop_oneof![
        Just(GeneratorMode::GradedNilpotent),
        Just(GeneratorMode::SplitExtensionTower),
        Just(GeneratorMode::AssociativeTriangular),
    ]
}

fn algebra_strategy() -> impl Strategy<Value = DiassociativeAlgebra> {
    (field_strategy(), 1usize..=4, mode_strategy(), any::<u64>())
        .prop_map(|(field, dim, mode, seed)| generate(&GeneratorSpec { field, dim, mode, seed }).unwrap())
}

fn non_nilpotent_strategy() -> impl Strategy<Value = DiassociativeAlgebra> {
    any::<u64>().prop_map(|seed| dias_core::genlab::non_nilpotent_fixture(q(), seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds(m in matrix_strategy(5, 5)) {
        let (r, rank) = m.rref();
        prop_assert_eq!(r.rref(), (r.clone(), rank));
        let kernel = m.kernel();
        prop_assert_eq!(rank + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(vector::is_zero(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn span_is_canonical_under_reordering(
        (field, vs) in field_strategy().prop_flat_map(|f| (Just(f), vectors_strategy(f, 4, 5)))
    ) {
        let a = Subspace::span(field, 4, vs.clone()).unwrap();
        let mut rev = vs.clone();
        rev.reverse();
        let doubled: Vec<Vec<Scalar>> = vs.iter().map(|v| vector::add(v, v)).chain(vs.iter().cloned()).collect();
        prop_assert_eq!(&a, &Subspace::span(field, 4, rev).unwrap());
        prop_assert_eq!(&a, &Subspace::span(field, 4, doubled).unwrap());
        for v in &vs {
            prop_assert!(a.contains(v).unwrap());
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(
        (field, us, ws) in field_strategy().prop_flat_map(|f| (Just(f), vectors_strategy(f, 5, 4), vectors_strategy(f, 5, 4)))
    ) {
        let u = Subspace::span(field, 5, us).unwrap();
        let w = Subspace::span(field, 5, ws).unwrap();
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(cap.is_subspace_of(&u).unwrap() && cap.is_subspace_of(&w).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap() && w.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn products_are_bilinear(d in algebra_strategy(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (f, n) = (d.field(), d.dim());
        let x = dias_core::nilpotency::random_vector(f, n, &mut rng);
        let y = dias_core::nilpotency::random_vector(f, n, &mut rng);
        let z = dias_core::nilpotency::random_vector(f, n, &mut rng);
        let c = f.from_i64(2);
        for op in Op::BOTH {
            let lhs = d.multiply(op, &vector::add(&x, &vector::scale(&c, &y)), &z).unwrap();
            let rhs = vector::add(&d.multiply(op, &x, &z).unwrap(), &vector::scale(&c, &d.multiply(op, &y, &z).unwrap()));
            prop_assert_eq!(lhs, rhs);
            for side in Side::BOTH {
                let m = d.operator_matrix(&x, side, op).unwrap();
                let direct = match side {
                    Side::LeftMul => d.multiply(op, &x, &y).unwrap(),
                    Side::RightMul => d.multiply(op, &y, &x).unwrap(),
                };
                prop_assert_eq!(m.mul_vec(&y).unwrap(), direct);
            }
        }
    }

    #[test]
    fn series_descends_through_ideals(d in prop_oneof![algebra_strategy(), non_nilpotent_strategy()]) {
        let cert = dias_series(&d, None).unwrap();
        for pair in cert.terms.windows(2) {
            prop_assert!(pair[1].is_subspace_of(&pair[0]).unwrap());
        }
        for term in &cert.terms {
            prop_assert!(is_ideal(&d, term).unwrap().is_ideal);
        }
        // after stabilization or zero, further terms add nothing new
        let longer = dias_series(&d, Some(d.dim() + 3)).unwrap();
        if cert.outcome == SeriesOutcome::Stabilized {
            let last = cert.terms.last().unwrap();
            let full = Subspace::full(d.field(), d.dim());
            prop_assert!(lozenge(&d, &full, last).unwrap().is_subspace_of(last).unwrap());
            prop_assert!(longer.terms.iter().all(|t| last.is_subspace_of(t).unwrap()));
        }
    }

    #[test]
    fn engel_agrees_with_series(d in prop_oneof![algebra_strategy(), non_nilpotent_strategy()]) {
        prop_assert_eq!(engel_criterion(&d).unwrap().nilpotent, dias_series(&d, None).unwrap().is_nilpotent());
    }

    #[test]
    fn dias_is_abelian_ideal_and_closure_is_minimal(d in algebra_strategy()) {
        let dias = dias_subspace(&d);
        let r = is_ideal(&d, &dias).unwrap();
        prop_assert!(r.is_ideal && r.is_abelian);
        prop_assert!(d.quotient(&dias).unwrap().algebra.is_associative_dias());
        prop_assert_eq!(ideal_closure(&d, dias.basis()).unwrap(), dias);
    }

    #[test]
    fn regular_kernel_is_the_annihilator(d in prop_oneof![algebra_strategy(), non_nilpotent_strategy()]) {
        let rep = Representation::regular(&d);
        prop_assert_eq!(rep.kernel(), annihilator(&d));
        let null = rep.common_null_space();
        prop_assert_eq!(&null, &annihilator(&d));
        // the common null space is invariant
        prop_assert_eq!(rep.invariant_closure(&vector::zeros(d.field(), d.dim())).unwrap().dim(), 0);
        for v in null.basis() {
            prop_assert!(rep.invariant_closure(v).unwrap().is_subspace_of(&null).unwrap());
        }
    }

    #[test]
    fn basis_change_preserves_validity_and_nilpotency(d in algebra_strategy(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = d.dim();
        let f = d.field();
        let p = loop {
            let rows: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect()).collect();
            let m = Matrix::from_rows(f, rows).unwrap();
            if m.inverse().is_some() {
                break m;
            }
        };
        let moved = d.table().change_basis(&p).unwrap();
        prop_assert!(moved.check_axioms().is_empty());
        let moved = moved.verify().unwrap();
        prop_assert_eq!(dias_series(&moved, None).unwrap().dims(), dias_series(&d, None).unwrap().dims());
        let back = moved.table().change_basis(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.tensor(Op::Left), d.tensor(Op::Left));
        prop_assert_eq!(back.tensor(Op::Right), d.tensor(Op::Right));
    }

    #[test]
    fn single_entry_mutations_agree_with_verify(
        d in (field_strategy(), 1usize..=3, mode_strategy(), any::<u64>())
            .prop_map(|(field, dim, mode, seed)| generate(&GeneratorSpec { field, dim, mode, seed }).unwrap()),
        op_left in any::<bool>(),
        flat in 0usize..27,
        value in -2i64..=2,
    ) {
        let n = d.dim();
        let flat = flat % (n * n * n);
        let (i, j, k) = (flat / (n * n), flat / n % n, flat % n);
        let op = if op_left { Op::Left } else { Op::Right };
        let t: StructureTable = mutate(d.table(), op, i, j, k, d.field().from_i64(value)).unwrap();
        let valid = t.check_axioms().is_empty();
        match t.verify() {
            Ok(a) => {
                prop_assert!(valid);
                prop_assert!(Representation::regular(&a).check_identities().is_empty());
            }
            Err(_) => prop_assert!(!valid),
        }
    }

    #[test]
    fn files_round_trip(d in prop_oneof![algebra_strategy(), non_nilpotent_strategy()]) {
        let text = write_algebra(d.table());
        let back = parse_algebra(&text, None).unwrap();
        prop_assert_eq!(&back, d.table());
        prop_assert_eq!(write_algebra(&back), text);
        let rep = Representation::regular(&d);
        let rep_text = write_rep(rep.data());
        let file: RepFile = serde_json::from_str(&rep_text).unwrap();
        prop_assert_eq!(&file.to_data(None, None).unwrap(), rep.data());
    }
}
