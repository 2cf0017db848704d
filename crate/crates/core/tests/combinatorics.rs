use proptest::prelude::*;
use qvir::geometry::schur_coeff;
use qvir::macdonald::{macdonald_j, macdonald_p, modified_h};
use qvir::partition::count;
use qvir::symfunc::{complete, elementary, schur};
use qvir::{partitions, Coeff, Partition, SymFunc, Var};

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max, 0..=max).prop_map(Partition::from_unsorted)
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(lam in partition(7)) {
        let c = lam.conjugate();
        prop_assert_eq!(c.size(), lam.size());
        prop_assert_eq!(c.len(), lam.part(1));
        prop_assert_eq!(c.conjugate(), lam);
    }

    #[test]
    fn n_statistic(lam in partition(7)) {
        let by_columns: usize = lam.conjugate().parts().iter().map(|&p| binom2(p)).sum();
        prop_assert_eq!(lam.n_stat(), by_columns);
        let legs: usize = lam.arms_legs().iter().map(|&(_, _, l)| l).sum();
        let arms: usize = lam.arms_legs().iter().map(|&(_, a, _)| a).sum();
        prop_assert_eq!(legs, lam.n_stat());
        prop_assert_eq!(arms, lam.conjugate().n_stat());
        prop_assert_eq!(lam.boxes().len(), lam.size());
    }

    #[test]
    fn display_round_trip(lam in partition(9)) {
        let text = lam.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), lam.clone());
        let json = serde_json::to_string(&lam).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), lam);
    }

    #[test]
    fn adding_a_box_grows_by_one(lam in partition(5)) {
        for (mu, _) in lam.add_boxes() {
            prop_assert_eq!(mu.size(), lam.size() + 1);
            prop_assert!(mu.contains_partition(&lam));
        }
    }

    #[test]
    fn symfunc_json_round_trip(lam in partition(3), mu in partition(3), a in -5i64..5, b in 0i64..3) {
        let f = SymFunc::p(lam).scale(&Coeff::qt(b, 1).scale_int(a))
            .add(&SymFunc::p(mu).scale(&Coeff::k()));
        let j = f.to_json();
        let back = SymFunc::from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn partition_counts() {
    let known = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for (n, &k) in known.iter().enumerate() {
        assert_eq!(partitions(n).len(), k);
        assert_eq!(count(n), k);
    }
}

#[test]
fn malformed_partitions_are_rejected() {
    assert!(Partition::new(vec![1, 2]).is_err());
    assert!("3,x".parse::<Partition>().is_err());
    assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
}

#[test]
fn schur_functions_are_orthonormal() {
    for n in 1..=4 {
        for lam in partitions(n) {
            let s = schur(&lam);
            for mu in partitions(n) {
                let expect = if mu == lam { Coeff::one() } else { Coeff::zero() };
                assert_eq!(schur_coeff(&s, &mu), expect, "<s{lam}, s{mu}>");
            }
        }
    }
    assert_eq!(schur(&Partition::row(3)), complete(3));
    assert_eq!(schur(&Partition::column(3)), elementary(3));
}

#[test]
fn schur_evaluation_counts_tableaux() {
    let ones = vec![Coeff::one(); 3];
    let lam: Partition = "2,1".parse().unwrap();
    assert_eq!(schur(&lam).eval_on_alphabet(&ones), Coeff::from_int(8));
}

#[test]
fn modified_macdonald_in_schur_basis() {
    let q = Coeff::q();
    let t = Coeff::t();
    let lam: Partition = "2,1".parse().unwrap();
    let h = modified_h(&lam);
    let expect = [("3", Coeff::one()), ("2,1", q.add(&t)), ("1,1,1", q.mul(&t))];
    for (nu, c) in expect {
        assert_eq!(schur_coeff(&h, &nu.parse().unwrap()), c);
    }
}

#[test]
fn macdonald_at_q_equals_t_is_schur() {
    let bind = [(Var::T, Coeff::var(Var::Q))];
    for n in 1..=4 {
        for lam in partitions(n) {
            let p = macdonald_p(&lam).substitute(&bind).unwrap();
            assert_eq!(p, schur(&lam), "P_{lam} at q = t");
        }
    }
}

#[test]
fn integral_form_in_degree_one() {
    let j = macdonald_j(&Partition::row(1));
    assert_eq!(*j, SymFunc::p_n(1).scale(&Coeff::one().sub(&Coeff::t())));
}
