use coxeter_growth::census::{census_by_type, ComplexKind};
use coxeter_growth::{
    bfs_enumerate, classify, verify_identity, CoxeterMatrix, GrowthTable, Identity, IdentityStatus,
    IntPolynomial, Order, RationalFunction, SubsetMask,
};
use proptest::prelude::*;

fn poly(max_degree: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=6, 0..=max_degree + 1).prop_map(|c| IntPolynomial::from_i64s(&c))
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = IntPolynomial> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), nonzero_poly(3)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// Rational functions that are power series with integer coefficients.
fn power_series() -> impl Strategy<Value = RationalFunction> {
    (
        poly(3),
        prop::collection::vec(-3i64..=3, 0..=3),
        any::<bool>(),
    )
        .prop_map(|(n, tail, neg)| {
            let mut d = vec![if neg { -1 } else { 1 }];
            d.extend(tail);
            RationalFunction::new(n, IntPolynomial::from_i64s(&d)).unwrap()
        })
}

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![
        4 => Just(Order::Finite(2)),
        3 => Just(Order::Finite(3)),
        1 => Just(Order::Finite(4)),
        1 => Just(Order::Finite(5)),
        1 => Just(Order::Finite(6)),
        1 => Just(Order::Infinite),
    ]
}

fn coxeter_matrix(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (1..=max_rank).prop_flat_map(|rank| {
        let pairs = rank * (rank - 1) / 2;
        prop::collection::vec(order(), pairs).prop_map(move |orders| {
            let mut it = orders.into_iter();
            let mut triples = Vec::new();
            for i in 0..rank {
                for j in i + 1..rank {
                    triples.push((i, j, it.next().unwrap()));
                }
            }
            CoxeterMatrix::from_pairs(rank, triples).unwrap()
        })
    })
}

fn relabel(m: &CoxeterMatrix, perm: &[usize]) -> CoxeterMatrix {
    let rank = m.rank();
    let mut triples = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            triples.push((perm[i], perm[j], m.order(i, j)));
        }
    }
    CoxeterMatrix::from_pairs(rank, triples).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc(), k in prop_oneof![-3i64..=-1, 1i64..=3]) {
        let scaled = RationalFunction::new(
            a.numerator().scale(&k.into()),
            a.denominator().scale(&k.into()),
        ).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(scaled.to_string(), a.to_string());
    }

    #[test]
    fn series_of_a_product_is_the_cauchy_product(a in power_series(), b in power_series()) {
        let n = 8;
        let lhs = (&a * &b).series_expand(n).unwrap();
        let rhs = a.series_expand(n).unwrap().cauchy_product(&b.series_expand(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_inverse_is_an_involution(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.substitute_t_inverse().substitute_t_inverse(), a.clone());
        prop_assert_eq!(
            (&a * &b).substitute_t_inverse(),
            &a.substitute_t_inverse() * &b.substitute_t_inverse()
        );
    }

    #[test]
    fn cox_text_round_trips(m in coxeter_matrix(6)) {
        let text = m.to_cox_string();
        let back: CoxeterMatrix = text.parse().unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.to_cox_string(), text);
    }

    #[test]
    fn restriction_composes(m in coxeter_matrix(6), outer in 0u32..64, inner in 0u32..64) {
        let outer = SubsetMask(outer).intersection(m.full_mask());
        let first = m.restrict(outer);
        prop_assume!(!first.is_empty());
        let inner = SubsetMask(inner).intersection(first.matrix.full_mask());
        let second = first.matrix.restrict(inner);
        let composed = SubsetMask::from_indices(second.index_map.iter().map(|&i| first.index_map[i]));
        let direct = m.restrict(composed);
        prop_assert_eq!(&direct.matrix, &second.matrix);
        prop_assert_eq!(composed.is_subset_of(outer), true);
    }

    #[test]
    fn components_partition_the_subset(m in coxeter_matrix(6), bits in 0u32..64) {
        let subset = SubsetMask(bits).intersection(m.full_mask());
        let components = m.diagram_components(subset);
        let mut union = SubsetMask::EMPTY;
        for c in &components {
            prop_assert!(union.intersection(*c).is_empty());
            union = union.union(*c);
            for other in &components {
                if other != c {
                    for i in c.iter() {
                        for j in other.iter() {
                            prop_assert!(!m.order(i, j).is_edge());
                        }
                    }
                }
            }
        }
        prop_assert_eq!(union, subset);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn series_matches_enumeration(m in coxeter_matrix(4)) {
        let horizon = if m.rank() <= 3 { 7 } else { 5 };
        let w = GrowthTable::build(&m).unwrap();
        let ball = bfs_enumerate(&m, horizon).unwrap();
        let sizes: Vec<i64> = ball.sphere_sizes().iter().map(|&s| s as i64).collect();
        prop_assert_eq!(w.top().series_expand(horizon).unwrap().to_i64s().unwrap(), sizes);
        for e in ball.elements() {
            prop_assert!(classify(&m, e.descents.mask()).finite);
        }
    }

    #[test]
    fn spherical_identities_hold(m in coxeter_matrix(5)) {
        let table = GrowthTable::build(&m).unwrap();
        for which in Identity::ALL {
            let r = verify_identity(&table, which).unwrap();
            prop_assert_ne!(r.status, IdentityStatus::Fails, "{}", which);
        }
    }

    #[test]
    fn relabelling_preserves_growth(m in coxeter_matrix(4), perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < m.rank()).collect();
        let r = relabel(&m, &perm);
        prop_assert_eq!(
            bfs_enumerate(&m, 5).unwrap().sphere_sizes(),
            bfs_enumerate(&r, 5).unwrap().sphere_sizes()
        );
        let (wm, wr) = (GrowthTable::build(&m).unwrap(), GrowthTable::build(&r).unwrap());
        prop_assert_eq!(wm.top(), wr.top());
        let components = |m: &CoxeterMatrix| {
            let name = classify(m, m.full_mask()).type_name();
            let mut parts: Vec<String> = name.split(" x ").map(str::to_string).collect();
            parts.sort();
            parts
        };
        prop_assert_eq!(components(&m), components(&r));
    }

    #[test]
    fn coxeter_census_matches_closed_form(m in coxeter_matrix(3)) {
        for c in census_by_type(&m, ComplexKind::Coxeter, 5).unwrap() {
            prop_assert!(c.agrees(), "type {}: {} vs {}", c.subgroup, c.census, c.closed_form);
        }
    }
}
