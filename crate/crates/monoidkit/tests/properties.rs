use std::path::Path;
use std::sync::Arc;

use monoidkit::aset::{enumerate_asets, is_hom, is_isomorphic, ASet};
use monoidkit::homological::{multiplication_complex, resolve, Flavor, ResolveOpts};
use monoidkit::io::{aset_document, monoid_document, Bounds, Object, Workspace};
use monoidkit::linalg::{cokernel, smith_homology, Matrix};
use monoidkit::monoid::{pointed_cyclic, presented, truncated, FiniteMonoid, MonoidValue};
use monoidkit::spectra::{all_ideals, intersect, is_prime, mspec, primary_decomposition, radical};
use monoidkit::torreal::tor1_monogenic;
use proptest::prelude::*;

fn pool() -> Vec<Arc<FiniteMonoid>> {
    vec![
        Arc::new(FiniteMonoid::f1()),
        Arc::new(truncated(2)),
        Arc::new(truncated(3)),
        Arc::new(truncated(4)),
        Arc::new(pointed_cyclic(2)),
        Arc::new(pointed_cyclic(3)),
        Arc::new(presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"])),
        Arc::new(presented("nilxy", &["x", "y"], &["x^2=0", "y^2=y", "xy=x"])),
    ]
}

fn monoid() -> impl Strategy<Value = Arc<FiniteMonoid>> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

/// A monoid together with an arbitrary A-set on at most four points.
fn aset() -> impl Strategy<Value = ASet> {
    (monoid(), 1usize..=4, any::<prop::sample::Index>()).prop_map(|(a, n, i)| {
        let all = enumerate_asets(&a, n).unwrap();
        all[i.index(all.len())].clone()
    })
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let rs: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * cols + j]).collect()).collect();
    Matrix::from_rows(&rs, cols)
}

/// `I + c e_{ij}`.
fn elementary(n: usize, i: usize, j: usize, c: i64) -> Matrix {
    let mut m = Matrix::identity(n);
    if i != j {
        m.set(i, j, c);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cokernel_ignores_unimodular_changes(rows in 1usize..4, cols in 1usize..4, e in prop::collection::vec(-5i64..6, 9), i in 0usize..3, j in 0usize..3, c in -3i64..4) {
        let a = matrix(rows, cols, &e);
        let left = elementary(rows, i % rows, j % rows, c);
        let right = elementary(cols, j % cols, i % cols, -c);
        prop_assert_eq!(cokernel(&a), cokernel(&left.mul(&a).mul(&right)));
    }

    #[test]
    fn homology_of_a_split_pair_is_the_middle_cokernel(n in 1usize..4, e in prop::collection::vec(-4i64..5, 9)) {
        // d_n = 0, so H_n is the cokernel of d_{n+1}
        let d_next = matrix(n, n, &e);
        let h = smith_homology(&Matrix::zeros(1, n), &d_next, n);
        prop_assert_eq!(h, cokernel(&d_next.transpose()));
    }

    #[test]
    fn monoid_tables_are_commutative_and_associative(a in monoid(), b in monoid()) {
        let m = a.smash(&b);
        for x in 0..m.len() {
            prop_assert_eq!(m.mul(x, m.one()), x);
            prop_assert_eq!(m.mul(x, m.zero()), m.zero());
            for y in 0..m.len() {
                prop_assert_eq!(m.mul(x, y), m.mul(y, x));
                for z in 0..m.len() {
                    prop_assert_eq!(m.mul(m.mul(x, y), z), m.mul(x, m.mul(y, z)));
                }
            }
        }
        prop_assert_eq!(m.len(), (a.len() - 1) * (b.len() - 1) + 1);
    }

    #[test]
    fn primes_are_prime_and_radicals_are_idempotent(a in monoid()) {
        for p in mspec(&a) {
            prop_assert!(is_prime(&a, &p.elements));
        }
        for i in all_ideals(&a) {
            let r = radical(&a, &i);
            prop_assert_eq!(radical(&a, &r), r.clone());
            prop_assert!(i.iter().all(|x| r.contains(x)));
        }
    }

    #[test]
    fn primary_components_intersect_to_the_ideal(a in monoid()) {
        for i in all_ideals(&a) {
            if i.len() == a.len() {
                continue;
            }
            let parts = primary_decomposition(&a, &i).unwrap();
            let meet = parts.iter().skip(1).fold(parts[0].clone(), |acc, q| intersect(&acc, q));
            prop_assert_eq!(meet, i);
        }
    }

    #[test]
    fn wedge_and_smash_sizes(x in aset(), y_n in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let a = x.monoid().unwrap().clone();
        let ys = enumerate_asets(&a, y_n).unwrap();
        let y = &ys[pick.index(ys.len())];
        prop_assert_eq!(x.wedge(y).len(), x.len() + y.len() - 1);
        prop_assert_eq!(x.smash(y).len(), (x.len() - 1) * (y.len() - 1) + 1);
        prop_assert!(x.tensor(y).len() <= x.smash(y).len());
    }

    #[test]
    fn tensoring_with_the_regular_set_is_trivial(x in aset()) {
        let a = x.monoid().unwrap().clone();
        prop_assert!(is_isomorphic(&x.tensor(&ASet::regular(a)), &x));
    }

    #[test]
    fn congruence_closures_give_quotient_maps(x in aset(), u in any::<prop::sample::Index>(), v in any::<prop::sample::Index>()) {
        let p = x.congruence_closure(&[(u.index(x.len()), v.index(x.len()))]);
        prop_assert!(x.is_congruence(&p));
        let (q, map) = x.quotient(&p).unwrap();
        prop_assert!(is_hom(&x, &q, &map));
        prop_assert_eq!(q.len(), p.count);
    }

    #[test]
    fn minimized_resolutions_are_exact(x in aset()) {
        let r = resolve(&x, Flavor::Minimized, ResolveOpts { length: 3, ..ResolveOpts::default() }).unwrap();
        prop_assert!(r.complex.violations().is_empty());
        prop_assert!(r.complex.exact_in(r.checked_degrees()));
        prop_assert!(is_isomorphic(&r.complex.homology(0).aset, &x));
    }

    #[test]
    fn multiplication_complexes_are_valid(x in aset(), a in any::<prop::sample::Index>()) {
        let m = x.monoid().unwrap().clone();
        let c = multiplication_complex(&x, a.index(m.len()));
        prop_assert!(c.violations().is_empty());
    }

    #[test]
    fn tor1_formula_matches_the_graph(n in 1usize..=4, pick in any::<prop::sample::Index>(), k in 1usize..5) {
        let xs = monoidkit::aset::enumerate_asets(&Arc::new(truncated(5)), n).unwrap();
        let x = &xs[pick.index(xs.len())];
        let mono = ASet::new("X", monoidkit::aset::Base::Monogenic, x.names.clone(), vec![x.action_table()[x.monoid().unwrap().index_of("x").unwrap()].clone()]).unwrap();
        let r = tor1_monogenic(&mono, k).unwrap();
        prop_assert!(r.agree);
        prop_assert_eq!(r.formula_rank, r.graph_rank);
    }

    #[test]
    fn documents_round_trip(x in aset()) {
        let a = x.monoid().unwrap().clone();
        let mut ws = Workspace::new(Bounds::default());
        let text = serde_json::to_string(&monoid_document(&a)).unwrap();
        let Object::Monoid(MonoidValue::Finite(b)) = ws.load_str(&text, Path::new(".")).unwrap() else {
            panic!("not a finite monoid");
        };
        prop_assert_eq!(&b.table, &a.table);
        ws.register(MonoidValue::Finite(a)).unwrap();
        let text = serde_json::to_string(&aset_document(&x)).unwrap();
        let Object::ASet(y) = ws.load_str(&text, Path::new(".")).unwrap() else {
            panic!("not an A-set");
        };
        prop_assert_eq!(y.action_table(), x.action_table());
    }
}
