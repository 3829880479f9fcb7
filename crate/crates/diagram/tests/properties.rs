use diagram::{parse_diagram, BraidWord, LinkDiagram};
use proptest::prelude::*;

fn braid(strands: usize, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..strands as i64, any::<bool>()), 1..=len).prop_map(move |ls| {
        let letters = ls.into_iter().map(|(l, s)| if s { l } else { -l }).collect();
        BraidWord::new(strands, letters).unwrap()
    })
}

/// Braid whose first strand returns to position 0, so its closure component
/// has no self-crossings and serves as an axis.
fn axis_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|n| (braid(n, 8), prop::collection::vec(any::<bool>(), n)))
        .prop_map(|(b, signs)| {
            let n = b.strands();
            let mut pos = 0usize;
            for &l in b.letters() {
                let j = l.unsigned_abs() as usize;
                if pos == j - 1 {
                    pos = j;
                } else if pos == j {
                    pos = j - 1;
                }
            }
            let mut letters = b.letters().to_vec();
            for j in (1..=pos).rev() {
                letters.push(if signs[j] { j as i64 } else { -(j as i64) });
            }
            BraidWord::new(n, letters).unwrap()
        })
}

fn axis_of(d: &LinkDiagram) -> usize {
    // Component of edge 0 in a braid closure is the first strand's.
    d.edge_component(0)
}

fn lk_matrix(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let n = d.num_components();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { d.linking_number(i, j).unwrap() })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linking_numbers_symmetric_and_mirror_negates(b in (2usize..=5).prop_flat_map(|n| braid(n, 10))) {
        let d = b.closure().unwrap();
        d.check_planar().unwrap();
        let m = d.mirror();
        for i in 0..d.num_components() {
            for j in 0..d.num_components() {
                if i != j {
                    prop_assert_eq!(d.linking_number(i, j).unwrap(), d.linking_number(j, i).unwrap());
                    prop_assert_eq!(m.linking_number(i, j).unwrap(), -d.linking_number(i, j).unwrap());
                }
            }
        }
        prop_assert_eq!(d.writhe(), b.exponent_sum() as i32);
    }

    #[test]
    fn switch_is_an_involution(b in (2usize..=4).prop_flat_map(|n| braid(n, 8)), pick in any::<prop::sample::Index>()) {
        let d = b.closure().unwrap();
        let id = d.crossing_ids()[pick.index(d.num_crossings())];
        let s = d.switch_crossing(id).unwrap();
        s.check_planar().unwrap();
        prop_assert_eq!(s.crossing(id).unwrap().sign(), -d.crossing(id).unwrap().sign());
        prop_assert_eq!(s.switch_crossing(id).unwrap(), d);
    }

    #[test]
    fn smoothing_changes_component_count(b in (2usize..=4).prop_flat_map(|n| braid(n, 8)), pick in any::<prop::sample::Index>()) {
        let d = b.closure().unwrap();
        let id = d.crossing_ids()[pick.index(d.num_crossings())];
        let s = d.smooth_crossing_any(id).unwrap();
        s.check_planar().unwrap();
        let expected = if d.is_self_crossing(id).unwrap() {
            d.num_components() + 1
        } else {
            d.num_components() - 1
        };
        prop_assert_eq!(s.num_components(), expected);
        prop_assert_eq!(s.num_crossings(), d.num_crossings() - 1);
    }

    #[test]
    fn simplify_keeps_linking_numbers(b in (2usize..=4).prop_flat_map(|n| braid(n, 8))) {
        let d = b.closure().unwrap();
        let s = d.simplify_with_budget(2_000).diagram;
        s.check_planar().unwrap();
        prop_assert!(s.num_crossings() <= d.num_crossings());
        prop_assert_eq!(lk_matrix(&s), lk_matrix(&d));
    }

    #[test]
    fn crossing_params_agree_with_smoothing(b in axis_braid(), pick in any::<prop::sample::Index>()) {
        let d = b.closure().unwrap();
        let axis = axis_of(&d);
        let others: Vec<usize> = (0..d.num_components())
            .filter(|&k| k != axis && d.linking_number(axis, k).unwrap() == 0)
            .collect();
        for k in others {
            let selfs = d.self_crossings(k);
            if selfs.is_empty() {
                continue;
            }
            let id = selfs[pick.index(selfs.len())];
            let (sign, n) = d.crossing_params(id, axis).unwrap();
            prop_assert_eq!(sign, d.crossing(id).unwrap().sign());
            let sm = d.smooth_crossing(id).unwrap();
            let last = sm.num_components() - 1;
            prop_assert_eq!(sm.linking_number(axis, k).unwrap().unsigned_abs(), n);
            prop_assert_eq!(sm.linking_number(axis, last).unwrap().unsigned_abs(), n);
        }
    }

    #[test]
    fn encircling_form_is_an_isotopy(b in axis_braid()) {
        let d = b.closure().unwrap();
        let axis = axis_of(&d);
        let e = d.to_encircling_form(axis).unwrap();
        e.check_planar().unwrap();
        prop_assert!(e.is_encircling(axis));
        prop_assert_eq!(e.num_components(), d.num_components());
        prop_assert_eq!(lk_matrix(&e), lk_matrix(&d));
        prop_assert!(e.self_crossings(axis).is_empty());
        for k in 0..d.num_components() {
            prop_assert_eq!(e.self_crossings(k).len() % 2, d.self_crossings(k).len() % 2);
        }
    }

    #[test]
    fn twist_changes_linking_by_winding_products(b in axis_braid(), k in -2i64..=2) {
        let d = b.closure().unwrap();
        let axis = axis_of(&d);
        let e = d.to_encircling_form(axis).unwrap();
        let t = e.rolfsen_twist(axis, k).unwrap();
        t.check_planar().unwrap();
        prop_assert_eq!(t.num_components(), d.num_components() - 1);
        let old: Vec<usize> = (0..d.num_components()).filter(|&c| c != axis).collect();
        for (ni, &i) in old.iter().enumerate() {
            for (nj, &j) in old.iter().enumerate() {
                if ni < nj {
                    let wi = d.linking_number(axis, i).unwrap();
                    let wj = d.linking_number(axis, j).unwrap();
                    prop_assert_eq!(
                        t.linking_number(ni, nj).unwrap(),
                        d.linking_number(i, j).unwrap() + k * wi * wj
                    );
                }
            }
        }
    }
}

#[test]
fn twist_sign_on_two_coherent_strands() {
    // The first strand winds once around each of the other two.
    let d = BraidWord::new(3, vec![1, 2, 2, 1]).unwrap().closure().unwrap();
    let axis = axis_of(&d);
    let e = d.to_encircling_form(axis).unwrap();
    assert_eq!(e.encircled_strands(axis).unwrap(), 2);
    let t = e.rolfsen_twist(axis, 1).unwrap();
    assert_eq!(t.num_components(), 2);
    assert_eq!(axis, 0);
    assert_eq!(d.linking_number(1, 2).unwrap(), 0);
    assert_eq!(t.linking_number(0, 1).unwrap(), 1);
    assert!(t
        .crossings()
        .iter()
        .filter(|x| {
            let p = t.position(x.id()).unwrap();
            let (u, o) = t.strand_components(p);
            u != o
        })
        .all(|x| x.sign() == 1));
    let back = e.rolfsen_twist(axis, -1).unwrap();
    assert_eq!(back.linking_number(0, 1).unwrap(), -1);
}

#[test]
fn trefoil_switch_simplifies_to_unknot() {
    let d = parse_diagram("braid 2: 1 1 1").unwrap();
    for id in d.crossing_ids() {
        let s = d.switch_crossing(id).unwrap().simplify();
        assert_eq!(s.num_crossings(), 0);
    }
}

#[test]
fn axis_without_crossings_is_deleted() {
    let d = parse_diagram("braid 3: 1 1 1").unwrap();
    let t = d.rolfsen_twist(1, 5).unwrap();
    assert_eq!(t.num_components(), 1);
    assert_eq!(t.num_crossings(), 3);
}

#[test]
fn trefoil_smoothing_gives_hopf_link() {
    let d = parse_diagram("braid 2: 1 1 1").unwrap();
    let s = d.smooth_crossing(0).unwrap();
    assert_eq!(s.num_components(), 2);
    assert_eq!(s.linking_number(0, 1).unwrap().abs(), 1);
}

proptest! {
    #[test]
    fn exponent_sum_is_conjugation_invariant(b in (2usize..=5).prop_flat_map(|n| braid(n, 10)), g in 1i64..=4, inv in any::<bool>()) {
        let n = b.strands() as i64;
        let g = (g - 1) % (n - 1) + 1;
        let g = if inv { -g } else { g };
        let mut letters = vec![g];
        letters.extend_from_slice(b.letters());
        letters.push(-g);
        let conj = BraidWord::new(b.strands(), letters).unwrap();
        prop_assert_eq!(conj.exponent_sum(), b.exponent_sum());
    }
}
