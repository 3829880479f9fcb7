use std::fs;

use cover::{eta_by_cover, AnnularPresentation};
use diagram::{parse_diagram, BraidWord, LinkDiagram};
use eta::*;
use laurent::{LaurentPoly, RationalLaurent};
use num_bigint::BigInt;
use proptest::prelude::*;

fn data(name: &str) -> LinkDiagram {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_diagram(&fs::read_to_string(path).unwrap()).unwrap()
}

fn poly(s: &str) -> RationalLaurent {
    RationalLaurent::from_poly(s.parse::<LaurentPoly>().unwrap())
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn whitehead_both_roles() {
    let d = data("whitehead.pd");
    let (a, b) = eta_pair(&d, &opts()).unwrap();
    assert_eq!(a.eta, poly("2 - t - t^-1"));
    assert_eq!(b.eta, poly("2 - t - t^-1"));
    assert_eq!(a.provenance, Provenance::Separable);
    assert_eq!(b.provenance, Provenance::ConwayRatio);
    assert_eq!(a.steps.len(), 1);
    let s = a.steps[0];
    assert_eq!((s.sign, s.n), (-1, 1));
    let again = eta_separable(&d, 0, 1, &a.steps, &opts()).unwrap();
    assert_eq!(again.eta, a.eta);
}

#[test]
fn example58_end_to_end() {
    let d = data("l10n58.pd");
    let r = eta_general(&d, 0, 1).unwrap();
    assert_eq!(r.provenance, Provenance::ConwayRatio);
    assert_eq!(r.steps.iter().map(|s| (s.sign, s.n)).collect::<Vec<_>>(), vec![(-1, 1)]);
    let q = RationalLaurent::new(LaurentPoly::one(), "t + t^-1 - 1".parse().unwrap()).unwrap();
    let expected = &q + &poly("1 - t - t^-1");
    assert_eq!(r.eta, expected);
    let betas: Vec<BigInt> = r.betas().to_vec();
    let want: Vec<BigInt> = [2, 1, 1, 1, 1, 1, 1, 1].into_iter().map(BigInt::from).collect();
    assert_eq!(betas, want);
    assert_eq!(eta_general(&d, 1, 0).unwrap().eta, expected);
}

#[test]
fn link_9_2_37_by_crossing_changes() {
    let d = data("9_2_37.pd");
    let r = eta_general(&d, 0, 1).unwrap();
    assert_eq!(r.provenance, Provenance::Separable);
    assert_eq!(r.eta, poly("4 - 2t - 2t^-1"));
    let c = eta_with_fallback(&d.simplify(), 0, 1, &opts()).unwrap();
    assert_eq!(c.eta, r.eta);
}

#[test]
fn threaded_kink_falls_back_to_the_cover() {
    let d = data("9_2_9.pd");
    assert!(matches!(eta_general(&d, 0, 1), Err(EtaError::EncirclingUnreachable(_))));
    let r = eta_with_fallback(&d, 0, 1, &opts()).unwrap();
    assert_eq!(r.provenance, Provenance::Cover);
    assert_eq!(r.positive_part(), Some("-t + t^2".parse().unwrap()));
    assert_eq!(eta_general(&d, 1, 0).unwrap().eta, r.eta);
}

#[test]
fn rejects_bad_input() {
    let hopf = data("hopf.pd");
    assert!(matches!(
        eta_general(&hopf, 0, 1),
        Err(EtaError::NonzeroLinking(0, 1, _))
    ));
    let w = data("whitehead.pd");
    assert!(matches!(eta_general(&w, 1, 1), Err(EtaError::BadRoles(1, 1))));
    assert!(matches!(
        eta_separable(&w, 0, 1, &[], &opts()),
        Err(EtaError::NotSeparated)
    ));
    let step = eta_general(&w, 0, 1).unwrap().steps[0];
    let wrong = UnknottingStep {
        sign: -step.sign,
        ..step
    };
    assert!(matches!(
        eta_separable(&w, 0, 1, &[wrong], &opts()),
        Err(EtaError::StepMismatch { .. })
    ));
}

#[test]
fn unknotting_sets_come_smallest_first() {
    let d = data("9_2_37.pd");
    let sets = find_unknotting_sets(&d, 0, 1, &opts()).unwrap();
    assert!(!sets.is_empty());
    assert!(sets.windows(2).all(|w| w[0].len() <= w[1].len()));
}

fn braid(n: usize, len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as i64, any::<bool>()), 1..=len)
        .prop_map(move |ls| BraidWord::new(n, ls.into_iter().map(|(j, s)| if s { j } else { -j }).collect()).unwrap())
}

/// Braid closure whose first strand is a component without self-crossings.
fn axis_braid() -> impl Strategy<Value = BraidWord> {
    (3usize..=4)
        .prop_flat_map(|n| (braid(n, 10), prop::collection::vec(any::<bool>(), n)))
        .prop_map(|(b, signs)| {
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
            BraidWord::new(b.strands(), letters).unwrap()
        })
}

/// Two-component link `(axis, curve)` with zero linking number, the axis
/// drawn without self-crossings.
fn pair_case(b: &BraidWord) -> Option<LinkDiagram> {
    let d = b.closure().ok()?;
    let axis = d.edge_component(0);
    let k = (0..d.num_components()).find(|&k| k != axis && d.linking_number(axis, k).ok() == Some(0))?;
    let p = d.sublink(&[axis, k]).ok()?;
    let a = AnnularPresentation::new(p.clone(), 0).ok()?;
    (a.winding(1) == 0).then_some(p)
}

fn by_cover(d: &LinkDiagram) -> RationalLaurent {
    eta_by_cover(&AnnularPresentation::new(d.clone(), 0).unwrap(), 1)
        .unwrap()
        .into()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn paths_agree_with_the_cover(b in axis_braid()) {
        let Some(d) = pair_case(&b) else { return Err(TestCaseError::reject("no null curve")) };
        let r = eta_with_fallback(&d, 0, 1, &opts()).unwrap();
        prop_assert_eq!(&r.eta, &by_cover(&d));
        prop_assert_eq!(r.eta.involute(), r.eta.clone());
    }

    #[test]
    fn crossing_change_shifts_eta_by_the_delta(b in axis_braid(), pick in any::<prop::sample::Index>()) {
        let Some(d) = pair_case(&b) else { return Err(TestCaseError::reject("no null curve")) };
        let selfs = d.self_crossings(1);
        prop_assume!(!selfs.is_empty());
        let id = selfs[pick.index(selfs.len())];
        let step = unknotting_step(&d, id, 0).unwrap();
        let switched = d.switch_crossing(id).unwrap();
        let diff = &by_cover(&d) - &by_cover(&switched);
        prop_assert_eq!(diff, RationalLaurent::from_poly(crossing_delta(step.sign, step.n)));
    }

    #[test]
    fn mirror_negates_and_reversal_preserves(b in axis_braid()) {
        let Some(d) = pair_case(&b) else { return Err(TestCaseError::reject("no null curve")) };
        let e = eta_with_fallback(&d, 0, 1, &opts()).unwrap().eta;
        let m = eta_with_fallback(&d.mirror(), 0, 1, &opts()).unwrap().eta;
        prop_assert_eq!(&m, &-&e);
        for k in 0..2 {
            let r = eta_with_fallback(&d.reverse_component(k).unwrap(), 0, 1, &opts()).unwrap().eta;
            prop_assert_eq!(&r, &e);
        }
    }
}
