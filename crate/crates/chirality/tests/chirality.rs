use std::fs;

use chirality::*;
use diagram::{parse_diagram, BraidWord, LinkDiagram};
use proptest::prelude::*;

fn data(name: &str) -> LinkDiagram {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_diagram(&fs::read_to_string(path).unwrap()).unwrap()
}

fn table(s: &str) -> EpsilonTable {
    epsilon_types(&s.parse().unwrap(), &Declarations::new()).unwrap()
}

fn eps(s: &str) -> EpsilonType {
    s.parse().unwrap()
}

/// Hopf link Bing-doubled `n` times, each time on the component `pick(k)`.
fn iterated_bing(n: usize, pick: impl Fn(usize) -> usize) -> SatelliteExpr {
    (0..n).fold(SatelliteExpr::Hopf, |e, k| SatelliteExpr::bing(0, pick(k) % (k + 2), e))
}

#[test]
fn borromean_rings_are_achiral_exactly_when_the_product_is_one() {
    let t = table("Borromean");
    let want: Vec<EpsilonType> = ["(1,1,1)", "(-1,-1,1)", "(-1,1,-1)", "(1,-1,-1)"].map(eps).into();
    let mut got = t.achiral_types();
    got.sort();
    let mut want = want;
    want.sort();
    assert_eq!(got, want);
    assert!(!t.asserted);
}

#[test]
fn bing_pattern_needs_product_minus_one() {
    for (e, s) in bing_pattern_types() {
        assert_eq!(s.is_chiral(), e.pi() != -1, "{e}");
    }
}

#[test]
fn hopf_doubled_on_both_components() {
    let t = table("Bing(on=2, Bing(r=0, Hopf))");
    assert_eq!(t.components, 4);
    assert_eq!(t.status(&eps("(1,1,1,1)")), Some(Status::ChiralProven));
    for (e, s) in &t.entries {
        assert_eq!(s.is_chiral(), e.pi() != -1, "{e}");
    }
}

#[test]
fn parity_law_for_iterated_bing_doubles() {
    for n in 1..=3 {
        for pick in [|_: usize| 0, |k: usize| k + 1, |k: usize| 2 * k + 1] {
            let e = iterated_bing(n, pick);
            let t = epsilon_types(&e, &Declarations::new()).unwrap();
            assert_eq!(t.components, n + 2);
            let law = if n % 2 == 1 { 1 } else { -1 };
            for (x, s) in &t.entries {
                assert_eq!(!s.is_chiral(), x.pi() == law, "n={n} {e} {x}");
            }
            assert_eq!(t.asserted, n >= 3);
        }
    }
}

#[test]
fn whitehead_doubles() {
    let mut decls = Declarations::new();
    decls.insert("T".into(), AtomDecl::chiral_prime());
    decls.insert("fig8".into(), AtomDecl::achiral_prime(&[1, -1]));
    for r in -3..=3 {
        for k in ["T", "fig8"] {
            let e = SatelliteExpr::whitehead(r, 0, SatelliteExpr::atom(k));
            assert!(epsilon_types(&e, &decls).unwrap().absolutely_chiral(), "W^{r}({k})");
        }
    }
    let fig8 = table("WDouble(r=1, Unknot)");
    assert_eq!(fig8.achiral_types(), vec![eps("(1)"), eps("(-1)")]);
    assert!(table("WDouble(r=2, atom(fig8, achiral=+,-))").absolutely_chiral());
    assert!(table("WDouble(r=0, Hopf)").absolutely_chiral());
}

#[test]
fn bing_doubles_of_knots() {
    let fig8 = table("Bing(r=0, atom(fig8, achiral=+,-))");
    assert!(fig8.entries.iter().all(|(_, s)| *s == Status::AchiralProven));
    assert!(table("Bing(r=1, atom(fig8, achiral=+,-))").absolutely_chiral());
    let amph = table("Bing(r=0, atom(K, achiral=-))");
    for (e, s) in &amph.entries {
        assert_eq!(!s.is_chiral(), -e.get(0) * e.get(1) == -1, "{e}");
    }
    let unknown = table("Bing(r=0, atom(K, achiral=?))");
    assert!(unknown.entries.iter().all(|(_, s)| *s == Status::AchiralPossible));
}

#[test]
fn connected_sums() {
    let mut decls = Declarations::new();
    decls.insert("T".into(), AtomDecl::chiral_prime());
    decls.insert("Tm".into(), AtomDecl::chiral_prime());
    decls.insert("E".into(), AtomDecl::achiral_prime(&[1, -1]));
    let rel = [Relation {
        left: "T".into(),
        sign: 1,
        right: "Tm".into(),
    }];
    assert!(connected_sum_achirality(&[("E", 1)], 1, &decls, &[]).unwrap());
    assert!(connected_sum_achirality(&[("E", 1)], -1, &decls, &[]).unwrap());
    assert!(connected_sum_achirality(&[("T", 1), ("Tm", 1)], 1, &decls, &rel).unwrap());
    assert!(!connected_sum_achirality(&[("T", 1), ("Tm", 1)], -1, &decls, &rel).unwrap());
    assert!(!connected_sum_achirality(&[("T", 1)], 1, &decls, &[]).unwrap());
    assert!(!connected_sum_achirality(&[("T", 2), ("Tm", 1)], 1, &decls, &rel).unwrap());
    assert!(connected_sum_achirality(&[("T", 1), ("Tm", 1), ("E", 3)], 1, &decls, &rel).unwrap());
    let e: SatelliteExpr = "Sum(atom(T), atom(Tm); rel: mirror(T)=Tm)".parse().unwrap();
    let t = epsilon_types(&e, &decls).unwrap();
    assert_eq!(t.achiral_types(), vec![eps("(1)")]);
    assert_eq!(
        epsilon_types(&e, &Declarations::new()).unwrap_err(),
        ChiralityError::UndeclaredAtom("T".into())
    );
}

#[test]
fn inconsistent_relations_are_rejected() {
    let mut decls = Declarations::new();
    for k in ["A", "B", "C"] {
        decls.insert(k.into(), AtomDecl::chiral_prime());
    }
    let rel = |l: &str, r: &str| Relation {
        left: l.into(),
        sign: 1,
        right: r.into(),
    };
    let both = [rel("A", "B"), rel("A", "C")];
    assert!(matches!(
        connected_sum_achirality(&[("A", 1), ("B", 1)], 1, &decls, &both),
        Err(ChiralityError::InconsistentRelations(_))
    ));
    decls.insert("E".into(), AtomDecl::achiral_prime(&[1]));
    assert!(matches!(
        connected_sum_achirality(&[("E", 1), ("A", 1)], 1, &decls, &[rel("E", "A")]),
        Err(ChiralityError::InconsistentRelations(_))
    ));
}

#[test]
fn braids_in_the_solid_torus() {
    let v = |l: Vec<i64>, n| braid_chirality(&BraidWord::new(n, l).unwrap());
    assert!(v(vec![1, 1, 1], 2).absolutely_chiral);
    assert!(!v(vec![1, -2, 1, -2], 3).absolutely_chiral);
    assert!(!v(vec![], 2).absolutely_chiral);
}

#[test]
fn whitehead_link_report() {
    let v = obstruction_report(&data("whitehead.pd"), &ReportOptions::default());
    assert!(v.absolutely_chiral);
    assert!(!v.setwise_chiral);
    assert!(v.types.iter().all(|t| !t.reasons.is_empty()));
    assert!(v.evidence.iter().any(|e| e.value == "2 - t - t^-1"));
}

#[test]
fn hopf_link_report() {
    let v = obstruction_report(&data("hopf.pd"), &ReportOptions::default());
    assert!(v.positive_chiral() && v.negative_chiral());
    assert!(!v.absolutely_chiral);
    assert_eq!(v.status(&eps("(1,-1)")), Some(Status::AchiralPossible));
}

#[test]
fn link_8_2_10_report() {
    let d = data("8_2_10.pd");
    let first = ReportOptions {
        roles: Some((0, 1)),
        ..ReportOptions::default()
    };
    let v = obstruction_report(&d, &first);
    assert!(v.evidence.is_empty());
    assert!(v.notes.iter().any(|n| n.contains("undetermined by eta")));
    let both = obstruction_report(&d, &ReportOptions::default());
    assert!(both.absolutely_chiral);
    assert!(both.setwise_chiral);
}

#[test]
fn knots_get_no_verdict() {
    let v = obstruction_report(&data("trefoil.pd"), &ReportOptions::default());
    assert!(v.evidence.is_empty());
    assert_eq!(v.types.len(), 2);
}

#[test]
fn borromean_report_finds_nothing() {
    let v = obstruction_report(&data("borromean.pd"), &ReportOptions::default());
    assert!(v.evidence.is_empty(), "{:?}", v.evidence);
    assert!(v.types.iter().all(|t| t.status == Status::AchiralPossible));
}

fn expr() -> impl Strategy<Value = SatelliteExpr> {
    let leaf = prop_oneof![
        Just(SatelliteExpr::Hopf),
        Just(SatelliteExpr::Borromean),
        Just(SatelliteExpr::declared("E", AtomDecl::achiral_prime(&[1, -1]))),
        Just(SatelliteExpr::declared("A", AtomDecl::achiral_prime(&[-1]))),
        Just(SatelliteExpr::declared("T", AtomDecl::chiral_prime())),
    ];
    leaf.prop_recursive(3, 8, 1, |inner| {
        (inner, 0usize..4, -1i64..=1, 0u8..3).prop_map(|(e, on, r, kind)| match kind {
            0 | 1 => SatelliteExpr::bing(if kind == 0 { 0 } else { r }, on, e),
            _ => SatelliteExpr::whitehead(r, on, e),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rules_respect_linking_and_parse_back(e in expr()) {
        let Ok(t) = epsilon_types(&e, &Declarations::new()) else { return Err(TestCaseError::reject("bad component")) };
        prop_assert_eq!(t.entries.len(), 1 << t.components);
        prop_assert_eq!(epsilon_types(&e.to_string().parse().unwrap(), &Declarations::new()).unwrap(), t);
    }

    #[test]
    fn sums_are_symmetric_and_stable_under_pairs(
        ms in prop::collection::vec(1usize..3, 4),
        order in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        eps_sign in prop_oneof![Just(1), Just(-1)],
    ) {
        let names = ["P", "Pm", "E", "T"];
        let mut decls = Declarations::new();
        decls.insert("P".into(), AtomDecl::chiral_prime());
        decls.insert("Pm".into(), AtomDecl::chiral_prime());
        decls.insert("E".into(), AtomDecl::achiral_prime(&[1, -1]));
        decls.insert("T".into(), AtomDecl::chiral_prime());
        let rel = [Relation { left: "P".into(), sign: 1, right: "Pm".into() }];
        let factors: Vec<(&str, usize)> = names.iter().copied().zip(ms.iter().copied()).collect();
        let shuffled: Vec<(&str, usize)> = order.iter().map(|&i| factors[i]).collect();
        let a = connected_sum_achirality(&factors, eps_sign, &decls, &rel).unwrap();
        prop_assert_eq!(a, connected_sum_achirality(&shuffled, eps_sign, &decls, &rel).unwrap());
        let mut doubled = factors.clone();
        doubled.push(("P", 1));
        doubled.push(("Pm", 1));
        prop_assert_eq!(a, connected_sum_achirality(&doubled, eps_sign, &decls, &rel).unwrap());
    }

    #[test]
    fn evidence_only_grows(b in (2usize..=4).prop_flat_map(|n| prop::collection::vec((1..n as i64, any::<bool>()), 1..=8).prop_map(move |ls| (n, ls)))) {
        let (n, ls) = b;
        let word = BraidWord::new(n, ls.into_iter().map(|(j, s)| if s { j } else { -j }).collect()).unwrap();
        let d = word.closure().unwrap();
        prop_assume!(d.num_components() >= 2);
        let none = ReportOptions { linking: false, eta: false, ..ReportOptions::default() };
        let lk = ReportOptions { eta: false, ..ReportOptions::default() };
        let reports = [none, lk, ReportOptions::default()].map(|o| obstruction_report(&d, &o));
        for w in reports.windows(2) {
            prop_assert!(w[1].evidence.starts_with(&w[0].evidence));
            for (x, y) in w[0].types.iter().zip(&w[1].types) {
                prop_assert!(!x.status.is_chiral() || y.status.is_chiral());
            }
        }
        for r in &reports {
            for t in &r.types {
                prop_assert_eq!(t.status.is_chiral(), !t.reasons.is_empty());
            }
        }
    }
}
