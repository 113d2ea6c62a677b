mod common;

use proptest::prelude::*;
use r2ps::fusion::{
    chain, combine, conflict_left, conflict_right, dempster_combine, left_junctional_sum,
    right_junctional_sum, Rule,
};
use r2ps::io::{parse_document, render_mass_document, EvidenceDocument, Precision, Render, Source};
use r2ps::laws::{check_pseudo_matthew, groupings};
use r2ps::sample::letter_frame;
use r2ps::{Error, Event, Frame, MassFunction};

fn event_items(frame_size: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..frame_size, 1..=max_len)
}

fn build_mass(frame: &Frame, raw: Vec<(Vec<usize>, f64)>) -> MassFunction {
    let mut focal: Vec<(Vec<usize>, f64)> = Vec::new();
    for (items, w) in raw {
        if !focal.iter().any(|(e, _)| *e == items) {
            focal.push((items, w));
        }
    }
    let total: f64 = focal.iter().map(|(_, w)| w).sum();
    MassFunction::new(
        frame,
        focal
            .into_iter()
            .map(|(e, w)| (Event::new(frame, e).unwrap(), w / total)),
    )
    .unwrap()
}

/// `count` mass functions over a shared frame of 1 to 3 elements.
fn masses(count: usize) -> impl Strategy<Value = (Frame, Vec<MassFunction>)> {
    (1usize..=3).prop_flat_map(move |size| {
        let one = prop::collection::vec((event_items(size, 3), 0.05f64..1.0), 1..=5);
        prop::collection::vec(one, count).prop_map(move |raws| {
            let frame = letter_frame(size);
            let ms = raws
                .into_iter()
                .map(|raw| build_mass(&frame, raw))
                .collect();
            (frame, ms)
        })
    })
}

fn is_subsequence(needle: &[usize], hay: &[usize]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|y| y == x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn junction_laws(m in event_items(4, 5), n in event_items(4, 5)) {
        let frame = letter_frame(4);
        let m = Event::new(&frame, m).unwrap();
        let n = Event::new(&frame, n).unwrap();
        let lj = m.left_junction(&n).unwrap();
        let rj = m.right_junction(&n).unwrap();
        prop_assert!(is_subsequence(lj.items(), m.items()));
        prop_assert!(lj.len() <= m.len());
        prop_assert_eq!(&rj, &n.left_junction(&m).unwrap());
        let meet = m.project().unwrap().intersection(&n.project().unwrap());
        prop_assert_eq!(lj.is_empty(), meet.is_empty());
        prop_assert_eq!(rj.is_empty(), meet.is_empty());
        if !lj.is_empty() {
            prop_assert_eq!(lj.project().unwrap(), meet);
        }
        let n_canonical = n.project().unwrap().canonical_event();
        prop_assert_eq!(lj, m.left_junction(&n_canonical).unwrap());
    }

    #[test]
    fn conflicts_agree((_, ms) in masses(2)) {
        let l = conflict_left(&ms[0], &ms[1]).unwrap();
        let r = conflict_right(&ms[0], &ms[1]).unwrap();
        prop_assert!((l - r).abs() <= 1e-12);
    }

    #[test]
    fn sums_mirror_and_degenerate((_, ms) in masses(2)) {
        let (m1, m2) = (&ms[0], &ms[1]);
        match (left_junctional_sum(m1, m2), right_junctional_sum(m1, m2)) {
            (Ok(left), Ok(right)) => {
                let swapped = left_junctional_sum(m2, m1).unwrap();
                prop_assert_eq!(&right.result, &swapped.result);

                let via_sets = left_junctional_sum(m1, &m2.project().lift()).unwrap();
                prop_assert!(left.result.approx_eq(&via_sets.result, 1e-12));

                for e in left.result.focal_events() {
                    prop_assert!(m1.focal_events().any(|b| is_subsequence(e.items(), b.items())));
                }
                prop_assert!((left.result.total() - 1.0).abs() <= 1e-9);
                prop_assert!((right.result.total() - 1.0).abs() <= 1e-9);

                let classical = dempster_combine(&m1.project(), &m2.project()).unwrap();
                prop_assert!(left.result.project().approx_eq(&classical, 1e-12));
                prop_assert!(right.result.project().approx_eq(&classical, 1e-12));
            }
            (Err(Error::TotalConflict { .. }), Err(Error::TotalConflict { .. })) => {
                prop_assert!((conflict_left(m1, m2).unwrap() - 1.0).abs() <= 1e-9);
                prop_assert!(dempster_combine(&m1.project(), &m2.project()).is_err());
            }
            (l, r) => prop_assert!(false, "left {:?} vs right {:?}", l.is_ok(), r.is_ok()),
        }
    }

    #[test]
    fn same_direction_associates((_, ms) in masses(3)) {
        for rule in Rule::ALL {
            if let Ok((lhs, rhs)) = groupings(rule, rule, &ms[0], &ms[1], &ms[2]) {
                prop_assert!(lhs.approx_eq(&rhs, 1e-9), "{:?} vs {:?}", lhs, rhs);
            }
        }
    }

    #[test]
    fn tail_permutations_agree((_, ms) in masses(3)) {
        let refs: Vec<&MassFunction> = ms.iter().collect();
        for rule in Rule::ALL {
            let report = check_pseudo_matthew(rule, &refs, 1e-9);
            prop_assert!(report.passed, "{:?}", report);
        }
        if let Ok(a) = chain(Rule::Left, &[&ms[0], &ms[1], &ms[2]]) {
            let b = chain(Rule::Left, &[&ms[0], &ms[2], &ms[1]]).unwrap();
            prop_assert!(a.result.approx_eq(&b.result, 1e-9));
        }
    }

    #[test]
    fn projection_and_lift((_, ms) in masses(1)) {
        let m = &ms[0];
        let p = m.project();
        prop_assert!((p.total() - m.total()).abs() <= 1e-12 * m.len() as f64);
        prop_assert!(p.lift().project().approx_eq(&p, 0.0));
        prop_assert!(p.lift().is_rps());
    }

    #[test]
    fn full_precision_round_trip((frame, ms) in masses(2)) {
        let doc = EvidenceDocument::new(&frame, vec![
            Source { name: "x".into(), mass: ms[0].clone() },
            Source { name: "y".into(), mass: ms[1].clone() },
        ]).unwrap();
        let text = doc.render(Precision::FULL);
        let back = parse_document(text.as_bytes(), 1e-9).unwrap();
        for (a, b) in doc.sources().iter().zip(back.sources()) {
            prop_assert!(a.mass.approx_eq(&b.mass, 1e-16));
        }
        prop_assert_eq!(back.render(Precision::FULL), text);
    }

    #[test]
    fn rendering_is_idempotent((frame, ms) in masses(1), digits in 1u8..=17) {
        let p = Precision::new(digits).unwrap();
        let first = render_mass_document(&frame, "s", &ms[0], p);
        // Coarse precision can push totals off 1 or masses to zero; only re-render what parses.
        if let Ok(doc) = parse_document(first.as_bytes(), 1.0) {
            prop_assert_eq!(doc.render(p), first);
        }
    }

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_document(&bytes, 1e-9);
    }

    #[test]
    fn parser_never_panics_on_near_miss_text(body in "[abc:#. 0-9e\\-+\n]{0,120}") {
        let _ = parse_document(format!("frame: a b c\nsource s\n{body}").as_bytes(), 1e-9);
        let _ = parse_document(body.as_bytes(), 1e-9);
    }

    #[test]
    fn combine_rejects_nothing_valid((_, ms) in masses(2)) {
        for rule in Rule::ALL {
            match combine(rule, &ms[0], &ms[1]) {
                Ok(out) => prop_assert!(out.conflict < 1.0),
                Err(e) => {
                    let step_one = matches!(e, Error::TotalConflict { step: 1 });
                    prop_assert!(step_one, "{}", e);
                }
            }
        }
    }
}
