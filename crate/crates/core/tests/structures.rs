mod common;

use knotgroup::fpgroup::{abelianization, invariant_in, low_index_subgroups, tietze_simplify, DEFAULT_BUDGET};
use knotgroup::morse::{coreduction_dvf, verify_acyclic};
use knotgroup::{CellOrder, GroupPresentation};

#[test]
fn collapses_keep_structures_valid_and_euler_fixed() {
    let mut rng = common::rng(11);
    for i in 0..200 {
        let c = common::random_cstructure(&mut rng);
        let chi = c.euler_characteristic();
        let order = CellOrder::all(i)[i as usize % 3];
        let view = c.view();
        let dvf = coreduction_dvf(&view, order);
        assert!(verify_acyclic(&view, &dvf));
        assert_eq!(dvf.critical_counts(&view)[0], 1);
        let mut step = c.clone();
        for &(t, s) in dvf.vectors() {
            let pair = view.pair(t, s).unwrap();
            step = step.alpha_collapse(pair).unwrap();
            assert!(step.is_valid());
            assert_eq!(step.euler_characteristic(), chi);
        }
        assert_eq!(step.vertex_count(), 1);
        let mut reduced = c.clone();
        reduced.collapse_field(&dvf).unwrap();
        assert_eq!(reduced.edge_ids().collect::<Vec<_>>(), step.edge_ids().collect::<Vec<_>>());
        assert_eq!(reduced.face_ids().collect::<Vec<_>>(), step.face_ids().collect::<Vec<_>>());
        assert_eq!(abelianization(&reduced.presentation().unwrap()), abelianization(&step.presentation().unwrap()));
    }
}

#[test]
fn tietze_keeps_invariants_of_random_presentations() {
    let mut rng = common::rng(12);
    for i in 0..40 {
        let mut c = common::random_cstructure(&mut rng);
        c.reduce_with(CellOrder::all(i)[i as usize % 3]).unwrap();
        let p = c.presentation().unwrap();
        let q = tietze_simplify(&p, DEFAULT_BUDGET);
        assert!(q.generator_count() <= p.generator_count());
        assert_eq!(abelianization(&q), abelianization(&p));
        if p.generator_count() <= 4 {
            for n in 1..=3 {
                assert_eq!(low_index_subgroups(&q, n).len(), low_index_subgroups(&p, n).len(), "{p} vs {q}");
                assert_eq!(invariant_in(&q, n), invariant_in(&p, n));
            }
        }
    }
}

#[test]
fn presentation_formats_round_trip() {
    let mut rng = common::rng(13);
    for _ in 0..50 {
        let mut c = common::random_cstructure(&mut rng);
        c.reduce_with(CellOrder::default()).unwrap();
        let p = c.presentation().unwrap();
        assert_eq!(GroupPresentation::parse(&p.to_string()).unwrap(), p);
        assert_eq!(GroupPresentation::from_json(&p.to_json()).unwrap(), p);
    }
}
