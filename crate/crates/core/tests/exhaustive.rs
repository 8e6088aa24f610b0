mod common;

use std::collections::BTreeSet;

use common::{all_up_to, permute, shuffle, to_jsl};
use jsl_core::enumerate::{class_counts, enum_levels, validate_theorems_with, EnumConfig};
use jsl_core::omod::{is_omodular, verify_witness};
use jsl_core::{
    canonical_form, check_omodular, find_m2, find_m4, is_isomorphic, modular_law_check,
    run_pipeline, to_proof_labels, Error, StrengthSelection, Template,
};
use jsl_oracles as oracle;

#[test]
fn counts_match_direct_filter() {
    let counts = class_counts(5, EnumConfig::default()).unwrap();
    let direct: Vec<usize> = (1..=5).map(|n| oracle::jsl_classes_direct(n).len()).collect();
    assert_eq!(counts, direct);
    assert_eq!(counts, vec![1, 1, 2, 5, 15]);
}

#[test]
fn enumerated_classes_are_pairwise_non_isomorphic() {
    for level in enum_levels(5, EnumConfig::default()).unwrap() {
        for (i, a) in level.iter().enumerate() {
            for b in &level[i + 1..] {
                assert!(is_isomorphic(&a.structure, &b.structure).is_none());
                assert_ne!(a.canonical, b.canonical);
            }
        }
    }
}

#[test]
fn canonical_form_agrees_with_brute_force_classes() {
    let all = all_up_to(5);
    for (s, m) in &all {
        let ours = canonical_form(s).unwrap();
        for (t, mt) in &all {
            let same_ours = ours == canonical_form(t).unwrap();
            let same_brute = oracle::brute_canonical(m) == oracle::brute_canonical(mt);
            assert_eq!(same_ours, same_brute);
            assert_eq!(same_ours, is_isomorphic(s, t).is_some());
        }
        for salt in 0..4 {
            let p = to_jsl(&permute(m, &shuffle(m.len(), salt)));
            assert_eq!(canonical_form(&p).unwrap(), ours);
        }
    }
}

#[test]
fn omodularity_matches_oracle() {
    for (s, m) in all_up_to(6) {
        for salt in 0..3 {
            let pm = permute(&m, &shuffle(m.len(), salt));
            let ps = to_jsl(&pm);
            let w = check_omodular(&ps);
            let o = oracle::omodular_violation(&pm);
            assert_eq!(w.is_none(), o.is_none(), "{}", s.to_structure_text());
            if let (Some(w), Some((a, b, c))) = (w, o) {
                assert_eq!((w.a, w.b, w.c), (a, b, c));
                assert!(verify_witness(&ps, &w));
                assert!(pm[w.c][w.a] && w.a != w.c);
                let bc = oracle::lub(&pm, w.b, w.c).unwrap();
                assert!(pm[w.x][w.a] && pm[w.x][bc]);
                let mut y = oracle::lower(&pm, &[w.a, w.b]);
                y.push(w.c);
                assert!(oracle::upper(&pm, &y).contains(&w.y));
                assert!(!pm[w.x][w.y]);
                assert!(to_proof_labels(&ps, &w).unwrap().is_valid(&ps));
            }
        }
    }
}

#[test]
fn lattices_agree_with_modular_law() {
    let mut lattices = 0;
    for (s, m) in all_up_to(6) {
        match modular_law_check(&s) {
            Err(Error::NotALattice { .. }) => assert!(!oracle::is_lattice(&m)),
            Err(e) => panic!("{e}"),
            Ok(v) => {
                lattices += 1;
                assert!(oracle::is_lattice(&m));
                assert_eq!(v.is_none(), is_omodular(&s));
                assert_eq!(v.is_none(), oracle::modular_violation(&m).is_none());
            }
        }
    }
    // lattices with 1..=6 elements: 1 + 1 + 1 + 2 + 5 + 15
    assert_eq!(lattices, 25);
}

#[test]
fn embeddings_match_oracle() {
    for (s, m) in all_up_to(6) {
        for (template, order) in [(Template::M2, oracle::M2_ORDER), (Template::M4, oracle::M4_ORDER)] {
            let ours: BTreeSet<(Vec<usize>, (bool, bool, bool))> = jsl_core::substructure::find_embeddings(&s, template)
                .into_iter()
                .map(|e| {
                    let st = e.strength;
                    (e.members, (st.semi_strong, st.strong_strict, st.strong_lu))
                })
                .collect();
            let theirs: BTreeSet<_> = oracle::embeddings(&m, template.size(), order).into_iter().collect();
            assert_eq!(ours, theirs, "{}", s.to_structure_text());
        }
        for e in find_m2(&s).iter().chain(&find_m4(&s)) {
            let sub = s.sub_semilattice(e.member_set()).unwrap();
            assert!(is_isomorphic(&sub, &e.template.structure()).is_some());
            let st = e.strength;
            assert!(!st.strong_strict || st.strong_lu);
            assert!(!st.strong_lu || st.semi_strong);
        }
    }
}

#[test]
fn pipeline_on_every_non_omodular_structure() {
    let mut m2_branch = 0;
    let mut m4_branch = 0;
    for (s, _) in all_up_to(7) {
        let trace = run_pipeline(&s).unwrap();
        let Some(t) = trace else {
            assert!(is_omodular(&s));
            continue;
        };
        assert!(t.facts.iter().all(|f| f.holds));
        assert_eq!(t.t2.strength.semi_strong, t.lbc.is_empty());
        if t.lbc.is_empty() {
            m2_branch += 1;
            assert!(t.t4.is_none() && t.t5.is_none());
        } else {
            m4_branch += 1;
            assert!(t.t4.as_ref().unwrap().strength.semi_strong);
            let t5 = t.t5.as_ref().unwrap();
            assert!(t5.strength.strong_lu);
            assert_eq!(t5.template, Template::M4);
        }
    }
    assert!(m2_branch > 0 && m4_branch > 0);
}

#[test]
fn census_is_independent_of_worker_count() {
    let run = |jobs| {
        validate_theorems_with(6, StrengthSelection::Both, EnumConfig { jobs: Some(jobs), ..EnumConfig::default() })
            .unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.jsl_count, 53);
    assert!(one.passed());
}
