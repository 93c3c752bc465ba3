use kneser_core::constructions::{
    gen_f_st, gen_g6, gen_hm_star, ConstructionKind, ConstructionSpec,
};
use kneser_core::format::{from_json, from_text, parse_family, to_json, to_text};
use kneser_core::search::{max_f_free, SearchProblem, SideConstraint};
use kneser_core::{ell, induced_kneser_graph, is_free, Family, PatternGraph};

fn pattern(s: &str) -> PatternGraph {
    s.parse().unwrap()
}

#[test]
fn every_kind_generates_its_expected_size() {
    let specs = [
        ConstructionSpec::new(ConstructionKind::HmStar, 7, 3),
        ConstructionSpec::new(ConstructionKind::FSt, 9, 2)
            .with_s(2)
            .with_t(3),
        ConstructionSpec::new(ConstructionKind::FMulti, 11, 2).with_parts(&[2, 2, 1]),
        ConstructionSpec::new(ConstructionKind::G6, 10, 3),
        ConstructionSpec::new(ConstructionKind::G2s, 12, 3).with_s(4),
        ConstructionSpec::new(ConstructionKind::G2sPlus, 12, 3).with_s(4),
    ];
    for spec in specs {
        let f = spec.generate().unwrap();
        assert_eq!(
            f.len().to_string(),
            spec.expected_size().unwrap().to_string(),
            "{:?}",
            spec.kind
        );
    }
}

#[test]
fn families_survive_both_file_formats() {
    let f = gen_f_st(9, 2, 2, 3).unwrap();
    assert_eq!(from_text(&to_text(&f)).unwrap(), f);
    assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    assert_eq!(parse_family(&to_json(&f)).unwrap(), f);
    assert_eq!(parse_family(&to_text(&f)).unwrap(), f);
}

#[test]
fn hm_star_is_intersecting_without_common_element() {
    let f = gen_hm_star(7, 3).unwrap();
    let g = induced_kneser_graph(&f);
    assert!(is_free(&g, &pattern("K2")));
    assert_eq!(f.common_intersection(), Some(0));
}

#[test]
fn g6_avoids_hexagon_but_not_square() {
    let f = gen_g6(10, 3).unwrap();
    let g = induced_kneser_graph(&f);
    assert!(is_free(&g, &pattern("C6")));
    assert!(!is_free(&g, &pattern("K2")));
}

#[test]
fn removing_ell_members_kills_all_matchings() {
    let f = gen_f_st(9, 2, 2, 3).unwrap();
    let r = ell(&f, 2).unwrap();
    let rest: Family = f.without(&r.witness);
    assert!(is_free(&induced_kneser_graph(&rest), &pattern("K2")));
    assert_eq!(r.witness.len(), r.value);
}

#[test]
fn search_matches_star_and_hm_on_small_grid() {
    for n in 5..=7 {
        let plain = max_f_free(&SearchProblem::new(n, 2, pattern("K2"))).unwrap();
        assert_eq!(plain.optimum, n - 1);
        let side =
            SearchProblem::new(n, 2, pattern("K2")).with_side(SideConstraint::NoCommonElement);
        let out = max_f_free(&side).unwrap();
        assert_eq!(out.optimum, gen_hm_star(n, 2).unwrap().len());
    }
}
