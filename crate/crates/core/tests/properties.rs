mod common;

use std::collections::BTreeSet;

use isonorm_core::census::word::{ArcWord, CurveWord, Letter, Step};
use isonorm_core::census::{self_intersection, word_to_map, CensusError};
use isonorm_core::diagram::DiagramError;
use isonorm_core::homology::{class_of, determinant, evaluate, intersection_form, Certificate, Cochain};
use isonorm_core::moves::{eulco_union_check, reduce, UnionOutcome};
use isonorm_core::polytope::{minkowski_sum, NormOracle};
use isonorm_core::{
    convex_hull, enumerate_eulerian, eulco_classes, homology_basis, realize, torus_norm,
    CoOrientation, CombinatorialMap, DualWalk, HomologyBasis,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_map, zonotope};

fn arb_map() -> impl Strategy<Value = CombinatorialMap> {
    (1usize..=5, any::<u64>()).prop_map(|(v, s)| random_map(&mut ChaCha8Rng::seed_from_u64(s), v))
}

fn arb_positive_genus_map() -> impl Strategy<Value = CombinatorialMap> {
    arb_map().prop_filter("genus 0", |m| m.genus() > 0)
}

fn arb_points(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..10)
}

fn support(points: &[Vec<i64>], a: &[i64]) -> i64 {
    points
        .iter()
        .map(|p| p.iter().zip(a).map(|(x, y)| x * y).sum())
        .max()
        .unwrap()
}

fn classes(map: &CombinatorialMap) -> (HomologyBasis, BTreeSet<Vec<i64>>) {
    let b = homology_basis(map).unwrap();
    let c = eulco_classes(map, &b).unwrap();
    (b, c)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 100,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn euler_formula(map in arb_map()) {
        let chi = map.euler_characteristic();
        prop_assert_eq!(map.edge_count(), 2 * map.vertex_count());
        prop_assert!(chi <= 2 && chi % 2 == 0);
        prop_assert_eq!(chi, 2 - 2 * map.genus() as i64);
        if map.faces().len() == 1 && map.genus() == 2 {
            prop_assert_eq!(map.vertex_count(), 3);
        }
    }

    #[test]
    fn relabelling_keeps_faces(map in arb_map(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..map.vertex_count()).collect();
        order.shuffle(&mut rng);
        let perm: Vec<usize> = (0..map.half_edge_count())
            .map(|h| 4 * order[h / 4] + h % 4)
            .collect();
        let other = map.relabel(&perm);
        let mut d1 = map.faces().degrees();
        let mut d2 = other.faces().degrees();
        d1.sort_unstable();
        d2.sort_unstable();
        prop_assert_eq!(d1, d2);
        prop_assert!(map.isomorphic(&other, false));
        prop_assert!(map.isomorphic(&map.mirror(), true));
    }

    #[test]
    fn strands_cover_each_edge_once(map in arb_map()) {
        let index = map.edge_index();
        let mut seen = vec![0; map.edge_count()];
        for strand in map.curves() {
            for h in strand {
                seen[index[h.0]] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn cocycle_iff_eulerian(map in arb_map(), mask in any::<u32>()) {
        let signs: Vec<bool> = (0..map.edge_count()).map(|e| mask >> e & 1 == 1).collect();
        let nu = CoOrientation::from_signs(&map, &signs);
        let c = nu.cochain(&map);
        let closed = (0..map.vertex_count())
            .all(|v| evaluate(&c, &DualWalk::vertex_circle(v)).unwrap() == 0);
        prop_assert_eq!(closed, nu.is_eulerian(&map));
    }

    #[test]
    fn class_is_additive_and_kills_coboundaries(map in arb_positive_genus_map(), pot in prop::collection::vec(-3i64..=3, 5)) {
        let b = homology_basis(&map).unwrap();
        let nus = enumerate_eulerian(&map);
        let (x, y) = (&nus[0], &nus[nus.len() - 1]);
        let sum = x.cochain(&map).add(&y.cochain(&map));
        let cx = class_of(&map, &x.cochain(&map), &b).unwrap();
        let cy = class_of(&map, &y.cochain(&map), &b).unwrap();
        let cs = class_of(&map, &sum, &b).unwrap();
        prop_assert_eq!(cs, cx.iter().zip(&cy).map(|(p, q)| p + q).collect::<Vec<_>>());
        let potential: Vec<i64> = (0..map.faces().len()).map(|f| pot[f % pot.len()]).collect();
        let exact = Cochain::coboundary(&map, &potential);
        prop_assert!(class_of(&map, &exact, &b).unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn class_changes_unimodularly(map in arb_positive_genus_map()) {
        let b = homology_basis(&map).unwrap();
        // all computed walks start and end in face 0, so they concatenate
        let mut walks = b.walks.clone();
        walks[0] = DualWalk::new([b.walks[0].steps.clone(), b.walks[1].steps.clone()].concat());
        let b2 = HomologyBasis::from_walks(&map, walks).unwrap();
        for nu in enumerate_eulerian(&map) {
            let c = class_of(&map, &nu.cochain(&map), &b).unwrap();
            let c2 = class_of(&map, &nu.cochain(&map), &b2).unwrap();
            prop_assert_eq!(c2[0], c[0] + c[1]);
            prop_assert_eq!(&c2[1..], &c[1..]);
        }
    }

    #[test]
    fn basis_is_unimodular(map in arb_positive_genus_map()) {
        let b = homology_basis(&map).unwrap();
        prop_assert_eq!(b.rank(), 2 * map.genus());
        if let Certificate::Presentation { divisors, .. } = &b.certificate {
            prop_assert!(divisors.iter().all(|d| *d == 1.into()));
        } else {
            prop_assert!(false, "computed basis must carry a presentation");
        }
        let form = intersection_form(&map, &b);
        for i in 0..form.len() {
            for j in 0..form.len() {
                prop_assert_eq!(form[i][j], -form[j][i]);
            }
        }
        prop_assert_eq!(determinant(&form), 1.into());
    }

    #[test]
    fn class_sets_symmetric_and_congruent(map in arb_map()) {
        let (_, set) = classes(&map);
        let curves = map.curves().len();
        prop_assert!(enumerate_eulerian(&map).len() >= 1 << curves);
        let first = set.iter().next().unwrap().clone();
        for x in &set {
            prop_assert!(set.contains(&x.iter().map(|v| -v).collect::<Vec<_>>()));
            prop_assert!(x.iter().zip(&first).all(|(a, b)| (a - b) % 2 == 0));
        }
    }

    #[test]
    fn eulerian_matches_brute_force(map in arb_map()) {
        let fast: BTreeSet<Vec<bool>> = enumerate_eulerian(&map).iter().map(|c| c.signs(&map)).collect();
        prop_assert_eq!(fast, common::brute_eulerian(&map));
    }

    #[test]
    fn hull_idempotent_and_order_free(pts in arb_points(3), seed in any::<u64>()) {
        let h = convex_hull(&pts).unwrap();
        prop_assert_eq!(&convex_hull(h.vertices()).unwrap(), &h);
        let mut shuffled = pts.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(&convex_hull(&shuffled).unwrap(), &h);
        for a in [[1, 0, 0], [1, -2, 3], [0, 0, -1]] {
            prop_assert_eq!(h.support(&a).unwrap(), support(&pts, &a));
        }
    }

    #[test]
    fn minkowski_support_adds(p in arb_points(2), q in arb_points(2), a in prop::collection::vec(-5i64..=5, 2)) {
        let (hp, hq) = (convex_hull(&p).unwrap(), convex_hull(&q).unwrap());
        let s = minkowski_sum(&hp, &hq).unwrap();
        prop_assert_eq!(s.support(&a).unwrap(), hp.support(&a).unwrap() + hq.support(&a).unwrap());
    }

    #[test]
    fn symmetric_support_is_a_norm(pts in arb_points(4), a in prop::collection::vec(-4i64..=4, 4), b in prop::collection::vec(-4i64..=4, 4), n in -4i64..=4) {
        let sym: Vec<Vec<i64>> = pts.iter().flat_map(|p| [p.clone(), p.iter().map(|x| -x).collect()]).collect();
        let oracle = NormOracle::new(convex_hull(&sym).unwrap()).unwrap();
        let na = oracle.norm(&a).unwrap();
        let scaled: Vec<i64> = a.iter().map(|x| n * x).collect();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(oracle.norm(&scaled).unwrap(), n.abs() * na);
        prop_assert!(oracle.norm(&sum).unwrap() <= na + oracle.norm(&b).unwrap());
    }

    #[test]
    fn dual_balls_are_lattice_symmetric_congruent(map in arb_positive_genus_map()) {
        let (_, set) = classes(&map);
        let ball = convex_hull(&set.into_iter().collect::<Vec<_>>()).unwrap();
        prop_assert!(ball.is_symmetric());
        prop_assert!(ball.mod2_congruent());
    }

    #[test]
    fn smoothing_keeps_parity_and_hull(map in arb_positive_genus_map()) {
        let b = homology_basis(&map).unwrap();
        for v in 0..map.vertex_count() {
            if let UnionOutcome::Checked(r) = eulco_union_check(&map, v, &b).unwrap() {
                let p = r.parent.iter().next().unwrap();
                for kid in &r.children {
                    for x in kid {
                        prop_assert!(x.iter().zip(p).all(|(a, b)| (a - b) % 2 == 0));
                    }
                }
                prop_assert!(r.children_included, "vertex {v}");
                prop_assert!(r.hull_equal, "vertex {v}");
            }
        }
    }

    #[test]
    fn reduce_strictly_lowers_faces(map in arb_map()) {
        let f = map.faces().len();
        let red = reduce(&map);
        prop_assert!(red.steps.len() < f.max(1));
        for s in &red.steps {
            prop_assert!(s.faces_after < s.faces_before);
        }
    }

    #[test]
    fn torus_round_trip(gens in prop::collection::vec((-3i64..=3, -3i64..=3), 1..4), a in (-20i64..=20, -20i64..=20)) {
        let gens: Vec<[i64; 2]> = gens.into_iter().map(|(x, y)| [x, y]).filter(|w| *w != [0, 0]).collect();
        prop_assume!(!gens.is_empty());
        let poly = zonotope(&gens);
        let col = realize(&poly).unwrap();
        prop_assert_eq!(&col.dual_ball().unwrap(), &poly);
        prop_assert_eq!(torus_norm(&col, [a.0, a.1]), poly.support(&[a.0, a.1]).unwrap());
    }

    #[test]
    fn crossing_formula_counts_vertices(succ in Just(Letter::ALL.to_vec()).prop_shuffle(), cuts in prop::collection::vec(any::<bool>(), 3), fwd in prop::collection::vec(any::<bool>(), 4), twist in prop::collection::vec(-2i64..=2, 4)) {
        // split the shuffled letters into curves where `cuts` says so
        let mut curves = vec![Vec::new()];
        for (i, &l) in succ.iter().enumerate() {
            if i > 0 && cuts[i - 1] {
                curves.push(Vec::new());
            }
            curves.last_mut().unwrap().push(Step::new(l, fwd[i], twist[i]));
        }
        let word = ArcWord::new(curves.into_iter().map(|steps| CurveWord { steps }).collect()).unwrap();
        match word_to_map(&word) {
            Ok(wm) => prop_assert_eq!(wm.map.vertex_count() as i64, self_intersection(&word)),
            Err(CensusError::CrossingFreeCurve(_) | CensusError::Diagram(DiagramError::Map(_))) => {}
            Err(e) => prop_assert!(false, "{word}: {e}"),
        }
    }
}
