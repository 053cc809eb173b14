use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use torsig::chow::{evaluate, self_intersection, signature_via_l, ChowEvaluator, DivisorMonomial};
use torsig::fan::{arrangement_fan, classify, classify_ray, normal_fan, ConvexityClass, Fan};
use torsig::generators::{
    arrangement_preset, associahedron, corpus, cube, permutohedron, permutohedron_lifted, ARRANGEMENT_PRESETS,
};
use torsig::invariants::{dehn_sommerville_ok, h_vector, sigma};
use torsig::lattice::{int_dot, int_vec, rat_vec, to_rational};
use torsig::linalg::{dual_basis, Matrix, Vector};
use torsig::polytope::{AngleClass, Polytope};
use torsig::verify::{plane_fan, random_non_acute_basis};
use torsig::{IntVector, RatMatrix, RatVector, Rational};

fn q(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Ratio::new(BigInt::from(n), BigInt::from(d)))
}

fn rat_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(proptest::collection::vec(rational(), n), n).prop_map(Matrix::from_vecs)
}

/// Products of elementary integer matrices, so always unimodular.
fn unimodular(d: usize) -> impl Strategy<Value = Vec<IntVector>> {
    proptest::collection::vec((0..d, 0..d, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
        for (i, j, k, flip) in ops {
            if i != j {
                for c in 0..d {
                    m[i][c] += k * m[j][c];
                }
            }
            if flip {
                m[i].iter_mut().for_each(|x| *x = -*x);
            }
        }
        m.iter().map(|r| int_vec(r)).collect()
    })
}

/// A complete fan in the plane: primitive rays whose angular gaps are all
/// below a half turn.
fn plane_rays() -> impl Strategy<Value = Vec<[i64; 2]>> {
    proptest::collection::btree_set((-4i64..=4, -4i64..=4), 3..8).prop_filter_map("not complete", |pts| {
        let mut rays: Vec<[i64; 2]> = pts
            .into_iter()
            .filter(|&(x, y)| num_integer::gcd(x, y) == 1)
            .map(|(x, y)| [x, y])
            .collect();
        rays.sort_by(|a, b| {
            let ang = |v: &[i64; 2]| (v[1] as f64).atan2(v[0] as f64);
            ang(a).partial_cmp(&ang(b)).expect("finite")
        });
        let k = rays.len();
        let ok = k >= 3 && (0..k).all(|i| {
            let (a, b) = (rays[i], rays[(i + 1) % k]);
            a[0] * b[1] - a[1] * b[0] > 0
        });
        ok.then_some(rays)
    })
}

fn small_point_set(d: usize) -> impl Strategy<Value = Vec<RatVector>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), d + 1..d + 6)
        .prop_map(|pts| pts.iter().map(|p| rat_vec(p)).collect())
}

fn sorted_vertices(p: &Polytope) -> BTreeSet<RatVector> {
    p.vertices().iter().cloned().collect()
}

/// Convexity of a star by supporting hyperplanes: every wall of the link
/// must have the whole star on the side of the ray.
fn star_convex_by_walls(fan: &Fan, ray: usize) -> bool {
    let d = fan.dim();
    let star = fan.star_rays(ray);
    for tau in fan.link(ray).iter().filter(|c| c.len() == d - 1) {
        let rows: Vec<RatVector> = tau.ray_indices.iter().map(|&r| to_rational(fan.ray(r))).collect();
        let normal = Matrix::from_rows(d, rows).unwrap().nullspace().remove(0);
        let side = |r: usize| normal.dot(&to_rational(fan.ray(r)));
        let own = side(ray);
        if star.iter().any(|&r| (side(r) * &own).is_negative()) {
            return false;
        }
    }
    true
}

fn corpus_fans() -> Vec<(String, Polytope, Fan)> {
    corpus()
        .into_iter()
        .map(|e| {
            let fan = normal_fan(&e.polytope).unwrap();
            (e.name, e.polytope, fan)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn determinant_is_multiplicative(a in rat_matrix(3), b in rat_matrix(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn dual_basis_is_an_involution(a in rat_matrix(4)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let b = a.rows().to_vec();
        prop_assert_eq!(dual_basis(&dual_basis(&b).unwrap()).unwrap(), b);
    }

    #[test]
    fn non_acute_bases_have_non_obtuse_duals(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (basis, dual) = random_non_acute_basis(&mut rng);
        let k = basis.len();
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                adj[i][j] = i != j && basis[i].dot(&basis[j]).is_negative();
            }
        }
        // transitive closure of the obtuseness graph
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    adj[i][j] = adj[i][j] || (adj[i][m] && adj[m][j]);
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let x = dual[i].dot(&dual[j]);
                prop_assert!(!x.is_negative());
                if adj[i][j] {
                    prop_assert!(x.is_positive());
                }
            }
        }
    }

    #[test]
    fn hull_round_trip(pts in small_point_set(2)) {
        if let Ok(p) = Polytope::from_vertices(pts) {
            if p.is_full_dimensional() {
                let back = Polytope::from_halfspaces(p.facets().to_vec(), 2).unwrap();
                prop_assert_eq!(sorted_vertices(&back), sorted_vertices(&p));
                prop_assert!(p.f_vector().euler_characteristic().is_one());
            }
        }
    }

    #[test]
    fn hull_round_trip_3d(pts in small_point_set(3)) {
        if let Ok(p) = Polytope::from_vertices(pts) {
            if p.is_full_dimensional() {
                let back = Polytope::from_halfspaces(p.facets().to_vec(), 3).unwrap();
                prop_assert_eq!(sorted_vertices(&back), sorted_vertices(&p));
                prop_assert!(p.f_vector().euler_characteristic().is_one());
            }
        }
    }

    #[test]
    fn angle_class_survives_isometries(pts in small_point_set(3), perm in Just([0usize, 1, 2]).prop_shuffle(), flips in proptest::array::uniform3(any::<bool>())) {
        if let Ok(p) = Polytope::from_vertices(pts) {
            if p.is_full_dimensional() {
                let rows: Vec<Vec<Rational>> = (0..3)
                    .map(|i| (0..3).map(|j| if perm[i] == j { q(if flips[i] { -1 } else { 1 }) } else { q(0) }).collect())
                    .collect();
                let moved = p.transform_unimodular(&Matrix::from_vecs(rows)).unwrap();
                prop_assert_eq!(moved.angle_class(), p.angle_class());
                prop_assert_eq!(moved.f_vector(), p.f_vector());
            }
        }
    }

    #[test]
    fn plane_fan_classes_match_the_wall_test(rays in plane_rays(), a in unimodular(2)) {
        let fan = plane_fan(&rays).unwrap();
        let class = classify(&fan).unwrap();
        for r in 0..fan.num_rays() {
            prop_assert_eq!(class.per_ray[r] >= ConvexityClass::LocallyConvex, star_convex_by_walls(&fan, r));
        }
        prop_assert_eq!(class.overall, *class.per_ray.iter().min().unwrap());
        let moved = fan.transform(&a).unwrap();
        prop_assert_eq!(classify(&moved).unwrap(), class);
        prop_assert_eq!(moved.m(), fan.m());
    }

    #[test]
    fn random_pivots_agree_on_plane_fans(rays in plane_rays(), seed in any::<u64>()) {
        let fan = plane_fan(&rays).unwrap();
        for i in 0..fan.num_rays() {
            let mono = DivisorMonomial::power(i, 2);
            let v = evaluate(&fan, &mono).unwrap();
            prop_assert_eq!(ChowEvaluator::with_random_pivots(&fan, seed).evaluate(&mono).unwrap(), v.clone());
            prop_assert!((v * torsig::scalar::int_to_rational(&fan.m())).is_integer());
        }
        // Noether's formula: 12 = K^2 + e for smooth complete surfaces
        if fan.m().is_one() {
            let k = fan.num_rays() as i64;
            let ksq: Rational = (0..fan.num_rays()).map(|i| self_intersection(&fan, i)).sum::<Rational>() + q(2 * k);
            prop_assert_eq!(ksq + q(k), q(12));
        }
    }

    #[test]
    fn three_dim_classes_survive_lattice_automorphisms(a in unimodular(3)) {
        for p in [permutohedron(4).unwrap(), associahedron(6).unwrap(), cube(3).unwrap()] {
            let fan = normal_fan(&p).unwrap();
            let moved = fan.transform(&a).unwrap();
            prop_assert_eq!(classify(&moved).unwrap(), classify(&fan).unwrap());
        }
    }
}

#[test]
fn corpus_fans_are_complete_and_walls_agree() {
    for (name, _, fan) in corpus_fans() {
        fan.check_complete().unwrap();
        if fan.dim() <= 3 {
            for r in 0..fan.num_rays() {
                let convex = classify_ray(&fan, r) >= ConvexityClass::LocallyConvex;
                assert_eq!(convex, star_convex_by_walls(&fan, r), "{name} ray {r}");
            }
        }
    }
    for name in ARRANGEMENT_PRESETS {
        let fan = arrangement_fan(&arrangement_preset(name).unwrap()).unwrap();
        fan.check_complete().unwrap();
        assert!(classify(&fan).unwrap().overall >= ConvexityClass::LocallyConvex, "{name}");
    }
}

#[test]
fn corpus_matches_expected_values() {
    for e in corpus() {
        let f = e.polytope.f_vector();
        let fan = normal_fan(&e.polytope).unwrap();
        let exp = &e.expected;
        if let Some(want) = &exp.f {
            assert_eq!(f.counts(), want.as_slice(), "{}", e.name);
        }
        if let Some(s) = exp.sigma {
            assert_eq!(sigma(&f), BigInt::from(s), "{}", e.name);
        }
        if let Some(c) = exp.convexity {
            assert_eq!(classify(&fan).unwrap().overall, c, "{}", e.name);
        }
        if let Some(m) = exp.m {
            assert_eq!(fan.m(), BigInt::from(m), "{}", e.name);
        }
        let h = h_vector(&f);
        assert_eq!(sigma(&f), h.alternating_sum());
        assert!(dehn_sommerville_ok(&h), "{}", e.name);
        assert!(f.euler_characteristic().is_one(), "{}", e.name);
        if f.dim() % 2 == 1 {
            assert!(sigma(&f).is_zero());
        }
    }
}

#[test]
fn products_multiply_f_sigma_and_m() {
    let fans = corpus_fans();
    let small: Vec<_> = fans.iter().filter(|(_, p, _)| p.ambient_dim() == 2).collect();
    for (a, pa, fa) in &small {
        for (b, pb, fb) in &small {
            let prod = pa.product(pb).unwrap();
            let f = prod.f_vector();
            assert_eq!(f, pa.f_vector().product(&pb.f_vector()), "{a} x {b}");
            assert_eq!(sigma(&f), sigma(&pa.f_vector()) * sigma(&pb.f_vector()));
            let fan = fa.product(fb).unwrap();
            assert_eq!(fan.m(), fa.m() * fb.m(), "{a} x {b}");
            assert!(classify(&fan).unwrap().overall < ConvexityClass::LocallyPointedConvex, "{a} x {b}");
        }
    }
}

#[test]
fn even_dimensional_smooth_corpus_signatures_via_intersections() {
    for (name, p, fan) in corpus_fans() {
        if fan.dim() % 2 == 0 && fan.m().is_one() {
            let s = sigma(&p.f_vector());
            assert_eq!(signature_via_l(&fan).unwrap(), torsig::scalar::int_to_rational(&s), "{name}");
        }
    }
}

#[test]
fn singular_surfaces_need_not_agree() {
    // P(1,1,2) still agrees, but the pentagon with cone indices 7, 3, 3, 2, 3
    // has sum D_i^2 = -31/21 against a topological signature of -1
    let p112 = plane_fan(&[[1, 0], [0, 1], [-1, -2]]).unwrap();
    assert_eq!(signature_via_l(&p112).unwrap(), q(1));
    let pentagon = corpus_fans().into_iter().find(|(n, _, _)| n == "obtuse-pentagon").unwrap();
    assert_eq!(sigma(&pentagon.1.f_vector()), BigInt::from(-1));
    assert_eq!(signature_via_l(&pentagon.2).unwrap(), Ratio::new(BigInt::from(-31), BigInt::from(63)));
}

#[test]
fn squarefree_cone_monomials_are_inverse_multiplicities() {
    for (name, _, fan) in corpus_fans() {
        for cone in fan.max_cones() {
            let mono = DivisorMonomial::new(cone.ray_indices.iter().map(|&r| (r, 1)));
            let v = evaluate(&fan, &mono).unwrap();
            assert_eq!(v, Ratio::new(BigInt::one(), fan.multiplicity(cone)), "{name}");
            if fan.m().is_one() {
                assert!(v.is_one());
            }
        }
    }
}

#[test]
fn pointed_convex_self_intersections() {
    // (-D_i)^{d-1} D_i is the top power of a big nef class on D_i
    for (name, _, fan) in corpus_fans() {
        if classify(&fan).unwrap().overall < ConvexityClass::LocallyPointedConvex {
            continue;
        }
        let d = fan.dim() as u32;
        let floor = Ratio::new(BigInt::one(), fan.m().pow(d - 1));
        for i in 0..fan.num_rays() {
            let v = self_intersection(&fan, i);
            let signed = if d.is_multiple_of(2) { -v } else { v };
            assert!(signed >= floor, "{name} ray {i}");
        }
    }
}

#[test]
fn permutohedra_are_non_acute_with_obtuse_ridges() {
    for n in 3..=5 {
        let p = permutohedron_lifted(n).unwrap();
        assert!(p.angle_class().is_non_acute(), "n = {n}");
        // facet normals projected to the sum-zero hyperplane
        let proj = |f: &IntVector| -> IntVector {
            let s: BigInt = f.iter().sum();
            Vector(f.iter().map(|x| x * BigInt::from(n) - &s).collect())
        };
        let facets = p.facets();
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                let mut common = p.facet_vertices(i).clone();
                common.intersect_with(p.facet_vertices(j));
                let ridge = common.count_ones(..) > 0
                    && torsig::polytope::affine_rank(common.ones().map(|v| &p.vertices()[v])) == n - 3;
                if ridge {
                    assert!(int_dot(&proj(&facets[i].normal), &proj(&facets[j].normal)).is_positive());
                }
            }
        }
    }
    assert_eq!(permutohedron_lifted(3).unwrap().angle_class(), AngleClass::Obtuse);
}

#[test]
fn associahedra_are_locally_convex() {
    for n in 4..=7 {
        let fan = normal_fan(&associahedron(n).unwrap()).unwrap();
        assert!(classify(&fan).unwrap().overall >= ConvexityClass::LocallyConvex, "n = {n}");
        assert!(fan.is_flag());
    }
}
