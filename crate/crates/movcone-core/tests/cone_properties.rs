mod oracle;

use movcone_core::cone::rank;
use movcone_core::{Cone, LinearMap, Rational, RationalVector};
use num_traits::Zero;
use proptest::prelude::*;

fn vector(dim: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(-3i64..=3, dim).prop_map(RationalVector::from_ints)
}

fn cone_input() -> impl Strategy<Value = (usize, Vec<RationalVector>)> {
    (1usize..=4).prop_flat_map(|dim| (Just(dim), prop::collection::vec(vector(dim), 0..=8)))
}

fn v(c: &[i64]) -> RationalVector {
    RationalVector::from_ints(c.iter().copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn double_dual_recomputed_from_scratch((dim, gens) in cone_input()) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        let dual = Cone::from_generators(dim, &c.facet_normals()).unwrap();
        prop_assert_eq!(&dual, &c.dual());
        let back = Cone::from_generators(dim, &dual.facet_normals()).unwrap();
        prop_assert_eq!(&back, &c);
    }

    #[test]
    fn both_constructors_agree((dim, gens) in cone_input()) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        prop_assert_eq!(Cone::from_inequalities(dim, &c.facet_normals()).unwrap(), c.clone());
        let h = Cone::from_inequalities(dim, &gens).unwrap();
        prop_assert_eq!(Cone::from_generators(dim, &h.generators()).unwrap(), h);
    }

    #[test]
    fn representations_agree((dim, gens) in cone_input()) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        let generators = c.generators();
        let span = rank(&generators);
        for g in &generators {
            for n in c.facet_normals() {
                prop_assert!(g.dot(&n) >= Rational::zero());
            }
        }
        for n in c.facet_rays() {
            let tight: Vec<_> = generators.iter().filter(|g| g.dot(n).is_zero()).cloned().collect();
            prop_assert_eq!(rank(&tight), span - 1);
        }
        for g in &gens {
            prop_assert!(c.contains(g).unwrap());
        }
    }

    #[test]
    fn membership_matches_fourier_motzkin(
        (dim, gens) in cone_input(),
        probes in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 8),
    ) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        let mut tests: Vec<RationalVector> =
            probes.iter().map(|p| RationalVector::from_ints(p[..dim].iter().copied())).collect();
        tests.extend(gens.iter().map(|g| -g));
        for w in gens.windows(2) {
            tests.push(&w[0] + &w[1]);
        }
        for t in &tests {
            prop_assert_eq!(c.contains(t).unwrap(), oracle::fm_contains(&gens, t), "probe {}", t);
        }
    }

    #[test]
    fn positive_scaling_is_invisible(
        (dim, gens) in cone_input(),
        factors in prop::collection::vec((1i64..=7, 1i64..=7), 8),
    ) {
        let scaled: Vec<_> = gens
            .iter()
            .zip(&factors)
            .map(|(g, &(p, q))| g.scale(&Rational::new(p.into(), q.into())))
            .collect();
        prop_assert_eq!(Cone::from_generators(dim, &scaled).unwrap(), Cone::from_generators(dim, &gens).unwrap());
    }

    #[test]
    fn stored_vectors_are_primitive((dim, gens) in cone_input()) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        for x in c.generators().iter().chain(c.facet_normals().iter()) {
            prop_assert!(x.is_primitive());
        }
    }

    #[test]
    fn facets_match_brute_force_when_full_dimensional((dim, gens) in cone_input()) {
        let c = Cone::from_generators(dim, &gens).unwrap();
        prop_assume!(dim >= 2 && c.is_full_dimensional() && c.is_pointed());
        prop_assert_eq!(oracle::brute_force_facets(dim, &gens), c.facet_normals());
    }

    #[test]
    fn adding_an_equation_shrinks_the_cone((dim, normals) in cone_input(), extra in prop::collection::vec(-3i64..=3, 4)) {
        let extra = RationalVector::from_ints(extra[..dim].iter().copied());
        let before = Cone::from_inequalities(dim, &normals).unwrap();
        let mut more = normals.clone();
        more.push(extra);
        let after = Cone::from_inequalities(dim, &more).unwrap();
        prop_assert!(before.contains_cone(&after).unwrap());
    }
}

#[test]
fn bundle_mori_cone_facets_by_brute_force() {
    let mori = [v(&[1, 0, 0]), v(&[0, 0, 1]), v(&[0, 1, -1])];
    let expected = oracle::brute_force_facets(3, &mori);
    assert_eq!(expected, vec![v(&[0, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 0])]);
    assert_eq!(Cone::from_generators(3, &mori).unwrap().facet_normals(), expected);
}

#[test]
fn bundle_moving_cone_rays_by_brute_force() {
    let eq = movcone_core::corpus::bundle_equation_classes();
    let rays = oracle::brute_force_rays(3, &eq);
    assert_eq!(rays, vec![v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[1, 1, 0])]);
    assert_eq!(Cone::from_inequalities(3, &eq).unwrap().generators(), rays);
    // Each of Λ, Γ and Λ+E is implied by the three facets.
    let facets = [v(&[0, 0, 1]), v(&[1, 0, -1]), v(&[-1, 1, 1])];
    let reduced = Cone::from_inequalities(3, &facets).unwrap();
    assert_eq!(reduced, Cone::from_inequalities(3, &eq).unwrap());
}

#[test]
fn nu_is_not_a_moving_class() {
    let eq = movcone_core::corpus::bundle_equation_classes();
    let nu = v(&[0, 0, 1]);
    assert!(eq.iter().any(|d| d.dot(&nu) < Rational::zero()));
    assert!(!oracle::fm_contains(&oracle::brute_force_rays(3, &eq), &nu));
}

#[test]
fn diagonal_halfplane_by_hand() {
    // In the plane: x ≥ 0, y ≥ 0, x ≥ y. Rays (1,0) and (1,1).
    let rays = oracle::brute_force_rays(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, -1])]);
    assert_eq!(rays, vec![v(&[1, 0]), v(&[1, 1])]);
}

#[test]
fn identity_pushforward_keeps_mori_cone() {
    let mori = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 0, 1]), v(&[0, 1, -1])]).unwrap();
    assert_eq!(mori.apply_map(&LinearMap::identity(3)).unwrap(), mori);
}
