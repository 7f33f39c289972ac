//! Invariants checked against small independent oracles.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use toric_roots::cones::{Cone, RelativePosition};
use toric_roots::demazure::{roots_within, BoxPoints};
use toric_roots::lattice::{int, rational, Int, LatticeMap, LatticeVector};
use toric_roots::lnd::{observed_degree, AlgebraElement, Derivation, Homogeneity};
use toric_roots::restriction::{classify, fiber, CardinalityClass, SubtorusRestriction};
use toric_roots::surface::{
    ah_invariants, ah_invariants_with, classify_surface, lambda_members, normalize_cone, two_parameter_family,
    CaseTag, SurfaceData,
};

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from(c)
}

fn ints(x: &LatticeVector) -> Vec<i64> {
    x.to_i64().expect("small")
}

fn dot64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A pointed full-dimensional cone from raw generators, when they give one.
fn cone_strategy() -> impl Strategy<Value = Cone> {
    (2usize..=3, prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2..6)).prop_filter_map(
        "degenerate generators",
        |(rank, raw)| {
            let gens: Vec<LatticeVector> = raw
                .iter()
                .map(|g| {
                    let mut c = g[..rank].to_vec();
                    // keep everything in an open half-space so the cone is pointed
                    c[rank - 1] = c[rank - 1].abs() + 1;
                    LatticeVector::from(c)
                })
                .collect();
            Cone::from_generators(rank, &gens).ok()
        },
    )
}

fn monoid_points(c: &Cone, bound: u32) -> Vec<LatticeVector> {
    BoxPoints::new(c.rank(), bound).filter(|m| c.dual_contains(m)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_match_the_definition(c in cone_strategy()) {
        let rays: Vec<Vec<i64>> = c.rays().iter().map(ints).collect();
        let mut expected = BTreeSet::new();
        for e in BoxPoints::new(c.rank(), 4) {
            let p: Vec<i64> = rays.iter().map(|r| dot64(r, &ints(&e))).collect();
            let minus = p.iter().filter(|&&x| x == -1).count();
            if minus == 1 && p.iter().all(|&x| x >= -1) {
                let ray = rays[p.iter().position(|&x| x == -1).unwrap()].clone();
                expected.insert((ints(&e), ray));
            }
        }
        let got: BTreeSet<(Vec<i64>, Vec<i64>)> =
            roots_within(&c, 4).iter().map(|r| (ints(r.e()), ints(r.ray()))).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn root_derivations_satisfy_leibniz(c in cone_strategy(), picks in prop::collection::vec((0usize..100, -4i64..=4), 1..4)) {
        let roots = roots_within(&c, 2);
        prop_assume!(!roots.is_empty());
        let pieces: Vec<Derivation> = picks
            .iter()
            .map(|(i, s)| Derivation::root(&c, &roots[i % roots.len()], rational(*s, 1)).unwrap())
            .collect();
        let d = Derivation::sum(&c, pieces).unwrap();
        let pts = monoid_points(&c, 2);
        for x in &pts {
            for y in pts.iter().take(6) {
                let lhs = d.on_character(&(x + y)).unwrap();
                let rhs = d.on_character(x).unwrap().shift(y).add(&d.on_character(y).unwrap().shift(x));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn certified_fibers_agree_with_box_scan(c in cone_strategy(), normal in prop::collection::vec(-3i64..=3, 3)) {
        let m = v(&normal[..c.rank()]);
        prop_assume!(!m.is_zero());
        let s = SubtorusRestriction::from_normal(&m).unwrap();
        let scan_box = 5u32;
        let mut images = BTreeSet::new();
        for r in roots_within(&c, 3) {
            images.insert(s.restrict_root(r.e()).unwrap());
        }
        for t in images {
            let f = fiber(&s, &c, &t, scan_box).unwrap();
            let scanned: BTreeSet<LatticeVector> = BoxPoints::new(c.rank(), scan_box)
                .filter(|e| toric_roots::demazure::is_root(&c, e).is_some() && s.restrict_root(e).unwrap() == t)
                .collect();
            let listed: BTreeSet<LatticeVector> = f.preimages.iter().map(|r| r.e().clone()).collect();
            let in_box: BTreeSet<LatticeVector> =
                listed.iter().filter(|e| e.sup_norm() <= int(scan_box as i64)).cloned().collect();
            prop_assert_eq!(&in_box, &scanned);
            if let Some(k) = f.cardinality_class.finite_size() {
                prop_assert_eq!(listed.len(), k);
            } else {
                prop_assert_eq!(f.cardinality_class, CardinalityClass::InfiniteCertified);
            }
        }
    }

    #[test]
    fn zero_only_restriction_is_bijective(c in cone_strategy(), weights in prop::collection::vec(1i64..=3, 8)) {
        let m = c.facets().iter().zip(weights.iter().cycle())
            .fold(LatticeVector::zero(c.rank()), |acc, (f, w)| acc.add_scaled(&int(*w), f));
        let s = SubtorusRestriction::from_normal(&m).unwrap();
        let r = classify(&s, &c, 4).unwrap();
        prop_assert_eq!(r.position, RelativePosition::ZeroOnly);
        prop_assert!(r.bijective);
        for f in &r.fibers {
            prop_assert_eq!(f.cardinality_class, CardinalityClass::ExactlyOne);
        }
    }

    #[test]
    fn integrality_of_p1_p2_ignores_the_bezout_choice(b in 1i64..=9, a in 0i64..9, q in 1i64..=9, r in -9i64..=9, k in -5i64..=5) {
        prop_assume!(a < b);
        let Ok(s) = SurfaceData::from_i64(a, b, r, q) else { return Ok(()) };
        prop_assume!(classify_surface(&s).lambda.is_some());
        let canon = ah_invariants(&s).unwrap();
        prop_assert!((&s.r * &canon.u + &s.q * &canon.v).is_one());
        let other = ah_invariants_with(&s, &canon.u + int(k) * &s.q, &canon.v - int(k) * &s.r);
        prop_assert_eq!(other.p1_integral, canon.p1_integral);
        prop_assert_eq!(other.p2_integral, canon.p2_integral);
        prop_assert!((&other.p1 - &canon.p1).is_integer());
        prop_assert!((&other.p2 - &canon.p2).is_integer());
        prop_assert_eq!(canon.p1_integral, s.q.is_one());
        prop_assert_eq!(canon.p2_integral, s.d().is_one());
    }

    #[test]
    fn lambda_matches_a_brute_force_merge(b in 1i64..=8, a in 0i64..8, q in 1i64..=8, r in -8i64..=8) {
        prop_assume!(a < b);
        let Ok(s) = SurfaceData::from_i64(a, b, r, q) else { return Ok(()) };
        prop_assume!(classify_surface(&s).lambda.is_some());
        // images of both root sets by direct enumeration
        let (r, q, d) = (s.r.clone(), s.q.clone(), s.d());
        // the least member of Λ is below r + q D <= 8 + 8 * 72
        let bound = 3000i64;
        let mut rho1 = BTreeSet::new();
        let mut m = s.rho1_threshold();
        loop {
            let t = -&r + &m * &q;
            if t > int(bound) { break; }
            rho1.insert(t);
            m += 1;
        }
        let m0 = s.least_rho2_root();
        let mut rho2 = BTreeSet::new();
        let mut t = s.restrict(&m0);
        while t <= int(bound) {
            rho2.insert(t.clone());
            t += &d;
        }
        let merged: Vec<Int> = rho1.intersection(&rho2).filter(|x| **x >= int(-bound)).cloned().collect();
        let got = lambda_members(&s, bound as u32).unwrap();
        prop_assert_eq!(&got.members, &merged);
        prop_assert_eq!(got.gcd_criterion, !merged.is_empty());
        let g = s.q.gcd(&d);
        prop_assert_eq!(got.gcd_criterion, (&s.a - Int::one()).is_multiple_of(&g));
    }

    #[test]
    fn normal_form_survives_a_change_of_basis(b in 1i64..=7, a in 0i64..7, x in -3i64..=3, y in -3i64..=3, flip in any::<bool>()) {
        prop_assume!(a < b && a.gcd(&b) == 1);
        // an elementary unimodular transform, optionally with a reflection
        let g = if flip {
            LatticeMap::new(vec![v(&[1, x]), v(&[y, x * y + 1])], 2).unwrap()
        } else {
            LatticeMap::new(vec![v(&[x * y + 1, x]), v(&[y, 1])], 2).unwrap()
        };
        prop_assert!(g.is_unimodular());
        let moved: Vec<LatticeVector> = [v(&[1, 0]), v(&[a, b])].iter().map(|r| g.apply(r).unwrap()).collect();
        let c = Cone::from_generators(2, &moved).unwrap();
        let nf = normalize_cone(&c).unwrap();
        // swapping the roles of the rays replaces a by its inverse mod b
        let inverse = if b == 1 { 0 } else { (1..b).find(|t| (a * t) % b == 1).unwrap() };
        prop_assert_eq!(nf.b.clone(), int(b));
        prop_assert!(nf.a == int(a) || nf.a == int(inverse), "a = {} for ({a},{b})", nf.a);
        prop_assert!(nf.transform.is_unimodular());
        let images: BTreeSet<LatticeVector> = c.rays().iter().map(|r| nf.transform.apply(r).unwrap()).collect();
        let target = [v(&[1, 0]), LatticeVector::new(vec![nf.a.clone(), nf.b.clone()])];
        prop_assert_eq!(images, target.into_iter().collect::<BTreeSet<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn two_parameter_family_is_a_t_homogeneous_lnd(
        a in 0i64..=2, extra in 1i64..=2, r in 1i64..=2, j in 0usize..2, alpha in -3i64..=3, beta in -3i64..=3,
    ) {
        let b = a + extra;
        prop_assume!(a.gcd(&b) == 1);
        let s = SurfaceData::from_i64(a, b, r, 1).unwrap();
        let case = classify_surface(&s);
        prop_assume!(case.tag == CaseTag::Case33);
        let members = lambda_members(&s, 6).unwrap().members;
        prop_assume!(j < members.len());
        let e = members[j].clone();
        let d = two_parameter_family(&s, &e, rational(alpha, 1), rational(beta, 1)).unwrap();
        let c = s.cone();
        let pts = monoid_points(&c, 3);
        for x in &pts {
            for y in pts.iter().take(5) {
                let lhs = d.on_character(&(x + y)).unwrap();
                let rhs = d.on_character(x).unwrap().shift(y).add(&d.on_character(y).unwrap().shift(x));
                prop_assert_eq!(lhs, rhs);
            }
        }
        let grading = LatticeMap::new(vec![s.line()], 2).unwrap();
        match observed_degree(&d, &pts, Some(&grading)).unwrap() {
            Homogeneity::Homogeneous(deg) => prop_assert_eq!(deg, LatticeVector::new(vec![e.clone()])),
            Homogeneity::Vanishing => prop_assert!(alpha == 0 && beta == 0),
            other => prop_assert!(false, "{other:?}"),
        }
        // nilpotent on every small character
        for m in pts.iter().take(8) {
            let mut cur = AlgebraElement::character(m.clone());
            let mut steps = 0;
            while !cur.is_zero() && steps < 40 {
                cur = d.apply(&cur).unwrap();
                steps += 1;
            }
            prop_assert!(cur.is_zero(), "χ^{} survives 40 steps", m);
        }
    }
}
