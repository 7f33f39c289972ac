//! Named property suites behind `toric-roots verify`.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cones::{Cone, RelativePosition};
use crate::demazure::{roots_within, BoxPoints};
use crate::error::{Error, Result};
use crate::lattice::{int, Int, LatticeMap, LatticeVector, Rational};
use crate::lnd::{nilpotency_oracle, observed_degree, AlgebraElement, Derivation, Homogeneity};
use crate::restriction::{classify, cremona_roots, fiber, fiber_in_box, CardinalityClass, SubtorusRestriction};
use crate::surface::{ah_invariants, classify_surface, lambda_members, SurfaceData};

pub const SUITES: &[&str] = &[
    "a3-hyperplane",
    "cremona",
    "zero-only",
    "interior-no-rays",
    "surface-grid",
    "leibniz",
    "non-homogeneous",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
        }
        let verdict = if self.passed { "passed" } else { "FAILED" };
        let _ = writeln!(out, "suite {} (bound {}, seed {}) {verdict}", self.suite, self.bound, self.seed);
        out
    }
}

struct Checks(Vec<CheckLine>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.0.push(CheckLine { name: name.to_string(), passed, detail });
    }
}

pub fn run_suite(suite: &str, bound: u32, seed: u64) -> Result<SuiteReport> {
    if bound == 0 {
        return Err(Error::Input("verify needs --bound >= 1".into()));
    }
    let mut checks = Checks(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        "a3-hyperplane" => a3_hyperplane(&mut checks, bound)?,
        "cremona" => cremona(&mut checks, bound)?,
        "zero-only" => zero_only(&mut checks, bound, &mut rng)?,
        "interior-no-rays" => interior_no_rays(&mut checks, bound, &mut rng)?,
        "surface-grid" => surface_grid(&mut checks, bound)?,
        "leibniz" => leibniz(&mut checks, bound, &mut rng)?,
        "non-homogeneous" => non_homogeneous(&mut checks, bound)?,
        other => {
            return Err(Error::Input(format!("unknown suite {other:?}; known suites: {}", SUITES.join(", "))));
        }
    }
    let passed = checks.0.iter().all(|c| c.passed);
    Ok(SuiteReport { suite: suite.to_string(), bound, seed, passed, checks: checks.0 })
}

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from(c)
}

fn a3_hyperplane(checks: &mut Checks, bound: u32) -> Result<()> {
    let s = SubtorusRestriction::from_basis(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3)?;
    let c = Cone::orthant(3);
    let b = bound as i64;
    let mut bad = Vec::new();
    let mut n = 0;
    for x in -1..=b {
        for y in 0..=b {
            let t = v(&[x, y]);
            if fiber(&s, &c, &t, bound)?.cardinality_class != (CardinalityClass::Exactly { k: 2 }) {
                bad.push(t);
            }
            n += 1;
        }
    }
    checks.push("fibers over (a,b) have size 2", bad.is_empty(), format!("{n} T-roots, failures {bad:?}"));
    let mut bad = Vec::new();
    for x in -1..=b {
        let t = v(&[x, -1]);
        let certified = fiber(&s, &c, &t, bound)?;
        // every preimage has coordinates in [-1, x + 1]
        let scanned = fiber_in_box(&s, &c, &t, bound + 1)?;
        let want = Some((x + 1) as usize);
        if certified.cardinality_class.finite_size() != want || Some(scanned.preimages.len()) != want {
            bad.push(t);
        }
    }
    checks.push("fibers over (c,-1) have size c+1", bad.is_empty(), format!("c = -1..={b}, failures {bad:?}"));
    Ok(())
}

fn cremona(checks: &mut Checks, bound: u32) -> Result<()> {
    for n in 2..=4usize {
        let roots = cremona_roots(n, bound)?;
        let ok = roots.iter().all(|r| {
            let a = r.alpha.to_i64().unwrap_or_default();
            let mut chi = a.clone();
            chi[r.variable - 1] = -1;
            a[r.variable - 1] == 0 && a.iter().all(|&x| x >= 0) && r.character == v(&chi)
        });
        // C(n - 1 + k, k) monomials of degree k in n - 1 variables, per variable
        let mut expected = 0u64;
        for k in 0..=bound as u64 {
            expected += binomial(n as u64 - 2 + k, k);
        }
        expected *= n as u64;
        checks.push(
            &format!("Cremona root vectors for n = {n}"),
            ok && roots.len() as u64 == expected,
            format!("{} root vectors, {expected} expected", roots.len()),
        );
    }
    Ok(())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_cone(rng: &mut ChaCha8Rng, rank: usize) -> Cone {
    loop {
        let k = rng.gen_range(rank..=rank + 1);
        let gens: Vec<LatticeVector> = (0..k)
            .map(|_| LatticeVector::from((0..rank).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>()))
            .filter(|g| !g.is_zero())
            .collect();
        if let Ok(c) = Cone::from_generators(rank, &gens) {
            return c;
        }
    }
}

fn zero_only(checks: &mut Checks, bound: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..10 {
        let rank = 2 + i % 2;
        let c = random_cone(rng, rank);
        let m = c
            .facets()
            .iter()
            .fold(LatticeVector::zero(rank), |acc, f| acc.add_scaled(&int(rng.gen_range(1..=3)), f));
        let s = SubtorusRestriction::from_normal(&m)?;
        let r = classify(&s, &c, bound)?;
        let ok = r.position == RelativePosition::ZeroOnly
            && r.bijective
            && r.fibers.iter().all(|f| f.cardinality_class == CardinalityClass::ExactlyOne);
        let rays: Vec<String> = c.rays().iter().map(|x| x.to_string()).collect();
        checks.push(
            &format!("instance {i}"),
            ok,
            format!("rays {}, normal {}, {} fibers", rays.join(" "), s.m_t().expect("corank one"), r.fibers.len()),
        );
    }
    Ok(())
}

fn interior_no_rays(checks: &mut Checks, bound: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut found = 0;
    while found < 10 {
        let rank = 2 + found % 2;
        let c = random_cone(rng, rank);
        let m = LatticeVector::from((0..rank).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>());
        if m.is_zero() {
            continue;
        }
        let s = SubtorusRestriction::from_normal(&m)?;
        let r = classify(&s, &c, bound)?;
        if r.position != RelativePosition::InteriorNoRays {
            continue;
        }
        let sizes: Vec<Option<usize>> = r.fibers.iter().map(|f| f.cardinality_class.finite_size()).collect();
        let ok = sizes.iter().all(|k| matches!(k, Some(1) | Some(2)));
        let doubles = sizes.iter().filter(|k| **k == Some(2)).count();
        checks.push(
            &format!("instance {found}"),
            ok,
            format!("normal {}, {} fibers, {doubles} of size 2", s.m_t().expect("corank one"), sizes.len()),
        );
        found += 1;
    }
    Ok(())
}

fn surface_grid(checks: &mut Checks, bound: u32) -> Result<()> {
    let top = bound.min(10) as i64;
    let (mut tuples, mut t_roots, mut lambda_bad, mut p2_bad, mut table_bad) = (0, 0, Vec::new(), Vec::new(), Vec::new());
    for b in 1..=top {
        for a in 0..b {
            for q in 1..=top {
                for r in -top..=top {
                    let Ok(s) = SurfaceData::from_i64(a, b, r, q) else { continue };
                    tuples += 1;
                    let case = classify_surface(&s);
                    if case.lambda.is_some() {
                        let m = lambda_members(&s, bound)?;
                        if m.gcd_criterion != m.witness.is_some() {
                            lambda_bad.push((a, b, r, q));
                        }
                        let inv = ah_invariants(&s)?;
                        if inv.p2_integral != s.d().is_one() {
                            p2_bad.push((a, b, r, q));
                        }
                    }
                    let sub = SubtorusRestriction::from_basis(&[s.line()], 2)?;
                    let cone = s.cone();
                    for t in -(bound as i64)..=bound as i64 {
                        let f = fiber(&sub, &cone, &v(&[t]), bound)?;
                        // the table speaks only about T-roots
                        if f.cardinality_class.finite_size() == Some(0) {
                            continue;
                        }
                        t_roots += 1;
                        if f.cardinality_class != case.row_for(&int(t)).fiber {
                            table_bad.push((a, b, r, q, t));
                        }
                    }
                }
            }
        }
    }
    checks.push("Λ gcd criterion matches the solver", lambda_bad.is_empty(), format!("{tuples} tuples, failures {}", first_few(&lambda_bad)));
    checks.push("p2 integral iff D = 1", p2_bad.is_empty(), format!("failures {}", first_few(&p2_bad)));
    checks.push("table fiber classes match certified fibers", table_bad.is_empty(), format!("{t_roots} T-roots, failures {}", first_few(&table_bad)));
    Ok(())
}

fn first_few<T: std::fmt::Debug>(xs: &[T]) -> String {
    format!("{:?}", &xs[..xs.len().min(3)])
}

fn monoid_points(cone: &Cone, bound: u32) -> Vec<LatticeVector> {
    BoxPoints::new(cone.rank(), bound).filter(|m| cone.dual_contains(m)).collect()
}

fn leibniz(checks: &mut Checks, bound: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..10 {
        let c = random_cone(rng, 2 + i % 2);
        let roots = roots_within(&c, bound.min(3));
        let pts = monoid_points(&c, bound.min(3));
        if roots.is_empty() || pts.is_empty() {
            continue;
        }
        let pieces = (0..2)
            .map(|_| {
                let r = &roots[rng.gen_range(0..roots.len())];
                Derivation::root(&c, r, Rational::from_integer(int(rng.gen_range(1..=5))))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Derivation::sum(&c, pieces)?;
        let mut failures = 0;
        for _ in 0..20 {
            let x = &pts[rng.gen_range(0..pts.len())];
            let y = &pts[rng.gen_range(0..pts.len())];
            let lhs = d.on_character(&(x + y))?;
            let rhs = d.on_character(x)?.shift(y).add(&d.on_character(y)?.shift(x));
            if lhs != rhs {
                failures += 1;
            }
        }
        checks.push(&format!("sum of two root derivations, instance {i}"), failures == 0, format!("{failures} of 20 pairs fail"));
    }
    Ok(())
}

fn non_homogeneous(checks: &mut Checks, bound: u32) -> Result<()> {
    let x = |e: &[i64]| AlgebraElement::character(v(e));
    let d = Derivation::polynomial(vec![x(&[0, 1, 1]), x(&[0, 0, 0]), AlgebraElement::zero()])?;
    let probes: Vec<LatticeVector> = monoid_points(&Cone::orthant(3), bound)
        .into_iter()
        .filter(|m| m.coords().iter().fold(Int::zero(), |acc, c| acc + c) <= int(bound as i64))
        .collect();
    let grading = LatticeMap::new(vec![v(&[1, 1, -1])], 3)?;
    let t = observed_degree(&d, &probes, Some(&grading))?;
    checks.push("T-degree is -1", t == Homogeneity::Homogeneous(v(&[-1])), format!("{t:?}"));
    let full = observed_degree(&d, &probes, None)?;
    checks.push("not homogeneous for the big torus", matches!(&full, Homogeneity::Inhomogeneous(s) if s.len() == 2), format!("{full:?}"));
    // ∂ lowers the weight 2 m1 + m2 by one, so x^m dies after 2 m1 + m2 + 1 steps
    let budget = 2 * bound as usize + 1;
    let elements: Vec<AlgebraElement> = probes.into_iter().map(AlgebraElement::character).collect();
    let verdict = nilpotency_oracle(&d, &elements, budget)?;
    checks.push("locally nilpotent on the probes", verdict.is_nilpotent(), format!("{verdict:?} with budget {budget}"));
    Ok(())
}
