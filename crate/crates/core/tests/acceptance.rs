//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always reach the output; exits non-zero on any failure.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use branchfold::action::{is_good_action, projection_as_covering, quotient, SimplicialAction};
use branchfold::chart::{
    chart_index, chart_isomorphism, charts_equivalent, common_dominating_chart, dominates, lift_chart,
    local_characteristic, quotient_chart, reduce_chart, validate_chart, Chart,
};
use branchfold::cone::{
    cone_distance, law_of_cosines, local_holonomy_order, model_of_angle, rational_conifold_verdict, ConeAngle,
    ConeParams, RadiusBound,
};
use branchfold::covering::{
    coverings_isomorphic, extract_cocycle, fox_complete, is_regular, minimal_regularization, pullback, rh_check,
    CoveringMap,
};
use branchfold::fixtures::*;
use branchfold::perm::Permutation;
use branchfold::simplicial::{
    is_good_subcomplex, is_good_subcomplex_star, open_complement_components, Complex, Simplex,
};

use common::*;

const SEED: u64 = 20_240_917;
const EXACT_TOL: f64 = 1e-12;
const CONTINUITY_TOL: f64 = 1e-4;
const TRIANGLE_TOL: f64 = 1e-9;
const SMALL_K: f64 = 1e-6;
const TRIANGLE_SAMPLES: usize = 10_000;
const RANDOM_COCYCLES: usize = 100;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn sub(c: &Complex, s: &[&[u32]]) -> Complex {
    c.subcomplex(&s.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("fixture subcomplex")
}

/// `(name, P, S, expected goodness)`.
fn goodness_fixtures() -> Vec<(&'static str, Complex, Complex, bool)> {
    let octa = octahedron();
    let octa1 = octa.subdivide_once();
    let b = octahedron_barycenter;
    let cone = octa.cone(7).unwrap();
    let d4 =
        Complex::from_top(&[vec![1, 2, 3, 4], vec![1, 2, 3, 5], vec![1, 2, 4, 5], vec![1, 3, 4, 5], vec![2, 3, 4, 5]])
            .unwrap();
    let bowtie = Complex::from_top(&[vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
    let hex = polygon(6);
    let rp2 = projective_plane();
    let dk = disk(6);
    vec![
        ("octahedron poles", octa.clone(), sub(&octa, &[&[5], &[6]]), true),
        ("octahedron edge", octa.clone(), sub(&octa, &[&[1, 3]]), false),
        ("octahedron vertex", octa.clone(), sub(&octa, &[&[1]]), true),
        ("octahedron all vertices", octa.clone(), octa.skeleton(0), true),
        ("octahedron equator", octa.clone(), sub(&octa, &[&[1, 3], &[3, 2], &[2, 4], &[4, 1]]), false),
        ("octahedron meridian arc", octa.clone(), sub(&octa, &[&[5, 1], &[1, 6]]), false),
        ("octahedron empty", octa.clone(), Complex::empty(), true),
        ("octahedron 2-face", octa.clone(), sub(&octa, &[&[1, 3, 5]]), false),
        ("circle vertex", hex.clone(), sub(&hex, &[&[1]]), false),
        ("circle two vertices", hex.clone(), sub(&hex, &[&[1], &[4]]), false),
        ("projective plane vertex", rp2.clone(), sub(&rp2, &[&[1]]), true),
        ("projective plane edge", rp2.clone(), sub(&rp2, &[&[1, 2]]), false),
        ("disk apex", dk.clone(), sub(&dk, &[&[7]]), true),
        ("disk boundary vertex", dk.clone(), sub(&dk, &[&[1]]), true),
        ("disk boundary edge", dk.clone(), sub(&dk, &[&[1, 2]]), true),
        ("disk radius", dk.clone(), sub(&dk, &[&[1, 7]]), false),
        ("subdivided octahedron old vertices", octa1.clone(), sub(&octa1, &[&[b(&[1])], &[b(&[2])], &[b(&[5])]]), true),
        ("subdivided octahedron edge barycenter", octa1.clone(), sub(&octa1, &[&[b(&[1, 3])]]), true),
        ("ball apex", cone.clone(), sub(&cone, &[&[7]]), true),
        ("ball axis", cone.clone(), sub(&cone, &[&[5, 7], &[7, 6]]), true),
        ("ball internal triangle", cone.clone(), sub(&cone, &[&[1, 3, 7]]), false),
        ("3-sphere edge", d4.clone(), sub(&d4, &[&[1, 2]]), true),
        ("3-sphere triangle", d4.clone(), sub(&d4, &[&[1, 2, 3]]), false),
        ("3-sphere two edges", d4.clone(), sub(&d4, &[&[1, 2], &[3, 4]]), true),
        ("bowtie joint", bowtie.clone(), sub(&bowtie, &[&[1]]), false),
        ("bowtie corner", bowtie.clone(), sub(&bowtie, &[&[2]]), true),
    ]
}

/// All face-closed subsets of `s`, or its skeleta and single simplices when `s` is large.
fn subcomplexes(s: &Complex) -> Vec<Complex> {
    let simplices = s.simplices();
    if simplices.len() <= 12 {
        let mut out = Vec::new();
        for mask in 0u32..(1 << simplices.len()) {
            let chosen: Vec<Simplex> =
                (0..simplices.len()).filter(|i| mask & (1 << i) != 0).map(|i| simplices[i].clone()).collect();
            let closed = Complex::closure(chosen.iter()).expect("faces");
            if closed.len() == chosen.len() {
                out.push(closed);
            }
        }
        out
    } else {
        let mut out: Vec<Complex> = (-1..=s.dim()).map(|d| s.skeleton(d)).collect();
        out.extend(simplices.iter().map(|x| s.subcomplex(std::slice::from_ref(x)).unwrap()));
        out
    }
}

fn criterion_1() -> Outcome {
    let fixtures = goodness_fixtures();
    ensure(fixtures.len() >= 20, || "fewer than 20 fixtures".into())?;
    let mut checks = 0;
    for (name, p, s, expected) in &fixtures {
        let link = is_good_subcomplex(p, s);
        let star = is_good_subcomplex_star(p, s);
        ensure(link == star, || format!("{name}: link test {link}, star test {star}"))?;
        ensure(link == *expected, || format!("{name}: expected good = {expected}"))?;
        if link {
            for r in subcomplexes(s) {
                ensure(is_good_subcomplex(p, &r) && is_good_subcomplex_star(p, &r), || {
                    format!("{name}: subcomplex {:?} not good", r.simplices())
                })?;
                checks += 1;
            }
            if p.is_connected() {
                let parts = open_complement_components(p, s).len();
                ensure(parts == 1, || format!("{name}: complement has {parts} components"))?;
            }
        }
    }
    for (n1, p1, s1, g1) in &fixtures {
        for (n2, p2, s2, g2) in &fixtures {
            if p1 != p2 || !*g1 || !*g2 {
                continue;
            }
            let u = s1.union(s2);
            ensure(is_good_subcomplex(p1, &u) && is_good_subcomplex_star(p1, &u), || {
                format!("union of {n1} and {n2} not good")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{} fixtures, {checks} subcomplex/union checks", fixtures.len()))
}

fn criterion_2() -> Outcome {
    let f = fig3_cover();
    let report = f.analyze();
    // local monodromies (1 2), (2 3) and their product at the common end of the cuts
    let a = from_cycles(3, &[&[1, 2]]);
    let b = from_cycles(3, &[&[2, 3]]);
    let local = [a.clone(), b.clone(), mul(&a, &b)];
    let group = closure(3, &local);
    let expected_singular: usize = local.iter().map(|p| cycle_lengths(p).iter().filter(|&&l| l > 1).count()).sum();
    let expected_pseudo: usize = local.iter().map(|p| cycle_lengths(p).iter().filter(|&&l| l == 1).count()).sum();
    let expected_reg = group.len() / core_of_stabilizer(&group, 0);
    let points = |v: &Vec<Simplex>| v.iter().filter(|s| s.len() == 1).count();

    ensure(f.degree == 3, || format!("degree {}", f.degree))?;
    ensure(report.components == 1, || format!("{} components", report.components))?;
    ensure(report.euler_total == 2, || format!("χ = {}", report.euler_total))?;
    let (lhs, rhs) = rh_check(&f).map_err(e)?;
    ensure(lhs == rhs && rhs == 2, || format!("rh_check ({lhs}, {rhs})"))?;
    ensure(points(&report.singular) == 3 && expected_singular == 3, || {
        format!("|S_f| = {}", points(&report.singular))
    })?;
    ensure(points(&report.pseudo_singular) == 2 && expected_pseudo == 2, || {
        format!("|S'_f| = {}", points(&report.pseudo_singular))
    })?;
    let reg = is_regular(&f).map_err(e)?;
    ensure(!reg.regular, || "reported regular".into())?;
    ensure(reg.monodromy.order() == group.len(), || format!("monodromy order {}", reg.monodromy.order()))?;
    let mr = minimal_regularization(&f).map_err(e)?;
    ensure(mr.r.degree == 6 && expected_reg == 6, || format!("regularization degree {}", mr.r.degree))?;
    ensure(mr.deck.order() == 6, || format!("deck order {}", mr.deck.order()))?;
    Ok("degree 3, χ 2, |S_f| 3, |S'_f| 2, regularization 6/6".into())
}

fn round_trip(name: &str, f: &CoveringMap) -> Result<(), String> {
    let back =
        fox_complete(&extract_cocycle(f).map_err(|x| format!("{name}: {x}"))?).map_err(|x| format!("{name}: {x}"))?;
    ensure(coverings_isomorphic(&back, f).map_err(e)?, || format!("{name}: round trip not isomorphic"))
}

fn pullback_laws(name: &str, f1: &CoveringMap, f2: &CoveringMap) -> Result<(), String> {
    let pb = pullback(f1, f2).map_err(|x| format!("{name}: {x}"))?;
    ensure(pb.f.degree == f1.degree * f2.degree, || format!("{name}: degree {}", pb.f.degree))?;
    let union: BTreeSet<Simplex> = f1.branch.simplices().iter().chain(f2.branch.simplices()).cloned().collect();
    let got: BTreeSet<Simplex> = pb.f.branch.simplices().iter().cloned().collect();
    ensure(got == union, || format!("{name}: branch {got:?} vs union {union:?}"))
}

fn criterion_3() -> Outcome {
    let rot = SimplicialAction::new(octahedron(), &[Permutation::parse("(1 2)(3 4)", 6).unwrap()]).unwrap();
    let fixtures: Vec<(&str, CoveringMap)> = vec![
        ("pole cover", pole_cover()),
        ("east-west pole cover", ew_pole_cover()),
        ("three-sheet cover", fig3_cover()),
        ("three-sheet regularization", minimal_regularization(&fig3_cover()).map_err(e)?.r),
        ("pole star cover", pole_star_cover()),
        ("rotation quotient", projection_as_covering(&rot).map_err(e)?),
        ("identity", CoveringMap::identity(&octahedron()).map_err(e)?),
    ];
    for (name, f) in &fixtures {
        round_trip(name, f)?;
    }
    pullback_laws("pole × pole", &pole_cover(), &pole_cover())?;
    pullback_laws("pole × east-west pole", &pole_cover(), &ew_pole_cover())?;
    pullback_laws("three-sheet squared", &fig3_cover(), &fig3_cover())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut previous: Option<CoveringMap> = None;
    for i in 0..RANDOM_COCYCLES {
        let mc = random_octahedron_cocycle(&mut rng);
        let f = fox_complete(&mc).map_err(|x| format!("random {i}: {x}"))?;
        round_trip(&format!("random {i}"), &f)?;
        if let Some(g) = &previous {
            pullback_laws(&format!("random pair {i}"), g, &f)?;
        }
        previous = Some(f);
    }
    Ok(format!("{} fixtures and {RANDOM_COCYCLES} random cocycles", fixtures.len()))
}

fn criterion_4() -> Outcome {
    let octa = octahedron();
    let check = |gens: &[&[&[usize]]], chi: i64, branch: usize| -> Result<(), String> {
        let oracle_group = closure(6, &gens.iter().map(|c| from_cycles(6, c)).collect::<Vec<_>>());
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|c| {
                Permutation::from_cycles(
                    6,
                    &c.iter().map(|x| x.iter().map(|&v| v as u32).collect()).collect::<Vec<_>>(),
                )
                .unwrap()
            })
            .collect();
        let a = SimplicialAction::new(octa.clone(), &perms).map_err(e)?;
        let q = quotient(&a).map_err(e)?;
        let got_chi = q.quotient.euler_characteristic();
        let got_branch = q.branch.simplices_of_dim(0).len();
        ensure(burnside_euler(&octa.subdivide_once(), &lift_oracle(&octa, &oracle_group)) == chi, || {
            "oracle χ".into()
        })?;
        ensure(singular_vertex_orbits(&octa, &oracle_group) == branch, || "oracle branch".into())?;
        ensure(got_chi == chi && got_branch == branch, || format!("χ {got_chi}, {got_branch} branch points"))?;
        ensure(q.branch.dim() <= 0, || "branch set is not discrete".into())?;
        ensure(is_good_action(&a).map_err(e)?.good, || "good action rejected".into())
    };
    check(&[&[&[1, 2], &[3, 4]]], 2, 2)?;
    check(&[&[&[1, 2], &[3, 4], &[5, 6]]], 1, 0)?;
    let reflection = from_cycles(6, &[&[1, 2]]);
    ensure(fixed_dimension(&octa, &closure(6, &[reflection])) == 1, || "oracle fixed set".into())?;
    let a = SimplicialAction::new(octa, &[Permutation::parse("(1 2)", 6).unwrap()]).map_err(e)?;
    ensure(!is_good_action(&a).map_err(e)?.good, || "reflection accepted".into())?;
    Ok("rotation χ 2 with 2 branch points, antipodal χ 1, reflection rejected".into())
}

/// The oracle group acting on the first subdivision, through vertex images of barycenters.
fn lift_oracle(c: &Complex, group: &[Images]) -> Vec<Images> {
    let sd = c.simplices();
    group
        .iter()
        .map(|g| {
            sd.iter()
                .map(|s| {
                    let mut t: Vec<u32> = s.iter().map(|&v| g[v as usize - 1] as u32 + 1).collect();
                    t.sort_unstable();
                    c.index_of(&t).unwrap()
                })
                .collect()
        })
        .collect()
}

fn reduced_model(h: u64, k: u64) -> (u64, u64) {
    let g = gcd(h, k);
    (h / g, k / g)
}

fn criterion_5() -> Outcome {
    let red = reduce_chart(&disk_chart(6, 4)).map_err(e)?;
    let (h, k) = reduced_model(6, 4);
    ensure((red.chart.h.order() as u64, red.chart.k.order() as u64) == (h, k), || "reduced orders".into())?;
    ensure(chart_isomorphism(&red.chart, &disk_chart(3, 2)).map_err(e)?.is_some(), || "reduce (6,4) ≇ (3,2)".into())?;

    let mut fixtures: Vec<(String, Chart)> = vec![
        ("Klein four".into(), fig2_chart()),
        ("symmetric group".into(), fig3_chart()),
        ("product".into(), product_chart()),
    ];
    for (h, k) in [(1, 1), (2, 1), (3, 2), (6, 4), (1, 4), (4, 2)] {
        fixtures.push((format!("disk ({h},{k})"), disk_chart(h, k)));
    }
    for (name, c) in &fixtures {
        let r = reduce_chart(c).map_err(e)?;
        let (i0, i1) = (chart_index(c).map_err(e)?, chart_index(&r.chart).map_err(e)?);
        ensure(i0 == i1, || format!("{name}: index {i0} vs reduced {i1}"))?;
        let w = dominates(c, &r.chart).map_err(e)?;
        ensure(w.is_some(), || format!("{name}: does not dominate its reduction"))?;
    }

    let family = [(3u64, 2u64), (6, 4), (12, 8), (2, 1), (4, 2), (6, 3)];
    let charts: Vec<Chart> = family.iter().map(|&(h, k)| disk_chart(h as u32, k as u32)).collect();
    let n = charts.len();
    let mut eq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            eq[i][j] = charts_equivalent(&charts[i], &charts[j]).map_err(e)?;
            let oracle = reduced_model(family[i].0, family[i].1) == reduced_model(family[j].0, family[j].1);
            ensure(eq[i][j] == oracle, || format!("{:?} ~ {:?}: {}", family[i], family[j], eq[i][j]))?;
        }
    }
    for i in 0..n {
        ensure(eq[i][i], || "not reflexive".into())?;
        for j in 0..n {
            ensure(eq[i][j] == eq[j][i], || "not symmetric".into())?;
            for l in 0..n {
                ensure(!(eq[i][j] && eq[j][l]) || eq[i][l], || "not transitive".into())?;
            }
        }
    }

    let common = common_dominating_chart(&charts[1], &charts[2]).map_err(e)?;
    ensure(validate_chart(&common.chart).passed(), || "common chart invalid".into())?;
    for c in [&charts[1], &charts[2]] {
        ensure(dominates(&common.chart, c).map_err(e)?.is_some(), || "common chart does not dominate".into())?;
    }
    Ok(format!("{} index fixtures, {n}x{n} equivalence matrix, common chart validated", fixtures.len()))
}

fn criterion_6() -> Outcome {
    let mut seen = Vec::new();
    for (h, k) in [(2u32, 1u32), (3, 2), (5, 3), (1, 4)] {
        let lc = local_characteristic(&disk_chart(h, k)).map_err(e)?;
        // cyclic subgroups of orders h and k inside a cyclic group meet in order gcd(h, k)
        let oracle = (h as u64 / gcd(h as u64, k as u64)) as usize;
        ensure(lc.image_order == oracle, || format!("({h},{k}): image order {} vs {oracle}", lc.image_order))?;
        seen.push(lc.image_order);
    }
    ensure(seen == [2, 3, 5, 1], || format!("orders {seen:?}"))?;
    Ok(format!("image orders {seen:?}"))
}

/// Distance in the model plane through an embedding: Euclidean plane, unit-radius
/// sphere scaled by curvature, or the hyperboloid.
fn embedded_distance(k: f64, a: f64, b: f64, theta: f64) -> f64 {
    if k == 0.0 {
        let (x, y) = (a, 0.0);
        let (u, v) = (b * theta.cos(), b * theta.sin());
        ((x - u).powi(2) + (y - v).powi(2)).sqrt()
    } else if k > 0.0 {
        let s = k.sqrt();
        let p = [(s * a).sin(), 0.0, (s * a).cos()];
        let q = [(s * b).sin() * theta.cos(), (s * b).sin() * theta.sin(), (s * b).cos()];
        let dot: f64 = p.iter().zip(q).map(|(x, y)| x * y).sum();
        dot.clamp(-1.0, 1.0).acos() / s
    } else {
        let s = (-k).sqrt();
        let p = [(s * a).sinh(), 0.0, (s * a).cosh()];
        let q = [(s * b).sinh() * theta.cos(), (s * b).sinh() * theta.sin(), (s * b).cosh()];
        let minkowski = p[2] * q[2] - p[0] * q[0] - p[1] * q[1];
        minkowski.max(1.0).acosh() / s
    }
}

fn criterion_7() -> Outcome {
    let bound = RadiusBound::Conventional;
    let d = cone_distance(&ConeParams::new(0.0, PI / 2.0, 3.0, 4.0, bound), bound).map_err(e)?;
    ensure((d - 5.0).abs() <= EXACT_TOL, || format!("3-4-5 gives {d}"))?;
    let s = cone_distance(&ConeParams::new(1.0, PI / 2.0, PI / 2.0, PI / 2.0, bound), bound).map_err(e)?;
    ensure((s - PI / 2.0).abs() <= EXACT_TOL, || format!("spherical gives {s}"))?;
    for (a, b, th) in [(0.3, 1.7, 0.4), (2.0, 0.5, 2.9), (1.0, 1.0, PI)] {
        let flat = law_of_cosines(0.0, a, b, th);
        for k in [SMALL_K, -SMALL_K] {
            let near = law_of_cosines(k, a, b, th);
            ensure((near - flat).abs() <= CONTINUITY_TOL, || format!("k = {k}: {near} vs {flat}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in [-1.0, 0.0, 1.0] {
        let r = if k > 0.0 { bound.limit(k) } else { 5.0 };
        for _ in 0..TRIANGLE_SAMPLES {
            let circumference: f64 = rng.gen_range(0.1..4.0 * PI);
            let pts: Vec<(f64, f64)> =
                (0..3).map(|_| (rng.gen_range(0.0..r), rng.gen_range(0.0..circumference))).collect();
            let link = |x: f64, y: f64| {
                let d = (x - y).abs();
                d.min(circumference - d)
            };
            let dist = |i: usize, j: usize| {
                let p = ConeParams::new(k, link(pts[i].1, pts[j].1), pts[i].0, pts[j].0, bound);
                cone_distance(&p, bound)
            };
            let (d01, d12, d02) = (dist(0, 1).map_err(e)?, dist(1, 2).map_err(e)?, dist(0, 2).map_err(e)?);
            ensure(d02 <= d01 + d12 + TRIANGLE_TOL, || format!("k = {k}: {d02} > {d01} + {d12}"))?;
            let oracle = embedded_distance(k, pts[0].0, pts[1].0, link(pts[0].1, pts[1].1).min(PI));
            ensure((d01 - oracle).abs() <= TRIANGLE_TOL, || format!("k = {k}: {d01} vs embedded {oracle}"))?;
        }
    }
    Ok(format!("exact cases, continuity, {TRIANGLE_SAMPLES} triangles per curvature"))
}

fn criterion_8() -> Outcome {
    for (radians, h, k) in [(2.0 * PI / 3.0, 3, 1), (4.0 * PI / 3.0, 3, 2), (2.0 * PI, 1, 1)] {
        let a = ConeAngle::Radians { value: radians };
        let m = model_of_angle(&a).ok_or_else(|| format!("{radians} not recognized"))?;
        ensure((m.h, m.k) == (h, k), || format!("{radians} → ({}, {})", m.h, m.k))?;
        // exact rotation order of a k/h turn
        ensure(local_holonomy_order(&a) == Some(h / gcd(h, k)), || format!("{radians}: holonomy"))?;
    }
    let irrational = ConeAngle::Radians { value: 2f64.sqrt() * PI };
    ensure(model_of_angle(&irrational).is_none(), || "√2·π accepted".into())?;
    let sets: Vec<Vec<ConeAngle>> = vec![
        vec!["1/3 tau".parse().map_err(e)?, "2/3 tau".parse().map_err(e)?],
        vec!["1/2 tau".parse().map_err(e)?, irrational],
        vec![ConeAngle::Radians { value: PI }],
    ];
    for angles in &sets {
        let v = rational_conifold_verdict(angles);
        let finite = angles.iter().all(|a| local_holonomy_order(a).is_some());
        ensure(v.rational == finite, || format!("verdict {} vs holonomy finiteness {finite}", v.rational))?;
    }
    Ok("angle table, irrational rejection and verdicts".into())
}

fn criterion_9() -> Outcome {
    let mut done = Vec::new();
    for (h, k, n) in [(1u32, 1u32, 9u32), (1, 2, 18)] {
        let c = disk_chart_on(h, k, n);
        let l = rotation(n, n / 3, n as usize + 1);
        let q = quotient_chart(&c, &[l]).map_err(e)?;
        ensure(q.pi_l.degree == 3, || format!("π_L degree {}", q.pi_l.degree))?;
        let lifted = lift_chart(&q.pi_l, &q.chart, None).map_err(e)?;
        ensure(validate_chart(&lifted.chart).passed(), || format!("({h},{k}): lifted chart invalid"))?;
        ensure(charts_equivalent(&lifted.chart, &c).map_err(e)?, || format!("({h},{k}): not equivalent"))?;
        done.push(format!("({h},{k})"));
    }
    Ok(format!("duality holds on {}", done.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("goodness suite", criterion_1),
        ("three-sheet cover reproduction", criterion_2),
        ("fox round trip", criterion_3),
        ("quotient suite", criterion_4),
        ("chart calculus", criterion_5),
        ("local characteristic", criterion_6),
        ("cone metric", criterion_7),
        ("rational conifold verdicts", criterion_8),
        ("lift/quotient duality", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("FAIL criterion {}: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
