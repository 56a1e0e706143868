//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines always show in `cargo test` output.

mod common;

use std::time::{Duration, Instant};

use common::{check_hermite, check_smith, random_full_cone, random_matrix, random_normals, random_unimodular, rng, v};
use conetoric::classify::{
    classify, cones_equivalent, homology_3d, lens_canonical_form, ClassificationRecord, MomentInput,
};
use conetoric::cli::Catalog;
use conetoric::cone::Cone;
use conetoric::goodness::{is_good_facewise, is_good_via_isotropy};
use conetoric::lattice::{det2, parallelogram_lattice_points, FiniteAbelianGroup, RationalVector};
use conetoric::reduction::{build_reduction, verify_level_set_samples, LevelSample};
use conetoric::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rp3_chain() -> Check {
    let (mu1, mu2) = (v(&[0, 1]), v(&[2, -1]));
    let (h1, h2) = homology_3d(&mu1, &mu2).map_err(|e| e.to_string())?;
    ensure(h1.is_trivial(), || format!("H1 = {h1}"))?;
    ensure(h2 == FiniteAbelianGroup::cyclic(2), || format!("H2 = {h2}"))?;
    ensure(det2(&mu1, &mu2).magnitude() == &2u32.into(), || "det".into())?;
    let points = parallelogram_lattice_points(&mu1, &mu2).map_err(|e| e.to_string())?;
    ensure(points == BigInt::from(5), || format!("{points} parallelogram points"))?;
    let lens = lens_canonical_form(&mu1, &mu2).map_err(|e| e.to_string())?;
    ensure(lens.q == 2.into() && lens.p == 1.into(), || format!("lens ({}, {})", lens.q, lens.p))?;
    let wedge = Cone::from_normals(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
    let data = build_reduction(&wedge).map_err(|e| e.to_string())?;
    ensure(data.component_group() == &FiniteAbelianGroup::cyclic(2), || {
        format!("component group {}", data.component_group())
    })?;
    ensure(data.is_free() && !data.face_isotropies.is_empty(), || "face isotropy".into())?;
    Ok("H1=0 H2=Z/2, 5 points, (q,p)=(2,1), T=Z/2 acting freely".into())
}

fn bundle_count() -> Check {
    let mut out = Vec::new();
    for (n, want) in [(3, FiniteAbelianGroup::free(3)), (4, FiniteAbelianGroup::trivial())] {
        let rec = classify(&MomentInput::new(Cone::full_space(n), None).unwrap()).map_err(|e| e.to_string())?;
        match rec {
            ClassificationRecord::FreeBundle {
                base_sphere_dim,
                class_group,
            } if base_sphere_dim == n - 1 && class_group == want => {
                out.push(format!("rank {n}: {class_group}"));
            }
            other => return Err(format!("rank {n}: {other:?}")),
        }
    }
    Ok(out.join(", "))
}

fn compare_oracles(c: &Cone) -> Result<(), String> {
    let a = is_good_facewise(c);
    let b = is_good_via_isotropy(c);
    ensure(a == b, || format!("disagreement on {c:?}: {a:?} vs {b:?}"))
}

fn oracle_agreement() -> Check {
    let mut r = rng(1001);
    let mut full = 0;
    let mut degenerate = 0;
    while full < 1000 {
        let n = r.gen_range(2..=4);
        let k = r.gen_range(1..=6);
        let c = Cone::from_normals(n, &random_normals(&mut r, n, k, 3)).unwrap();
        compare_oracles(&c)?;
        if c.is_full_dimensional() {
            full += 1;
        } else {
            degenerate += 1;
        }
    }
    let catalog = Catalog::builtin();
    for e in catalog.entries() {
        compare_oracles(&e.document.to_cone().unwrap())?;
    }
    Ok(format!(
        "{full} full-dimensional + {degenerate} degenerate random cones, {} catalog entries",
        catalog.entries().len()
    ))
}

fn all_z2_failures(c: &Cone, expect: usize) -> Result<(), String> {
    let r = is_good_facewise(c).map_err(|e| e.to_string())?;
    ensure(!r.is_good && r.failures.len() == expect, || format!("{c:?}: {} failures", r.failures.len()))?;
    ensure(
        r.failures.iter().all(|f| f.obstruction == FiniteAbelianGroup::cyclic(2)),
        || format!("{c:?}: obstruction not Z/2"),
    )
}

fn non_good_detection() -> Check {
    all_z2_failures(&Cone::from_normals(3, &[v(&[1, 0, 0]), v(&[-1, 0, 2])]).unwrap(), 1)?;
    let square = Cone::from_rays(3, &[v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])]).unwrap();
    all_z2_failures(&square, 4)?;
    for n in 2..=6 {
        let units: Vec<_> = (0..n).map(|i| conetoric::lattice::LatticeVector::unit(n, i)).collect();
        let r = is_good_facewise(&Cone::from_normals(n, &units).unwrap()).unwrap();
        ensure(r.is_good, || format!("orthant {n} not good"))?;
    }
    Ok("pair: 1 x Z/2, square: 4 x Z/2, orthants 2..6 good".into())
}

fn s2xs1() -> Check {
    let (mu1, mu2) = (v(&[0, 1]), v(&[0, -1]));
    let (h1, h2) = homology_3d(&mu1, &mu2).map_err(|e| e.to_string())?;
    ensure(h1 == FiniteAbelianGroup::free(1) && h2 == FiniteAbelianGroup::free(1), || {
        format!("H1={h1} H2={h2}")
    })?;
    ensure(lens_canonical_form(&mu1, &mu2) == Err(Error::DegenerateWedge), || "lens accepted".into())?;
    let half_plane = Cone::from_normals(2, &[v(&[1, 0])]).unwrap();
    let line = Cone::from_rays(2, &[mu1, mu2]).unwrap();
    for (c, want) in [(half_plane, "SplitProduct"), (line, "NotRealizable")] {
        let rec = classify(&MomentInput::new(c.clone(), None).unwrap()).map_err(|e| e.to_string())?;
        ensure(rec.case_name() == want, || format!("{c:?} classified as {}", rec.case_name()))?;
    }
    Ok("H1=Z H2=Z, lens refused as degenerate, half-plane -> SplitProduct, line -> NotRealizable".into())
}

fn pick_property() -> Check {
    let prim: Vec<[i64; 2]> = (-6..=6i64)
        .flat_map(|x| (-6..=6i64).map(move |y| [x, y]))
        .filter(|p| common::gcd(p[0].into(), p[1].into()) == 1)
        .collect();
    let mut count = 0;
    for a in &prim {
        for b in &prim {
            let d = (a[0] * b[1] - a[1] * b[0]).abs();
            if d == 0 || d > 20 {
                continue;
            }
            let got = parallelogram_lattice_points(&v(a), &v(b)).map_err(|e| e.to_string())?;
            ensure(got == BigInt::from(d + 3), || format!("{a:?},{b:?}: {got} points, |det| {d}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} ordered pairs"))
}

fn random_cone(r: &mut impl Rng) -> Cone {
    let n = r.gen_range(2..=4);
    let k = r.gen_range(0..=6);
    if r.gen_bool(0.7) {
        Cone::from_normals(n, &random_normals(r, n, k, 3)).unwrap()
    } else {
        Cone::from_rays(n, &random_normals(r, n, k, 3)).unwrap()
    }
}

fn unimodular_invariance() -> Check {
    let mut r = rng(1007);
    for i in 0..200 {
        let c = if i % 2 == 0 { random_full_cone(&mut r, 4, 6, 3) } else { random_cone(&mut r) };
        let a = random_unimodular(&mut r, c.rank());
        let image = c.transform(&a).map_err(|e| e.to_string())?;
        if c.is_full_dimensional() {
            let (x, y) = (is_good_facewise(&c).unwrap(), is_good_facewise(&image).unwrap());
            ensure(x.is_good == y.is_good, || format!("goodness changed for {c:?}"))?;
        }
        let cx = classify(&MomentInput::new(c.clone(), None).unwrap()).map_err(|e| e.to_string())?;
        let cy = classify(&MomentInput::new(image.clone(), None).unwrap()).map_err(|e| e.to_string())?;
        ensure(cx.case_name() == cy.case_name(), || format!("case changed for {c:?}"))?;
        let out = cones_equivalent(&c, &image).map_err(|e| e.to_string())?;
        let w = out.witness().ok_or_else(|| format!("no witness for {c:?}: {out:?}"))?;
        ensure(w.is_unimodular() && c.transform(w).unwrap() == image, || format!("bad witness for {c:?}"))?;
    }
    Ok("200 pairs, witnesses map C onto A.C".into())
}

fn normal_forms() -> Check {
    let mut r = rng(1008);
    for _ in 0..1000 {
        let a = random_matrix(&mut r, 5, 9);
        check_smith(&a)?;
        check_hermite(&a)?;
    }
    Ok("1000 matrices up to 5x5".into())
}

fn half(k: i64) -> BigRational {
    BigRational::new(k.into(), 2.into())
}

fn level_set_identity() -> Check {
    let mut r = rng(1009);
    let mut summaries = Vec::new();
    for e in Catalog::builtin().entries() {
        let cone = e.document.to_cone().unwrap();
        if !cone.is_full_dimensional() || cone.normals().is_empty() || !is_good_facewise(&cone).unwrap().is_good {
            continue;
        }
        let n = cone.rank();
        let mut samples = Vec::new();
        // grid points in [-3, 3]^n with step 1/2, and points built from
        // generators so the inside is always represented
        for _ in 0..150 {
            let eta = RationalVector::new((0..n).map(|_| half(r.gen_range(-6..=6))).collect());
            samples.push(eta);
        }
        let gens = cone.generators();
        for _ in 0..60 {
            let mut x = vec![BigRational::from_integer(0.into()); n];
            for g in &gens {
                let c = half(r.gen_range(0..=4));
                for (xi, gi) in x.iter_mut().zip(g.coords()) {
                    *xi += &c * BigRational::from_integer(gi.clone());
                }
            }
            samples.push(RationalVector::new(x));
        }
        let data = build_reduction(&cone).map_err(|err| err.to_string())?;
        let wt = data.matrix.transpose().to_rational();
        let mut batch: Vec<LevelSample> = samples.iter().cloned().map(LevelSample::Moment).collect();
        for eta in &samples {
            let t = wt.mul_vector(eta);
            let mut off = t.coords().to_vec();
            off[0] += BigRational::new(1.into(), 3.into());
            batch.push(LevelSample::Level(t));
            batch.push(LevelSample::Level(RationalVector::new(off)));
        }
        let out = verify_level_set_samples(&data, &cone, &batch).map_err(|err| err.to_string())?;
        let inside = out.checks.iter().filter(|c| matches!(c.sample, LevelSample::Moment(_)) && c.inside).count();
        let outside = samples.len() - inside;
        ensure(out.all_passed(), || {
            let bad = out.checks.iter().find(|c| !c.passed).unwrap();
            format!("{}: failed sample {:?}", e.name(), bad.sample)
        })?;
        ensure(inside > 0 && outside > 0, || format!("{}: one-sided grid", e.name()))?;
        summaries.push(format!("{} ({inside} in/{outside} out)", e.name()));
    }
    Ok(summaries.join(", "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("RP^3 chain", rp3_chain, Duration::from_secs(1)),
        ("bundle count", bundle_count, Duration::from_secs(1)),
        ("goodness oracle agreement", oracle_agreement, Duration::from_secs(30)),
        ("non-good detection", non_good_detection, Duration::from_secs(1)),
        ("S^2 x S^1 degenerate case", s2xs1, Duration::from_secs(1)),
        ("Pick property", pick_property, Duration::from_secs(30)),
        ("unimodular invariance", unimodular_invariance, Duration::from_secs(60)),
        ("normal-form algebra", normal_forms, Duration::from_secs(10)),
        ("level-set identity", level_set_identity, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= *limit {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(detail) => println!("PASS {} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
