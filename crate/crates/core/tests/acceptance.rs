//! Release gate: every criterion below must pass within its wall-clock
//! ceiling, and the whole run must stay under a minute. One line per
//! criterion is printed; run with `--nocapture` to watch them.

mod common;

use std::time::{Duration, Instant};

use reebkit::capacities::{self, ObstructionVerdict};
use reebkit::constructions::{
    derive_embedding, paper_suite, verify_certificate, DeriveOptions, ClaimVerdict, SuiteConfig,
};
use reebkit::curves::{
    self, plane_classification_grid, CurveClass, CurveQuery, Verdict,
};
use reebkit::rat::rat;
use reebkit::reeb::{self, SmoothingPolicy};
use reebkit::{Domain, Rat, ReebOrbit};

use rand::Rng;

fn check(label: &str, limit: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    body();
    let elapsed = start.elapsed();
    assert!(elapsed <= limit, "{label}: {elapsed:?} exceeded the {limit:?} ceiling");
    println!("{label}: PASS ({elapsed:.1?} within {limit:?})");
}

fn orbit(label: &str) -> ReebOrbit {
    label.parse().unwrap()
}

fn q_default() -> Domain {
    Domain::polylike(rat("3/2"), vec![rat("1"), rat("11/5")]).unwrap()
}

/// Tuples meeting the standing hypotheses a2 < b and a_j > 2*a2, with
/// tail lengths 2 through 4.
fn hypothesis_grid() -> Vec<(Rat, Vec<Rat>)> {
    let t = |b: &str, tail: &[&str]| -> (Rat, Vec<Rat>) {
        (rat(b), tail.iter().map(|s| rat(s)).collect())
    };
    vec![
        t("3/2", &["1", "11/5"]),
        t("3/2", &["1", "21/10"]),
        t("2", &["1", "21/10"]),
        t("2", &["9/5", "19/5"]),
        t("8/5", &["1", "11/5", "12/5"]),
        t("2", &["1", "5/2", "3"]),
        t("7/4", &["3/2", "16/5", "10/3"]),
        t("3/2", &["1", "21/10", "11/5", "23/10"]),
        t("2", &["1", "9/4", "5/2", "11/4"]),
        t("5/2", &["2", "9/2", "5", "21/4"]),
    ]
}

/// The grid above crossed with two admissible cap radii per tuple, chosen
/// strictly inside the window a2 + b < R < 2*a2 + b.
fn radius_grid() -> Vec<(Rat, Vec<Rat>, Rat)> {
    let mut out = Vec::new();
    for (b, tail) in hypothesis_grid() {
        for k in [2i64, 3] {
            let r = &tail[0] + &b + Rat::new(k, 5) * &tail[0];
            out.push((b.clone(), tail.clone(), r));
        }
    }
    out
}

#[test]
fn acceptance_criteria() {
    let total = Instant::now();

    check("criterion 01 cap plane index calibration", Duration::from_millis(1), || {
        let d = q_default();
        let plane = |end: &str| {
            CurveClass::cap(d.clone(), rat("31/10"), 1, vec![orbit(end)]).unwrap()
        };
        let corner = plane("g^2_{1,1}");
        assert_eq!(curves::virtual_index(&corner).unwrap(), rat("1"));
        assert_eq!(curves::constrained_index(&corner, &orbit("g^2_{1,1}")).unwrap(), rat("0"));
        assert_eq!(curves::virtual_index(&plane("g^1*2")).unwrap(), rat("0"));
        assert_eq!(d.dimension(), 3);
    });

    check("criterion 02 symplectization calibration", Duration::from_millis(10), || {
        let cyl = |d: &Domain, neg: &str| {
            CurveClass::symplectization(d.clone(), vec![orbit("g^1*2")], vec![orbit(neg)])
                .unwrap()
        };
        let d = q_default();
        assert_eq!(curves::virtual_index(&cyl(&d, "g^2_{1,1}")).unwrap(), rat("1"));
        assert_eq!(curves::virtual_index(&cyl(&d, "g^2*3")).unwrap(), rat("-4"));
        let ceiling = rat("-2");
        for (b, tail) in hypothesis_grid() {
            let d = Domain::polylike(b, tail.clone()).unwrap();
            assert!(curves::virtual_index(&cyl(&d, "g^2*3")).unwrap() <= ceiling);
            for j in 3..=(1 + tail.len()) {
                let idx = curves::virtual_index(&cyl(&d, &format!("g^{j}*1"))).unwrap();
                assert!(idx <= ceiling, "cylinder onto g^{j}*1 has index {idx}");
            }
        }
    });

    let tuples = radius_grid();

    check("criterion 03 plane classification sweep", Duration::from_secs(5), || {
        assert_eq!(tuples.len(), 20);
        let reports = plane_classification_grid(&tuples);
        let allowed = ["g^2_{1,1}", "g^1*2", "g^2*2"];
        for (tuple, report) in tuples.iter().zip(reports) {
            let report = report.unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Confirmed,
                "tuple {tuple:?} failed: {:?}",
                report.verdict
            );
            for row in &report.curves {
                assert_eq!(row.ends.len(), 1, "multi-end curve at {tuple:?}");
                assert!(allowed.contains(&row.ends[0].as_str()));
            }
        }
    });

    check("criterion 04 enumeration cross-check", Duration::from_secs(10), || {
        for (b, tail, r) in &tuples {
            let domain = Domain::polylike(b.clone(), tail.to_vec()).unwrap();
            let narrow = CurveQuery::new(1, tail[0].clone()).with_index_min(-1);
            let wide = CurveQuery::new(1, r.clone());
            for query in [narrow, wide] {
                let fast = curves::enumerate_cap_curves(&domain, r, &query).unwrap();
                let slow = common::brute_force_cap_curves(&domain, r, &query);
                assert_eq!(common::key_set(&fast), slow, "query mismatch at {b} {tail:?} {r}");
            }
        }
        // One multiset-heavy degree for good measure.
        let domain = q_default();
        let r = rat("12/5");
        let query = CurveQuery::new(2, rat("24/5"));
        let fast = curves::enumerate_cap_curves(&domain, &r, &query).unwrap();
        assert!(!fast.is_empty());
        assert_eq!(common::key_set(&fast), common::brute_force_cap_curves(&domain, &r, &query));
    });

    check("criterion 05 polydisk end solver", Duration::from_secs(1), || {
        for n in [4usize, 5, 6] {
            let report = curves::polydisk_end_solver(
                &rat("1"),
                &rat("11/5"),
                &rat("1/20"),
                &rat("33/10"),
                n,
                3,
            )
            .unwrap();
            assert_eq!(report.verdict, Verdict::Confirmed);
            let mut expected = vec![0u32; n];
            expected[0] = 1;
            expected[2] = 1;
            assert_eq!(report.solutions, vec![expected], "n = {n}");
        }
    });

    check("criterion 06 ellipsoid end analysis", Duration::from_millis(10), || {
        let analyze = |coeffs: &[&str]| {
            let e = Domain::ellipsoid(coeffs.iter().map(|s| rat(s)).collect()).unwrap();
            curves::ellipsoid_end_analysis(&e).unwrap()
        };
        let report = analyze(&["2", "5", "13"]);
        let allowed: Vec<&str> = report.allowed.iter().map(|r| r.orbit.as_str()).collect();
        assert_eq!(allowed, ["d^1*1", "d^1*2"]);
        assert_eq!(report.min_action_beyond_simple, rat("4"));
        assert!(report.multi_end_bound < rat("-1"), "multi-end classes survive");

        let report = analyze(&["2", "3", "13"]);
        let allowed: Vec<&str> = report.allowed.iter().map(|r| r.orbit.as_str()).collect();
        assert_eq!(allowed, ["d^1*1", "d^2*1"]);
        assert_eq!(report.min_action_beyond_simple, rat("3"));
        assert!(report.multi_end_bound < rat("-1"));
    });

    check("criterion 07 second capacity closed form", Duration::from_secs(1), || {
        let mut rng = common::rng(707);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=4);
            let e = common::random_ellipsoid(&mut rng, n, 240, 12);
            let Domain::Ellipsoid { coeffs } = &e else { unreachable!() };
            let closed_form = (Rat::int(2) * &coeffs[0]).min(coeffs[1].clone());
            assert_eq!(capacities::eh_capacity_ellipsoid(&e, 2).unwrap(), closed_form);
        }
        let e24 = Domain::ellipsoid(vec![rat("2"), rat("4")]).unwrap();
        for i in 1..40 {
            let target = Domain::ball_product(Rat::new(i, 10), 2).unwrap();
            let report = capacities::obstruct_embedding(&e24, &target).unwrap();
            assert_eq!(report.verdict, ObstructionVerdict::Obstructed, "R = {i}/10");
        }
        let tie = Domain::ball_product(rat("4"), 2).unwrap();
        let report = capacities::obstruct_embedding(&e24, &tie).unwrap();
        assert_eq!(report.verdict, ObstructionVerdict::Boundary);
    });

    check("criterion 08 claim suite and cross-engine soundness", Duration::from_secs(30), || {
        let report = paper_suite(&SuiteConfig::default()).unwrap();
        assert!(report.all_hold(), "a bundled claim failed");
        let machine: Vec<ClaimVerdict> = report
            .rows
            .iter()
            .filter(|r| r.machine_checked)
            .map(|r| r.verdict)
            .collect();
        use ClaimVerdict::*;
        assert_eq!(machine, [Pass, Pass, Pass, Boundary, Axiom, Axiom, Axiom, Pass]);
        assert_eq!(report.certificates.len(), 8);
        for cert in &report.certificates {
            verify_certificate(cert).unwrap_or_else(|errors| {
                panic!("suite certificate rejected: {errors:?}");
            });
            // Where the obstruction engine speaks, it must not contradict
            // a verified construction.
            if matches!(cert.source, Domain::Ellipsoid { .. })
                && matches!(cert.target, Domain::Ellipsoid { .. } | Domain::BallProduct { .. })
            {
                let obs = capacities::obstruct_embedding(&cert.source, &cert.target).unwrap();
                assert_ne!(obs.verdict, ObstructionVerdict::Obstructed);
            }
        }
        let mut rng = common::rng(88);
        let opts = DeriveOptions::default();
        let mut certified = 0usize;
        for _ in 0..1000 {
            let source = common::random_ellipsoid(&mut rng, 2, 60, 6);
            let target = if rng.gen_bool(0.5) {
                common::random_ellipsoid(&mut rng, 2, 60, 6)
            } else {
                Domain::ball_product(common::random_rat(&mut rng, 60, 6), 2).unwrap()
            };
            if let Some(cert) = derive_embedding(&source, &target, &opts).unwrap() {
                certified += 1;
                verify_certificate(&cert).unwrap();
                let obs = capacities::obstruct_embedding(&source, &target).unwrap();
                assert_ne!(
                    obs.verdict,
                    ObstructionVerdict::Obstructed,
                    "certified {source:?} -> {target:?} is obstructed"
                );
            }
        }
        assert!(certified > 50, "soundness sample too thin: {certified} certificates");
    });

    check("criterion 09 randomized invariants", Duration::from_secs(5), || {
        let policy = SmoothingPolicy::InfinitesimalEpsilon;
        let mut rng = common::rng(909);
        for _ in 0..1000 {
            let b = common::random_rat(&mut rng, 40, 8);
            let a2 = &b * &common::random_rat(&mut rng, 7, 8);
            let a3 = Rat::int(2) * &a2 + common::random_rat(&mut rng, 20, 8);
            let d = Domain::polylike(b.clone(), vec![a2.clone(), a3.clone()]).unwrap();
            let lambda = common::random_rat(&mut rng, 24, 6);
            let scaled = reebkit::domains::scale(&d, &lambda).unwrap();
            let o = match rng.gen_range(0..3) {
                0 => ReebOrbit::Elliptic { axis: rng.gen_range(1..=3), mult: rng.gen_range(1..=4) },
                1 => ReebOrbit::Hyperbolic {
                    axis: rng.gen_range(2..=3),
                    m: rng.gen_range(1..=3),
                    q: rng.gen_range(1..=3),
                },
                _ => ReebOrbit::Elliptic { axis: 1, mult: 1 },
            };
            // Action scales linearly; the index never moves.
            let action = reeb::action(&o, &d, &policy).unwrap();
            assert_eq!(reeb::action(&o, &scaled, &policy).unwrap(), &lambda * &action);
            assert_eq!(
                reeb::cz_index(&o, &d, &policy).unwrap(),
                reeb::cz_index(&o, &scaled, &policy).unwrap()
            );
            // Inclusion verdicts are scale equivariant.
            let inner = Domain::ellipsoid(vec![a2.clone(), a3.clone()]).unwrap();
            let outer = Domain::ellipsoid(vec![
                &a2 * &common::random_rat(&mut rng, 16, 8),
                &a3 * &common::random_rat(&mut rng, 16, 8),
            ])
            .unwrap();
            let before = reebkit::domains::includes(&outer, &inner).unwrap();
            let after = reebkit::domains::includes(
                &reebkit::domains::scale(&outer, &lambda).unwrap(),
                &reebkit::domains::scale(&inner, &lambda).unwrap(),
            )
            .unwrap();
            assert_eq!(
                std::mem::discriminant(&before),
                std::mem::discriminant(&after),
                "scaling changed {before:?} into {after:?}"
            );
        }
        // Relabeling the tail axes permutes orbit labels and nothing else.
        let d = Domain::polylike(rat("3/2"), vec![rat("1"), rat("11/5")]).unwrap();
        let swapped = Domain::polylike(rat("3/2"), vec![rat("11/5"), rat("1")]).unwrap();
        let bound = rat("5/2");
        let original = reeb::enumerate_orbits(&d, &bound, &policy).unwrap();
        let relabeled = reeb::enumerate_orbits(&swapped, &bound, &policy).unwrap();
        assert_eq!(original.len(), relabeled.len());
        let key = |entries: &[reeb::OrbitEntry], swap: bool| -> Vec<(Rat, String)> {
            let mut keys: Vec<(Rat, String)> = entries
                .iter()
                .map(|e| {
                    let mut label = e.orbit.to_string();
                    if swap {
                        label = label.replace("^2", "^x").replace("^3", "^2").replace("^x", "^3");
                    }
                    (e.action.clone(), label)
                })
                .collect();
            keys.sort();
            keys
        };
        assert_eq!(key(&original, false), key(&relabeled, true));
    });

    check("criterion 10 analytic conclusions are listed", Duration::from_secs(5), || {
        let report = paper_suite(&SuiteConfig::default()).unwrap();
        let anchors = [
            "thm.polylike",
            "thm.polydisk",
            "thm.extension.i",
            "thm.extension.ii",
            "thm.q12-nonisotopy",
            "prop.cut-nonextension",
        ];
        for anchor in anchors {
            let row = report
                .rows
                .iter()
                .find(|r| r.anchor == anchor)
                .unwrap_or_else(|| panic!("no suite row carries anchor {anchor}"));
            assert!(!row.machine_checked, "{anchor} must be flagged as not machine-verified");
            assert_eq!(row.verdict, ClaimVerdict::Notice);
        }
    });

    let elapsed = total.elapsed();
    assert!(elapsed <= Duration::from_secs(60), "acceptance run took {elapsed:?}");
    println!("acceptance total: {elapsed:.1?} (ceiling 60s)");
}
