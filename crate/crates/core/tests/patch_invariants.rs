use circpatch::param::height_for_side;
use circpatch::{BisectionSettings, ControlNet, DomainConfig, DomainPoint, Point3};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn settings() -> BisectionSettings {
    BisectionSettings::default()
}

fn random_net(rng: &mut StdRng, n: usize, d: usize) -> ControlNet {
    let mut pt = || {
        Point3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    };
    let center = pt();
    ControlNet::from_fn(n, d, center, |_, _, _| pt())
}

fn random_disk_point(rng: &mut StdRng) -> DomainPoint {
    loop {
        let p = DomainPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if p.norm() <= 1.0 {
            return p;
        }
    }
}

/// de Casteljau evaluation, independent of the Bernstein code under test.
fn de_casteljau(ctrl: &[Point3], t: f64) -> Point3 {
    let mut pts = ctrl.to_vec();
    while pts.len() > 1 {
        pts = pts.windows(2).map(|w| w[0] * (1.0 - t) + w[1] * t).collect();
    }
    pts[0]
}

#[test]
fn constant_reproduction() {
    let mut rng = StdRng::seed_from_u64(1);
    let c = Point3::new(1.0, 2.0, 3.0);
    let net = ControlNet::constant(5, 3, c);
    for _ in 0..1000 {
        let p = random_disk_point(&mut rng);
        let s = net.evaluate(p, &settings()).unwrap();
        assert!(s.position.distance(c) <= 1e-13, "{p}: {}", s.position);
    }
}

#[test]
fn affine_invariance() {
    let mut rng = StdRng::seed_from_u64(2);
    let net = random_net(&mut rng, 5, 3);
    let affine = |p: Point3| {
        Point3::new(
            0.8 * p.x - 0.3 * p.y + 0.1 * p.z + 1.5,
            0.2 * p.x + 1.1 * p.y - 0.4 * p.z - 0.7,
            -0.5 * p.x + 0.3 * p.y + 0.9 * p.z + 0.25,
        )
    };
    let mapped = net.map_points(affine);
    for _ in 0..1000 {
        let p = random_disk_point(&mut rng);
        let a = mapped.evaluate(p, &settings()).unwrap().position;
        let b = affine(net.evaluate(p, &settings()).unwrap().position);
        assert!(a.distance(b) <= 1e-12, "{p}");
    }
}

#[test]
fn corner_interpolation() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 3..=8 {
        let cfg = DomainConfig::new(n).unwrap();
        for d in [1, 3, 5] {
            let net = random_net(&mut rng, n, d);
            for i in 1..=n {
                let s = net.evaluate(cfg.corner(i).unwrap(), &settings()).unwrap();
                assert!(
                    s.position.distance(net.point(i as isize, 0, 0)) <= 1e-9,
                    "n={n} d={d} i={i}"
                );
                assert!(s.deficiency.abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn boundary_weight_deficiency_vanishes() {
    let mut rng = StdRng::seed_from_u64(4);
    for n in 4..=8 {
        let cfg = DomainConfig::new(n).unwrap();
        for d in [1, 3, 5, 7] {
            let net = random_net(&mut rng, n, d);
            for s in 1..=n {
                for k in 0..=12 {
                    let p = cfg.side_point(s, k as f64 / 12.0).unwrap();
                    let sample = net.evaluate(p, &settings()).unwrap();
                    assert!(sample.deficiency.abs() <= 1e-9, "n={n} d={d} side={s}");
                }
            }
        }
    }
}

#[test]
fn interior_deficiency_recorded() {
    let mut rng = StdRng::seed_from_u64(5);
    let net = random_net(&mut rng, 5, 3);
    let s = net.evaluate(DomainPoint::ORIGIN, &settings()).unwrap();
    assert!(s.deficiency > 0.0 && s.deficiency <= 1.0, "{}", s.deficiency);
}

#[test]
fn boundary_matches_bezier_curve() {
    let mut rng = StdRng::seed_from_u64(6);
    for n in 4..=8 {
        let cfg = DomainConfig::new(n).unwrap();
        for d in [1, 3, 5] {
            let net = random_net(&mut rng, n, d);
            for s in 1..=n {
                // ordered from corner (s, s+1) to corner (s-1, s)
                let ctrl = net.boundary_control_points(s);
                for k in 0..50 {
                    let p = cfg.side_point(s, (k as f64 + 0.5) / 50.0).unwrap();
                    let t = height_for_side(&cfg, cfg.wrap(s as isize + 1), p, &settings()).unwrap();
                    let expected = de_casteljau(&ctrl, t);
                    let got = net.evaluate(p, &settings()).unwrap().position;
                    assert!(got.distance(expected) <= 1e-8, "n={n} d={d} side={s} t={t}");
                }
            }
        }
    }
}

#[test]
fn boundary_locality() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 4..=8 {
        let cfg = DomainConfig::new(n).unwrap();
        for d in [3, 5] {
            let net = random_net(&mut rng, n, d);
            let m = d / 2 + 1;
            for s in 1..=n {
                let mut perturbed = net.clone();
                perturbed.center += Point3::new(1.0, 1.0, 1.0);
                for i in 1..=n {
                    let adjacent = i == s || i == cfg.wrap(s as isize - 1);
                    for j in 0..m {
                        for k in 0..m {
                            if !adjacent || j.min(k) >= 1 {
                                *perturbed.point_mut(i, j, k) =
                                    perturbed.point(i as isize, j, k) + Point3::new(0.5, -0.25, 2.0);
                            }
                        }
                    }
                }
                for k in 0..=20 {
                    let p = cfg.side_point(s, k as f64 / 20.0).unwrap();
                    let a = net.evaluate(p, &settings()).unwrap().position;
                    let b = perturbed.evaluate(p, &settings()).unwrap().position;
                    assert!(a.distance(b) <= 1e-9, "n={n} d={d} side={s}");
                }
            }
        }
    }
}
