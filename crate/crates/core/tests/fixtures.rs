use illusion_core::image_ops::{threshold_mask, ThresholdSpec};
use illusion_core::synth::{generate, generate_suite, FixtureKind, FixtureParams, FixtureSpec, GroundTruth, WIDTH};
use illusion_core::{classify, preprocess, Image, Label};

/// Pixels inside the (larger) target disc where the blend differs from the
/// right half by more than 40 on some channel, over the right target's area.
fn ring_residual(spec: &FixtureSpec) -> f64 {
    let fixture = generate(spec).unwrap();
    let GroundTruth::Ebbinghaus { right_center, r_left, r_right, .. } = fixture.truth else { unreachable!() };
    let a = classify(&fixture.question);
    let blended = preprocess(a.category, a.subtype, &fixture.image).unwrap().image;
    let offset = WIDTH - WIDTH / 2;
    let right = fixture.image.sub_image(offset, 0, WIDTH / 2, fixture.image.height()).unwrap();
    let isolated = isolated_right(&right);
    let (cx, cy) = (right_center.0 - offset as f64, right_center.1);
    let reach = r_left.max(r_right) + 2.0;
    let mut n = 0usize;
    for y in 0..blended.height() {
        for x in 0..blended.width() {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            if dx * dx + dy * dy > reach * reach {
                continue;
            }
            let (b, r) = (blended.get(x, y).0, isolated.get(x, y).0);
            if (0..3).any(|c| (i16::from(b[c]) - i16::from(r[c])).abs() > 40) {
                n += 1;
            }
        }
    }
    n as f64 / (std::f64::consts::PI * r_right * r_right)
}

fn isolated_right(right: &Image) -> Image {
    let mask = threshold_mask(right, &ThresholdSpec::ORANGE).unwrap();
    illusion_core::image_ops::isolate_on_background(right, &mask, 128).unwrap()
}

fn ebbinghaus(r_left: f64, r_right: f64, seed: u64) -> FixtureSpec {
    FixtureSpec::new(
        FixtureParams::Ebbinghaus { r_left, r_right, context_left: 48.0, context_right: 14.0, center_y: 300.0 },
        seed,
    )
}

#[test]
fn equal_targets_leave_no_ring() {
    for seed in 0..20 {
        let spec = FixtureSpec::random(FixtureKind::Ebbinghaus, Label::Yes, seed);
        assert!(ring_residual(&spec) <= 0.005, "seed {seed}");
    }
    assert_eq!(ring_residual(&ebbinghaus(40.0, 40.0, 1)), 0.0);
}

#[test]
fn unequal_targets_leave_a_ring() {
    for seed in 0..20 {
        let spec = FixtureSpec::random(FixtureKind::Ebbinghaus, Label::No, seed);
        assert!(ring_residual(&spec) > 0.01, "seed {seed}");
    }
    assert!(ring_residual(&ebbinghaus(40.0, 50.0, 1)) > 0.01);
}

#[test]
fn every_question_routes_to_its_kind() {
    let counts: Vec<_> = FixtureKind::ALL.iter().map(|k| (*k, 10)).collect();
    let suite = generate_suite(&counts, 42).unwrap();
    assert_eq!(suite.len(), 70);
    assert_eq!(suite.iter().filter(|s| s.fixture.label == Label::Yes).count(), 35);
    for item in &suite {
        let a = classify(&item.fixture.question);
        assert_eq!((a.category, a.subtype), item.spec.params.kind().route(), "{}", item.id);
        let out = preprocess(a.category, a.subtype, &item.fixture.image).unwrap();
        assert!(!out.fallback_used, "{} fell back: {:?}", item.id, out.applied_steps);
    }
}

#[test]
fn same_spec_same_pixels() {
    for kind in FixtureKind::ALL {
        let mut spec = FixtureSpec::random(kind, Label::No, 77);
        spec.antialias = true;
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }
    let a = generate_suite(&[(FixtureKind::CafeWall, 3)], 5).unwrap();
    let b = generate_suite(&[(FixtureKind::CafeWall, 3)], 5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn poggendorff_red_pixels_lie_on_the_true_line() {
    for label in [Label::Yes, Label::No] {
        let f = generate(&FixtureSpec::random(FixtureKind::Poggendorff, label, 9)).unwrap();
        let GroundTruth::Poggendorff { slope, intercept, .. } = f.truth else { unreachable!() };
        let mask = threshold_mask(&f.image, &ThresholdSpec::RED).unwrap();
        assert!(mask.count() > 500);
        let fit = illusion_core::image_ops::fit_line(&mask).unwrap();
        assert!((fit.dy_dx().unwrap() - slope).abs() < 1e-3);
        assert!((fit.distance(400.0, slope * 400.0 + intercept)) < 0.5);
    }
}

#[test]
fn color_band_strips_carry_the_band_colors() {
    let f = generate(&FixtureSpec::random(FixtureKind::ColorBands, Label::No, 4)).unwrap();
    let GroundTruth::ColorBands { left, right, .. } = f.truth else { unreachable!() };
    let (l, r) = illusion_core::image_ops::extract_edge_strips(&f.image, 0.02).unwrap();
    assert!(l.pixels().all(|p| p == left));
    assert!(r.pixels().all(|p| p == right));
}
