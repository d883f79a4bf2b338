use sideband_core::analysis::{
    default_sigma_grid, evaluate, sweep_sigma, BipartitionFamily, WitnessTable,
};
use sideband_core::gaussian::{purity, Bipartition, CovarianceMatrix};
use sideband_core::opo::{measured_covariance, output_covariance, OpoParams};

fn phonon_free() -> OpoParams {
    OpoParams::default().without_phonons()
}

fn scaled_phonons(p: &OpoParams, factor: f64) -> OpoParams {
    let mut p = p.clone();
    for ph in &mut p.phonons {
        ph.coupling *= factor;
    }
    p
}

/// Largest entry coupling different groups of modes.
fn cross_block_max(v: &CovarianceMatrix, groups: &[&[usize]]) -> f64 {
    let group_of = |mode: usize| groups.iter().position(|g| g.contains(&mode)).unwrap();
    let m = v.matrix();
    let mut worst = 0.0f64;
    for i in 0..12 {
        for j in 0..12 {
            if group_of(i / 2) != group_of(j / 2) {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

#[test]
fn below_threshold_output_factorizes() {
    // pump pair, (1u, 2l), (1l, 2u)
    let groups: [&[usize]; 3] = [&[0, 1], &[3, 4], &[2, 5]];
    for p in [phonon_free(), OpoParams::default()] {
        for sigma in [0.2, 0.5, 0.9, 0.99] {
            let v = output_covariance(&p.with_sigma(sigma)).unwrap();
            let cross = cross_block_max(&v, &groups);
            assert!(cross < 1e-8, "sigma {sigma}: cross-block entry {cross}");
        }
    }
}

/// One-sided limit at `sigma = 1`, extrapolated quadratically from samples
/// at `1 -/+ h`, `1 -/+ 2h` and `1 -/+ 3h`. Just above threshold the witnesses
/// bend sharply, so a straight-line extrapolation is not accurate enough.
fn one_sided_limits(p: &OpoParams, side: f64, h: f64) -> Vec<f64> {
    let at = |k: f64| evaluate(&p.with_sigma(1.0 + side * k * h), false).unwrap();
    let (a, b, c) = (at(1.0), at(2.0), at(3.0));
    (0..a.entries.len())
        .map(|i| 3.0 * a.entries[i].nu_min - 3.0 * b.entries[i].nu_min + c.entries[i].nu_min)
        .collect()
}

fn threshold_step(p: &OpoParams, h: f64) -> f64 {
    let a = evaluate(&p.with_sigma(1.0 - h), false).unwrap();
    let b = evaluate(&p.with_sigma(1.0 + h), false).unwrap();
    a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x.nu_min - y.nu_min).abs())
        .fold(0.0, f64::max)
}

#[test]
fn witnesses_are_continuous_across_threshold() {
    let p = phonon_free();
    let h = 1e-4;
    let left = one_sided_limits(&p, -1.0, h);
    let right = one_sided_limits(&p, 1.0, h);
    for (k, (l, r)) in left.iter().zip(&right).enumerate() {
        assert!((l - r).abs() < 1e-6, "bipartition {k}: left {l}, right {r}");
    }
}

#[test]
fn phonon_witnesses_are_continuous_across_threshold() {
    // Phonon noise puts a sharp bend within ~1e-4 of threshold, so check the
    // step itself: it must vanish linearly with the distance to threshold.
    let p = OpoParams::default();
    let steps: Vec<f64> = [1e-4, 1e-6, 1e-8]
        .iter()
        .map(|&h| threshold_step(&p, h) / h)
        .collect();
    assert!(steps.iter().all(|&s| s < 100.0), "{steps:?}");
    assert!(threshold_step(&p, 1e-8) < 1e-6);
}

#[test]
fn lossless_phonon_free_output_is_pure() {
    let p = phonon_free().lossless();
    for sigma in [0.2, 0.5, 0.99, 1.01, 1.2, 1.5, 1.75] {
        let pu = purity(&output_covariance(&p.with_sigma(sigma)).unwrap()).unwrap();
        assert!((pu - 1.0).abs() < 1e-6, "sigma {sigma}: purity {pu}");
    }
}

#[test]
fn zero_phonon_coupling_reproduces_phonon_free_model() {
    let off = scaled_phonons(&OpoParams::default(), 0.0);
    for sigma in [0.5, 1.3] {
        let a = output_covariance(&off.with_sigma(sigma)).unwrap();
        let b = output_covariance(&phonon_free().with_sigma(sigma)).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10);
    }
}

#[test]
fn single_beam_degrades_with_phonon_coupling() {
    let base = OpoParams::default();
    for sigma in [1.05, 1.3, 1.5, 1.75] {
        let nus: Vec<f64> = [0.0, 1.0, 2.0]
            .iter()
            .map(|&f| {
                evaluate(&scaled_phonons(&base, f).with_sigma(sigma), false)
                    .unwrap()
                    .nu("1l+1u")
                    .unwrap()
            })
            .collect();
        assert!(
            nus.windows(2).all(|w| w[1] >= w[0] - 1e-6),
            "sigma {sigma}: {nus:?}"
        );
    }
}

#[test]
fn twin_sideband_is_protected_from_phonons() {
    let with = evaluate(&OpoParams::default().with_sigma(1.5), false).unwrap();
    let without = evaluate(&phonon_free().with_sigma(1.5), false).unwrap();
    let shift = |label| with.nu(label).unwrap() - without.nu(label).unwrap();
    assert!(
        shift("1u+2u") < shift("1l+1u"),
        "{} vs {}",
        shift("1u+2u"),
        shift("1l+1u")
    );
}

/// `1 <-> 2` together with `u <-> l`; mode indices `0l 0u 1l 1u 2l 2u`.
fn relabel(b: &Bipartition) -> Bipartition {
    let map = [1, 0, 5, 4, 3, 2];
    let side: Vec<usize> = b.side_a().iter().map(|&m| map[m]).collect();
    Bipartition::new(6, &side).unwrap()
}

#[test]
fn relabeling_symmetry_at_zero_detuning() {
    for sigma in [0.5, 1.1, 1.6] {
        let t = evaluate(&phonon_free().with_sigma(sigma), false).unwrap();
        for e in &t.entries {
            let image = t.get(&relabel(&e.bipartition)).unwrap();
            assert_eq!(image.family, e.family);
            assert!(
                (image.nu_min - e.nu_min).abs() < 1e-8,
                "{} vs {}",
                e.bipartition,
                image.bipartition
            );
        }
        assert!((t.nu("1u+2u").unwrap() - t.nu("1l+2l").unwrap()).abs() < 1e-8);
    }
}

#[test]
fn output_is_physical_on_default_grid() {
    for p in [phonon_free(), OpoParams::default()] {
        for detection in [false, true] {
            for point in sweep_sigma(&p, &default_sigma_grid(), detection).unwrap() {
                let t = point.unwrap();
                assert!(
                    t.physical_min_nu >= 1.0 - 1e-6,
                    "sigma {}: {}",
                    t.sigma,
                    t.physical_min_nu
                );
            }
        }
    }
}

#[test]
fn detection_keeps_the_state_physical_and_less_entangled() {
    let p = phonon_free().with_sigma(1.3);
    let raw = evaluate(&p, false).unwrap();
    let detected = evaluate(&p, true).unwrap();
    for (a, b) in raw.entries.iter().zip(&detected.entries) {
        assert!(b.nu_min >= a.nu_min - 1e-9, "{}", a.bipartition);
    }
    let v = measured_covariance(&p, true).unwrap();
    assert!(purity(&v).unwrap() < purity(&output_covariance(&p).unwrap()).unwrap());
}

fn table(p: &OpoParams, sigma: f64) -> WitnessTable {
    evaluate(&p.with_sigma(sigma), false).unwrap()
}

#[test]
fn every_bipartition_entangled_above_threshold() {
    for sigma in [1.1, 1.3, 1.5, 1.75] {
        let t = table(&phonon_free(), sigma);
        for e in &t.entries {
            assert!(
                e.nu_min < 1.0,
                "sigma {sigma}: {} at {}",
                e.bipartition,
                e.nu_min
            );
            assert!(e.log_neg > 0.0);
        }
    }
}

#[test]
fn squeezer_pairs_are_independent_at_threshold() {
    let t = table(&phonon_free(), 1.0);
    for e in &t.entries {
        if e.family == BipartitionFamily::SqueezerSplit {
            assert!(
                (e.nu_min - 1.0).abs() < 1e-4,
                "{}: {}",
                e.bipartition,
                e.nu_min
            );
        } else if e.bipartition.contains(3) != e.bipartition.contains(4) {
            // splits the (1u, 2l) pair
            assert!(e.nu_min < 1.0, "{}", e.bipartition);
        }
    }
}

#[test]
fn pump_sidebands_entangle_above_threshold() {
    for sigma in [0.9, 1.01, 1.3, 1.75] {
        let nu = table(&phonon_free(), sigma).nu("0l+0u").unwrap();
        if sigma > 1.0 {
            assert!(nu < 1.0, "sigma {sigma}: {nu}");
        } else {
            assert!((nu - 1.0).abs() < 1e-10);
        }
    }
}

fn grid() -> Vec<f64> {
    (0..40).map(|k| 1.01 + 0.74 * k as f64 / 39.0).collect()
}

fn trace(p: &OpoParams, label: &str) -> Vec<f64> {
    sweep_sigma(p, &grid(), false)
        .unwrap()
        .into_iter()
        .map(|t| t.unwrap().nu(label).unwrap())
        .collect()
}

#[test]
fn squeezer_split_falls_with_pump_power() {
    for label in ["1u+2l", "0l+1u+2l"] {
        let nus = trace(&phonon_free(), label);
        assert!(
            nus.windows(2).all(|w| w[1] < w[0] + 1e-6),
            "{label}: {nus:?}"
        );
    }
}

#[test]
fn single_beam_rises_with_pump_power_under_phonons() {
    for label in ["1l+1u", "2l+2u"] {
        let nus = trace(&OpoParams::default(), label);
        assert!(
            nus.windows(2).all(|w| w[1] > w[0] - 1e-6),
            "{label}: {nus:?}"
        );
    }
}
