//! Link-model properties: alignment, dominance, units and channel statistics.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use risfade_core::stats::{ks_bound, ks_statistic, mean_and_se};
use risfade_core::sysmodel::{
    align_phases, dbm_to_mw, effective_gain_u1, path_loss_linear, realize_channels, sinr_u1, ChannelRealization,
    ChannelSampler, PhaseShiftMatrix, Scheme, SystemConfig,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn with_n(n: usize) -> SystemConfig<f64> {
    SystemConfig {
        n_elements: n,
        ..SystemConfig::default()
    }
}

#[test]
fn realization_shapes() {
    let r = realize_channels(&with_n(1), &mut rng(1)).unwrap();
    assert_eq!((r.g1.len(), r.h_r.len()), (1, 1));
    let r = realize_channels(&with_n(16), &mut rng(1)).unwrap();
    assert_eq!(r.n_elements(), 16);
    for g in r.g1.iter().chain(&r.h_r).chain([&r.h_u1, &r.h_u2]) {
        assert!(g.norm().is_finite());
    }
}

#[test]
fn unit_mean_power_per_link() {
    let s = ChannelSampler::new(&with_n(1)).unwrap();
    let mut r = rng(2);
    let mut buf = ChannelRealization::zeros(1);
    let mut p = Vec::with_capacity(1_000_000);
    for _ in 0..1_000_000 {
        s.realize_into(&mut buf, &mut r);
        p.push(buf.h_u1.norm_sqr());
    }
    let (m, se) = mean_and_se(&p);
    assert!((m - 1.0).abs() <= 3.0 * se, "{m} ± {se}");
}

#[test]
fn unit_nakagami_hop_is_rayleigh() {
    let cfg = SystemConfig {
        m_g1: 1.0,
        ..with_n(1)
    };
    let s = ChannelSampler::new(&cfg).unwrap();
    let mut r = rng(3);
    let mut buf = ChannelRealization::zeros(1);
    let mut mags: Vec<f64> = (0..100_000)
        .map(|_| {
            s.realize_into(&mut buf, &mut r);
            buf.g1[0].norm()
        })
        .collect();
    let d = ks_statistic(&mut mags, |x| Ok(-(-x * x).exp_m1())).unwrap();
    assert!(d < ks_bound(100_000), "{d}");
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

#[test]
fn aligned_terms_share_the_direct_phase() {
    let cfg = with_n(16);
    let mut r = rng(4);
    for _ in 0..200 {
        let ch = realize_channels(&cfg, &mut r).unwrap();
        let phi = align_phases(&ch);
        assert!(phi.amplitudes().iter().all(|&b| b == 1.0));
        for i in 0..16 {
            let term = ch.g1[i] * Complex::from_polar(1.0, phi.phases()[i]) * ch.h_r[i].conj();
            assert!(angle_gap(term.arg(), ch.h_u1.arg()) <= 1e-12);
            assert!((0.0..std::f64::consts::TAU).contains(&phi.phases()[i]));
        }
    }
}

#[test]
fn alignment_beats_random_phases() {
    let cfg = with_n(8);
    let mut r = rng(5);
    for _ in 0..100 {
        let ch = realize_channels(&cfg, &mut r).unwrap();
        let best = effective_gain_u1(&ch, &align_phases(&ch), &cfg, Scheme::RisNoma).unwrap();
        for _ in 0..1000 {
            let phases = (0..8).map(|_| r.gen_range(0.0..std::f64::consts::TAU)).collect();
            let m = PhaseShiftMatrix::new(vec![1.0; 8], phases).unwrap();
            let g = effective_gain_u1(&ch, &m, &cfg, Scheme::RisNoma).unwrap();
            assert!(g <= best * (1.0 + 1e-12));
        }
    }
}

#[test]
fn ris_gain_dominates_conventional_every_draw() {
    let cfg = with_n(16);
    let mut r = rng(6);
    for _ in 0..5000 {
        let ch = realize_channels(&cfg, &mut r).unwrap();
        let phi = align_phases(&ch);
        let a = effective_gain_u1(&ch, &phi, &cfg, Scheme::RisNoma).unwrap();
        let b = effective_gain_u1(&ch, &phi, &cfg, Scheme::ConventionalNoma).unwrap();
        assert!(a >= b);
    }
}

#[test]
fn aligned_magnitude_is_coherent_sum() {
    let cfg = with_n(16);
    let ch = realize_channels(&cfg, &mut rng(7)).unwrap();
    let ld = path_loss_linear(cfg.d1, cfg.eta_n, &cfg).unwrap().sqrt();
    let lr = (path_loss_linear(cfg.d_ris, cfg.eta_l, &cfg).unwrap() * path_loss_linear(cfg.d_r1, cfg.eta_n, &cfg).unwrap()).sqrt();
    let sum: f64 = ch.g1.iter().zip(&ch.h_r).map(|(g, h)| g.norm() * h.norm()).sum();
    let want = (ch.h_u1.norm() * ld + sum * lr).powi(2);
    let got = effective_gain_u1(&ch, &align_phases(&ch), &cfg, Scheme::RisNoma).unwrap();
    assert!(((got - want) / want).abs() < 1e-12);
}

#[test]
fn mean_gain_grows_with_elements() {
    let mut prev: Option<(f64, f64)> = None;
    for n in [1, 2, 4, 8, 16] {
        let cfg = with_n(n);
        let s = ChannelSampler::new(&cfg).unwrap();
        let mut r = rng(100 + n as u64);
        let gains: Vec<f64> = (0..10_000)
            .map(|_| {
                let ch = s.realize(&mut r);
                effective_gain_u1(&ch, &align_phases(&ch), &cfg, Scheme::RisNoma).unwrap()
            })
            .collect();
        let (m, se) = mean_and_se(&gains);
        if let Some((pm, pse)) = prev {
            assert!(m >= pm - 2.0 * (se * se + pse * pse).sqrt(), "N={n}: {m} < {pm}");
        }
        prev = Some((m, se));
    }
}

#[test]
fn two_element_reference_value() {
    let cfg = SystemConfig {
        d1: 1.0,
        d_ris: 1.0,
        d_r1: 1.0,
        ..with_n(2)
    };
    let ch = ChannelRealization {
        h_u1: Complex::new(1.0, 0.0),
        g1: vec![Complex::new(1.0, 0.0); 2],
        h_r: vec![Complex::new(1.0, 0.0); 2],
        h_u2: Complex::new(1.0, 0.0),
    };
    let g = effective_gain_u1(&ch, &align_phases(&ch), &cfg, Scheme::RisNoma).unwrap();
    assert!((g / 0.001_130_491_106_406_735_2 - 1.0).abs() < 1e-13);
}

#[test]
fn sinr_survives_db_round_trip() {
    let cfg = SystemConfig::default();
    let mut r = rng(8);
    for _ in 0..1000 {
        let gain: f64 = 10f64.powf(r.gen_range(-14.0..-6.0));
        let direct = sinr_u1(gain, &cfg).unwrap();
        // everything as dB: received SNR in dB, then back to linear
        let snr_db = cfg.tx_power_dbm + 10.0 * gain.log10() - cfg.noise_dbm;
        let snr = 10f64.powf(snr_db / 10.0);
        let via_db = cfg.alpha1_sq * snr / (cfg.alpha2_sq * snr + 1.0);
        assert!(((direct - via_db) / direct).abs() <= 1e-9);
        let snr_mw = dbm_to_mw(cfg.tx_power_dbm) * gain / dbm_to_mw(cfg.noise_dbm);
        assert!(((snr - snr_mw) / snr).abs() <= 1e-9);
    }
}
