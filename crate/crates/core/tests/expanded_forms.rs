//! Term-by-term expansions of the noisy resource and of the outcome-2 output,
//! compared with the numeric pipeline.

mod common;

use cluster_rsp::noise::{apply_local_noise, unnormalized_channel_density, KrausChannel, NoiseKind, NoisyResource};
use cluster_rsp::protocol::{Outcome, ProtocolParams};

const RATES: [f64; 5] = [0.0, 0.13, 0.5, 0.77, 1.0];

fn noisy(kind: NoiseKind, rate: f64) -> Vec<num_complex::Complex64> {
    let ch = KrausChannel::new(kind, rate).unwrap();
    apply_local_noise(&unnormalized_channel_density(), &ch)
        .unwrap()
        .entries()
        .data()
        .to_vec()
}

fn cluster_signs(s: [f64; 4]) -> Vec<(f64, &'static str)> {
    vec![(s[0], "00000"), (s[1], "01011"), (s[2], "10100"), (s[3], "11111")]
}

#[test]
fn amplitude_damping_resource_expansion() {
    for l in RATES {
        let s = (1.0 - l).sqrt();
        let q = l.sqrt();
        let terms = vec![
            (1.0, vec![(1.0, "00000"), (1.0 - l, "01011"), (s, "10100"), (-s.powi(3), "11111")]),
            (1.0, vec![((l * (1.0 - l)).sqrt(), "01010"), (-(1.0 - l) * q, "11110")]),
            (1.0, vec![((l * (1.0 - l)).sqrt(), "01001"), (-(1.0 - l) * q, "11101")]),
            (1.0, vec![(l, "01000"), (-l * s, "11100")]),
            (1.0, vec![(q, "10000"), (-(1.0 - l) * q, "11011")]),
            ((1.0 - l) * l * l, vec![(1.0, "11010")]),
            ((1.0 - l) * l * l, vec![(1.0, "11001")]),
            (l.powi(3), vec![(1.0, "11000")]),
        ];
        let expected = common::weighted_projectors(32, &terms);
        let got = noisy(NoiseKind::AmplitudeDamping, l);
        assert!(common::max_diff(&expected, &got, 32) < 1e-12, "lambda={l}");
    }
}

fn phase_flip_six_terms(m: f64) -> common::Mat {
    let q = 1.0 - m;
    common::weighted_projectors(
        32,
        &[
            (q.powi(3), cluster_signs([1.0, 1.0, 1.0, -1.0])),
            (2.0 * q * q * m, cluster_signs([1.0, -1.0, 1.0, 1.0])),
            (q * m * m, cluster_signs([1.0, 1.0, 1.0, -1.0])),
            (q * q * m, cluster_signs([1.0, 1.0, -1.0, 1.0])),
            (2.0 * q * m * m, cluster_signs([1.0, -1.0, -1.0, -1.0])),
            (m.powi(3), cluster_signs([1.0, 1.0, -1.0, 1.0])),
        ],
    )
}

fn phase_flip_four_terms(m: f64) -> common::Mat {
    let q = 1.0 - m;
    common::weighted_projectors(
        32,
        &[
            (q.powi(3) + q * m * m, cluster_signs([1.0, 1.0, 1.0, -1.0])),
            (2.0 * q * q * m, cluster_signs([1.0, -1.0, 1.0, 1.0])),
            (q * q * m + m.powi(3), cluster_signs([1.0, 1.0, -1.0, 1.0])),
            (2.0 * q * m * m, cluster_signs([1.0, -1.0, -1.0, -1.0])),
        ],
    )
}

#[test]
fn phase_flip_resource_expansions() {
    for m in RATES {
        let six = phase_flip_six_terms(m);
        let four = phase_flip_four_terms(m);
        let flat: Vec<_> = four.iter().flatten().copied().collect();
        assert!(common::max_diff(&six, &flat, 32) < 1e-12, "mu={m}");
        assert!(common::max_diff(&six, &noisy(NoiseKind::PhaseFlip, m), 32) < 1e-12, "mu={m}");
    }
}

#[test]
fn bit_flip_resource_expansion() {
    let groups = [
        (3, 0, ["00000", "01011", "10100", "11111"]),
        (2, 1, ["00001", "01010", "10101", "11110"]),
        (2, 1, ["00010", "01001", "10110", "11101"]),
        (1, 2, ["00011", "01000", "10111", "11100"]),
        (2, 1, ["00100", "01111", "10000", "11011"]),
        (1, 2, ["00101", "01110", "10001", "11010"]),
        (1, 2, ["00110", "01101", "10010", "11001"]),
        (0, 3, ["00111", "01100", "10011", "11000"]),
    ];
    for n in RATES {
        let terms: Vec<_> = groups
            .iter()
            .map(|&(keep, flip, kets)| {
                let c = (1.0 - n).powi(keep) * n.powi(flip);
                (c, vec![(1.0, kets[0]), (1.0, kets[1]), (1.0, kets[2]), (-1.0, kets[3])])
            })
            .collect();
        let expected = common::weighted_projectors(32, &terms);
        assert!(common::max_diff(&expected, &noisy(NoiseKind::BitFlip, n), 32) < 1e-12, "nu={n}");
    }
}

fn outcome_two(kind: NoiseKind, rate: f64, a2: f64, g2: f64) -> Vec<num_complex::Complex64> {
    let p = ProtocolParams::from_probabilities(a2, g2).unwrap();
    NoisyResource::new(kind, rate)
        .unwrap()
        .output(&p, Outcome::new(2).unwrap())
        .unwrap()
        .entries()
        .data()
        .to_vec()
}

/// Outcome-2 amplitude-damping output. `tail` is the coefficient carried by
/// the three diagonal terms at the end of the expansion.
fn ad_output_terms(l: f64, a: f64, b: f64, g: f64, d: f64, tail: f64) -> common::Mat {
    let s = (1.0 - l).sqrt();
    let q = l.sqrt();
    let r = (l * (1.0 - l)).sqrt();
    common::weighted_projectors(
        8,
        &[
            (1.0, vec![(a * d, "011"), ((1.0 - l) * a * g, "000"), (s * b * d, "111"), (s.powi(3) * b * g, "100")]),
            (1.0, vec![(-r * a * g, "001"), (-(1.0 - l) * q * b * g, "101")]),
            (1.0, vec![(r * a * g, "010"), ((1.0 - l) * q * b * g, "110")]),
            (1.0, vec![(-l * a * g, "011"), (-l * s * b * g, "111")]),
            (1.0, vec![(-q * b * d, "011"), (-(1.0 - l) * q * b * g, "000")]),
            ((1.0 - l) * l * l * tail, vec![(1.0, "001")]),
            ((1.0 - l) * l * l * tail, vec![(1.0, "010")]),
            (l.powi(3) * tail, vec![(1.0, "011")]),
        ],
    )
}

#[test]
fn amplitude_damping_outcome_two_expansion() {
    let (a2, g2): (f64, f64) = (0.3, 0.6);
    let (a, b, g, d) = (a2.sqrt(), (1.0 - a2).sqrt(), g2.sqrt(), (1.0 - g2).sqrt());
    for l in RATES {
        let got = outcome_two(NoiseKind::AmplitudeDamping, l, a2, g2);
        // the tail terms carry β²γ²
        let expected = ad_output_terms(l, a, b, g, d, b * b * g * g);
        assert!(common::max_diff(&expected, &got, 8) < 1e-12, "lambda={l}");
    }
    // with a bare βγ on the tail the expansion is off wherever λ(1−λ) or λ³ is nonzero
    let l = 0.5;
    let as_printed = ad_output_terms(l, a, b, g, d, b * g);
    assert!(common::max_diff(&as_printed, &outcome_two(NoiseKind::AmplitudeDamping, l, a2, g2), 8) > 1e-3);
}

#[test]
fn phase_flip_outcome_two_expansion() {
    let (a2, g2): (f64, f64) = (0.35, 0.8);
    let (a, b, g, d) = (a2.sqrt(), (1.0 - a2).sqrt(), g2.sqrt(), (1.0 - g2).sqrt());
    for m in RATES {
        let q = 1.0 - m;
        let v = |s: [f64; 4]| vec![(s[0] * a * d, "011"), (s[1] * a * g, "000"), (s[2] * b * d, "111"), (s[3] * b * g, "100")];
        let expected = common::weighted_projectors(
            8,
            &[
                (q.powi(3) + q * m * m, v([1.0, 1.0, 1.0, 1.0])),
                (2.0 * q * q * m, v([1.0, -1.0, 1.0, -1.0])),
                (q * q * m + m.powi(3), v([1.0, 1.0, -1.0, -1.0])),
                (2.0 * q * m * m, v([1.0, -1.0, -1.0, 1.0])),
            ],
        );
        assert!(common::max_diff(&expected, &outcome_two(NoiseKind::PhaseFlip, m, a2, g2), 8) < 1e-12, "mu={m}");
    }
}

#[test]
fn bit_flip_outcome_two_expansion() {
    let (a2, g2): (f64, f64) = (0.45, 0.15);
    let (a, b, g, d) = (a2.sqrt(), (1.0 - a2).sqrt(), g2.sqrt(), (1.0 - g2).sqrt());
    for n in RATES {
        let q = 1.0 - n;
        let t = |sign: f64, k: [&'static str; 4]| {
            vec![(sign * a * d, k[0]), (sign * a * g, k[1]), (sign * b * d, k[2]), (sign * b * g, k[3])]
        };
        let expected = common::weighted_projectors(
            8,
            &[
                (q.powi(3), t(1.0, ["011", "000", "111", "100"])),
                (q * q * n, t(-1.0, ["010", "001", "110", "101"])),
                (q * q * n, t(1.0, ["001", "010", "101", "110"])),
                (n * n * q, t(-1.0, ["000", "011", "100", "111"])),
                (q * q * n, t(-1.0, ["111", "100", "011", "000"])),
                (n * n * q, t(1.0, ["110", "101", "010", "001"])),
                (n * n * q, t(-1.0, ["101", "110", "001", "010"])),
                (n.powi(3), t(1.0, ["100", "111", "000", "011"])),
            ],
        );
        assert!(common::max_diff(&expected, &outcome_two(NoiseKind::BitFlip, n, a2, g2), 8) < 1e-12, "nu={n}");
    }
}
