//! Dense brute-force reference for the noisy protocol.
//!
//! Written from the textbook definitions with full 32×32 matrices and no use
//! of the crate's operator-embedding, conjugation or partial-trace code.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![C::new(0.0, 0.0); n]; n]
}

pub fn real(rows: &[&[f64]]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| C::new(x, 0.0)).collect())
        .collect()
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn kron_all(factors: &[&Mat]) -> Mat {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn outer(u: &[f64], v: &[f64]) -> Mat {
    u.iter()
        .map(|a| v.iter().map(|b| C::new(a * b, 0.0)).collect())
        .collect()
}

pub fn sandwich(k: &Mat, rho: &Mat) -> Mat {
    matmul(&matmul(k, rho), &dagger(k))
}

pub fn x() -> Mat {
    real(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn z() -> Mat {
    real(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Cluster state with branch amplitudes ±1.
pub fn unnormalized_cluster() -> Vec<f64> {
    let mut v = vec![0.0; 32];
    v[0b00000] = 1.0;
    v[0b01011] = 1.0;
    v[0b10100] = 1.0;
    v[0b11111] = -1.0;
    v
}

pub fn kraus(kind: &str, r: f64) -> Vec<Mat> {
    let (k, h) = ((1.0 - r).sqrt(), r.sqrt());
    match kind {
        "ad" => vec![real(&[&[1.0, 0.0], &[0.0, k]]), real(&[&[0.0, h], &[0.0, 0.0]])],
        "pf" => vec![real(&[&[k, 0.0], &[0.0, k]]), real(&[&[h, 0.0], &[0.0, -h]])],
        "bf" => vec![real(&[&[k, 0.0], &[0.0, k]]), real(&[&[0.0, h], &[h, 0.0]])],
        _ => unreachable!(),
    }
}

pub fn noisy_channel(kind: &str, r: f64) -> Mat {
    let phi = unnormalized_cluster();
    let rho = outer(&phi, &phi);
    let ks = kraus(kind, r);
    let i2 = eye(2);
    let mut acc = zeros(32);
    for l in &ks {
        for m in &ks {
            for n in &ks {
                let k = kron_all(&[&i2, &i2, l, m, n]);
                acc = add(&acc, &sandwich(&k, &rho));
            }
        }
    }
    acc
}

/// Sender basis vectors in the order |00⟩, |01⟩, |10⟩, |11⟩.
pub fn basis(a: f64, b: f64, g: f64, d: f64) -> [[f64; 4]; 4] {
    [
        [a * g, a * d, b * g, -b * d],
        [a * d, -a * g, -b * d, -b * g],
        [b * g, b * d, -a * g, a * d],
        [b * d, -b * g, a * d, a * g],
    ]
}

pub fn corrections(outcome: usize) -> (Mat, Mat) {
    let xz = matmul(&x(), &z());
    let flip = kron(&x(), &xz);
    match outcome {
        1 => (eye(2), eye(4)),
        2 => (z(), flip),
        3 => (xz, eye(4)),
        4 => (x(), flip),
        _ => unreachable!(),
    }
}

/// Sums over the first two qubits of a 32×32 matrix.
pub fn trace_sender(rho: &Mat) -> Mat {
    let mut out = zeros(8);
    for s in 0..4 {
        for i in 0..8 {
            for j in 0..8 {
                out[i][j] += rho[s * 8 + i][s * 8 + j];
            }
        }
    }
    out
}

pub fn output(eps: &Mat, a2: f64, g2: f64, outcome: usize) -> Mat {
    let (a, b, g, d) = (a2.sqrt(), (1.0 - a2).sqrt(), g2.sqrt(), (1.0 - g2).sqrt());
    let xi = basis(a, b, g, d)[outcome - 1];
    let (u, v) = corrections(outcome);
    let m = matmul(
        &kron_all(&[&eye(4), &u, &v]),
        &kron(&outer(&xi, &xi), &eye(8)),
    );
    trace_sender(&sandwich(&m, eps))
}

pub fn target(a2: f64, g2: f64) -> Vec<f64> {
    let (a, b, g, d) = (a2.sqrt(), (1.0 - a2).sqrt(), g2.sqrt(), (1.0 - g2).sqrt());
    let s2 = [g, 0.0, 0.0, d];
    [a, b].iter().flat_map(|x| s2.iter().map(move |y| x * y)).collect()
}

pub fn expectation(psi: &[f64], rho: &Mat) -> C {
    let mut acc = C::new(0.0, 0.0);
    for (i, row) in rho.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            acc += psi[i] * v * psi[j];
        }
    }
    acc
}

pub fn trace(rho: &Mat) -> f64 {
    rho.iter().enumerate().map(|(i, r)| r[i].re).sum()
}

pub fn max_diff(a: &Mat, b: &[num_complex::Complex64], dim: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            worst = worst.max((a[i][j] - b[i * dim + j]).norm());
        }
    }
    worst
}

/// Sum of `c · |v⟩⟨v|` terms, each `v` a sum of signed basis kets.
pub fn weighted_projectors(dim: usize, terms: &[(f64, Vec<(f64, &str)>)]) -> Mat {
    let mut acc = zeros(dim);
    for (c, kets) in terms {
        let mut v = vec![0.0; dim];
        for (amp, k) in kets {
            v[usize::from_str_radix(k, 2).unwrap()] += amp;
        }
        let p = outer(&v, &v);
        for i in 0..dim {
            for j in 0..dim {
                acc[i][j] += p[i][j] * c;
            }
        }
    }
    acc
}
