//! Reference implementation used by the integration tests.
//!
//! Works directly on amplitude vectors of qubit registers. A local spin
//! measurement of slot `k` along axis `a` with outcome `o` is the overlap of
//! the slot's qubit with the eigenket `|a, o>`; unmeasured slots are summed
//! over in probability. No matrices, traces or effects are built here.

#![allow(dead_code)]

use qcorr::qcorr_core::{DimensionProfile, PureState, StateDecomposition, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const UNDEF_TOL: f64 = 1e-12;

/// `<a, o|` as the two components of the eigenket, `o = 0` for `+1/2`.
pub fn eigenket(axis: char, o: usize) -> [C64; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if o == 0 { 1.0 } else { -1.0 };
    match axis {
        'z' => {
            if o == 0 {
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
            } else {
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
            }
        }
        'x' => [C64::new(s, 0.0), C64::new(sign * s, 0.0)],
        'y' => [C64::new(s, 0.0), C64::new(0.0, sign * s)],
        _ => panic!("axis {axis}"),
    }
}

fn bit(index: usize, n: usize, slot: usize) -> usize {
    (index >> (n - 1 - slot)) & 1
}

/// Joint distribution of local spin measurements on `slots` (0-based) of a
/// pure `n`-qubit state, flattened with the first slot most significant.
pub fn pure_joint(psi: &[C64], n: usize, slots: &[usize], axes: &[char]) -> Vec<f64> {
    assert_eq!(psi.len(), 1 << n);
    let m = slots.len();
    let rest: Vec<usize> = (0..n).filter(|q| !slots.contains(q)).collect();
    let mut out = vec![0.0; 1 << m];
    for (cell, p) in out.iter_mut().enumerate() {
        let outcome: Vec<usize> = (0..m).map(|k| (cell >> (m - 1 - k)) & 1).collect();
        for r in 0..(1usize << rest.len()) {
            let mut amp = C64::new(0.0, 0.0);
            for (b, a) in psi.iter().enumerate() {
                if rest
                    .iter()
                    .enumerate()
                    .any(|(j, &q)| bit(b, n, q) != (r >> (rest.len() - 1 - j)) & 1)
                {
                    continue;
                }
                let mut w = *a;
                for k in 0..m {
                    w *= eigenket(axes[k], outcome[k])[bit(b, n, slots[k])].conj();
                }
                amp += w;
            }
            *p += amp.norm_sqr();
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct OracleTables {
    pub joint: Vec<f64>,
    pub marginals: Vec<Vec<f64>>,
    pub product: Vec<f64>,
    pub sum: Vec<f64>,
    pub phi_t: Vec<Option<f64>>,
    pub phi_c: Vec<Option<f64>>,
    pub phi_q: Vec<Option<f64>>,
}

fn product_over_axes(marginals: &[Vec<f64>]) -> Vec<f64> {
    let m = marginals.len();
    (0..1usize << m)
        .map(|cell| {
            (0..m)
                .map(|k| marginals[k][(cell >> (m - 1 - k)) & 1])
                .product()
        })
        .collect()
}

pub fn ratio(num: &[f64], den: &[f64]) -> Vec<Option<f64>> {
    num.iter()
        .zip(den)
        .map(|(&n, &d)| {
            if d < UNDEF_TOL {
                assert!(n < UNDEF_TOL, "support violation {n} / {d}");
                None
            } else {
                Some(n / d)
            }
        })
        .collect()
}

/// Every table for the mixture `terms` measured by local spins on `slots`.
pub fn oracle(terms: &[(f64, Vec<C64>)], n: usize, slots: &[usize], axes: &[char]) -> OracleTables {
    let m = slots.len();
    let mut joint = vec![0.0; 1 << m];
    let mut marginals = vec![vec![0.0; 2]; m];
    let mut sum = vec![0.0; 1 << m];
    for (w, psi) in terms {
        for (j, p) in joint.iter_mut().zip(pure_joint(psi, n, slots, axes)) {
            *j += w * p;
        }
        let local: Vec<Vec<f64>> = (0..m)
            .map(|k| pure_joint(psi, n, &slots[k..=k], &axes[k..=k]))
            .collect();
        for (acc, l) in marginals.iter_mut().zip(&local) {
            acc[0] += w * l[0];
            acc[1] += w * l[1];
        }
        for (s, p) in sum.iter_mut().zip(product_over_axes(&local)) {
            *s += w * p;
        }
    }
    let product = product_over_axes(&marginals);
    OracleTables {
        phi_t: ratio(&joint, &product),
        phi_c: ratio(&sum, &product),
        phi_q: ratio(&joint, &sum),
        joint,
        marginals,
        product,
        sum,
    }
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Infinite when one side is defined and the other is not.
pub fn max_diff_opt(a: &[Option<f64>], b: &[Option<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => (x - y).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

pub fn random_amplitudes(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

pub fn random_axis(rng: &mut ChaCha8Rng) -> char {
    ['x', 'y', 'z'][rng.gen_range(0..3)]
}

/// A random instance: mixture on `n` qubits and local spin axes on every
/// qubit.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    pub terms: Vec<(f64, Vec<C64>)>,
    pub slots: Vec<usize>,
    pub axes: Vec<char>,
}

impl Instance {
    pub fn random(rng: &mut ChaCha8Rng, all_slots: bool) -> Self {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=4);
        let weights = random_weights(rng, k);
        let terms = weights
            .into_iter()
            .map(|w| (w, random_amplitudes(rng, 1 << n)))
            .collect();
        let slots: Vec<usize> = if all_slots {
            (0..n).collect()
        } else {
            let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
            if s.is_empty() {
                s.push(rng.gen_range(0..n));
            }
            s
        };
        let axes = slots.iter().map(|_| random_axis(rng)).collect();
        Instance {
            n,
            terms,
            slots,
            axes,
        }
    }

    pub fn decomposition(&self) -> StateDecomposition {
        let profile = DimensionProfile::qubits(self.n);
        StateDecomposition::new(
            self.terms
                .iter()
                .map(|(w, a)| (*w, PureState::new(a.clone(), profile.clone()).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    pub fn oracle(&self) -> OracleTables {
        oracle(&self.terms, self.n, &self.slots, &self.axes)
    }
}

use qcorr::config::{BuilderSpec, ObservableSpec, ResolvedState};
use qcorr::qcorr_core::{embed, local_spin_joint, DiscreteObservable, QuantumState, SpinAxis};
use qcorr::Scenario;

fn spin_axis(c: char) -> SpinAxis {
    match c {
        'x' => SpinAxis::X,
        'y' => SpinAxis::Y,
        'z' => SpinAxis::Z,
        _ => panic!("axis {c}"),
    }
}

impl Instance {
    /// The same measurement built with the library: a local spin joint
    /// observable embedded on the instance's slots.
    pub fn observable(&self) -> DiscreteObservable {
        let axes: Vec<SpinAxis> = self.axes.iter().map(|&c| spin_axis(c)).collect();
        let local = local_spin_joint(&axes).unwrap();
        let slots: Vec<usize> = self.slots.iter().map(|s| s + 1).collect();
        embed(&local, &DimensionProfile::qubits(self.n), &slots).unwrap()
    }

    /// Oracle input for a built-in scenario whose observable is a local spin
    /// joint, possibly embedded.
    pub fn from_scenario(s: &Scenario) -> Self {
        let ResolvedState::Decomposed(d) = s.state.resolve().unwrap() else {
            panic!("{}: no decomposition", s.name)
        };
        let n = d.profile().len();
        let terms = d
            .terms()
            .iter()
            .map(|(w, psi)| (*w, psi.amplitudes().to_vec()))
            .collect();
        let local_axes = |spec: &ObservableSpec| match spec {
            ObservableSpec::Builder(BuilderSpec::LocalJoint { axes }) => axes
                .iter()
                .map(|a| a.chars().next().unwrap().to_ascii_lowercase())
                .collect::<Vec<char>>(),
            other => panic!("{}: unsupported observable {other:?}", s.name),
        };
        let (slots, axes) = match &s.observable {
            ObservableSpec::Builder(BuilderSpec::Embed { inner, slots }) => {
                (slots.iter().map(|s| s - 1).collect(), local_axes(inner))
            }
            other => ((0..n).collect(), local_axes(other)),
        };
        Instance {
            n,
            terms,
            slots,
            axes,
        }
    }
}
