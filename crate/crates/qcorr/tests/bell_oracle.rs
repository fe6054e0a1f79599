//! Expected tables of the Bell decomposition of the reduced GHZ state,
//! expanded term by term, against the golden file and the library.

mod common;

use qcorr::config::Real;
use qcorr::qcorr_core::C64;
use qcorr::{find_builtin, run};

use common::{max_diff, max_diff_opt, pure_joint, ratio};

fn bell(sign: f64) -> Vec<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(sign * s, 0.0)]
}

fn golden(values: &[Real]) -> Vec<Option<f64>> {
    values
        .iter()
        .map(|r| match r {
            Real::Text(t) if t == "undef" => None,
            r => Some(r.value().unwrap()),
        })
        .collect()
}

#[test]
fn bell_mixture_by_explicit_expansion() {
    let (b1, b2) = (bell(1.0), bell(-1.0));
    let z = ['z', 'z'];

    // Each Bell state has uniform single-qubit z statistics.
    for psi in [&b1, &b2] {
        for k in 0..2 {
            let m = pure_joint(psi, 2, &[k], &z[k..=k]);
            assert!(max_diff(&m, &[0.5, 0.5]) < 1e-15);
        }
    }

    // sum(o1, o2) = 1/2 P1(o1) P1(o2) + 1/2 P2(o1) P2(o2)
    let mut sum = vec![0.0; 4];
    for psi in [&b1, &b2] {
        let m1 = pure_joint(psi, 2, &[0], &['z']);
        let m2 = pure_joint(psi, 2, &[1], &['z']);
        for (cell, s) in sum.iter_mut().enumerate() {
            *s += 0.5 * m1[cell >> 1] * m2[cell & 1];
        }
    }
    assert!(max_diff(&sum, &[0.25; 4]) < 1e-15);

    let joint: Vec<f64> = pure_joint(&b1, 2, &[0, 1], &z)
        .iter()
        .zip(pure_joint(&b2, 2, &[0, 1], &z))
        .map(|(a, b)| 0.5 * a + 0.5 * b)
        .collect();
    assert!(max_diff(&joint, &[0.5, 0.0, 0.0, 0.5]) < 1e-15);
    let product = [0.25; 4];
    let phi_c = ratio(&sum, &product);
    let phi_q = ratio(&joint, &sum);

    let s = find_builtin("reduced_ghz_bell").unwrap();
    let e = s.expected.as_ref().unwrap();
    let want_sum: Vec<f64> = golden(e.sum.as_ref().unwrap()).into_iter().flatten().collect();
    assert!(max_diff(&sum, &want_sum) < 1e-12);
    assert!(max_diff_opt(&phi_c, &golden(e.phi_c.as_ref().unwrap())) < 1e-12);
    assert!(max_diff_opt(&phi_q, &golden(e.phi_q.as_ref().unwrap())) < 1e-12);
    assert_eq!(e.quantum_correlated, Some(true));

    let r = run(&s).unwrap();
    assert!(r.pass);
    assert!(max_diff(r.analysis.sum.as_ref().unwrap().values(), &sum) < 1e-12);
}

#[test]
fn oracle_reproduces_ghz_xyy() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut ghz = vec![C64::new(0.0, 0.0); 8];
    ghz[0] = C64::new(s, 0.0);
    ghz[7] = C64::new(-s, 0.0);
    let p = pure_joint(&ghz, 3, &[0, 1, 2], &['x', 'y', 'y']);
    assert!(max_diff(&p, &[0.25, 0.0, 0.0, 0.25, 0.0, 0.25, 0.25, 0.0]) < 1e-15);
}
