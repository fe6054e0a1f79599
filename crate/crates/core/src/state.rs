//! Pure states, weighted decompositions of mixed states, and density
//! operators.
//!
//! A mixed state has to be carried as a [`StateDecomposition`] whenever its
//! classical correlation is wanted: the sum probability function depends on
//! which pure states were mixed, not only on the resulting density matrix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{c, ComplexMatrix, DimensionProfile, C64, PROBE_TOL, TOL};

/// Anything that can be measured: a pure state, a decomposition, or a bare
/// density operator.
pub trait QuantumState {
    fn profile(&self) -> &DimensionProfile;

    /// `Tr(A ρ)`.
    fn expectation(&self, op: &ComplexMatrix) -> Result<C64>;

    fn density(&self) -> DensityOperator;
}

/// Normalized amplitude vector on a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    profile: DimensionProfile,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, profile: DimensionProfile) -> Result<Self> {
        Self::check_len(&amplitudes, &profile)?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > TOL {
            return Err(Error::InvalidState(format!(
                "amplitudes have norm {norm}, expected 1"
            )));
        }
        Ok(Self {
            amplitudes,
            profile,
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C64>, profile: DimensionProfile) -> Result<Self> {
        Self::check_len(&amplitudes, &profile)?;
        let norm = norm(&amplitudes);
        if norm < TOL || !norm.is_finite() {
            return Err(Error::InvalidState("zero vector cannot be normalized".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            amplitudes,
            profile,
        })
    }

    fn check_len(amplitudes: &[C64], profile: &DimensionProfile) -> Result<()> {
        if amplitudes.len() != profile.total() {
            return Err(Error::Dimension(format!(
                "{} amplitudes for profile {:?}",
                amplitudes.len(),
                profile.factors()
            )));
        }
        Ok(())
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "inner product of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        let mut dims = self.profile.factors().to_vec();
        dims.extend_from_slice(other.profile.factors());
        PureState {
            amplitudes,
            profile: DimensionProfile::new(dims).expect("factor dims already validated"),
        }
    }
}

impl QuantumState for PureState {
    fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    fn expectation(&self, op: &ComplexMatrix) -> Result<C64> {
        op.expectation(&self.amplitudes)
    }

    fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: self.projector(),
            profile: self.profile.clone(),
        }
    }
}

/// A mixed state given as `Σ λ_m |ψ_m⟩⟨ψ_m|`: its statistical content.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDecomposition {
    terms: Vec<(f64, PureState)>,
}

impl StateDecomposition {
    pub fn new(terms: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidState("decomposition has no terms".into()));
        };
        let profile = first.profile.clone();
        if let Some((w, _)) = terms.iter().find(|(w, _)| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidState(format!("negative weight {w}")));
        }
        let total: f64 = terms.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::InvalidState(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        if terms.iter().any(|(_, s)| s.profile != profile) {
            return Err(Error::Dimension(
                "decomposition terms live on different spaces".into(),
            ));
        }
        Ok(Self { terms })
    }

    /// The trivial one-term decomposition of a pure state.
    pub fn pure(state: PureState) -> Self {
        Self {
            terms: vec![(1.0, state)],
        }
    }

    pub fn terms(&self) -> &[(f64, PureState)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<PureState> for StateDecomposition {
    fn from(state: PureState) -> Self {
        Self::pure(state)
    }
}

impl QuantumState for StateDecomposition {
    fn profile(&self) -> &DimensionProfile {
        &self.terms[0].1.profile
    }

    fn expectation(&self, op: &ComplexMatrix) -> Result<C64> {
        let mut acc = c(0.0, 0.0);
        for (w, s) in &self.terms {
            acc += s.expectation(op)? * *w;
        }
        Ok(acc)
    }

    fn density(&self) -> DensityOperator {
        let n = self.profile().total();
        let mut m = ComplexMatrix::zeros(n, n);
        for (w, s) in &self.terms {
            m = &m + &s.projector().scale(c(*w, 0.0));
        }
        DensityOperator {
            matrix: m,
            profile: self.profile().clone(),
        }
    }
}

/// Density operator on a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    profile: DimensionProfile,
}

impl DensityOperator {
    /// Checks Hermiticity, unit trace and probe positivity.
    pub fn new(matrix: ComplexMatrix, profile: DimensionProfile) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != profile.total() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for profile {:?}",
                matrix.rows(),
                matrix.cols(),
                profile.factors()
            )));
        }
        if !matrix.is_hermitian(TOL) {
            return Err(Error::InvalidState("density matrix is not Hermitian".into()));
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::InvalidState(format!(
                "density matrix has trace {tr}, expected 1"
            )));
        }
        let min = matrix.min_probe_expectation();
        if min < -PROBE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not positive (probe value {min})"
            )));
        }
        Ok(Self { matrix, profile })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr_S ρ` for the 1-based factors in `traced`.
    pub fn reduce(&self, traced: &[usize]) -> Result<DensityOperator> {
        let matrix = self.matrix.partial_trace(&self.profile, traced)?;
        let traced0 = self.profile.zero_based(traced)?;
        let dims = self.profile.without(&traced0);
        if dims.is_empty() {
            return Err(Error::InvalidSelection(
                "cannot trace out every factor of a state".into(),
            ));
        }
        Ok(DensityOperator {
            matrix,
            profile: DimensionProfile::new(dims)?,
        })
    }
}

impl QuantumState for DensityOperator {
    fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    fn expectation(&self, op: &ComplexMatrix) -> Result<C64> {
        if op.rows() != self.matrix.rows() {
            return Err(Error::Dimension(format!(
                "{}x{} operator on a {}-dimensional state",
                op.rows(),
                op.cols(),
                self.matrix.rows()
            )));
        }
        op.trace_product(&self.matrix)
    }

    fn density(&self) -> DensityOperator {
        self.clone()
    }
}

/// Partial trace of any state over the 1-based factors in `traced`.
pub fn reduce(state: &impl QuantumState, traced: &[usize]) -> Result<DensityOperator> {
    state.density().reduce(traced)
}

fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|a| a.norm_sqr()).sum())
}

fn from_real(profile: DimensionProfile, entries: &[(usize, f64)]) -> PureState {
    let mut amps = vec![c(0.0, 0.0); profile.total()];
    for &(i, a) in entries {
        amps[i] = c(a, 0.0);
    }
    PureState::normalized(amps, profile).expect("nonzero fixed vector")
}

/// `(|000⟩ − |111⟩)/√2`.
pub fn make_ghz() -> PureState {
    from_real(DimensionProfile::qubits(3), &[(0, 1.0), (7, -1.0)])
}

/// `(|011⟩ + |101⟩ + |110⟩)/√3`.
pub fn make_w() -> PureState {
    from_real(DimensionProfile::qubits(3), &[(3, 1.0), (5, 1.0), (6, 1.0)])
}

/// Bell states: 1 → `(|00⟩+|11⟩)/√2`, 2 → `(|00⟩−|11⟩)/√2`,
/// 3 → `(|01⟩+|10⟩)/√2`, 4 → `(|01⟩−|10⟩)/√2`.
pub fn make_bell(k: usize) -> Result<PureState> {
    let entries: &[(usize, f64)] = match k {
        1 => &[(0, 1.0), (3, 1.0)],
        2 => &[(0, 1.0), (3, -1.0)],
        3 => &[(1, 1.0), (2, 1.0)],
        4 => &[(1, 1.0), (2, -1.0)],
        _ => {
            return Err(Error::IndexOutOfRange { index: k, len: 4 });
        }
    };
    Ok(from_real(DimensionProfile::qubits(2), entries))
}

/// Computational basis state with one digit per factor, e.g. `[0, 1, 1]` for
/// `|011⟩`.
pub fn basis_state(profile: &DimensionProfile, labels: &[usize]) -> Result<PureState> {
    if labels.len() != profile.len() {
        return Err(Error::Dimension(format!(
            "{} labels for {} factors",
            labels.len(),
            profile.len()
        )));
    }
    let mut index = 0;
    for (&l, &d) in labels.iter().zip(profile.factors()) {
        if l >= d {
            return Err(Error::InvalidState(format!(
                "basis label {l} out of range for factor dimension {d}"
            )));
        }
        index = index * d + l;
    }
    let mut amps = vec![c(0.0, 0.0); profile.total()];
    amps[index] = c(1.0, 0.0);
    PureState::new(amps, profile.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::abs;
    use proptest::prelude::*;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn diag4(d: [f64; 4]) -> ComplexMatrix {
        ComplexMatrix::diag(&d.map(|x| c(x, 0.0)))
    }

    fn reduced_w_matrix() -> ComplexMatrix {
        // ⅔|B₃⟩⟨B₃| + ⅓|11⟩⟨11| written out entry by entry
        let t = 1.0 / 3.0;
        ComplexMatrix::from_rows([
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(t, 0.0), c(t, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(t, 0.0), c(t, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(t, 0.0)],
        ])
    }

    #[test]
    fn ghz_amplitudes() {
        let g = make_ghz();
        let want = [H, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -H];
        for (a, w) in g.amplitudes().iter().zip(want) {
            assert!(abs(*a - c(w, 0.0)) <= TOL);
        }
    }

    #[test]
    fn w_amplitudes() {
        let w = make_w();
        let s = 1.0 / libm::sqrt(3.0);
        for (i, a) in w.amplitudes().iter().enumerate() {
            let want = if matches!(i, 3 | 5 | 6) { s } else { 0.0 };
            assert!(abs(*a - c(want, 0.0)) <= TOL, "index {i}");
        }
    }

    #[test]
    fn bell_states_are_orthonormal() {
        let bells: Vec<_> = (1..=4).map(|k| make_bell(k).unwrap()).collect();
        for (i, a) in bells.iter().enumerate() {
            for (j, b) in bells.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(abs(a.inner(b).unwrap() - c(want, 0.0)) <= TOL);
            }
        }
        assert!(matches!(make_bell(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(make_bell(5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn basis_state_is_big_endian() {
        let s = basis_state(&DimensionProfile::qubits(3), &[0, 1, 1]).unwrap();
        assert_eq!(s.amplitudes()[3], c(1.0, 0.0));
        assert!(basis_state(&DimensionProfile::qubits(2), &[0, 2]).is_err());
        assert!(basis_state(&DimensionProfile::qubits(2), &[0]).is_err());
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        let p = DimensionProfile::qubits(1);
        assert!(PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)], p.clone()).is_err());
        assert!(PureState::normalized(vec![c(0.0, 0.0), c(0.0, 0.0)], p.clone()).is_err());
        assert!(PureState::new(vec![c(1.0, 0.0)], p).is_err());
    }

    #[test]
    fn single_term_density_is_projector() {
        let rho = StateDecomposition::pure(make_ghz()).density();
        let m = rho.matrix();
        let nonzero: Vec<_> = m
            .entries()
            .iter()
            .filter(|z| abs(**z) > TOL)
            .map(|z| z.re)
            .collect();
        assert_eq!(nonzero.len(), 4);
        assert!((nonzero[0] - 0.5).abs() <= TOL);
        assert!((nonzero[1] + 0.5).abs() <= TOL);
        assert!((nonzero[2] + 0.5).abs() <= TOL);
        assert!((nonzero[3] - 0.5).abs() <= TOL);
    }

    #[test]
    fn both_reduced_ghz_decompositions_give_one_matrix() {
        let p2 = DimensionProfile::qubits(2);
        let comp = StateDecomposition::new(vec![
            (0.5, basis_state(&p2, &[0, 0]).unwrap()),
            (0.5, basis_state(&p2, &[1, 1]).unwrap()),
        ])
        .unwrap();
        let bell = StateDecomposition::new(vec![
            (0.5, make_bell(1).unwrap()),
            (0.5, make_bell(2).unwrap()),
        ])
        .unwrap();
        let want = diag4([0.5, 0.0, 0.0, 0.5]);
        assert!(comp.density().matrix().max_abs_diff(&want) <= TOL);
        assert!(bell.density().matrix().max_abs_diff(&want) <= TOL);
        assert!(
            comp.density()
                .matrix()
                .max_abs_diff(bell.density().matrix())
                <= TOL
        );
    }

    #[test]
    fn reduce_ghz_and_w() {
        let r = reduce(&make_ghz(), &[3]).unwrap();
        assert_eq!(r.profile().factors(), &[2, 2]);
        assert!(r.matrix().max_abs_diff(&diag4([0.5, 0.0, 0.0, 0.5])) <= TOL);

        let rw = reduce(&make_w(), &[3]).unwrap();
        assert!(rw.matrix().max_abs_diff(&reduced_w_matrix()) <= TOL);
        let mix = StateDecomposition::new(vec![
            (2.0 / 3.0, make_bell(3).unwrap()),
            (1.0 / 3.0, basis_state(&DimensionProfile::qubits(2), &[1, 1]).unwrap()),
        ])
        .unwrap();
        assert!(mix.density().matrix().max_abs_diff(rw.matrix()) <= TOL);
    }

    #[test]
    fn reduce_product_returns_first_factor() {
        let a = PureState::normalized(vec![c(0.3, 0.1), c(-0.2, 0.9)], DimensionProfile::qubits(1))
            .unwrap();
        let b = make_bell(4).unwrap();
        let ab = a.tensor(&b);
        let r = reduce(&ab, &[2, 3]).unwrap();
        assert!(r.matrix().max_abs_diff(&a.projector()) <= TOL);
        assert!(reduce(&ab, &[1, 2, 3]).is_err());
        assert!(reduce(&ab, &[4]).is_err());
    }

    #[test]
    fn decomposition_validation() {
        let g = make_ghz();
        assert!(StateDecomposition::new(vec![]).is_err());
        assert!(StateDecomposition::new(vec![(0.7, g.clone())]).is_err());
        assert!(
            StateDecomposition::new(vec![(1.5, g.clone()), (-0.5, make_w())]).is_err()
        );
        assert!(
            StateDecomposition::new(vec![(0.5, g.clone()), (0.5, make_bell(1).unwrap())]).is_err()
        );
        assert!(StateDecomposition::new(vec![(0.25, g.clone()), (0.75, make_w())]).is_ok());
    }

    #[test]
    fn density_operator_validation() {
        let p = DimensionProfile::qubits(1);
        let ok = ComplexMatrix::diag(&[c(0.25, 0.0), c(0.75, 0.0)]);
        assert!(DensityOperator::new(ok, p.clone()).is_ok());
        let neg = ComplexMatrix::diag(&[c(1.5, 0.0), c(-0.5, 0.0)]);
        assert!(DensityOperator::new(neg, p.clone()).is_err());
        let non_h = ComplexMatrix::from_rows([[c(0.5, 0.0), c(0.1, 0.0)], [c(0.2, 0.0), c(0.5, 0.0)]]);
        assert!(DensityOperator::new(non_h, p.clone()).is_err());
        assert!(DensityOperator::new(ComplexMatrix::identity(2), p).is_err());
    }

    #[test]
    fn global_phase_changes_value_not_density() {
        let g = make_ghz();
        let phased = PureState::new(
            g.amplitudes().iter().map(|a| a * c(0.0, 1.0)).collect(),
            g.profile().clone(),
        )
        .unwrap();
        assert_ne!(g, phased);
        assert!(g.projector().max_abs_diff(&phased.projector()) <= TOL);
    }

    fn arb_state(n: usize) -> impl Strategy<Value = PureState> {
        proptest::collection::vec(-1.0f64..1.0, 2 << n)
            .prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
            .prop_map(move |v| {
                let amps = v.chunks(2).map(|p| c(p[0], p[1])).collect();
                PureState::normalized(amps, DimensionProfile::qubits(n)).unwrap()
            })
    }

    fn arb_decomposition() -> impl Strategy<Value = StateDecomposition> {
        (
            proptest::collection::vec(arb_state(3), 1..=4),
            proptest::collection::vec(0.01f64..1.0, 4),
        )
            .prop_map(|(states, raw)| {
                let total: f64 = raw[..states.len()].iter().sum();
                let terms = states
                    .into_iter()
                    .zip(&raw)
                    .map(|(s, w)| (w / total, s))
                    .collect();
                StateDecomposition::new(terms).unwrap()
            })
    }

    proptest! {
        #[test]
        fn density_of_decomposition_is_valid(d in arb_decomposition()) {
            let rho = d.density();
            prop_assert!(DensityOperator::new(rho.matrix().clone(), rho.profile().clone()).is_ok());
        }

        #[test]
        fn reduce_preserves_unit_trace(d in arb_decomposition(), which in 1usize..=3) {
            let r = reduce(&d, &[which]).unwrap();
            prop_assert!(abs(r.matrix().trace().unwrap() - c(1.0, 0.0)) <= 1e-12);
            prop_assert!(DensityOperator::new(r.matrix().clone(), r.profile().clone()).is_ok());
        }
    }
}
