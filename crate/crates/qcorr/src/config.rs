//! JSON description of a state and an observable, and its resolution into
//! `qcorr-core` values.
//!
//! ```json
//! {
//!   "state": {"amplitudes": [[1,0],0,0,0,0,0,0,[-1,0]], "dims": [2,2,2], "normalize": true},
//!   "observable": {"builder": "local_joint", "axes": ["z","z","z"]}
//! }
//! ```
//!
//! A state is one of
//! * `{"amplitudes": [...], "dims": [...]?, "normalize": bool?}`: a pure state,
//! * `{"mixture": [{"weight": w, "amplitudes": [...], "normalize": bool?}, ...], "dims": [...]?}`,
//! * `{"partial_trace": <state>, "traced": [k, ...]}`: a bare density operator.
//!
//! Amplitudes are `[re, im]` pairs or plain reals; weights and amplitude
//! components may also be written as rational strings (`"2/3"`). Without
//! `dims` the space is taken to be qubits.
//!
//! An observable is one of
//! * `{"builder": "local_joint", "axes": ["x","y","z", ...]}`,
//! * `{"builder": "embed", "inner": <observable>, "slots": [1, 2]}`: placed on
//!   the given factors of the state's space,
//! * `{"builder": "marginal", "inner": <observable>, "axes": [1]}`,
//! * `{"effects": [{"outcome": ["1/2", ...], "matrix": [[[re,im], ...], ...]}, ...], "dims": [...]?}`.

use serde::Deserialize;

use qcorr_core::rational::parse_real;
use qcorr_core::{
    embed, local_spin_joint, marginal, ComplexMatrix, DensityOperator, DimensionProfile,
    DiscreteObservable, Label, OutcomeGrid, PureState, QuantumState, SpinAxis,
    StateDecomposition, C64,
};

use crate::error::{Error, Result};

/// A real written as a JSON number or a rational string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    pub fn value(&self) -> Result<f64> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => Ok(parse_real(s)?),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Complex([Real; 2]),
    Real(Real),
}

impl Amplitude {
    fn value(&self) -> Result<C64> {
        match self {
            Amplitude::Complex([re, im]) => Ok(C64::new(re.value()?, im.value()?)),
            Amplitude::Real(re) => Ok(C64::new(re.value()?, 0.0)),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub weight: Real,
    pub amplitudes: Vec<Amplitude>,
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    PartialTrace {
        partial_trace: Box<StateSpec>,
        traced: Vec<usize>,
    },
    Mixture {
        mixture: Vec<TermSpec>,
        #[serde(default)]
        dims: Option<Vec<usize>>,
    },
    Pure {
        amplitudes: Vec<Amplitude>,
        #[serde(default)]
        dims: Option<Vec<usize>>,
        #[serde(default)]
        normalize: bool,
    },
}

/// A resolved state: with statistical content, or only a density operator.
#[derive(Debug, Clone)]
pub enum ResolvedState {
    Decomposed(StateDecomposition),
    Density(DensityOperator),
}

impl ResolvedState {
    pub fn profile(&self) -> &DimensionProfile {
        match self {
            ResolvedState::Decomposed(d) => d.profile(),
            ResolvedState::Density(r) => r.profile(),
        }
    }

    pub fn density(&self) -> DensityOperator {
        match self {
            ResolvedState::Decomposed(d) => d.density(),
            ResolvedState::Density(r) => r.clone(),
        }
    }
}

fn profile_for(dims: &Option<Vec<usize>>, len: usize) -> Result<DimensionProfile> {
    match dims {
        Some(d) => Ok(DimensionProfile::new(d.clone())?),
        None => {
            if len < 2 || !len.is_power_of_two() {
                return Err(Error::Spec(format!(
                    "{len} amplitudes is not a qubit register; give \"dims\""
                )));
            }
            Ok(DimensionProfile::qubits(len.trailing_zeros() as usize))
        }
    }
}

fn pure_state(amps: &[Amplitude], profile: DimensionProfile, normalize: bool) -> Result<PureState> {
    let amps = amps.iter().map(Amplitude::value).collect::<Result<Vec<_>>>()?;
    Ok(if normalize {
        PureState::normalized(amps, profile)?
    } else {
        PureState::new(amps, profile)?
    })
}

impl StateSpec {
    pub fn resolve(&self) -> Result<ResolvedState> {
        match self {
            StateSpec::Pure {
                amplitudes,
                dims,
                normalize,
            } => {
                let profile = profile_for(dims, amplitudes.len())?;
                let psi = pure_state(amplitudes, profile, *normalize)?;
                Ok(ResolvedState::Decomposed(StateDecomposition::pure(psi)))
            }
            StateSpec::Mixture { mixture, dims } => {
                let Some(first) = mixture.first() else {
                    return Err(Error::Spec("mixture has no terms".into()));
                };
                let profile = profile_for(dims, first.amplitudes.len())?;
                let terms = mixture
                    .iter()
                    .map(|t| {
                        let psi = pure_state(&t.amplitudes, profile.clone(), t.normalize)?;
                        Ok((t.weight.value()?, psi))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ResolvedState::Decomposed(StateDecomposition::new(terms)?))
            }
            StateSpec::PartialTrace {
                partial_trace,
                traced,
            } => {
                let rho = partial_trace.resolve()?.density().reduce(traced)?;
                Ok(ResolvedState::Density(rho))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Integer(i64),
    Text(String),
}

impl LabelSpec {
    fn label(&self) -> Result<Label> {
        match self {
            LabelSpec::Integer(n) => Ok(Label::integer(*n)),
            LabelSpec::Text(s) => Ok(s.parse()?),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectSpec {
    pub outcome: Vec<LabelSpec>,
    pub matrix: Vec<Vec<Amplitude>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum BuilderSpec {
    LocalJoint {
        axes: Vec<String>,
    },
    Embed {
        inner: Box<ObservableSpec>,
        slots: Vec<usize>,
    },
    Marginal {
        inner: Box<ObservableSpec>,
        axes: Vec<usize>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ObservableSpec {
    Builder(BuilderSpec),
    Effects {
        effects: Vec<EffectSpec>,
        #[serde(default)]
        dims: Option<Vec<usize>>,
    },
}

impl ObservableSpec {
    /// Resolves against the space of the state it will be measured on;
    /// `embed` places its inner observable on that space.
    pub fn resolve(&self, space: &DimensionProfile) -> Result<DiscreteObservable> {
        match self {
            ObservableSpec::Builder(BuilderSpec::LocalJoint { axes }) => {
                let axes = axes
                    .iter()
                    .map(|a| a.parse::<SpinAxis>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(local_spin_joint(&axes)?)
            }
            ObservableSpec::Builder(BuilderSpec::Embed { inner, slots }) => {
                let slot_dims = slots
                    .iter()
                    .map(|&s| {
                        s.checked_sub(1)
                            .and_then(|i| space.factors().get(i).copied())
                            .ok_or_else(|| Error::Spec(format!("slot {s} outside {:?}", space.factors())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let inner = inner.resolve(&DimensionProfile::new(slot_dims)?)?;
                Ok(embed(&inner, space, slots)?)
            }
            ObservableSpec::Builder(BuilderSpec::Marginal { inner, axes }) => {
                Ok(marginal(&inner.resolve(space)?, axes)?)
            }
            ObservableSpec::Effects { effects, dims } => raw_observable(effects, dims, space),
        }
    }
}

fn raw_observable(
    effects: &[EffectSpec],
    dims: &Option<Vec<usize>>,
    space: &DimensionProfile,
) -> Result<DiscreteObservable> {
    let Some(first) = effects.first() else {
        return Err(Error::Spec("observable has no effects".into()));
    };
    let profile = match dims {
        Some(d) => DimensionProfile::new(d.clone())?,
        None => space.clone(),
    };
    let n_axes = first.outcome.len();
    let mut axes: Vec<Vec<Label>> = vec![Vec::new(); n_axes];
    let mut parsed = Vec::with_capacity(effects.len());
    for e in effects {
        if e.outcome.len() != n_axes {
            return Err(Error::Spec("effects disagree on the number of axes".into()));
        }
        let outcome = e.outcome.iter().map(LabelSpec::label).collect::<Result<Vec<_>>>()?;
        for (axis, l) in axes.iter_mut().zip(&outcome) {
            if !axis.contains(l) {
                axis.push(*l);
            }
        }
        let rows = e.matrix.len();
        let mut data = Vec::with_capacity(rows * rows);
        for row in &e.matrix {
            if row.len() != rows {
                return Err(Error::Spec(format!("effect at {outcome:?} is not square")));
            }
            for a in row {
                data.push(a.value()?);
            }
        }
        parsed.push((outcome, ComplexMatrix::new(rows, rows, data)?));
    }
    let grid = OutcomeGrid::new(axes)?;
    let mut slots: Vec<Option<ComplexMatrix>> = vec![None; grid.len()];
    for (outcome, m) in parsed {
        let i = grid.index_of(&outcome).expect("labels collected from effects");
        if slots[i].replace(m).is_some() {
            return Err(Error::Spec(format!("outcome {outcome:?} listed twice")));
        }
    }
    let effects = slots
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| Error::Spec(format!("no effect for outcome {:?}", grid.labels(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscreteObservable::new(grid, effects, profile)?)
}
