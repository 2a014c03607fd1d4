//! Layered interferometers of two-mode mixers and phase shifters, and the
//! fast (butterfly) realization of the `m = 2^p` Fourier transform.
//!
//! A layer is applied as a column of phase shifters followed by a column of
//! mixers. Within one layer a mode may carry at most one phase shifter and
//! at most one mixer. Mode labels are 1-based.

use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CircuitElement<T> {
    /// Coupler on `(i, j)` acting as
    /// `[[√τ, i√(1−τ)·e^{iφ}], [i√(1−τ)·e^{−iφ}, √τ]]`.
    Mixer {
        modes: [usize; 2],
        transmissivity: T,
        phase: T,
    },
    /// Multiplies the amplitude in `mode` by `e^{iφ}`.
    Phase { mode: usize, phase: T },
}

impl<T: Real> CircuitElement<T> {
    pub fn mixer(i: usize, j: usize, transmissivity: T, phase: T) -> Self {
        Self::Mixer {
            modes: [i, j],
            transmissivity,
            phase,
        }
    }

    pub fn phase(mode: usize, phase: T) -> Self {
        Self::Phase { mode, phase }
    }

    pub fn is_mixer(&self) -> bool {
        matches!(self, Self::Mixer { .. })
    }

    pub fn modes(&self) -> Vec<usize> {
        match self {
            Self::Mixer { modes, .. } => modes.to_vec(),
            Self::Phase { mode, .. } => vec![*mode],
        }
    }

    /// 2×2 transfer matrix of a mixer, row-major.
    pub fn mixer_matrix(transmissivity: T, phase: T) -> [Complex<T>; 4] {
        let t = transmissivity.sqrt();
        let r = (T::one() - transmissivity).sqrt();
        let i = Complex::<T>::i();
        [
            Complex::new(t, T::zero()),
            i * Complex::from_polar(r, phase),
            i * Complex::from_polar(r, -phase),
            Complex::new(t, T::zero()),
        ]
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_phase<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    let w = phi % two_pi;
    let w = if w < T::zero() { w + two_pi } else { w };
    // `w + 2π` may round up to exactly 2π
    if w >= two_pi {
        T::zero()
    } else {
        w
    }
}

pub type Layer<T> = Vec<CircuitElement<T>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit<T> {
    pub modes: usize,
    /// `input_permutation[i]` is the mode (1-based) that input mode `i + 1`
    /// is routed to before the first layer. Absent means identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_permutation: Option<Vec<usize>>,
    pub layers: Vec<Layer<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            input_permutation: None,
            layers: Vec::new(),
        }
    }

    pub fn mixer_count(&self) -> usize {
        self.elements().filter(|e| e.is_mixer()).count()
    }

    pub fn phase_count(&self) -> usize {
        self.elements().filter(|e| !e.is_mixer()).count()
    }

    pub fn elements(&self) -> impl Iterator<Item = &CircuitElement<T>> {
        self.layers.iter().flatten()
    }

    /// Checks mode ranges, element parameters, the permutation, and the
    /// per-layer exclusivity rule.
    pub fn validate(&self) -> Result<()> {
        let m = self.modes;
        if m == 0 {
            return Err(Error::Structure("circuit with zero modes".into()));
        }
        if let Some(perm) = &self.input_permutation {
            if perm.len() != m {
                return Err(Error::Structure(format!(
                    "permutation of length {} for {m} modes",
                    perm.len()
                )));
            }
            let mut hit = vec![false; m];
            for &t in perm {
                if t == 0 || t > m || std::mem::replace(&mut hit[t - 1], true) {
                    return Err(Error::Structure(format!(
                        "input permutation {perm:?} is not a bijection on 1..={m}"
                    )));
                }
            }
        }
        let two_pi = T::TAU();
        for (li, layer) in self.layers.iter().enumerate() {
            let mut mixed = vec![false; m];
            let mut shifted = vec![false; m];
            for el in layer {
                for mode in el.modes() {
                    if mode == 0 || mode > m {
                        return Err(Error::Structure(format!(
                            "layer {}: mode {mode} outside 1..={m}",
                            li + 1
                        )));
                    }
                }
                let (phase, used) = match el {
                    CircuitElement::Mixer {
                        modes: [i, j],
                        transmissivity,
                        phase,
                    } => {
                        if i == j {
                            return Err(Error::Structure(format!(
                                "layer {}: mixer on ({i},{i})",
                                li + 1
                            )));
                        }
                        if !(transmissivity.is_finite()
                            && *transmissivity >= T::zero()
                            && *transmissivity <= T::one())
                        {
                            return Err(Error::Structure(format!(
                                "layer {}: transmissivity {transmissivity} outside [0,1]",
                                li + 1
                            )));
                        }
                        (*phase, &mut mixed)
                    }
                    CircuitElement::Phase { phase, .. } => (*phase, &mut shifted),
                };
                if !(phase.is_finite() && phase >= T::zero() && phase < two_pi) {
                    return Err(Error::Structure(format!(
                        "layer {}: phase {phase} outside [0,2π)",
                        li + 1
                    )));
                }
                for mode in el.modes() {
                    if std::mem::replace(&mut used[mode - 1], true) {
                        return Err(Error::Structure(format!(
                            "layer {}: mode {mode} used by two {} elements",
                            li + 1,
                            if el.is_mixer() { "mixer" } else { "phase" }
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn permutation_matrix(&self) -> ComplexMatrix<T> {
        let m = self.modes;
        match &self.input_permutation {
            None => ComplexMatrix::identity(m),
            Some(perm) => {
                let mut p = ComplexMatrix::zeros(m, m);
                for (i, &t) in perm.iter().enumerate() {
                    p[(t - 1, i)] = Complex::one();
                }
                p
            }
        }
    }

    /// Unitary of layer `index` (0-based) alone.
    pub fn layer_unitary(&self, index: usize) -> Result<ComplexMatrix<T>> {
        self.validate()?;
        let layer = self
            .layers
            .get(index)
            .ok_or_else(|| Error::Input(format!("layer {index} of {}", self.layers.len())))?;
        let mut u = ComplexMatrix::identity(self.modes);
        apply_layer(&mut u, layer);
        Ok(u)
    }
}

/// Left-multiplies `u` by the layer: phases first, then mixers.
fn apply_layer<T: Real>(u: &mut ComplexMatrix<T>, layer: &[CircuitElement<T>]) {
    for el in layer {
        if let CircuitElement::Phase { mode, phase } = el {
            let rot = Complex::from_polar(T::one(), *phase);
            for z in u.row_mut(mode - 1) {
                *z *= rot;
            }
        }
    }
    for el in layer {
        if let CircuitElement::Mixer {
            modes: [i, j],
            transmissivity,
            phase,
        } = el
        {
            let [a, b, c, d] = CircuitElement::mixer_matrix(*transmissivity, *phase);
            let (ri, rj) = u.rows_mut_pair(i - 1, j - 1);
            for (x, y) in ri.iter_mut().zip(rj.iter_mut()) {
                let (xi, yj) = (*x, *y);
                *x = a * xi + b * yj;
                *y = c * xi + d * yj;
            }
        }
    }
}

/// Product of the layer unitaries (last layer leftmost) and the input permutation.
pub fn circuit_to_unitary<T: Real>(c: &Circuit<T>) -> Result<ComplexMatrix<T>> {
    c.validate()?;
    let mut u = c.permutation_matrix();
    for layer in &c.layers {
        apply_layer(&mut u, layer);
    }
    Ok(u)
}

/// `I_s`: the input permutation followed by the first `s` layers.
pub fn partial_circuit<T: Real>(c: &Circuit<T>, s: usize) -> Result<Circuit<T>> {
    if s == 0 || s > c.layers.len() {
        return Err(Error::Input(format!(
            "partial depth {s} outside 1..={}",
            c.layers.len()
        )));
    }
    Ok(Circuit {
        modes: c.modes,
        input_permutation: c.input_permutation.clone(),
        layers: c.layers[..s].to_vec(),
    })
}

/// `m × m` Fourier matrix, entries `m^{-1/2} e^{2πi·lq/m}`.
pub fn dft_matrix<T: Real>(m: usize) -> ComplexMatrix<T> {
    let norm = T::one() / T::lit(m as f64).sqrt();
    ComplexMatrix::from_fn(m, m, |l, q| {
        // reduce lq mod m in integers so large products keep full precision
        let k = (l * q) % m;
        Complex::from_polar(norm, T::TAU() * T::lit(k as f64) / T::lit(m as f64))
    })
}

fn bit_reverse(x: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        x.reverse_bits() >> (usize::BITS - bits)
    }
}

/// Fast-QFT circuit on `m = 2^p` modes.
///
/// Decimation in time: the input permutation performs the bit reversal, and
/// layer `s` holds the `m/2` butterflies of span `h = 2^{s−1}`. Butterfly
/// `(e, o = e + h)` with index `k` in its block is a phase `e^{iπ}·e^{2πi·k/2h}`
/// on `o` followed by a balanced mixer with `φ = π/2`, which together give
/// `(a_e ± w·a_o)/√2`, `w = e^{2πi·k/2h}`.
pub fn build_qfft<T: Real>(p: u32) -> Result<Circuit<T>> {
    if p == 0 || p >= usize::BITS - 1 {
        return Err(Error::Input(format!(
            "qFFT exponent {p} must be at least 1"
        )));
    }
    let m = 1usize << p;
    let perm = (0..m).map(|l| bit_reverse(l, p) + 1).collect();
    let half = T::lit(0.5);
    let quarter_turn = T::FRAC_PI_2();
    let mut layers = Vec::with_capacity(p as usize);
    for s in 0..p {
        let h = 1usize << s;
        let mut phases = Vec::with_capacity(m / 2);
        let mut mixers = Vec::with_capacity(m / 2);
        for block in (0..m).step_by(2 * h) {
            for k in 0..h {
                let (e, o) = (block + k + 1, block + k + h + 1);
                let twiddle = T::TAU() * T::lit(k as f64) / T::lit((2 * h) as f64);
                phases.push(CircuitElement::phase(o, wrap_phase(T::PI() + twiddle)));
                mixers.push(CircuitElement::mixer(e, o, half, quarter_turn));
            }
        }
        phases.extend(mixers);
        layers.push(phases);
    }
    Ok(Circuit {
        modes: m,
        input_permutation: Some(perm),
        layers,
    })
}

impl<T> Circuit<T>
where
    T: Real + Serialize + for<'de> Deserialize<'de>,
{
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }
}
