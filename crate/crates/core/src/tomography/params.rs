use serde::Serialize;

use crate::circuit::{wrap_phase, Circuit, CircuitElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Transmissivity,
    Phase,
}

/// Position of an element inside a circuit: 0-based layer, 0-based slot in the layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementId {
    pub layer: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Param {
    pub element: ElementId,
    pub kind: ParamKind,
    pub value: f64,
}

/// Free parameters of a circuit template: the transmissivity and phase of
/// every mixer and the phase of every phase shifter, in layer order.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ParamVector(pub Vec<Param>);

impl ParamVector {
    /// Reads the current parameter values out of `template`.
    pub fn from_circuit(template: &Circuit<f64>) -> Self {
        let mut params = Vec::new();
        for (layer, elements) in template.layers.iter().enumerate() {
            for (index, el) in elements.iter().enumerate() {
                let element = ElementId { layer, index };
                match el {
                    CircuitElement::Mixer {
                        transmissivity,
                        phase,
                        ..
                    } => {
                        params.push(Param {
                            element,
                            kind: ParamKind::Transmissivity,
                            value: *transmissivity,
                        });
                        params.push(Param {
                            element,
                            kind: ParamKind::Phase,
                            value: *phase,
                        });
                    }
                    CircuitElement::Phase { phase, .. } => {
                        params.push(Param {
                            element,
                            kind: ParamKind::Phase,
                            value: *phase,
                        });
                    }
                }
            }
        }
        Self(params)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|p| p.value).collect()
    }

    pub fn kinds(&self) -> Vec<ParamKind> {
        self.0.iter().map(|p| p.kind).collect()
    }

    /// Same layout with new values.
    pub fn with_values(&self, values: &[f64]) -> Self {
        debug_assert_eq!(values.len(), self.0.len());
        Self(
            self.0
                .iter()
                .zip(values)
                .map(|(p, &value)| Param { value, ..p.clone() })
                .collect(),
        )
    }

    /// Clamps transmissivities into `[0, 1]` and wraps phases into `[0, 2π)`.
    pub fn projected(&self) -> Self {
        let values: Vec<f64> = self.0.iter().map(|p| project(p.kind, p.value)).collect();
        self.with_values(&values)
    }

    pub fn check_bounds(&self) -> Result<()> {
        for p in &self.0 {
            let ok = match p.kind {
                ParamKind::Transmissivity => (0.0..=1.0).contains(&p.value),
                ParamKind::Phase => (0.0..std::f64::consts::TAU).contains(&p.value),
            };
            if !ok {
                return Err(Error::Input(format!(
                    "{:?} of element {:?} out of bounds: {}",
                    p.kind, p.element, p.value
                )));
            }
        }
        Ok(())
    }

    /// Writes the parameters into a copy of `template`.
    pub fn apply(&self, template: &Circuit<f64>) -> Result<Circuit<f64>> {
        self.check_bounds()?;
        let layout = Self::from_circuit(template);
        if layout.len() != self.len()
            || layout
                .0
                .iter()
                .zip(&self.0)
                .any(|(a, b)| a.element != b.element || a.kind != b.kind)
        {
            return Err(Error::Input(
                "parameter vector does not match the circuit template".into(),
            ));
        }
        let mut out = template.clone();
        for p in &self.0 {
            let el = &mut out.layers[p.element.layer][p.element.index];
            match (el, p.kind) {
                (CircuitElement::Mixer { transmissivity, .. }, ParamKind::Transmissivity) => {
                    *transmissivity = p.value
                }
                (
                    CircuitElement::Mixer { phase, .. } | CircuitElement::Phase { phase, .. },
                    ParamKind::Phase,
                ) => *phase = p.value,
                _ => unreachable!("layout checked above"),
            }
        }
        Ok(out)
    }
}

pub(crate) fn project(kind: ParamKind, value: f64) -> f64 {
    match kind {
        ParamKind::Transmissivity => value.clamp(0.0, 1.0),
        ParamKind::Phase => wrap_phase(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_qfft;

    #[test]
    fn qfft_layout() {
        let c = build_qfft::<f64>(3).unwrap();
        let p = ParamVector::from_circuit(&c);
        // 12 mixers × (τ, φ) + 12 phase shifters
        assert_eq!(p.len(), 36);
        assert_eq!(p.apply(&c).unwrap(), c);
    }

    #[test]
    fn bounds_and_mismatch() {
        let c = build_qfft::<f64>(1).unwrap();
        let p = ParamVector::from_circuit(&c);
        let mut bad = p.clone();
        bad.0[1].value = 1.5;
        assert!(bad.apply(&c).is_err());
        let mut bad = p.clone();
        bad.0[0].value = -7.0;
        assert!(bad.apply(&c).is_err());
        assert!(bad.projected().apply(&c).is_ok());
        let other = build_qfft::<f64>(2).unwrap();
        assert!(p.apply(&other).is_err());
    }
}
