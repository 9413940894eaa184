use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Amplitudes whose norm may deviate from 1 by at most this much before the
/// evolution and decomposition entry points reject a state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// One complex amplitude per arc of a graph, `⟨uv|ψ⟩` stored at the arc id
/// of `(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState {
    amps: Vec<Complex64>,
    graph_key: u64,
}

impl ArcState {
    pub fn zeros(g: &Graph) -> Self {
        ArcState {
            amps: vec![Complex64::new(0.0, 0.0); g.arc_count()],
            graph_key: g.key(),
        }
    }

    pub fn from_amplitudes(g: &Graph, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != g.arc_count() {
            return Err(Error::arg(format!(
                "state has {} amplitudes, graph has {} arcs",
                amps.len(),
                g.arc_count()
            )));
        }
        Ok(ArcState {
            amps,
            graph_key: g.key(),
        })
    }

    pub fn from_real(g: &Graph, values: &[f64]) -> Result<Self> {
        Self::from_amplitudes(g, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn graph_key(&self) -> u64 {
        self.graph_key
    }

    pub fn is_bound_to(&self, g: &Graph) -> bool {
        self.graph_key == g.key() && self.amps.len() == g.arc_count()
    }

    /// Amplitude on arc `(u, v)`, if it is an arc.
    pub fn amplitude(&self, g: &Graph, u: usize, v: usize) -> Option<Complex64> {
        g.arc(u, v).map(|a| self.amps[a])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Scales to unit norm; fails on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(self * (1.0 / norm))
    }

    /// Gate used by evolution and decomposition: a state within
    /// [`NORM_TOLERANCE`] of unit norm is renormalized, anything else is
    /// rejected.
    pub fn require_normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(self * (1.0 / norm))
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &ArcState) -> Result<Complex64> {
        if self.graph_key != other.graph_key || self.amps.len() != other.amps.len() {
            return Err(Error::GraphMismatch);
        }
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &ArcState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &ArcState) -> f64 {
        assert_eq!(self.amps.len(), other.amps.len(), "state length mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.amps.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub(crate) fn with_amplitudes(&self, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), self.amps.len());
        ArcState {
            amps,
            graph_key: self.graph_key,
        }
    }

    /// CSV with header `arc_id,re,im`, one row per arc.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("arc_id,re,im\n");
        for (a, z) in self.amps.iter().enumerate() {
            let _ = writeln!(out, "{a},{:e},{:e}", z.re, z.im);
        }
        out
    }

    /// Reads the CSV written by [`ArcState::to_csv`]. Arcs missing from the
    /// file are zero; `im` may be omitted.
    pub fn from_csv(g: &Graph, text: &str) -> Result<Self> {
        let mut state = ArcState::zeros(g);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || (idx == 0 && line.starts_with("arc")) {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(err(format!("expected arc_id,re[,im], got {line:?}")));
            }
            let arc: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("invalid arc id {:?}", fields[0])))?;
            if arc >= g.arc_count() {
                return Err(err(format!(
                    "arc id {arc} out of range for {} arcs",
                    g.arc_count()
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| err(format!("invalid number {s:?}")))
            };
            let re = parse(fields[1])?;
            let im = fields.get(2).map(|s| parse(s)).transpose()?.unwrap_or(0.0);
            state.amps[arc] = Complex64::new(re, im);
        }
        Ok(state)
    }
}

impl Serialize for ArcState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.amps.len()))?;
        for z in &self.amps {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

fn zip_with(a: &ArcState, b: &ArcState, f: impl Fn(Complex64, Complex64) -> Complex64) -> ArcState {
    assert_eq!(a.graph_key, b.graph_key, "states bound to different graphs");
    a.with_amplitudes(a.amps.iter().zip(&b.amps).map(|(x, y)| f(*x, *y)).collect())
}

impl Add for &ArcState {
    type Output = ArcState;
    fn add(self, rhs: &ArcState) -> ArcState {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ArcState {
    type Output = ArcState;
    fn sub(self, rhs: &ArcState) -> ArcState {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &ArcState {
    type Output = ArcState;
    fn neg(self) -> ArcState {
        self.with_amplitudes(self.amps.iter().map(|z| -z).collect())
    }
}

impl Mul<f64> for &ArcState {
    type Output = ArcState;
    fn mul(self, rhs: f64) -> ArcState {
        self.with_amplitudes(self.amps.iter().map(|z| z * rhs).collect())
    }
}

impl Mul<Complex64> for &ArcState {
    type Output = ArcState;
    fn mul(self, rhs: Complex64) -> ArcState {
        self.with_amplitudes(self.amps.iter().map(|z| z * rhs).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_preserves_bits() {
        let g = Graph::cycle(5).unwrap();
        let amps = (0..g.arc_count())
            .map(|a| Complex64::new((a as f64).sin() / 3.0, -(a as f64) * 1e-7))
            .collect();
        let s = ArcState::from_amplitudes(&g, amps).unwrap();
        assert_eq!(ArcState::from_csv(&g, &s.to_csv()).unwrap(), s);
    }

    #[test]
    fn csv_rejects_out_of_range_arc() {
        let g = Graph::cycle(4).unwrap();
        assert!(ArcState::from_csv(&g, "arc_id,re,im\n8,1,0\n").is_err());
    }

    #[test]
    fn normalization_gate() {
        let g = Graph::cycle(4).unwrap();
        let mut s = ArcState::zeros(&g);
        s.amplitudes_mut()[0] = Complex64::new(1.0 + 5e-10, 0.0);
        let fixed = s.require_normalized().unwrap();
        assert_eq!(fixed.norm(), 1.0);
        s.amplitudes_mut()[0] = Complex64::new(1.1, 0.0);
        assert!(matches!(
            s.require_normalized(),
            Err(Error::NotNormalized { .. })
        ));
        assert!(ArcState::zeros(&g).normalized().is_err());
    }

    #[test]
    fn inner_product_checks_binding() {
        let a = ArcState::zeros(&Graph::cycle(4).unwrap());
        let b = ArcState::zeros(&Graph::complete(3).unwrap());
        assert!(matches!(a.inner(&b), Err(Error::GraphMismatch)));
    }
}
