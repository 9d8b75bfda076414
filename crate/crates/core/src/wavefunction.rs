//! Piecewise analytic wavefunctions.
//!
//! A [`PiecewiseWavefunction`] covers the real line with `breakpoints.len() + 1`
//! pieces: piece 0 lives on `(-inf, b_0)`, piece `i` on `[b_{i-1}, b_i)`, and the
//! last piece on `[b_last, inf)`. Each piece is a two-term analytic form
//! written in a local coordinate `u = x - origin`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceForm {
    /// `c0 * e^{kappa u}`
    GrowingExp { kappa: f64 },
    /// `c0 * e^{-kappa u}`
    DecayingExp { kappa: f64 },
    /// `c0 * e^{kappa u} + c1 * e^{-kappa u}`
    ExpPair { kappa: f64 },
    /// `c0 * e^{i k u} + c1 * e^{-i k u}`
    PlaneWavePair { k: f64 },
    /// `c0`
    Constant,
    /// `c0 + c1 * u`
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub form: PieceForm,
    pub origin: f64,
    pub coeffs: (Complex64, Complex64),
}

impl Piece {
    pub fn new(form: PieceForm, origin: f64, c0: Complex64, c1: Complex64) -> Self {
        Self { form, origin, coeffs: (c0, c1) }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x - self.origin;
        let (c0, c1) = self.coeffs;
        match self.form {
            PieceForm::GrowingExp { kappa } => c0 * (kappa * u).exp(),
            PieceForm::DecayingExp { kappa } => c0 * (-kappa * u).exp(),
            PieceForm::ExpPair { kappa } => c0 * (kappa * u).exp() + c1 * (-kappa * u).exp(),
            PieceForm::PlaneWavePair { k } => {
                let phase = Complex64::new(0.0, k * u).exp();
                c0 * phase + c1 / phase
            }
            PieceForm::Constant => c0,
            PieceForm::Linear => c0 + c1 * u,
        }
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        let u = x - self.origin;
        let (c0, c1) = self.coeffs;
        match self.form {
            PieceForm::GrowingExp { kappa } => c0 * kappa * (kappa * u).exp(),
            PieceForm::DecayingExp { kappa } => -c0 * kappa * (-kappa * u).exp(),
            PieceForm::ExpPair { kappa } => {
                (c0 * (kappa * u).exp() - c1 * (-kappa * u).exp()) * kappa
            }
            PieceForm::PlaneWavePair { k } => {
                let phase = Complex64::new(0.0, k * u).exp();
                (c0 * phase - c1 / phase) * Complex64::new(0.0, k)
            }
            PieceForm::Constant => Complex64::new(0.0, 0.0),
            PieceForm::Linear => c1,
        }
    }

    fn scale(&mut self, factor: Complex64) {
        self.coeffs.0 *= factor;
        self.coeffs.1 *= factor;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseWavefunction {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Piece>,
    pub energy: f64,
}

impl PiecewiseWavefunction {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Piece>, energy: f64) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::Config(format!(
                "{} pieces need {} breakpoints, got {}",
                pieces.len(),
                pieces.len().saturating_sub(1),
                breakpoints.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Config("breakpoints must be non-decreasing".into()));
        }
        Ok(Self { breakpoints, pieces, energy })
    }

    pub fn piece_index(&self, x: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= x)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// Largest relative jump of the value across any breakpoint, measured
    /// against the largest of the two one-sided values.
    pub fn max_continuity_defect(&self) -> f64 {
        let scale = self.peak_estimate().max(f64::MIN_POSITIVE);
        self.breakpoints
            .iter()
            .enumerate()
            .map(|(i, &b)| (self.pieces[i].eval(b) - self.pieces[i + 1].eval(b)).norm() / scale)
            .fold(0.0, f64::max)
    }

    fn peak_estimate(&self) -> f64 {
        let mut peak = 0.0f64;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            peak = peak.max(self.pieces[i].eval(b).norm());
            peak = peak.max(self.pieces[i + 1].eval(b).norm());
        }
        if let (Some(&lo), Some(&hi)) = (self.breakpoints.first(), self.breakpoints.last()) {
            let n = 64;
            for j in 0..=n {
                let x = lo + (hi - lo) * j as f64 / n as f64;
                peak = peak.max(self.eval(x).norm());
            }
        }
        peak
    }

    /// `int |psi|^2 dx` by adaptive Simpson. Finite pieces are integrated
    /// directly; the two tails are truncated where `|psi|^2` has fallen below
    /// `1e-16` of its value at the breakpoint.
    pub fn norm_squared(&self) -> Result<f64> {
        let peak = self.peak_estimate().powi(2).max(f64::MIN_POSITIVE);
        let tol = 1e-12 * peak;
        let mut total = 0.0;
        let mut converged = true;
        for (i, w) in self.breakpoints.windows(2).enumerate() {
            let piece = &self.pieces[i + 1];
            let q = quad::simpson(|x| piece.eval(x).norm_sqr(), w[0], w[1], tol);
            total += q.value;
            converged &= q.converged;
        }
        let first = *self.breakpoints.first().unwrap_or(&0.0);
        let last = *self.breakpoints.last().unwrap_or(&0.0);
        let (head, tail) = (&self.pieces[0], self.pieces.last().expect("at least one piece"));
        let left = tail_extent(head)?;
        let right = tail_extent(tail)?;
        let ql = quad::simpson(|x| head.eval(x).norm_sqr(), first - left, first, tol);
        let qr = quad::simpson(|x| tail.eval(x).norm_sqr(), last, last + right, tol);
        total += ql.value + qr.value;
        converged &= ql.converged && qr.converged;
        if !converged {
            return Err(Error::Accuracy { what: "wavefunction norm quadrature".into(), achieved: total });
        }
        Ok(total)
    }

    /// Rescales all coefficients so that the norm is one.
    pub fn normalize(&mut self) -> Result<f64> {
        let n2 = self.norm_squared()?;
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::Accuracy { what: "wavefunction norm is not positive".into(), achieved: n2 });
        }
        let factor = Complex64::new(1.0 / n2.sqrt(), 0.0);
        for p in &mut self.pieces {
            p.scale(factor);
        }
        Ok(n2)
    }

    pub fn scale(&mut self, factor: Complex64) {
        for p in &mut self.pieces {
            p.scale(factor);
        }
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<(f64, Complex64)> {
        grid.iter().map(|&x| (x, self.eval(x))).collect()
    }
}

// Length after which a decaying tail has lost 16 orders of magnitude in |psi|^2.
fn tail_extent(piece: &Piece) -> Result<f64> {
    let kappa = match piece.form {
        PieceForm::GrowingExp { kappa } | PieceForm::DecayingExp { kappa } => kappa,
        _ => {
            return Err(Error::Domain("outer pieces must be single decaying exponentials".into()));
        }
    };
    if !(kappa > 0.0) {
        return Err(Error::Domain("tail decay constant must be positive".into()));
    }
    Ok(16.0 * std::f64::consts::LN_10 / (2.0 * kappa))
}
