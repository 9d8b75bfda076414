use std::ops::Mul;

use num_complex::Complex64;

const UPPER: f64 = 1e100;
const LOWER: f64 = 1e-100;

/// A 2x2 complex matrix `[[t11, t12], [t21, t22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix2 {
    pub m: [[Complex64; 2]; 2],
}

impl TransferMatrix2 {
    pub const IDENTITY: Self = Self {
        m: [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]],
    };

    pub fn new(t11: Complex64, t12: Complex64, t21: Complex64, t22: Complex64) -> Self {
        Self { m: [[t11, t12], [t21, t22]] }
    }

    pub fn real(t11: f64, t12: f64, t21: f64, t22: f64) -> Self {
        Self::new(t11.into(), t12.into(), t21.into(), t22.into())
    }

    pub fn t11(&self) -> Complex64 {
        self.m[0][0]
    }
    pub fn t12(&self) -> Complex64 {
        self.m[0][1]
    }
    pub fn t21(&self) -> Complex64 {
        self.m[1][0]
    }
    pub fn t22(&self) -> Complex64 {
        self.m[1][1]
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn determinant(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (self.m[0][0] * v.0 + self.m[0][1] * v.1, self.m[1][0] * v.0 + self.m[1][1] * v.1)
    }

    fn scaled(&self, f: f64) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z *= f);
        out
    }
}

impl Mul for TransferMatrix2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self {
            m: [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ],
        }
    }
}

/// A matrix stored as `mantissa * 2^log2_scale`, renormalized by powers of
/// two whenever an entry leaves `[1e-100, 1e100]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTransfer {
    pub mantissa: TransferMatrix2,
    pub log2_scale: f64,
    /// Number of elementary factors multiplied into this product.
    pub factors: usize,
    /// Largest mantissa entry observed after any renormalization.
    pub peak_mantissa: f64,
}

impl ScaledTransfer {
    pub fn identity() -> Self {
        Self { mantissa: TransferMatrix2::IDENTITY, log2_scale: 0.0, factors: 0, peak_mantissa: 1.0 }
    }

    /// Wraps one elementary factor.
    pub fn factor(mantissa: TransferMatrix2, log2_scale: f64) -> Self {
        let mut s = Self { mantissa, log2_scale, factors: 1, peak_mantissa: 0.0 };
        s.renormalize();
        s
    }

    pub fn renormalize(&mut self) {
        let peak = self.mantissa.max_abs();
        if peak > UPPER || (peak < LOWER && peak > 0.0) {
            let e = peak.log2().floor() as i32;
            self.mantissa = self.mantissa.scaled(pow2(-e));
            self.log2_scale += e as f64;
        }
        self.peak_mantissa = self.peak_mantissa.max(self.mantissa.max_abs());
    }

    /// Natural log of `|entry|`, including the scale.
    pub fn ln_abs(&self, row: usize, col: usize) -> f64 {
        self.mantissa.m[row][col].norm().ln() + self.log2_scale * std::f64::consts::LN_2
    }

    /// The unscaled matrix; entries may overflow to infinity.
    pub fn to_matrix(&self) -> TransferMatrix2 {
        let f = (self.log2_scale * std::f64::consts::LN_2).exp();
        self.mantissa.scaled(f)
    }
}

impl Mul for ScaledTransfer {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self {
            mantissa: self.mantissa * rhs.mantissa,
            log2_scale: self.log2_scale + rhs.log2_scale,
            factors: self.factors + rhs.factors,
            peak_mantissa: self.peak_mantissa.max(rhs.peak_mantissa),
        };
        out.renormalize();
        out
    }
}

pub(crate) fn pow2(e: i32) -> f64 {
    if e < -1022 {
        f64::powi(2.0, -1022) * f64::powi(2.0, e + 1022)
    } else {
        f64::powi(2.0, e)
    }
}
