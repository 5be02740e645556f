use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::grid::{io::write_binary, GridField};
use crate::special::{bessel_g, quad};
use crate::{Error, Result};

/// `G_m(r) = J_m(r)/r^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BesselG {
    order: u32,
}

impl BesselG {
    pub fn new(order: u32) -> Result<Self> {
        if order > crate::special::G_MAX_ORDER {
            return Err(Error::OutOfRange(format!("G_m order {order}")));
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        bessel_g(self.order, r)
    }
}

/// Symbolic description of a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClosedForm {
    /// `Σ_j coeffs[j] |x|^{2j}` on the closed unit disc, zero outside.
    BallPolynomial { coeffs: Vec<f64> },
    /// `(1/πx) log|(1+x)/(1−x)|`.
    FirstOrder1d,
    /// `γ Σ_k R_k(∂_k φ)` realized spectrally.
    FirstOrder2d { gamma: f64 },
    /// `U⁻¹ β₀`.
    InverseImage { lambda: f64 },
}

impl ClosedForm {
    /// Exact `∫ b` and `∫ |b|` where the closed form allows it.
    fn integrals(&self) -> Option<(f64, f64)> {
        match self {
            Self::BallPolynomial { coeffs } => {
                let integral = PI * coeffs.iter().enumerate().map(|(j, a)| a / (j as f64 + 1.0)).sum::<f64>();
                let abs = |r: f64| {
                    let s = r * r;
                    2.0 * PI * r * coeffs.iter().rev().fold(0.0, |acc, a| acc * s + a).abs()
                };
                // Split at the roots of the radial polynomial for the tanh-sinh rule.
                let mut cuts = vec![0.0, 1.0];
                for k in 1..64 {
                    let (a, b) = ((k - 1) as f64 / 64.0, k as f64 / 64.0);
                    let p = |r: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * r * r + c);
                    if p(a) * p(b) < 0.0 {
                        cuts.push(0.5 * (a + b));
                    }
                }
                cuts.sort_by(f64::total_cmp);
                let l1: f64 =
                    cuts.windows(2).map(|w| quad::integrate(&abs, w[0], w[1], 1e-13).unwrap_or(f64::NAN)).sum();
                Some((integral, l1))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub bounded: bool,
    pub compactly_supported: bool,
    pub bmo: bool,
    pub zero_mean: bool,
}

/// A witness `b` with samples and verified metadata.
#[derive(Clone, Debug)]
pub struct WitnessFunction {
    pub closed_form: Option<ClosedForm>,
    pub samples: GridField<f64>,
    pub support_radius: Option<f64>,
    pub decay_exponent: Option<f64>,
    pub flags: Flags,
    /// Grid BMO norm, recorded when the `bmo` flag is claimed.
    pub bmo_value: Option<f64>,
}

#[derive(Serialize)]
struct Header<'a> {
    closed_form: &'a Option<ClosedForm>,
    support_radius: Option<f64>,
    decay_exponent: Option<f64>,
    flags: Flags,
    bmo_value: Option<f64>,
    dim: usize,
    side_length: f64,
    resolution: usize,
}

impl WitnessFunction {
    /// Builds the witness and checks every claimed flag; an unverified flag is an error.
    pub fn verified(
        closed_form: Option<ClosedForm>,
        samples: GridField<f64>,
        support_radius: Option<f64>,
        decay_exponent: Option<f64>,
        flags: Flags,
    ) -> Result<Self> {
        if flags.bounded && !samples.sup_norm().is_finite() {
            return Err(Error::FlagNotVerified { flag: "bounded", detail: "non-finite samples".into() });
        }
        if flags.compactly_supported {
            let r = support_radius.ok_or(Error::FlagNotVerified {
                flag: "compactly_supported",
                detail: "no support radius given".into(),
            })?;
            let grid = *samples.grid();
            for (i, v) in samples.values().iter().enumerate() {
                let p = grid.point(i);
                if (p[0] * p[0] + p[1] * p[1]).sqrt() > r && v.abs() > 1e-12 {
                    return Err(Error::FlagNotVerified {
                        flag: "compactly_supported",
                        detail: format!("value {v:e} at node {i} outside radius {r}"),
                    });
                }
            }
        }
        if flags.zero_mean {
            let (integral, l1) = match closed_form.as_ref().and_then(ClosedForm::integrals) {
                Some(v) => v,
                None => (samples.integral(), samples.l1_norm()),
            };
            if !(integral.abs() <= 1e-8 * l1) {
                return Err(Error::FlagNotVerified {
                    flag: "zero_mean",
                    detail: format!("∫ = {integral:e}, ‖·‖₁ = {l1:e}"),
                });
            }
        }
        let bmo_value = if flags.bmo {
            let v = super::bmo_norm(&samples);
            if !v.is_finite() {
                return Err(Error::FlagNotVerified { flag: "bmo", detail: "non-finite oscillation".into() });
            }
            Some(v)
        } else {
            None
        };
        Ok(Self { closed_form, samples, support_radius, decay_exponent, flags, bmo_value })
    }

    /// Writes a JSON header line followed by the field in the binary layout.
    pub fn dump<W: Write>(&self, mut out: W) -> Result<()> {
        let g = self.samples.grid();
        let header = Header {
            closed_form: &self.closed_form,
            support_radius: self.support_radius,
            decay_exponent: self.decay_exponent,
            flags: self.flags,
            bmo_value: self.bmo_value,
            dim: g.dim(),
            side_length: g.side_length(),
            resolution: g.resolution(),
        };
        let text = serde_json::to_string(&header).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{text}")?;
        write_binary(&self.samples, out)
    }
}

/// Samples `p(|x|²) χ_B(x)` with the closed ball.
pub fn sample_ball_polynomial(grid: &crate::grid::Grid<f64>, coeffs: &[f64]) -> GridField<f64> {
    GridField::from_fn(*grid, |x| {
        let s = x[0] * x[0] + x[1] * x[1];
        if s <= 1.0 {
            coeffs.iter().rev().fold(0.0, |acc, a| acc * s + a)
        } else {
            0.0
        }
    })
    .expect("finite samples")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn flags_are_checked() {
        let g = Grid::new(2, 8.0_f64, 64).unwrap();
        let b = sample_ball_polynomial(&g, &[1.0]);
        let flags = Flags { bounded: true, compactly_supported: true, ..Flags::default() };
        assert!(WitnessFunction::verified(None, b.clone(), Some(1.0), None, flags).is_ok());
        assert!(matches!(
            WitnessFunction::verified(None, b.clone(), Some(0.5), None, flags),
            Err(Error::FlagNotVerified { flag: "compactly_supported", .. })
        ));
        let zm = Flags { zero_mean: true, ..Flags::default() };
        let cf = ClosedForm::BallPolynomial { coeffs: vec![1.0] };
        assert!(matches!(
            WitnessFunction::verified(Some(cf), b, None, None, zm),
            Err(Error::FlagNotVerified { flag: "zero_mean", .. })
        ));
        let cf = ClosedForm::BallPolynomial { coeffs: vec![3.0, -6.0] };
        let b0 = sample_ball_polynomial(&g, &[3.0, -6.0]);
        assert!(WitnessFunction::verified(Some(cf), b0, None, None, zm).is_ok());
    }

    #[test]
    fn dump_has_header_and_payload() {
        let g = Grid::new(2, 8.0_f64, 16).unwrap();
        let w = WitnessFunction::verified(None, GridField::zeros(g), None, None, Flags::default()).unwrap();
        let mut buf = Vec::new();
        w.dump(&mut buf).unwrap();
        let nl = buf.iter().position(|b| *b == b'\n').unwrap();
        assert!(std::str::from_utf8(&buf[..nl]).unwrap().contains("\"resolution\":16"));
        assert_eq!(buf.len() - nl - 1, 24 + 8 * 256);
    }
}
