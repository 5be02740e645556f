use std::f64::consts::PI;

use serde::Serialize;

use super::bilaplacian::b_bilaplacian;
use super::first_order::GAMMA_2D;
use super::sufficiency::psi_beta0;
use crate::grid::Grid;
use crate::kernels::Weight;
use crate::Result;

/// One frozen constant with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantEntry {
    pub name: String,
    pub exact: String,
    pub value: f64,
    pub provenance: String,
}

fn entry(name: &str, w: &Weight, provenance: &str) -> ConstantEntry {
    ConstantEntry { name: name.into(), exact: w.to_string(), value: w.value(), provenance: provenance.into() }
}

/// Every dimensional constant used by the planar witnesses.
pub fn constants_ledger() -> Result<Vec<ConstantEntry>> {
    let grid = Grid::new(2, 4.0, 8)?;
    let bi = b_bilaplacian(None, &grid)?;
    let suff = psi_beta0(&grid)?;
    let mut out = vec![
        ConstantEntry {
            name: "c_2".into(),
            exact: "1/(2*pi)".into(),
            value: 1.0 / (2.0 * PI),
            provenance: "normalization of E = c log|x| so that ΔE = δ".into(),
        },
        entry(
            "A_1 (ball average)",
            &Weight::new(crate::Rational::new(1.into(), 4.into()), -1),
            "continuity of ∇φ at |x| = 1",
        ),
        entry("b (ball average)", &Weight::over_pi(1, 1), "b = 2nA₁ = 1/|B|"),
        ConstantEntry {
            name: "gamma_2".into(),
            exact: "1/(2*pi)".into(),
            value: GAMMA_2D,
            provenance: "|ξ| = Σ_k (ξ_k/|ξ|) ξ_k against the symbols −2πi ξ_k/|ξ| of x_k/|x|³".into(),
        },
    ];
    for (k, a) in bi.a.iter().enumerate() {
        out.push(entry(
            &format!("A_{k} (bilaplacian)"),
            a,
            "exact 4×4 solve gluing φ to |z|² log|z|/8π up to third order",
        ));
    }
    out.push(entry("alpha", &bi.alpha, "Δ²φ inside B"));
    out.push(entry("beta", &bi.beta, "Δ²φ inside B"));
    out.push(entry("c_xy", &bi.c_xy, "(∂₁∂₂Δ + P₄(∂))φ inside B; independent of harmonic P₄"));
    out.push(entry("psi scale", &suff.scale, "FT(xyχ_B) = −2π uv G₃ and FT((1−|z|²)²χ_B) = 16π G₃"));
    out.push(entry("beta0 constant term", &suff.beta0_coeffs[0], "−(1/π)Δψ inside B"));
    out.push(entry("beta0 |z|² term", &suff.beta0_coeffs[1], "−(1/π)Δψ inside B"));
    Ok(out)
}
