use super::LinkageKind;
use crate::error::{Error, Result};

/// Coefficients of `ℓ(A∪B, C) = α_A ℓ(A,C) + α_B ℓ(B,C) + β ℓ(A,B) + γ |ℓ(A,C) − ℓ(B,C)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LwCoefficients {
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn coefficients(kind: LinkageKind, (a, b, c): (usize, usize, usize)) -> LwCoefficients {
    let (a, b, c) = (a as f64, b as f64, c as f64);
    let lw = |alpha_a, alpha_b, beta, gamma| LwCoefficients {
        alpha_a,
        alpha_b,
        beta,
        gamma,
    };
    match kind {
        LinkageKind::Single => lw(0.5, 0.5, 0.0, -0.5),
        LinkageKind::Complete => lw(0.5, 0.5, 0.0, 0.5),
        LinkageKind::Average => lw(a / (a + b), b / (a + b), 0.0, 0.0),
        LinkageKind::Ward => {
            let s = a + b + c;
            lw((a + c) / s, (b + c) / s, -c / s, 0.0)
        }
        LinkageKind::Minimax => unreachable!("minimax has no recurrence"),
    }
}

fn validate(kind: LinkageKind, sizes: (usize, usize, usize)) -> Result<()> {
    if !kind.has_recurrence() {
        return Err(Error::UnsupportedKind(kind.to_string()));
    }
    if sizes.0 == 0 || sizes.1 == 0 || sizes.2 == 0 {
        return Err(Error::Config(format!(
            "cluster sizes must be positive, got {sizes:?}"
        )));
    }
    Ok(())
}

/// Recurrence coefficients for merging `A` (size `sizes.0`) and `B`
/// (size `sizes.1`) as seen from `C` (size `sizes.2`).
pub fn lance_williams_coefficients(
    kind: LinkageKind,
    sizes: (usize, usize, usize),
) -> Result<LwCoefficients> {
    validate(kind, sizes)?;
    Ok(coefficients(kind, sizes))
}

/// `ℓ(A∪B, C)` from `ℓ(A,C)`, `ℓ(B,C)` and `ℓ(A,B)`.
pub fn lance_williams_update(
    kind: LinkageKind,
    sizes: (usize, usize, usize),
    l_ac: f64,
    l_bc: f64,
    l_ab: f64,
) -> Result<f64> {
    validate(kind, sizes)?;
    Ok(update_unchecked(kind, sizes, l_ac, l_bc, l_ab))
}

pub(crate) fn update_unchecked(
    kind: LinkageKind,
    sizes: (usize, usize, usize),
    l_ac: f64,
    l_bc: f64,
    l_ab: f64,
) -> f64 {
    // Exact for the two order-statistic kinds.
    match kind {
        LinkageKind::Single => return l_ac.min(l_bc),
        LinkageKind::Complete => return l_ac.max(l_bc),
        _ => {}
    }
    let k = coefficients(kind, sizes);
    let v = k.alpha_a * l_ac + k.alpha_b * l_bc + k.beta * l_ab + k.gamma * (l_ac - l_bc).abs();
    v.max(0.0)
}
