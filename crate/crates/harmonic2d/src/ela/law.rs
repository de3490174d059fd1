use super::{Ela4Tensor, Ela5Tensor, Ela6Tensor};
use crate::embeddings::{projector, ProjectorTag};
use crate::error::{Error, Result};
use crate::pattern::IndexSymmetry;
use crate::scalar::Scalar;
use crate::state::{Basis, Formulation, T3Family};
use crate::tensor::Tensor;

fn check_formulations<T: Scalar>(m: &Ela5Tensor<T>, a: &Ela6Tensor<T>) -> Result<Formulation> {
    if m.formulation() != a.formulation() {
        return Err(Error::InvalidArgument(format!(
            "M is {} but A is {}",
            m.formulation().code(),
            a.formulation().code()
        )));
    }
    Ok(m.formulation())
}

fn states<T: Scalar>(
    f: Formulation,
    eps: &Tensor<T>,
    eta: &Tensor<T>,
    tol: f64,
) -> Result<(Tensor<T>, Tensor<T>)> {
    Ok((
        IndexSymmetry::t2().validate(eps, tol)?,
        IndexSymmetry::t3(f).validate(eta, tol)?,
    ))
}

/// `σ = C : ε + M ⋮ η`, `τ = Mᵀ : ε + A ⋮ η`.
pub fn apply_law<T: Scalar>(
    c: &Ela4Tensor<T>,
    m: &Ela5Tensor<T>,
    a: &Ela6Tensor<T>,
    eps: &Tensor<T>,
    eta: &Tensor<T>,
    tol: f64,
) -> Result<(Tensor<T>, Tensor<T>)> {
    let f = check_formulations(m, a)?;
    let (eps, eta) = states(f, eps, eta, tol)?;
    let sigma = &c.tensor().contract(&eps, 2)? + &m.tensor().contract(&eta, 3)?;
    let tau = &m.transpose().contract(&eps, 2)? + &a.tensor().contract(&eta, 3)?;
    Ok((sigma, tau))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergySplit<T> {
    /// `½ ε:C:ε + ε:M⋮η + ½ η⋮A⋮η`.
    pub total: T,
    /// Contributions of each pair of harmonic state parts; they sum to `total`.
    pub blocks: Vec<(String, T)>,
}

/// Splits the energy density along the harmonic parts of `ε` and `η`.
pub fn energy_split<T: Scalar>(
    c: &Ela4Tensor<T>,
    m: &Ela5Tensor<T>,
    a: &Ela6Tensor<T>,
    eps: &Tensor<T>,
    eta: &Tensor<T>,
    basis: Basis,
    tol: f64,
) -> Result<EnergySplit<T>> {
    let f = check_formulations(m, a)?;
    let (eps, eta) = states(f, eps, eta, tol)?;
    let half = T::frac(1, 2);

    let eps_parts: Vec<(String, Tensor<T>)> = [("2", ProjectorTag::P22), ("0", ProjectorTag::P20)]
        .iter()
        .map(|&(l, p)| {
            (
                l.to_string(),
                projector::<T>(p).contract(&eps, 2).expect("order 2"),
            )
        })
        .collect();
    let family = T3Family::<T>::new(basis, f);
    let [sa, sb] = basis.suffixes();
    let mut eta_parts = vec![("3".to_string(), family.p33().contract(&eta, 3)?)];
    for (e, s) in family.vectors().into_iter().zip([sa, sb]) {
        eta_parts.push((format!("1{s}"), e.projector()?.contract(&eta, 3)?));
    }

    let mut blocks = Vec::new();
    // Diagonal pairs carry the ½; off-diagonal pairs appear twice in the
    // expansion and the two copies agree by major symmetry.
    let quadratic = |blocks: &mut Vec<(String, T)>,
                     name: &str,
                     op: &Tensor<T>,
                     parts: &[(String, Tensor<T>)],
                     k: usize| {
        for (i, (li, xi)) in parts.iter().enumerate() {
            let image = op.contract(xi, k).expect("matching orders");
            for (j, (lj, xj)) in parts.iter().enumerate().skip(i) {
                let w = if i == j { half } else { T::one() };
                blocks.push((format!("{name}[{li},{lj}]"), xj.dot(&image) * w));
            }
        }
    };
    quadratic(&mut blocks, "C", c.tensor(), &eps_parts, 2);
    for (li, xi) in &eps_parts {
        let left = xi.contract(m.tensor(), 2)?;
        for (lj, xj) in &eta_parts {
            blocks.push((format!("M[{li},{lj}]"), left.dot(xj)));
        }
    }
    quadratic(&mut blocks, "A", a.tensor(), &eta_parts, 3);

    let total = c.tensor().contract(&eps, 2)?.dot(&eps) * half
        + m.tensor().contract(&eta, 3)?.dot(&eps)
        + a.tensor().contract(&eta, 3)?.dot(&eta) * half;
    Ok(EnergySplit { total, blocks })
}
