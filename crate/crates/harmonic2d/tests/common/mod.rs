#![allow(dead_code)]

use harmonic2d::{
    fourier_extract, ibd_ela4, ibd_ela5, ibd_ela6, isotypic_part, reconstruct_ela4,
    reconstruct_ela5, reconstruct_ela6, Basis, Ela4Harmonics, Ela4Tensor, Ela5Harmonics,
    Ela5Tensor, Ela6Harmonics, Ela6Tensor, HarmonicBundle, HarmonicComponent, Tensor,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ORACLE_SAMPLES: usize = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ela4_block(t: &Tensor<f64>, idx: usize) -> Tensor<f64> {
    let b = ibd_ela4(&Ela4Tensor::symmetrize(t).unwrap());
    match idx {
        0 | 2 => b.c22,
        1 => b.h20.to_tensor(),
        _ => b.a00.to_tensor(),
    }
}

pub fn ela5_block(t: &Tensor<f64>, idx: usize, h: &Ela5Harmonics<f64>) -> Tensor<f64> {
    let b = ibd_ela5(&Ela5Tensor::symmetrize(t, h.formulation).unwrap(), h.basis);
    match idx {
        0 | 4 => b.m23,
        1 | 5 => b.m21a,
        2 | 6 => b.m21b,
        3 => b.m03,
        7 => b.mu01a,
        _ => b.mu01b,
    }
}

pub fn ela6_block(t: &Tensor<f64>, idx: usize, h: &Ela6Harmonics<f64>) -> Tensor<f64> {
    let b = ibd_ela6(&Ela6Tensor::symmetrize(t, h.formulation).unwrap(), h.basis);
    match idx {
        0 | 8 => b.a33,
        1 | 3 => b.a31a,
        2 | 4 => b.a31b,
        6 | 9 => b.a1a1a,
        7 | 10 => b.a1b1b,
        _ => b.a1a1b,
    }
}

/// Coordinates of component `idx` recovered by rotation averaging of its IBD
/// block. Within a block every harmonic type occurs once, so the `K^k`
/// content of the block determines the component through the response of
/// the block to unit components.
pub fn oracle_component<B: HarmonicBundle<f64>>(
    h: &B,
    t: &Tensor<f64>,
    idx: usize,
    rebuild: impl Fn(&B) -> Tensor<f64>,
    block: impl Fn(&Tensor<f64>, usize) -> Tensor<f64>,
) -> HarmonicComponent<f64> {
    let entries = h.entries();
    let k = entries[idx].1.k();
    let zeros: Vec<HarmonicComponent<f64>> = entries
        .iter()
        .map(|(_, c)| HarmonicComponent::zero(c.k()))
        .collect();
    let unit_block = |j: usize| {
        let mut comps = zeros.clone();
        let mut coords = [0.0; 2];
        coords[j] = 1.0;
        comps[idx] =
            HarmonicComponent::new(k, &coords[..HarmonicComponent::<f64>::dim_of(k)]).unwrap();
        block(&rebuild(&h.with_components(&comps)), idx)
    };
    let b = block(t, idx);
    if k <= 0 {
        let u = unit_block(0);
        let iso = isotypic_part(&b, k, ORACLE_SAMPLES).unwrap();
        return HarmonicComponent::scalar(k, iso.dot(&u) / u.dot(&u));
    }
    let f = fourier_extract(&b, k, ORACLE_SAMPLES).unwrap();
    let u1 = fourier_extract(&unit_block(0), k, ORACLE_SAMPLES).unwrap();
    let u2 = fourier_extract(&unit_block(1), k, ORACLE_SAMPLES).unwrap();
    let (a, c) = (u1.coords()[0], u1.coords()[1]);
    let (bb, d) = (u2.coords()[0], u2.coords()[1]);
    let det = a * d - bb * c;
    assert!(det.abs() > 1e-8, "block entry 1…1 blind to component {idx}");
    let (f1, f2) = (f.coords()[0], f.coords()[1]);
    HarmonicComponent::pair(k, (d * f1 - bb * f2) / det, (a * f2 - c * f1) / det)
}

/// Largest coordinate mismatch against the oracle, relative to the bundle norm.
pub fn oracle_residual<B: HarmonicBundle<f64>>(
    h: &B,
    t: &Tensor<f64>,
    rebuild: impl Fn(&B) -> Tensor<f64> + Copy,
    block: impl Fn(&Tensor<f64>, usize) -> Tensor<f64> + Copy,
) -> f64 {
    let scale = h.coords_norm_sq().sqrt().max(f64::MIN_POSITIVE);
    h.entries()
        .iter()
        .enumerate()
        .map(|(i, (_, c))| {
            let o = oracle_component(h, t, i, rebuild, block);
            o.coords()
                .iter()
                .zip(c.coords())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
                / scale
        })
        .fold(0.0, f64::max)
}

pub fn rebuild4(h: &Ela4Harmonics<f64>) -> Tensor<f64> {
    reconstruct_ela4(h).into_tensor()
}

pub fn rebuild5(h: &Ela5Harmonics<f64>) -> Tensor<f64> {
    reconstruct_ela5(h).into_tensor()
}

pub fn rebuild6(h: &Ela6Harmonics<f64>) -> Tensor<f64> {
    reconstruct_ela6(h).into_tensor()
}

pub const BASES: [Basis; 2] = [Basis::StretchRotation, Basis::DeviatoricHydrostatic];
