//! Self-checks of the shipped constants and decompositions, in `f64`.
//!
//! Every check records its residual next to the threshold it was held to.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ela::{
    cghd_ela4, cghd_ela5, cghd_ela6, reconstruct_ela4, reconstruct_ela5, reconstruct_ela6,
    Ela4Tensor, Ela5Tensor, Ela6Tensor, HarmonicBundle,
};
use crate::embeddings::{
    embedding, phi51_components, projector, verify_embedding, EmbeddingTag, ProjectorTag,
};
use crate::error::{Error, Result};
use crate::group::rayleigh;
use crate::harmonic::HarmonicComponent;
use crate::iso::{i4, i6, identity_on, StateSpace};
use crate::sample::{random_ela4, random_ela5, random_ela6, random_element, random_tensor};
use crate::state::{Basis, Formulation};
use crate::tensor::Tensor;

/// Identities that hold exactly in rational arithmetic.
pub const EXACT_TOL: f64 = 1e-13;
/// Embedding identities and isotropy.
pub const EMBEDDING_TOL: f64 = 1e-12;
/// Relative reconstruction error.
pub const ROUNDTRIP_TOL: f64 = 1e-12;
/// Relative singular value cut-off for numerical rank.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Embeddings,
    Projectors,
    Gram,
    Roundtrip,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Embeddings => "embeddings",
            Suite::Projectors => "projectors",
            Suite::Gram => "gram",
            Suite::Roundtrip => "roundtrip",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::Embeddings,
            Suite::Projectors,
            Suite::Gram,
            Suite::Roundtrip,
            Suite::All,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(
        &mut self,
        suite: Suite,
        name: impl Into<String>,
        value: f64,
        expected: f64,
        threshold: f64,
    ) {
        let residual = (value - expected).abs();
        self.checks.push(Check {
            suite,
            name: name.into(),
            value,
            expected,
            residual,
            threshold,
            passed: residual <= threshold,
            note: None,
        });
    }

    /// Records a residual that should vanish.
    fn residual(&mut self, suite: Suite, name: impl Into<String>, residual: f64, threshold: f64) {
        self.push(suite, name, residual, 0.0, threshold);
    }

    fn note(&mut self, note: &str) {
        if let Some(c) = self.checks.last_mut() {
            c.note = Some(note.into());
        }
    }
}

/// Runs one suite, or all of them.
pub fn run(suite: Suite) -> Report {
    let mut r = Report::default();
    if matches!(suite, Suite::Embeddings | Suite::All) {
        embeddings(&mut r);
    }
    if matches!(suite, Suite::Projectors | Suite::All) {
        projectors(&mut r);
    }
    if matches!(suite, Suite::Gram | Suite::All) {
        gram(&mut r);
    }
    if matches!(suite, Suite::Roundtrip | Suite::All) {
        roundtrip(&mut r, 10);
    }
    r
}

fn embeddings(r: &mut Report) {
    let s = Suite::Embeddings;
    for tag in EmbeddingTag::ALL {
        let e = match embedding::<f64>(tag) {
            Ok(e) => e,
            Err(err) => {
                r.push(s, format!("{} gamma", tag.name()), f64::NAN, 0.0, 0.0);
                r.note(&err.to_string());
                continue;
            }
        };
        r.push(
            s,
            format!("{} gamma", tag.name()),
            e.gamma(),
            e.gamma(),
            0.0,
        );
        let rep = verify_embedding(&e, 5);
        r.residual(
            s,
            format!("{} Pi.Phi", tag.name()),
            rep.pi_phi,
            EMBEDDING_TOL,
        );
        r.residual(
            s,
            format!("{} Phi.Pi", tag.name()),
            rep.phi_pi,
            EMBEDDING_TOL,
        );
        r.residual(
            s,
            format!("{} norm scaling", tag.name()),
            rep.norm_scaling,
            EMBEDDING_TOL,
        );
        r.residual(
            s,
            format!("{} isotropy", tag.name()),
            rep.isotropy,
            EMBEDDING_TOL,
        );
        let pi = e.pi();
        let expected = e.phi_transpose().scale(1.0 / e.gamma());
        r.residual(
            s,
            format!("{} Pi = Phi^T/gamma", tag.name()),
            pi.rel_diff(&expected),
            EXACT_TOL,
        );
    }

    let phi51 = embedding::<f64>(EmbeddingTag::Phi51).expect("checked above");
    let phi42 = embedding::<f64>(EmbeddingTag::Phi42).expect("checked above");
    let mut worst51: f64 = 0.0;
    let mut worst42: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    for _ in 0..5 {
        let t = random_tensor(1, &mut rng);
        let v = HarmonicComponent::project(&t, 1).expect("order 1");
        let c = v.coords();
        worst51 = worst51.max(phi51.embed(&v).rel_diff(&phi51_components([c[0], c[1]])));

        let h = HarmonicComponent::project(&random_tensor(2, &mut rng).symmetrize_all(), 2)
            .expect("order 2");
        let traced = phi42.embed(&h).trace_pair(1, 4).expect("order 4");
        worst42 = worst42.max(traced.rel_diff(&h.to_tensor()));
    }
    r.residual(s, "Phi_51 intrinsic vs components", worst51, EMBEDDING_TOL);
    r.residual(s, "Phi_42 tr14", worst42, EMBEDDING_TOL);
}

const T2_FAMILY: [ProjectorTag; 2] = [ProjectorTag::P22, ProjectorTag::P20];

/// Complete families on third-order tensors with the space they resolve.
const T3_FAMILIES: [(StateSpace, [ProjectorTag; 3]); 4] = [
    (
        StateSpace::T3TypeII,
        [ProjectorTag::P33, ProjectorTag::P31s, ProjectorTag::P31r],
    ),
    (
        StateSpace::T3TypeI,
        [
            ProjectorTag::P33Sharp,
            ProjectorTag::P31s,
            ProjectorTag::P31rSharp,
        ],
    ),
    (
        StateSpace::T3TypeII,
        [ProjectorTag::P33Dh, ProjectorTag::P31d, ProjectorTag::P31h],
    ),
    (
        StateSpace::T3TypeI,
        [
            ProjectorTag::P33DhSharp,
            ProjectorTag::P31dSharp,
            ProjectorTag::P31hSharp,
        ],
    ),
];

fn projectors(r: &mut Report) {
    let s = Suite::Projectors;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E0);
    let group: Vec<_> = (0..20).map(|_| random_element(&mut rng)).collect();
    for tag in ProjectorTag::ALL {
        let p = projector::<f64>(tag);
        let half = p.order() / 2;
        let pp = p.contract(&p, half).expect("square");
        r.residual(
            s,
            format!("{} idempotent", tag.name()),
            pp.rel_diff(&p),
            EXACT_TOL,
        );
        let pt = p.transpose_block(half, half).expect("square");
        r.residual(
            s,
            format!("{} self-adjoint", tag.name()),
            pt.rel_diff(&p),
            EXACT_TOL,
        );
        let iso = group
            .iter()
            .map(|g| rayleigh(g, &p).rel_diff(&p))
            .fold(0.0, f64::max);
        r.residual(s, format!("{} isotropy", tag.name()), iso, EMBEDDING_TOL);
    }

    let sum2 = &projector::<f64>(T2_FAMILY[0]) + &projector::<f64>(T2_FAMILY[1]);
    r.residual(
        s,
        "P22 + P20 = I",
        sum2.rel_diff(&identity_on(StateSpace::T2Sym)),
        EXACT_TOL,
    );
    for (space, family) in T3_FAMILIES {
        let ps: Vec<Tensor<f64>> = family.iter().map(|&t| projector(t)).collect();
        let total = &(&ps[0] + &ps[1]) + &ps[2];
        let names: Vec<_> = family.iter().map(|t| t.name()).collect();
        r.residual(
            s,
            format!("{} = I", names.join(" + ")),
            total.rel_diff(&identity_on(space)),
            EXACT_TOL,
        );
        let mut table: f64 = 0.0;
        for (i, a) in ps.iter().enumerate() {
            for (j, b) in ps.iter().enumerate() {
                let prod = a.contract(b, 3).expect("order 6");
                let err = if i == j {
                    prod.rel_diff(a)
                } else {
                    prod.norm_sq().sqrt() / a.norm_sq().sqrt()
                };
                table = table.max(err);
            }
        }
        r.residual(
            s,
            format!("{} product table", names.join("/")),
            table,
            EXACT_TOL,
        );
    }

    let p33 = projector::<f64>(ProjectorTag::P33);
    for tag in [
        ProjectorTag::P33Sharp,
        ProjectorTag::P33Dh,
        ProjectorTag::P33DhSharp,
    ] {
        r.residual(
            s,
            format!("{} = P33", tag.name()),
            projector::<f64>(tag).rel_diff(&p33),
            EXACT_TOL,
        );
    }

    let phi31 = embedding::<f64>(EmbeddingTag::Phi31).expect("shipped");
    r.residual(
        s,
        "Phi_31 = P22",
        phi31.phi().rel_diff(&projector(ProjectorTag::P22)),
        EXACT_TOL,
    );

    let anti = projector::<f64>(ProjectorTag::P2Neg1);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let t = random_tensor(2, &mut rng);
        let expected = (&t - &t.transpose_block(1, 1).expect("order 2")).scale(0.5);
        worst = worst.max(anti.contract(&t, 2).expect("order 2").rel_diff(&expected));
    }
    r.residual(s, "P2neg1 takes the antisymmetric part", worst, EXACT_TOL);
}

/// Rank of `m` from its singular values, relative to the largest one.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&x| x > RANK_TOL * top).count()
}

/// Gram matrix of `ts` under full contraction.
pub fn gram_matrix(ts: &[Tensor<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(ts.len(), ts.len(), |i, j| ts[i].dot(&ts[j]))
}

fn gram(r: &mut Report) {
    let s = Suite::Gram;
    let p22 = projector::<f64>(ProjectorTag::P22);
    let p20 = projector::<f64>(ProjectorTag::P20);
    r.push(s, "P22::P22", p22.dot(&p22), 2.0, EXACT_TOL);
    r.push(s, "P20::P20", p20.dot(&p20), 1.0, EXACT_TOL);
    r.push(s, "P22::P20", p22.dot(&p20), 0.0, EXACT_TOL);
    for (_, family) in T3_FAMILIES {
        let ps: Vec<Tensor<f64>> = family.iter().map(|&t| projector(t)).collect();
        for i in 0..3 {
            for j in i..3 {
                let expected = if i == j { 2.0 } else { 0.0 };
                let name = format!("{}::{}", family[i].name(), family[j].name());
                if r.checks.iter().any(|c| c.name == name) {
                    continue;
                }
                r.push(s, name, ps[i].dot(&ps[j]), expected, EXACT_TOL);
            }
        }
    }
    let fourth: Vec<Tensor<f64>> = (1..=3).map(i4).collect();
    let sixth: Vec<Tensor<f64>> = (1..=15).map(i6).collect();
    r.push(
        s,
        "rank of i4 Gram",
        numerical_rank(&gram_matrix(&fourth)) as f64,
        3.0,
        0.0,
    );
    r.push(
        s,
        "rank of i6 Gram",
        numerical_rank(&gram_matrix(&sixth)) as f64,
        10.0,
        0.0,
    );
}

/// Rank of the linear map from a constitutive tensor space to harmonic
/// coordinates, evaluated on the symmetrized unit tensors.
pub fn decomposition_rank(order: usize, basis: Basis, f: Formulation) -> usize {
    let n = 1usize << order;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut data = vec![0.0; n];
        data[i] = 1.0;
        let unit = Tensor::new(order, data).expect("finite");
        columns.push(match order {
            4 => cghd_ela4(&Ela4Tensor::symmetrize(&unit).expect("order 4")).coords_vec(),
            5 => cghd_ela5(&Ela5Tensor::symmetrize(&unit, f).expect("order 5"), basis).coords_vec(),
            6 => cghd_ela6(&Ela6Tensor::symmetrize(&unit, f).expect("order 6"), basis).coords_vec(),
            _ => panic!("no constitutive space of order {order}"),
        });
    }
    let rows = columns[0].len();
    numerical_rank(&DMatrix::from_fn(rows, n, |i, j| columns[j][i]))
}

/// Largest relative reconstruction error over `count` seeded tensors of
/// every space, basis and formulation.
pub fn roundtrip_residuals(count: usize, seed: u64) -> Vec<(String, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let worst4 = (0..count)
        .map(|_| {
            let c = random_ela4(&mut rng);
            reconstruct_ela4(&cghd_ela4(&c))
                .tensor()
                .rel_diff(c.tensor())
        })
        .fold(0.0, f64::max);
    out.push(("ela4".to_string(), worst4));
    for f in [Formulation::TypeII, Formulation::TypeI] {
        for basis in [Basis::StretchRotation, Basis::DeviatoricHydrostatic] {
            let mut w5: f64 = 0.0;
            let mut w6: f64 = 0.0;
            for _ in 0..count {
                let m = random_ela5(f, &mut rng);
                w5 = w5.max(
                    reconstruct_ela5(&cghd_ela5(&m, basis))
                        .tensor()
                        .rel_diff(m.tensor()),
                );
                let a = random_ela6(f, &mut rng);
                w6 = w6.max(
                    reconstruct_ela6(&cghd_ela6(&a, basis))
                        .tensor()
                        .rel_diff(a.tensor()),
                );
            }
            out.push((format!("ela5 {} {}", basis.code(), f.code()), w5));
            out.push((format!("ela6 {} {}", basis.code(), f.code()), w6));
        }
    }
    out
}

fn roundtrip(r: &mut Report, count: usize) {
    let s = Suite::Roundtrip;
    for (name, worst) in roundtrip_residuals(count, 0xC0DE) {
        r.residual(s, format!("{name} round trip"), worst, ROUNDTRIP_TOL);
    }

    for (order, expected) in [(4, 6.0), (5, 18.0), (6, 21.0)] {
        for basis in [Basis::StretchRotation, Basis::DeviatoricHydrostatic] {
            for f in [Formulation::TypeII, Formulation::TypeI] {
                if order == 4 && (basis, f) != (Basis::StretchRotation, Formulation::TypeII) {
                    continue;
                }
                let rank = decomposition_rank(order, basis, f) as f64;
                r.push(
                    s,
                    format!("ela{order} {} {} parameter rank", basis.code(), f.code()),
                    rank,
                    expected,
                    0.0,
                );
            }
        }
    }

    let (lambda, mu) = (1.7, 0.45);
    let c = &i4::<f64>(1).scale(lambda) + &(&i4::<f64>(2) + &i4::<f64>(3)).scale(mu);
    let h = cghd_ela4(&Ela4Tensor::new(&c, EXACT_TOL).expect("isotropic"));
    r.push(
        s,
        "isotropic a22 = 4 mu",
        h.a22.value(),
        4.0 * mu,
        EXACT_TOL,
    );
    r.push(
        s,
        "isotropic a00 = lambda + mu",
        h.a00.value(),
        lambda + mu,
        EXACT_TOL,
    );
    r.note("a00 is normalized as half of C::P20; the reconstruction coefficient follows from it");
}
