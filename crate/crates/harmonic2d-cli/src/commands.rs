use harmonic2d::verify::{self, Suite};
use harmonic2d::{
    cghd_ela4, cghd_ela5, cghd_ela6, classify_high, decompose_t2, decompose_t3, rayleigh,
    reconstruct_ela4, reconstruct_ela5, reconstruct_ela6, reconstruct_t2, reconstruct_t3, Basis,
    Classification, Ela4Harmonics, Ela4Tensor, Ela5Harmonics, Ela5Tensor, Ela6Harmonics,
    Ela6Tensor, Formulation, GroupElement, HarmonicBundle, HarmonicComponent, T2Harmonics,
    T3Harmonics, Tensor, VANISHING_TOL,
};
use serde::Serialize;

use crate::document::{Document, Entry, HarmonicsDocument, Space, TensorDocument, SCHEMA_VERSION};
use crate::error::CliError;

/// Decomposition of any supported space.
enum Bundle {
    T2(T2Harmonics<f64>),
    T3(T3Harmonics<f64>),
    Ela4(Ela4Harmonics<f64>),
    Ela5(Ela5Harmonics<f64>),
    Ela6(Ela6Harmonics<f64>),
}

impl Bundle {
    fn entries(&self) -> Vec<(String, HarmonicComponent<f64>)> {
        match self {
            Bundle::T2(h) => h.entries(),
            Bundle::T3(h) => h.entries(),
            Bundle::Ela4(h) => h.entries(),
            Bundle::Ela5(h) => h.entries(),
            Bundle::Ela6(h) => h.entries(),
        }
    }

    fn map(&self, f: impl Fn(&HarmonicComponent<f64>) -> HarmonicComponent<f64>) -> Self {
        match self {
            Bundle::T2(h) => Bundle::T2(h.map_components(f)),
            Bundle::T3(h) => Bundle::T3(h.map_components(f)),
            Bundle::Ela4(h) => Bundle::Ela4(h.map_components(f)),
            Bundle::Ela5(h) => Bundle::Ela5(h.map_components(f)),
            Bundle::Ela6(h) => Bundle::Ela6(h.map_components(f)),
        }
    }

    fn reconstruct(&self) -> Tensor<f64> {
        match self {
            Bundle::T2(h) => reconstruct_t2(h),
            Bundle::T3(h) => reconstruct_t3(h),
            Bundle::Ela4(h) => reconstruct_ela4(h).into_tensor(),
            Bundle::Ela5(h) => reconstruct_ela5(h).into_tensor(),
            Bundle::Ela6(h) => reconstruct_ela6(h).into_tensor(),
        }
    }

    fn decompose(
        space: Space,
        t: &Tensor<f64>,
        basis: Basis,
        f: Formulation,
        tol: f64,
    ) -> Result<Self, CliError> {
        Ok(match space {
            Space::T2 => Bundle::T2(decompose_t2(t, tol)?),
            Space::T3 => Bundle::T3(decompose_t3(t, basis, f, tol)?),
            Space::Ela4 => Bundle::Ela4(cghd_ela4(&Ela4Tensor::new(t, tol)?)),
            Space::Ela5 => Bundle::Ela5(cghd_ela5(&Ela5Tensor::new(t, f, tol)?, basis)),
            Space::Ela6 => Bundle::Ela6(cghd_ela6(&Ela6Tensor::new(t, f, tol)?, basis)),
        })
    }

    fn from_document(doc: &HarmonicsDocument) -> Result<Self, CliError> {
        let entries = doc.components()?;
        let (basis, f) = (doc.basis(), doc.formulation());
        let bundle = match doc.space {
            Space::T2 => T2Harmonics::from_entries(&entries).map(Bundle::T2),
            Space::T3 => T3Harmonics::from_entries(basis, f, &entries).map(Bundle::T3),
            Space::Ela4 => Ela4Harmonics::from_entries(&entries).map(Bundle::Ela4),
            Space::Ela5 => Ela5Harmonics::from_entries(basis, f, &entries).map(Bundle::Ela5),
            Space::Ela6 => Ela6Harmonics::from_entries(basis, f, &entries).map(Bundle::Ela6),
        };
        // Label problems are malformed input rather than failed validation.
        bundle.map_err(|e| CliError::parse(e.to_string()))
    }

    fn to_document(
        &self,
        space: Space,
        basis: Basis,
        f: Formulation,
        residual: f64,
    ) -> HarmonicsDocument {
        HarmonicsDocument {
            schema_version: SCHEMA_VERSION.into(),
            space,
            basis: space.has_basis().then(|| basis.into()),
            formulation: space.has_formulation().then(|| f.into()),
            entries: self
                .entries()
                .into_iter()
                .map(|(label, c)| Entry {
                    label,
                    k: c.k(),
                    coords: c.coords().to_vec(),
                })
                .collect(),
            residual,
        }
    }
}

fn formulation_for(space: Space, f: Formulation) -> Option<Formulation> {
    space.has_formulation().then_some(f)
}

pub fn decompose(
    doc: &Document,
    basis: Basis,
    formulation: Option<Formulation>,
    tol: f64,
) -> Result<HarmonicsDocument, CliError> {
    let Document::Tensor(doc) = doc else {
        return Err(CliError::parse("decompose expects a tensor document"));
    };
    let t = doc.tensor()?;
    let f = formulation.unwrap_or_else(|| doc.formulation());
    let h = Bundle::decompose(doc.space, &t, basis, f, tol)?;
    let residual = h.reconstruct().rel_diff(&t);
    Ok(h.to_document(doc.space, basis, f, residual))
}

pub fn reconstruct(doc: &Document) -> Result<TensorDocument, CliError> {
    let Document::Harmonics(doc) = doc else {
        return Err(CliError::parse("reconstruct expects a harmonics document"));
    };
    let t = Bundle::from_document(doc)?.reconstruct();
    Ok(TensorDocument::new(
        doc.space,
        formulation_for(doc.space, doc.formulation()),
        &t,
    ))
}

/// Parses `nx,ny` into a reflection across the line with that normal.
pub fn parse_axis(s: &str) -> Result<GroupElement<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [nx, ny] = parts[..] else {
        return Err(CliError::parse(format!(
            "axis {s:?} is not of the form nx,ny"
        )));
    };
    let nx: f64 = nx
        .parse()
        .map_err(|_| CliError::parse(format!("axis component {nx:?} is not a number")))?;
    let ny: f64 = ny
        .parse()
        .map_err(|_| CliError::parse(format!("axis component {ny:?} is not a number")))?;
    if !(nx.is_finite() && ny.is_finite()) {
        return Err(CliError::parse("axis must be finite"));
    }
    GroupElement::reflection([nx, ny]).map_err(|e| CliError::parse(e.to_string()))
}

pub enum RotateOutput {
    Tensor(TensorDocument),
    Harmonics(HarmonicsDocument),
}

pub fn rotate(doc: &Document, g: &GroupElement<f64>, tol: f64) -> Result<RotateOutput, CliError> {
    match doc {
        Document::Tensor(d) => {
            let t = d.tensor()?;
            // Validation keeps the symmetry contract of the output document.
            Bundle::decompose(d.space, &t, Basis::default(), d.formulation(), tol)?;
            let mut out = d.clone();
            out.components = rayleigh(g, &t).as_slice().iter().copied().collect();
            Ok(RotateOutput::Tensor(out))
        }
        Document::Harmonics(d) => {
            let h = Bundle::from_document(d)?.map(|c| c.rho_rotate(g));
            Ok(RotateOutput::Harmonics(h.to_document(
                d.space,
                d.basis(),
                d.formulation(),
                d.residual,
            )))
        }
    }
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

pub fn verify(suite: Suite) -> VerifyReport {
    let report = verify::run(suite);
    VerifyReport {
        suite: suite.name().into(),
        passed: report.passed(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckRecord {
                suite: c.suite.name().into(),
                name: c.name,
                value: c.value,
                expected: c.expected,
                residual: c.residual,
                threshold: c.threshold,
                passed: c.passed,
                note: c.note,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub space: Space,
    pub classes: Vec<String>,
    pub maximal: Option<String>,
    pub notes: Vec<String>,
}

fn class_report(space: Space, c: Classification) -> ClassifyReport {
    ClassifyReport {
        space,
        classes: c.classes.iter().map(|x| x.name().to_string()).collect(),
        maximal: c.maximal.map(|x| x.name().to_string()),
        notes: c.notes,
    }
}

pub fn classify(
    doc: &Document,
    basis: Basis,
    tol: f64,
    vanishing: Option<f64>,
) -> Result<ClassifyReport, CliError> {
    let vanishing = vanishing.unwrap_or(VANISHING_TOL);
    let bundle = match doc {
        Document::Tensor(d) => {
            Bundle::decompose(d.space, &d.tensor()?, basis, d.formulation(), tol)?
        }
        Document::Harmonics(d) => Bundle::from_document(d)?,
    };
    let space = match doc {
        Document::Tensor(d) => d.space,
        Document::Harmonics(d) => d.space,
    };
    Ok(match &bundle {
        Bundle::Ela4(h) => class_report(space, classify_high(h, vanishing)),
        Bundle::Ela5(h) => class_report(space, classify_high(h, vanishing)),
        Bundle::Ela6(h) => class_report(space, classify_high(h, vanishing)),
        Bundle::T2(_) | Bundle::T3(_) => {
            return Err(CliError::parse("classify expects ela4, ela5 or ela6"))
        }
    })
}
