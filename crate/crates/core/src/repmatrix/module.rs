//! Fusion modules `Z = V_{ω_1}(z_1) ⊗ ... ⊗ V_{ω_ℓ}(z_ℓ)` and their bases.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagrams::{column_tableau, parse_skew, SkewDiagram};
use crate::exactnum::{Lin, Rational};
use crate::fusion::{fusion_operator_with, FusionOperator, FusionOptions, DEFAULT_BOX_CAP};
use crate::tensor::{Basis, GForm, Slots};

use super::RepError;

/// Diagrams with parameters, over a fixed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusedModuleSpec {
    pub form: GForm,
    pub factors: Vec<(SkewDiagram, Rational)>,
}

impl FusedModuleSpec {
    pub fn new(form: GForm, factors: Vec<(SkewDiagram, Rational)>) -> FusedModuleSpec {
        FusedModuleSpec { form, factors }
    }

    /// Parses `"λ/μ:z;λ/μ:z;..."`. The empty string is the empty product.
    pub fn parse(form: GForm, text: &str) -> Result<FusedModuleSpec, RepError> {
        let bad = |msg: String| RepError::Spec(msg);
        let mut factors = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (d, z) = part.rsplit_once(':').ok_or_else(|| bad(format!("factor {part:?} lacks ':z'")))?;
            let w = parse_skew(d)?;
            let z: Rational = z.trim().parse().map_err(|_| bad(format!("bad parameter {z:?} in {part:?}")))?;
            factors.push((w, z));
        }
        Ok(FusedModuleSpec { form, factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    /// Total number of boxes.
    pub fn boxes(&self) -> usize {
        self.factors.iter().map(|(w, _)| w.size()).sum()
    }

    pub fn params(&self) -> Vec<Rational> {
        self.factors.iter().map(|(_, z)| z.clone()).collect()
    }

    /// The same diagrams at new parameters.
    pub fn with_params(&self, zs: &[Rational]) -> FusedModuleSpec {
        assert_eq!(zs.len(), self.factors.len(), "one parameter per factor");
        let factors = self.factors.iter().zip(zs).map(|((w, _), z)| (w.clone(), z.clone())).collect();
        FusedModuleSpec { form: self.form.clone(), factors }
    }

    /// The modules part of the grammar, without the form.
    pub fn modules_string(&self) -> String {
        self.factors.iter().map(|(w, z)| format!("{w}:{z}")).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for FusedModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={} [{}]", self.form.kind(), self.n(), self.modules_string())
    }
}

/// The JSON echo of a spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub n: usize,
    pub form: String,
    pub modules: String,
}

impl From<&FusedModuleSpec> for SpecEcho {
    fn from(s: &FusedModuleSpec) -> Self {
        SpecEcho { n: s.n(), form: s.form.kind().to_string(), modules: s.modules_string() }
    }
}

/// One tensor factor: a diagram, its contents and its fusion image.
#[derive(Clone, Debug)]
pub struct Part {
    pub diagram: SkewDiagram,
    pub z: Rational,
    pub contents: Vec<i64>,
    pub fusion: Arc<FusionOperator>,
}

impl Part {
    pub fn basis(&self) -> &Basis {
        &self.fusion.basis
    }

    pub fn dim(&self) -> usize {
        self.fusion.dim()
    }

    pub fn legs(&self) -> usize {
        self.contents.len()
    }

    /// Box parameters `z + shift + c_p`.
    pub fn box_params(&self, shift: &Lin) -> Vec<Lin> {
        self.contents.iter().map(|&c| shift.shift(&(&self.z + &Rational::from_integer(c)))).collect()
    }
}

/// A spec together with the fusion bases of its factors.
#[derive(Clone, Debug)]
pub struct FusedModule {
    pub spec: FusedModuleSpec,
    pub parts: Vec<Part>,
}

impl FusedModule {
    pub fn new(spec: &FusedModuleSpec) -> Result<FusedModule, RepError> {
        FusedModule::with_cap(spec, DEFAULT_BOX_CAP)
    }

    /// Fails if the total number of boxes exceeds `cap`.
    pub fn with_cap(spec: &FusedModuleSpec, cap: usize) -> Result<FusedModule, RepError> {
        if spec.boxes() > cap {
            return Err(RepError::Spec(format!("{} boxes exceed the cap of {cap}", spec.boxes())));
        }
        let opts = FusionOptions { box_cap: cap, ..FusionOptions::default() };
        let parts = spec
            .factors
            .iter()
            .map(|(w, z)| {
                Ok(Part {
                    diagram: w.clone(),
                    z: z.clone(),
                    contents: column_tableau(w).contents,
                    fusion: fusion_operator_with(w, spec.n(), &opts)?,
                })
            })
            .collect::<Result<Vec<_>, RepError>>()?;
        Ok(FusedModule { spec: spec.clone(), parts })
    }

    /// A single box at parameter 0, used as the auxiliary space.
    pub fn auxiliary(form: &GForm) -> Result<FusedModule, RepError> {
        FusedModule::new(&FusedModuleSpec::new(form.clone(), vec![(SkewDiagram::single_box(), Rational::zero())]))
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn form(&self) -> &GForm {
        &self.spec.form
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Part::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn boxes(&self) -> usize {
        self.spec.boxes()
    }

    pub fn slots(&self) -> Slots {
        Slots::new(self.dims())
    }

    /// Basis of `Z` inside `(C^N)^{⊗n}`.
    pub fn basis(&self) -> Basis {
        Basis::tensor(&self.parts.iter().map(Part::basis).collect::<Vec<_>>())
    }

    /// All box parameters `z_i + shift + c_p`, factor by factor.
    pub fn box_params(&self, shift: &Lin) -> Vec<Lin> {
        self.parts.iter().flat_map(|p| p.box_params(shift)).collect()
    }
}
