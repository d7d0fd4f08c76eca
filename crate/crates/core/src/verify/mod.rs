//! Checks on a configuration and its generating set: vanishing, simple
//! zeros via Jacobian rank, and spherical design strength, together with
//! the report types they feed.

mod design;
mod jacobian;
mod vanishing;

pub use design::{
    design_strength, design_strength_gegenbauer, design_strength_moments, gegenbauer_values,
    DesignStrengthResult, MomentResult, MOMENT_GUARD,
};
pub use jacobian::{
    family_jacobian_pass, jacobian_agreement, jacobian_rank_at, jacobian_rank_pass, JacobianMethod,
    JacobianPass,
};
pub use vanishing::{check_vanishing, first_nonvanishing, VanishingResult};

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::config::{ConfigError, DistributionMode};
use crate::exact::ExactError;
use crate::generators::GeneratorError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("feasibility guard exceeded: {0}")]
    Guard(String),
    #[error("design strength must be at least 1")]
    Strength,
    #[error("generator selection failed: {0}")]
    Selection(String),
    #[error("missing prerequisite: {0}")]
    Prerequisite(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

impl From<bool> for ClaimStatus {
    fn from(ok: bool) -> Self {
        if ok {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateLevel {
    #[serde(rename = "FULL_GROEBNER")]
    FullGroebner,
    #[serde(rename = "PAPER_CERTIFICATE")]
    PaperCertificate,
}

fn mode_label(mode: &DistributionMode) -> &'static str {
    match mode {
        DistributionMode::Full => "full",
        DistributionMode::Sampled { .. } => "sampled",
    }
}

fn serialize_mode<S: Serializer>(mode: &DistributionMode, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(mode_label(mode))
}

/// One checked statement.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    #[serde(serialize_with = "serialize_mode")]
    pub mode: DistributionMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Claim {
    pub fn new(id: impl Into<String>, ok: bool, mode: DistributionMode) -> Self {
        Claim {
            id: id.into(),
            status: ok.into(),
            mode,
            witness: None,
            detail: None,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Claim {
            id: id.into(),
            status: ClaimStatus::Skipped,
            mode: DistributionMode::Full,
            witness: None,
            detail: Some(reason.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Pass
    }

    pub fn mode_label(&self) -> &'static str {
        mode_label(&self.mode)
    }
}

/// Claims for one configuration. Wall times are kept apart so the rest of
/// the report is reproducible.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub config: String,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateLevel>,
    #[serde(skip)]
    pub timings: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(config: &str) -> Self {
        VerificationReport {
            config: config.to_string(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// True iff no claim failed (skipped claims do not count).
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Fail)
            .collect()
    }

    pub fn time<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        *self.timings.entry(key.to_string()).or_default() += start.elapsed().as_secs_f64();
        out
    }
}
