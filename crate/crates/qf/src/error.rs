use std::fmt::Display;

use qf_core::classify::ClassifyError;
use qf_core::constructions::ConstructionError;
use qf_core::envelope::EnvelopeError;
use qf_core::freealg::FreeAlgError;
use qf_core::ga::GaError;
use qf_core::{GroupError, QuandleError};
use thiserror::Error;

/// Failures, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    #[error("{0}")]
    Usage(String),
    /// The input was read but fails a required property: exit 1.
    #[error("{0}")]
    Rejected(String),
    /// A size limit or search budget was hit: exit 3.
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }

    pub fn usage(msg: impl Display) -> Self {
        CliError::Usage(msg.to_string())
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Usage,
    Rejected,
    Limit,
}

fn build(kind: Kind, msg: String) -> CliError {
    match kind {
        Kind::Usage => CliError::Usage(msg),
        Kind::Rejected => CliError::Rejected(msg),
        Kind::Limit => CliError::Limit(msg),
    }
}

fn quandle_kind(e: &QuandleError) -> Kind {
    match e {
        QuandleError::SizeOverflow { .. }
        | QuandleError::ClosureLimitExceeded { .. }
        | QuandleError::OrderLimitExceeded { .. }
        | QuandleError::SearchLimitExceeded { .. } => Kind::Limit,
        QuandleError::AxiomViolation { .. } => Kind::Rejected,
        _ => Kind::Usage,
    }
}

fn group_kind(e: &GroupError) -> Kind {
    match e {
        GroupError::SizeOverflow { .. } => Kind::Limit,
        _ => Kind::Usage,
    }
}

fn construction_kind(e: &ConstructionError) -> Kind {
    match e {
        ConstructionError::Quandle(e) => quandle_kind(e),
        ConstructionError::Group(e) => group_kind(e),
        ConstructionError::UnionConditionViolated { .. } => Kind::Rejected,
        _ => Kind::Usage,
    }
}

fn ga_kind(e: &GaError) -> Kind {
    match e {
        GaError::SizeOverflow { .. } => Kind::Limit,
        GaError::Group(e) => group_kind(e),
        GaError::Quandle(e) => quandle_kind(e),
        GaError::Construction(e) => construction_kind(e),
        _ => Kind::Usage,
    }
}

fn envelope_kind(e: &EnvelopeError) -> Kind {
    match e {
        EnvelopeError::BudgetExhausted { .. } => Kind::Limit,
        EnvelopeError::CertificateFailed { .. } => Kind::Rejected,
        EnvelopeError::Group(e) => group_kind(e),
        EnvelopeError::Quandle(e) => quandle_kind(e),
        EnvelopeError::Construction(e) => construction_kind(e),
        EnvelopeError::Ga(e) => ga_kind(e),
        _ => Kind::Usage,
    }
}

fn free_kind(e: &FreeAlgError) -> Kind {
    match e {
        FreeAlgError::SizeOverflow { .. } | FreeAlgError::DepthExceeded { .. } => Kind::Limit,
        FreeAlgError::Group(e) => group_kind(e),
        _ => Kind::Usage,
    }
}

fn classify_kind(e: &ClassifyError) -> Kind {
    match e {
        ClassifyError::OrderLimitExceeded { .. } | ClassifyError::SearchLimitExceeded { .. } => Kind::Limit,
        ClassifyError::Quandle(e) => quandle_kind(e),
        ClassifyError::Group(e) => group_kind(e),
        ClassifyError::Construction(e) => construction_kind(e),
        ClassifyError::Envelope(e) => envelope_kind(e),
    }
}

macro_rules! from_core {
    ($($ty:ty => $kind:ident),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                build($kind(&e), e.to_string())
            }
        })*
    };
}

from_core! {
    QuandleError => quandle_kind,
    GroupError => group_kind,
    ConstructionError => construction_kind,
    GaError => ga_kind,
    EnvelopeError => envelope_kind,
    FreeAlgError => free_kind,
    ClassifyError => classify_kind,
}
