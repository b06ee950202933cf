//! Validation diagnostics shared by every module.

use alloc::string::String;
use core::fmt;

/// What kind of rule a diagnostic reports on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    // fans
    RayDimension,
    ZeroRay,
    NonPrimitiveRay,
    RedundantRay,
    MissingFace,
    MissingZeroCone,
    BadIntersection,
    // curves
    EmptyCurve,
    DuplicateId,
    UnknownVertex,
    Disconnected,
    BadMarking,
    MarkedLeafFinite,
    NegativeLength,
    UnmarkedLeaf,
    NotSmooth,
    // maps
    MissingEdgeData,
    BadOrientation,
    BadDirection,
    MissingPosition,
    ExtraPosition,
    UnknownEdge,
    OutsideSupport,
    Integrality,
    Balancing,
    Stability,
    Contact,
    ZeroDirectionRay,
    // moduli
    ForcedZeroLength,
    Infeasible,
}

impl Code {
    /// Stable short name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Code::RayDimension => "ray-dimension",
            Code::ZeroRay => "zero-ray",
            Code::NonPrimitiveRay => "non-primitive-ray",
            Code::RedundantRay => "redundant-ray",
            Code::MissingFace => "missing-face",
            Code::MissingZeroCone => "missing-zero-cone",
            Code::BadIntersection => "bad-intersection",
            Code::EmptyCurve => "empty-curve",
            Code::DuplicateId => "duplicate-id",
            Code::UnknownVertex => "unknown-vertex",
            Code::Disconnected => "disconnected",
            Code::BadMarking => "bad-marking",
            Code::MarkedLeafFinite => "marked-leaf-finite",
            Code::NegativeLength => "negative-length",
            Code::UnmarkedLeaf => "unmarked-leaf",
            Code::NotSmooth => "not-smooth",
            Code::MissingEdgeData => "missing-edge-data",
            Code::BadOrientation => "bad-orientation",
            Code::BadDirection => "bad-direction",
            Code::MissingPosition => "missing-position",
            Code::ExtraPosition => "extra-position",
            Code::UnknownEdge => "unknown-edge",
            Code::OutsideSupport => "outside-support",
            Code::Integrality => "TSM1",
            Code::Balancing => "TSM2",
            Code::Stability => "TSM3",
            Code::Contact => "contact",
            Code::ZeroDirectionRay => "zero-direction-ray",
            Code::ForcedZeroLength => "forced-zero-length",
            Code::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Lint,
}

/// One violation, naming the offending vertex, edge, cone or marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: Code, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: Severity::Error,
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn lint(code: Code, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: Severity::Lint,
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.code.as_str(), self.subject, self.message)
    }
}
