//! Torus diagrams, bridge-trisection records and the bookkeeping built on them.

mod diagram;
mod homotopy;
mod lattice;
mod record;

pub use diagram::{line_diagram, BridgePoint, Family, TorusArc, TorusDiagram};
pub use homotopy::{ArcClass, HomotopyArc, SurfaceHomotopyRecord, LONGITUDE};
pub use lattice::{
    hypersurface_input, lattice_obstructions, CandidateReport, ClassBound, IntersectionForm, LatticeInput,
    LatticeReport,
};
pub use record::{
    adjunction_verdict, line_record, AdjunctionMode, FIELD_NAMES, BridgeTrisectionRecord, SectorData, SectorLink, WhitneyBookkeeping,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrisectError {
    #[error("invalid torus diagram: {0}")]
    Diagram(String),
    #[error("arc {arc} segment {segment} has zero length")]
    ZeroLengthSegment { arc: usize, segment: usize },
    #[error("arc {0} is missing lift offsets")]
    MissingLift(usize),
    #[error("sector {sector} is missing {field}")]
    MissingData { sector: usize, field: &'static str },
    #[error("invalid record: {0}")]
    Record(String),
    #[error("unknown bridge point {0}")]
    UnknownBridgePoint(usize),
    #[error("unknown arc {0}")]
    UnknownArc(usize),
    #[error("arc {0} must carry a flat class for a longitude transfer")]
    NonFlatDrag(usize),
    #[error("factor {0} is not in the record's alphabet")]
    Unexpressible(String),
    #[error("record is not connected")]
    Disconnected,
    #[error("invalid lattice input: {0}")]
    Lattice(String),
}
