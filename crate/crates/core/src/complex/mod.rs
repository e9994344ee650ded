//! Gilbert graph construction and face enumeration for Rips and Čech
//! complexes.

mod dump;
mod enumerate;
mod graph;

pub use dump::{parse_face_dump, write_face_dump, DumpedFace};
pub use enumerate::{
    enumerate_cech_faces, enumerate_faces, enumerate_rips_faces, f_vector, walk_faces, ComplexKind,
    FaceStream, Simplex, WalkPlan,
};
pub use graph::NeighborGraph;
