//! Exact planar geometry: points, triangles, lines, convex hulls, segment
//! arrangements as half-edge structures, and point location.

mod affine;
mod arrangement;
mod dcel;
mod hull;
mod line;
mod locate;
mod point;
mod subdivision;
mod triangle;

pub use affine::StaticAffinity;
pub use arrangement::{arrangement_dcel, clip_to_hull, GeomError, LineArrangement};
pub use dcel::{Dcel, Face, FaceId, HalfEdge, HalfEdgeId, Vertex, VertexId, OUTER_FACE};
pub use hull::convex_hull;
pub use line::Line;
pub use locate::{Location, SlabLocator};
pub use point::{area2, face_vertex_mean, on_segment, orientation, Orientation, Point};
pub use subdivision::{boundary_segments, build_subdivision, PlanarSubdivision, SegmentSource};
pub use triangle::{Degeneracy, Triangle};
