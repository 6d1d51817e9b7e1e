pub mod exact_arith;
pub mod oracle;
pub mod planar_geom;
pub mod spatial_tri;
pub mod st_model;
pub mod st_pipeline;
