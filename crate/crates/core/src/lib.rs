//! Exact algebra for n-fans: polygons inscribed in a circular arc, the
//! polynomial families that govern their radii, and irreducibility based
//! (non)constructibility certificates.

pub mod exactnum;
pub mod poly;
pub mod irreducibility;
pub mod fanpoly;
pub mod fangeom;
pub mod sweep;
