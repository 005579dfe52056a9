//! Kauffman–Vogel polynomial of 4-valent rigid-vertex graph diagrams.

pub mod diagram;
pub mod ring;
pub mod planar;
pub mod embedded;
pub mod oracle;
