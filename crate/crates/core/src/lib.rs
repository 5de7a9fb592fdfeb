//! Exact verification toolkit for 2-blocks with elementary abelian defect
//! group of order 8.

pub mod defect_tables;
pub mod exactmath;
pub mod isometry;
pub mod liedata;
pub mod lzero;
pub mod report;
pub mod smallgroups;
pub mod symbols;
