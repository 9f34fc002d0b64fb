//! File formats, CSV exports, command-line interface and HTTP monitor service
//! on top of [`pcmri_core`].

pub mod cli;
pub mod matrix_file;
pub mod service;
pub mod tables;
