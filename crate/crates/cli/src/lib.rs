//! Support modules for the `cohsys` binary, exposed as a library so the
//! integration tests can reuse the record and cache codecs.

pub mod cache;
pub mod record;
pub mod sweep;
