//! Command implementations and the HTTP service for the identifier tagger.

pub mod commands;
pub mod service;
