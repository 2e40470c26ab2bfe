//! Statistics layer (under construction).
