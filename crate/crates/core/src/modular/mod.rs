//! Modular-surface specialization (under construction).
