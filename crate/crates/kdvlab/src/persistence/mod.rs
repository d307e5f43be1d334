//! Persistence experiments. Under construction.
