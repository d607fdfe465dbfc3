//! Placeholder; filled in once the solver lands.
fn main() {}
