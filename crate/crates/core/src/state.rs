//! Storage for dynamic-programming states.
//!
//! States live in insertion-ordered vectors; the map only indexes them, so
//! iteration order never depends on hashing. The `btree-state` feature swaps
//! the hash index for an ordered one (extra log factor, no randomization).

#[cfg(not(feature = "btree-state"))]
pub(crate) type StateMap<K, V> = std::collections::HashMap<K, V>;

#[cfg(feature = "btree-state")]
pub(crate) type StateMap<K, V> = std::collections::BTreeMap<K, V>;
