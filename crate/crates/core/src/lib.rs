//! Minimal N-free barycentric extensions of finite posets.
//!
//! An N is four elements `a, b, c, d` with `b ≺ c`, `a ≺ c`, `b ≺ d` and `a`,
//! `d` incomparable. Placing one dummy vertex on the diagonal edge `(b, c)` of
//! every N, and doing it a second time on the result, yields the smallest
//! N-free poset obtained by subdividing the Hasse diagram. Subdividing one
//! diagonal edge at a time reaches the same poset whatever the order.
//!
//! ```
//! use nfree::{grillet_closure, is_n_free, Poset};
//!
//! let p = Poset::from_relation(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")])?;
//! let closed = grillet_closure(&p);
//! assert!(is_n_free(&closed));
//! assert_eq!(closed.len(), 5);
//! # Ok::<(), nfree::PosetError>(())
//! ```

mod bits;
pub mod format;
pub mod npattern;
pub mod oracle;
pub mod poset;
pub mod subdivision;

pub use npattern::{
    a_set, find_ns, is_cac, is_n_free, is_series_parallel, n_diag, nd_diag, EdgeSet, NForm, NWitness,
};
pub use poset::{equals, Edge, Poset, PosetError, VertexId};
pub use subdivision::{
    full_subdivision, grillet_closure, nd_closure, s_n, sequential_closure, sequential_closure_with,
    subdivide, RunTrace, SplitMix64, Strategy, SubdivisionError, TraceStep,
};
