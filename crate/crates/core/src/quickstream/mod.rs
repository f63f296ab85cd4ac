//! Single-pass block-streaming algorithms.
//!
//! Every algorithm here reads the stream in blocks of `c` elements and makes
//! one oracle query per block, for `⌈n/c⌉` queries plus at most `c` at the
//! end. [`dispatch`] picks the variant whose guarantee applies to `(k, c)`.

mod dispatch;
mod largek;
mod singleton;
mod stream;

pub use dispatch::{dispatch, select_route, DispatchRun, Route};
pub use largek::{run_quickstream_largek, LargeKConfig, LargeKRun};
pub use singleton::run_quicksingleton;
pub use stream::{run_quickstream, QuickStream, QuickStreamConfig, QuickStreamRun};

use crate::error::{Error, Result};

/// How `f(A)` is learned again after elements are deleted from `A`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RefreshPolicy {
    /// Re-query `f(A)` once per deletion; the query is charged to the
    /// ledger and tallied separately as a refresh. Any deletion pushes the
    /// total past `⌈n/c⌉ + c`, since finalization then uses all `c` chunks.
    CountedQuery,
    /// Keep comparing against the pre-deletion value until the next
    /// accepted block replaces it. Costs no queries.
    #[default]
    Stale,
}

/// `ℓ = ⌈log₂(1/(4ε))⌉ + 3`, never below 3.
pub fn ell(eps: f64) -> u32 {
    let raw = (1.0 / (4.0 * eps)).log2().ceil() + 3.0;
    raw.max(3.0) as u32
}

/// `2cℓ(k+1)log₂k`: the buffer size that triggers a deletion.
pub fn buffer_limit(c: usize, k: usize, ell: u32) -> f64 {
    2.0 * retained_after_delete(c, k, ell)
}

fn retained_after_delete(c: usize, k: usize, ell: u32) -> f64 {
    c as f64 * ell as f64 * (k as f64 + 1.0) * (k as f64).log2()
}

/// Elements kept by a deletion: `⌈cℓ(k+1)log₂k⌉`.
pub fn retained_elements(c: usize, k: usize, ell: u32) -> usize {
    retained_after_delete(c, k, ell).ceil() as usize
}

/// Peak memory guarantee for a QuickStream run: the buffer limit plus one
/// pending block.
pub fn memory_bound(c: usize, k: usize, eps: f64) -> f64 {
    buffer_limit(c, k, ell(eps)) + c as f64
}

/// `⌈n/c⌉ + c`.
pub fn query_bound(n: usize, c: usize) -> u64 {
    (n.div_ceil(c) + c) as u64
}

/// Nominal single-pass guarantee `1/(4c) − ε`.
pub fn stream_ratio_nominal(c: usize, eps: f64) -> f64 {
    1.0 / (4.0 * c as f64) - eps
}

/// The guarantee the single-pass analysis actually establishes,
/// `1 / (c(4 + 2/(k^ℓ − 1)))`, which is at least `1/(4c) − ε`.
pub fn stream_ratio(c: usize, k: usize, eps: f64) -> f64 {
    let kl = (k as f64).powi(ell(eps) as i32);
    1.0 / (c as f64 * (4.0 + 2.0 / (kl - 1.0)))
}

/// Guarantee with acceptance threshold `δ·f(A)/k`: `[c(1+δ)(1+1/δ)]⁻¹`.
pub fn delta_ratio(c: usize, delta: f64) -> f64 {
    1.0 / (c as f64 * (1.0 + delta) * (1.0 + 1.0 / delta))
}

/// `1/c` for a single-element budget.
pub fn singleton_ratio(c: usize) -> f64 {
    1.0 / c as f64
}

/// Large-budget guarantee, valid when `k ≥ 8c/e`:
/// `(1 / (1 + c + 1/(k³−1))) · (1 − 1/e − 2c/(ke) − c²/(k²e))`.
pub fn largek_ratio(c: usize, k: usize) -> f64 {
    let (c, k) = (c as f64, k as f64);
    let e = std::f64::consts::E;
    (1.0 / (1.0 + c + 1.0 / (k.powi(3) - 1.0)))
        * (1.0 - 1.0 / e - 2.0 * c / (k * e) - c * c / (k * k * e))
}

/// Whether `k ≥ 8c/e`.
pub fn largek_applies(k: usize, c: usize) -> bool {
    k as f64 >= 8.0 * c as f64 / std::f64::consts::E
}

pub(crate) fn check_block_size(c: usize) -> Result<()> {
    if c == 0 {
        return Err(Error::param("block size c must be at least 1"));
    }
    Ok(())
}
