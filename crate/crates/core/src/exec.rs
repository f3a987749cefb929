//! Order-preserving map/reduce over an index range.
//!
//! With the `parallel` feature the work is split across the rayon pool;
//! results are merged left to right, so the outcome is identical to the
//! sequential fold whenever `merge` is associative.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Parallel when the crate was built with it, sequential otherwise.
    pub fn available(self) -> Self {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }
}

pub fn fold_indices<A, I, F, M>(count: u64, exec: Execution, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match exec.available() {
        Execution::Sequential => (0..count).fold(identity(), fold),
        Execution::Parallel => parallel(count, identity, fold, merge),
    }
}

#[cfg(feature = "parallel")]
fn parallel<A, I, F, M>(count: u64, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    use rayon::prelude::*;
    (0..count)
        .into_par_iter()
        .fold(&identity, &fold)
        .reduce(&identity, &merge)
}

#[cfg(not(feature = "parallel"))]
fn parallel<A, I, F, M>(count: u64, identity: I, fold: F, _merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    (0..count).fold(identity(), fold)
}
