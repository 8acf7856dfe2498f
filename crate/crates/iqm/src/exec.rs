//! Execution mode for the data-parallel kernels.
//!
//! Every parallel kernel collects results in input order, so the two modes
//! produce bit-identical output.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

const SEQ: u8 = 0;
const PAR: u8 = 1;

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { PAR } else { SEQ });

/// Current process-wide mode. Without the `parallel` feature this is always
/// `Sequential`.
pub fn mode() -> Execution {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == PAR {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

pub fn set_mode(mode: Execution) {
    let v = match mode {
        Execution::Sequential => SEQ,
        Execution::Parallel => PAR,
    };
    MODE.store(v, Ordering::Relaxed);
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode() == Execution::Parallel && items.len() > 1 {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode() == Execution::Parallel && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}
