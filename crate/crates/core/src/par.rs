//! Order-preserving map over independent work items, parallel when the
//! `parallel` feature is enabled.

/// How a batch of independent evaluations is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Data-parallel with the given worker count (0 = one per core).
    #[cfg(feature = "parallel")]
    Parallel(usize),
}

impl Execution {
    /// Parallel when available, else sequential.
    pub fn with_workers(workers: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            if workers != 1 {
                return Execution::Parallel(workers);
            }
        }
        let _ = workers;
        Execution::Sequential
    }
}

/// `items.map(f)` with results in input order regardless of execution mode.
pub fn map_ordered<T, R, F>(items: Vec<T>, exec: Execution, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel(workers) => {
            use rayon::prelude::*;
            let run = || items.into_par_iter().map(&f).collect();
            if workers == 0 {
                run()
            } else {
                match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                    Ok(pool) => pool.install(run),
                    Err(_) => run(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        let seq = map_ordered(v.clone(), Execution::Sequential, |x| x * x);
        let par = map_ordered(v, Execution::with_workers(4), |x| x * x);
        assert_eq!(seq, par);
    }
}
