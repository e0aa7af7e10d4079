//! Execution policy for the data-parallel parts (sweeps, randomized checks).
//!
//! Results are always returned in input order, so serial and parallel runs
//! produce identical output.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Serial,
    /// Worker pool of the given size; 0 means one worker per core.
    Parallel { jobs: usize },
}

impl Execution {
    /// `None` or `Some(1)` runs serially.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            None | Some(1) => Execution::Serial,
            Some(jobs) => Execution::Parallel { jobs },
        }
    }

    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match *self {
            Execution::Serial => items.iter().map(f).collect(),
            Execution::Parallel { jobs } => parallel_map(jobs, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, U, F>(jobs: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, U, F>(_jobs: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_map_preserves_order() {
        let xs: Vec<u64> = (0..200).collect();
        let f = |x: &u64| x * x + 1;
        let serial = Execution::Serial.map(&xs, f);
        let parallel = Execution::Parallel { jobs: 4 }.map(&xs, f);
        assert_eq!(serial, parallel);
        assert_eq!(serial[10], 101);
    }

    #[test]
    fn jobs_mapping() {
        assert_eq!(Execution::from_jobs(None), Execution::Serial);
        assert_eq!(Execution::from_jobs(Some(1)), Execution::Serial);
        assert_eq!(
            Execution::from_jobs(Some(3)),
            Execution::Parallel { jobs: 3 }
        );
    }
}
