//! Multi-threaded closure enumeration.
//!
//! Each round the frontier is cut into fixed-size chunks; worker threads expand
//! chunks into private candidate buffers, which are then absorbed in chunk order.
//! The element set and its discovery order are therefore the same for every
//! thread count.

use std::num::NonZeroUsize;
use std::thread;

use symstring_core::groups::{ClosureEngine, Enumerator, CHUNK};
use symstring_core::{EnumeratedGroup, Field, Matrix, Result};

#[derive(Clone, Copy, Debug)]
pub struct Parallel {
    threads: NonZeroUsize,
}

impl Parallel {
    pub fn new(threads: NonZeroUsize) -> Parallel {
        Parallel { threads }
    }

    /// One worker per available core.
    pub fn available() -> Parallel {
        Parallel::new(thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn threads(&self) -> usize {
        self.threads.get()
    }
}

impl ClosureEngine for Parallel {
    fn generate(&self, field: &Field, dim: usize, gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup> {
        let mut en = Enumerator::new(field, dim, gens, cap)?;
        if self.threads.get() == 1 {
            return en.run();
        }
        let workers = self.threads.get();
        let mut bufs: Vec<Vec<u64>> = vec![Vec::new(); workers];
        while !en.is_done() {
            let frontier = en.frontier();
            let mut start = frontier.start;
            while start < frontier.end {
                let ranges: Vec<_> = (0..workers)
                    .map(|w| {
                        let s = (start + w * CHUNK).min(frontier.end);
                        s..(s + CHUNK).min(frontier.end)
                    })
                    .collect();
                start = ranges.last().map_or(frontier.end, |r| r.end);
                let shared = &en;
                thread::scope(|scope| {
                    for (buf, range) in bufs.iter_mut().zip(&ranges) {
                        buf.clear();
                        if !range.is_empty() {
                            let range = range.clone();
                            scope.spawn(move || shared.expand(range, buf));
                        }
                    }
                });
                for buf in &bufs {
                    en.absorb(buf)?;
                }
            }
            en.next_level();
        }
        Ok(en.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symstring_core::groups::Sequential;
    use symstring_core::strings::build_orthogonal_string;
    use symstring_core::WittType;

    #[test]
    fn same_elements_in_same_order() {
        let f = Field::new(2).unwrap();
        let s = build_orthogonal_string(&f, 4, WittType::Minus).unwrap();
        let a = Sequential.generate(&f, 4, &s.gens, 100_000).unwrap();
        for t in [1, 2, 3, 8] {
            let b = Parallel::new(NonZeroUsize::new(t).unwrap()).generate(&f, 4, &s.gens, 100_000).unwrap();
            assert_eq!(b.order(), 8160);
            assert!(a.iter_words().eq(b.iter_words()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::new(2).unwrap();
        let s = build_orthogonal_string(&f, 4, WittType::Minus).unwrap();
        let err = Parallel::new(NonZeroUsize::new(4).unwrap()).generate(&f, 4, &s.gens, 1000).unwrap_err();
        assert_eq!(err, symstring_core::Error::EnumerationCap(1000));
    }
}
