//! Permutations of `0..n`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image {image} at position {position} is out of range for {len} points")]
    OutOfRange {
        position: usize,
        image: usize,
        len: usize,
    },
    #[error("image {image} occurs twice (second time at position {position})")]
    Repeated { position: usize, image: usize },
}

/// A bijection of `0..n`, stored by images: `images[x]` is where `x` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let len = images.len();
        let mut seen = vec![false; len];
        for (position, &image) in images.iter().enumerate() {
            if image >= len {
                return Err(PermError::OutOfRange {
                    position,
                    image,
                    len,
                });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(PermError::Repeated { position, image });
            }
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    ///
    /// # Panics
    /// Panics if the two permutations act on different numbers of points.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.len(), inner.len(), "composing permutations of unequal size");
        Permutation {
            images: inner.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Cycle decomposition, each cycle starting at its smallest point, cycles ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..10)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::from_images(vec![0, 0]),
            Err(PermError::Repeated {
                position: 1,
                image: 0
            })
        );
        assert!(matches!(
            Permutation::from_images(vec![0, 2]),
            Err(PermError::OutOfRange { position: 1, .. })
        ));
    }

    #[test]
    fn compose_applies_inner_first() {
        let f = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let g = Permutation::from_images(vec![0, 2, 1]).unwrap();
        let fg = f.compose(&g);
        for x in 0..3 {
            assert_eq!(fg.apply(x), f.apply(g.apply(x)));
        }
    }

    #[test]
    fn display_cycles() {
        let p = Permutation::from_images(vec![0, 1, 4, 2, 3]).unwrap();
        assert_eq!(p.to_string(), "(2 4 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm()) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn cycles_partition_points(p in arb_perm()) {
            let mut all: Vec<usize> = p.cycles().concat();
            all.sort_unstable();
            prop_assert_eq!(all, (0..p.len()).collect::<Vec<_>>());
        }
    }
}
