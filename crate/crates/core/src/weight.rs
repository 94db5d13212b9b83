use std::fmt::Debug;

use num_traits::{CheckedAdd, Zero};

/// Scalar usable as an edge weight.
///
/// Weights must be totally ordered so that the minimum spanning forest is
/// unique once ties are broken by stream index. Floating-point types do not
/// qualify; wrap them (or scale them to integers) first.
pub trait EdgeWeight: Copy + Ord + Debug + Default + Zero + CheckedAdd + Send + Sync + 'static {}

impl<T> EdgeWeight for T where T: Copy + Ord + Debug + Default + Zero + CheckedAdd + Send + Sync + 'static
{}

/// Sums weights, returning `None` on overflow.
pub fn checked_sum<W: EdgeWeight>(weights: impl IntoIterator<Item = W>) -> Option<W> {
    weights
        .into_iter()
        .try_fold(W::zero(), |acc, w| acc.checked_add(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_detects_overflow() {
        assert_eq!(checked_sum([1u64, 2, 3]), Some(6));
        assert_eq!(checked_sum(Vec::<u32>::new()), Some(0));
        assert_eq!(checked_sum([u8::MAX, 1]), None);
    }
}
