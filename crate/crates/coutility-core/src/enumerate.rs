//! Lexicographic enumeration of index tuples.
//!
//! Every exhaustive check in this crate iterates profiles through
//! [`index_product`], so enumeration order (and therefore witness order and
//! result ordering) is fixed: the last coordinate varies fastest.

/// Iterates all index tuples `(i_0, …, i_{k-1})` with `i_j < sizes[j]`,
/// in lexicographic order. Empty if any size is zero; yields the empty
/// tuple once if `sizes` is empty.
pub fn index_product(sizes: &[usize]) -> IndexProduct {
    IndexProduct {
        sizes: sizes.to_vec(),
        next: if sizes.iter().any(|&s| s == 0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        },
    }
}

/// Iterator returned by [`index_product`].
#[derive(Debug, Clone)]
pub struct IndexProduct {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for IndexProduct {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.sizes.len();
        loop {
            if pos == 0 {
                // odometer wrapped: exhausted
                self.next = None;
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.sizes[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Number of tuples `index_product` would yield, without overflow.
pub fn product_count(sizes: &[usize]) -> u128 {
    sizes.iter().map(|&s| s as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let all: Vec<_> = index_product(&[2, 3]).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn empty_dimension_yields_nothing() {
        assert_eq!(index_product(&[2, 0]).count(), 0);
    }

    #[test]
    fn no_dimensions_yields_empty_tuple_once() {
        let all: Vec<_> = index_product(&[]).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn counts_match() {
        assert_eq!(product_count(&[2, 3, 4]), 24);
        assert_eq!(index_product(&[2, 3, 4]).count(), 24);
    }
}
