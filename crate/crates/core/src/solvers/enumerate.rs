use std::ops::ControlFlow;

/// Moves `idx` (an ascending k-subset of `0..n`) to its lexicographic successor.
fn advance(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// k-element subsets of `0..n` as ascending index lists, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, next: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance(&mut succ, self.n) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Calls `f` on every subset of `0..n` with at most `max_size` elements, by size
/// and then lexicographically, until `f` breaks.
pub fn for_each_subset_upto<B>(
    n: usize,
    max_size: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let mut idx = Vec::with_capacity(max_size.min(n));
    for k in 0..=max_size.min(n) {
        idx.clear();
        idx.extend(0..k);
        loop {
            if let ControlFlow::Break(b) = f(&idx) {
                return Some(b);
            }
            if !advance(&mut idx, n) {
                break;
            }
        }
    }
    None
}
