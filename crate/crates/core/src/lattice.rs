//! Enumeration of simplex lattices (compositions of an integer).

use alloc::vec;

/// Calls `visit` with every vector of `parts` non-negative integers summing
/// to `total`, in lexicographic order. Visiting stops early when `visit`
/// returns `false`.
pub fn for_each_composition<F>(total: usize, parts: usize, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if parts == 0 {
        return;
    }
    let mut counts = vec![0usize; parts];
    counts[parts - 1] = total;
    loop {
        if !visit(&counts) {
            return;
        }
        // Advance: find the rightmost non-last position that can be bumped,
        // i.e. the last position currently holds the remainder.
        let last = parts - 1;
        if parts == 1 {
            return;
        }
        // Find rightmost index i < last such that moving one unit from the
        // tail into position i is possible.
        let mut i = last;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let tail: usize = counts[i + 1..].iter().sum();
            if tail > 0 {
                counts[i] += 1;
                let remaining = tail - 1;
                for c in counts[i + 1..].iter_mut() {
                    *c = 0;
                }
                counts[last] = remaining;
                break;
            }
        }
    }
}

/// Number of grid points per unit for a lattice step, e.g. `0.02 -> 50`.
pub fn resolution(step: f64) -> usize {
    let r = libm::round(1.0 / step);
    if r < 1.0 {
        1
    } else {
        r as usize
    }
}
