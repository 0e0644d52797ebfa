//! Small combinatorial helpers.
use alloc::vec::Vec;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Axis indices set in `mask`, ascending.
pub fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every sub-mask of `mask` with exactly `k` bits.
pub fn submasks_of_size(mask: u32, k: usize) -> Vec<u32> {
    let axes = bits(mask);
    let mut out = Vec::new();
    let m = axes.len();
    if k > m {
        return out;
    }
    for sel in 0u32..(1u32 << m) {
        if sel.count_ones() as usize == k {
            let mut s = 0;
            for (t, &a) in axes.iter().enumerate() {
                if sel >> t & 1 == 1 {
                    s |= 1 << a;
                }
            }
            out.push(s);
        }
    }
    out
}

/// Every sub-mask of `mask`.
pub fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = mask;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    out.reverse();
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Integer grid points of the box `lo..=hi`, lexicographic.
pub fn grid(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..d].copy_from_slice(&lo[i + 1..d]);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], alloc::vec![0, 2, 1]);
    }

    #[test]
    fn submask_counts() {
        assert_eq!(submasks_of_size(0b1011, 2).len(), 3);
        assert_eq!(submasks(0b101), alloc::vec![0, 1, 4, 5]);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(grid(&[0, 0], &[2, 1]).len(), 6);
        assert_eq!(grid(&[], &[]).len(), 1);
        assert_eq!(binomial(5, 2), 10);
    }
}
