/// Iterator over all `k`-element subsets of `{0, .., n-1}` as bit masks,
/// in ascending numeric order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

/// All `k`-subsets of an `n`-element universe (`n <= 64`).
pub fn k_subsets(n: u32, k: u32) -> KSubsets {
    assert!(n <= 64, "universe too large for u64 masks");
    let next = if k > n { None } else { Some((1u128 << k) - 1) };
    KSubsets { next, limit: 1u128 << n }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(cur as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let all: Vec<u64> = k_subsets(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.count_ones() == 2));
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(k_subsets(64, 1).count(), 64);
    }
}
