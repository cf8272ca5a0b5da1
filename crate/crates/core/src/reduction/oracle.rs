use super::SubsetSumInstance;

/// True iff some subset of the weights sums exactly to the target.
///
/// Tabulates reachable sums up to the target; shares no code with the game
/// solvers.
pub fn subset_sum_oracle(instance: &SubsetSumInstance) -> bool {
    let target = instance.target() as usize;
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for &w in instance.weights() {
        let w = w as usize;
        if w > target {
            continue;
        }
        for sum in (w..=target).rev() {
            if reachable[sum - w] {
                reachable[sum] = true;
            }
        }
    }
    reachable[target]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(weights: &[u64], target: u64) -> bool {
        subset_sum_oracle(&SubsetSumInstance::new(weights.to_vec(), target).unwrap())
    }

    #[test]
    fn small_instances() {
        assert!(oracle(&[1, 2], 3));
        assert!(!oracle(&[2, 2], 3));
        assert!(oracle(&[3, 1, 1], 2));
        assert!(!oracle(&[3, 1, 1], 6));
        assert!(oracle(&[3, 1, 1], 5));
        assert!(!oracle(&[4], 5));
    }

    #[test]
    fn each_weight_used_at_most_once() {
        assert!(!oracle(&[2], 4));
        assert!(oracle(&[2, 2], 4));
    }

    #[test]
    fn agrees_with_enumeration() {
        let weights = [3u64, 5, 7, 11];
        for target in 1..=27 {
            let by_enumeration =
                (0u32..16).any(|m| (0..4).filter(|i| m >> i & 1 == 1).map(|i| weights[i]).sum::<u64>() == target);
            assert_eq!(oracle(&weights, target), by_enumeration, "target {target}");
        }
    }
}
