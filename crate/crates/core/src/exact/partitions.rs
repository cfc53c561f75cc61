//! Integer partitions in multiplicity form.
//!
//! A partition of `k` is stored as the vector `(m_1, ..., m_k)` where `m_j`
//! counts how many parts equal `j`, so that `sum j * m_j == k`. This is the
//! index set of every Faà di Bruno sum in the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionMultiIndex {
    multiplicities: Vec<u32>,
}

impl PartitionMultiIndex {
    /// Builds a multi-index from `(m_1, ..., m_k)`; `k` is the vector length.
    ///
    /// Returns `None` when `sum j * m_j != k`.
    pub fn new(multiplicities: Vec<u32>) -> Option<Self> {
        let idx = PartitionMultiIndex { multiplicities };
        (idx.weighted_sum() == idx.weight() as u64).then_some(idx)
    }

    /// The partitioned integer `k`.
    pub fn weight(&self) -> u32 {
        self.multiplicities.len() as u32
    }

    /// `m_j` for `1 <= j <= k`, zero outside that range.
    pub fn multiplicity(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.multiplicities
            .get(j as usize - 1)
            .copied()
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Number of parts, `S = sum m_j`.
    pub fn part_count(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// Iterates `(j, m_j)` over parts that actually occur.
    pub fn parts(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
    }

    fn weighted_sum(&self) -> u64 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum()
    }
}

impl fmt::Display for PartitionMultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (j, m)) in self.parts().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "m_{j}={m}")?;
        }
        f.write_str("}")
    }
}

/// Every multiplicity vector of weight `k`, each exactly once, in ascending
/// lexicographic order of `(m_1, m_2, ..., m_k)`.
///
/// `k = 0` yields the single empty partition.
pub fn enumerate_partitions(k: u32) -> Vec<PartitionMultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; k as usize];
    fill(1, k, &mut current, &mut out);
    out
}

fn fill(j: u32, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<PartitionMultiIndex>) {
    let k = current.len() as u32;
    if j > k {
        if remaining == 0 {
            out.push(PartitionMultiIndex {
                multiplicities: current.clone(),
            });
        }
        return;
    }
    if j == k {
        // last slot is forced
        if remaining % j == 0 {
            current[j as usize - 1] = remaining / j;
            fill(j + 1, 0, current, out);
            current[j as usize - 1] = 0;
        }
        return;
    }
    for m in 0..=remaining / j {
        current[j as usize - 1] = m;
        fill(j + 1, remaining - m * j, current, out);
    }
    current[j as usize - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: partitions of n with parts at most `max`.
    fn count_brute(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| count_brute(n - p, p)).sum()
    }

    #[test]
    fn zero_has_one_empty_partition() {
        let parts = enumerate_partitions(0);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].weight(), 0);
        assert_eq!(parts[0].part_count(), 0);
    }

    #[test]
    fn three_in_lexicographic_order() {
        let parts: Vec<Vec<u32>> = enumerate_partitions(3)
            .into_iter()
            .map(|p| p.multiplicities().to_vec())
            .collect();
        assert_eq!(parts, vec![vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]]);
    }

    #[test]
    fn seven_has_fifteen() {
        // brute force over the full box of m-vectors
        let mut brute = 0;
        for m1 in 0..=7u32 {
            for m2 in 0..=3u32 {
                for m3 in 0..=2u32 {
                    for m4 in 0..=1u32 {
                        for m5 in 0..=1u32 {
                            for m6 in 0..=1u32 {
                                for m7 in 0..=1u32 {
                                    if m1 + 2 * m2 + 3 * m3 + 4 * m4 + 5 * m5 + 6 * m6 + 7 * m7
                                        == 7
                                    {
                                        brute += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(brute, 15);
        assert_eq!(enumerate_partitions(7).len(), 15);
    }

    #[test]
    fn counts_match_recursion_through_twenty() {
        for k in 0..=20 {
            let parts = enumerate_partitions(k);
            assert_eq!(parts.len() as u64, count_brute(k, k), "k = {k}");
            for w in parts.windows(2) {
                assert!(w[0].multiplicities() < w[1].multiplicities());
            }
            for p in &parts {
                assert!(PartitionMultiIndex::new(p.multiplicities().to_vec()).is_some());
                if k >= 1 {
                    assert!((1..=k).contains(&p.part_count()));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_weight() {
        assert!(PartitionMultiIndex::new(vec![1, 1]).is_none());
        assert_eq!(
            PartitionMultiIndex::new(vec![0, 1]).unwrap().to_string(),
            "{m_2=1}"
        );
    }
}
