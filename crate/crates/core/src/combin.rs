//! Cross-independent k-set partitioning, the i/2^i series identity, and the
//! packed integer-sequence encodings shared by the reversible-logic stack.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// `ceil(log2(k))` for `k >= 1`; the bit width used for values in `[k]`.
pub fn log2_ceil(k: usize) -> usize {
    assert!(k >= 1, "log2_ceil is defined for k >= 1");
    (usize::BITS - (k - 1).leading_zeros()) as usize
}

/// Exact value of the series `sum_{i=1..k} i / 2^i`.
///
/// Equals `(2^{k+1} - k - 2) / 2^k`; both routes are kept in tests.
pub fn phi_series(k: u32) -> Ratio<i64> {
    assert!(k >= 1);
    let mut acc = Ratio::new(0, 1);
    for i in 1..=k as i64 {
        acc += Ratio::new(i, 1i64 << i);
    }
    acc
}

/// A partition of all k-subsets of `[ground_size]` into classes whose members
/// are pairwise disjoint, so the members of one class can be processed in
/// parallel on disjoint wires.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KSetPartition {
    pub ground_size: usize,
    pub k: usize,
    /// Each class is a list of sorted k-tuples.
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl KSetPartition {
    /// Upper bound on the conflict-graph degree: the number of other k-sets
    /// meeting a fixed k-set, `sum_{i=1..k-1} C(k,i) * C(|X|-k, k-i)`.
    pub fn degree_bound(ground_size: usize, k: usize) -> u128 {
        let mut total: u128 = 0;
        for i in 1..k {
            total += binomial(k, i) * binomial(ground_size.saturating_sub(k), k - i);
        }
        total
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Exact binomial coefficient in u128 (sizes here stay tiny).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Partition all k-subsets of `[ground_size]` into cross-independent classes
/// by greedy proper coloring of the intersection-conflict graph, visiting
/// k-sets in lexicographic order. Greedy never exceeds maxdegree+1 colors and
/// disjointness within a class caps its size at `ground_size / k`.
pub fn partition_k_sets(ground_size: usize, k: usize) -> KSetPartition {
    assert!(
        (1..=ground_size).contains(&k),
        "k must satisfy 1 <= k <= ground_size"
    );
    let sets = k_subsets(ground_size, k);
    let classes = schedule_disjoint(&sets);
    KSetPartition {
        ground_size,
        k,
        classes: classes
            .into_iter()
            .map(|cls| cls.into_iter().map(|i| sets[i].clone()).collect())
            .collect(),
    }
}

/// All k-subsets of `[n]` in lexicographic order, each sorted ascending.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Greedy round scheduling for arbitrary element groups: two groups conflict
/// when they share an element, rounds are conflict-free. This is the same
/// coloring as [`partition_k_sets`] restricted to the groups that actually
/// occur, so the class-count and class-size bounds carry over. Returns rounds
/// of indices into `groups`.
pub fn schedule_disjoint(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let max_elem = groups
        .iter()
        .flat_map(|g| g.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut rounds: Vec<Vec<usize>> = Vec::new();
    // occupied[r] holds the elements already used in round r
    let mut occupied: Vec<Vec<bool>> = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let mut placed = false;
        for (r, occ) in occupied.iter_mut().enumerate() {
            if g.iter().all(|&e| !occ[e]) {
                for &e in g {
                    occ[e] = true;
                }
                rounds[r].push(gi);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut occ = vec![false; max_elem];
            for &e in g {
                occ[e] = true;
            }
            occupied.push(occ);
            rounds.push(vec![gi]);
        }
    }
    rounds
}

/// A binary string read as `count` integers of `width` bits each; value `i`
/// occupies bits `[width*i, width*(i+1))` with the least significant bit
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntSeqEncoding {
    pub count: usize,
    pub width: usize,
    pub bits: Vec<bool>,
}

impl IntSeqEncoding {
    pub fn new(count: usize, width: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), count * width, "bit length must be count*width");
        IntSeqEncoding { count, width, bits }
    }

    /// Build from integer values (each must fit in `width` bits).
    pub fn from_values(width: usize, values: &[usize]) -> Self {
        let mut bits = vec![false; values.len() * width];
        for (i, &v) in values.iter().enumerate() {
            assert!(width >= usize::BITS as usize || v < (1 << width), "value too wide");
            for j in 0..width {
                bits[i * width + j] = (v >> j) & 1 == 1;
            }
        }
        IntSeqEncoding {
            count: values.len(),
            width,
            bits,
        }
    }

    /// Unpack the low `count*width` bits of `raw` (bit p of `raw` is bit p of
    /// the string).
    pub fn from_u64(count: usize, width: usize, raw: u64) -> Self {
        assert!(count * width <= 64);
        let bits = (0..count * width).map(|p| (raw >> p) & 1 == 1).collect();
        IntSeqEncoding { count, width, bits }
    }

    pub fn to_u64(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (p, &b)| acc | ((b as u64) << p))
    }

    /// The `i`-th integer.
    pub fn value(&self, i: usize) -> usize {
        (0..self.width).fold(0, |acc, j| acc | ((self.bits[i * self.width + j] as usize) << j))
    }

    /// Bit `j` of the `i`-th integer, `j = 0` least significant.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.width + j]
    }

    pub fn values(&self) -> Vec<usize> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Decode an encoding with `count = n` and `width = log2_ceil(n)` as a
/// permutation of `[n]`: all values must be pairwise distinct and below `n`
/// (values >= n are possible when n is not a power of two and are
/// degenerate). Returns the value sequence, i.e. `perm[i]` is the position
/// assigned to item `i`.
pub fn decode_permutation(enc: &IntSeqEncoding) -> Option<Vec<usize>> {
    let n = enc.count;
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = enc.value(i);
        if v >= n || seen[v] {
            return None;
        }
        seen[v] = true;
        out.push(v);
    }
    Some(out)
}

/// Decode an encoding of `sigma` integers of width `log2_ceil(m)` as a set of
/// distinct edge indices below `m`; repeats or out-of-range values are
/// degenerate.
pub fn decode_edge_subset(enc: &IntSeqEncoding, m: usize) -> Option<Vec<usize>> {
    let mut vals = Vec::with_capacity(enc.count);
    for i in 0..enc.count {
        let v = enc.value(i);
        if v >= m || vals.contains(&v) {
            return None;
        }
        vals.push(v);
    }
    vals.sort_unstable();
    Some(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceil_values() {
        assert_eq!(log2_ceil(1), 0);
        assert_eq!(log2_ceil(2), 1);
        assert_eq!(log2_ceil(3), 2);
        assert_eq!(log2_ceil(4), 2);
        assert_eq!(log2_ceil(5), 3);
        assert_eq!(log2_ceil(8), 3);
        assert_eq!(log2_ceil(9), 4);
    }

    #[test]
    fn phi_series_small() {
        assert_eq!(phi_series(1), Ratio::new(1, 2));
        assert_eq!(phi_series(2), Ratio::new(1, 1));
        assert_eq!(phi_series(3), Ratio::new(11, 8));
    }

    #[test]
    fn phi_series_closed_form() {
        for k in 1..=30u32 {
            let closed = Ratio::new((1i64 << (k + 1)) - k as i64 - 2, 1i64 << k);
            assert_eq!(phi_series(k), closed, "k = {k}");
        }
    }

    fn check_partition(p: &KSetPartition) {
        let all = k_subsets(p.ground_size, p.k);
        let mut seen: Vec<Vec<usize>> = p.classes.iter().flatten().cloned().collect();
        seen.sort();
        let mut expect = all.clone();
        expect.sort();
        assert_eq!(seen, expect, "classes must cover every k-set exactly once");
        for cls in &p.classes {
            assert!(cls.len() <= p.ground_size / p.k, "class too large");
            for i in 0..cls.len() {
                for j in i + 1..cls.len() {
                    assert!(
                        cls[i].iter().all(|e| !cls[j].contains(e)),
                        "class members must be disjoint"
                    );
                }
            }
        }
        let bound = KSetPartition::degree_bound(p.ground_size, p.k) + 1;
        assert!(
            (p.class_count() as u128) <= bound,
            "class count {} exceeds degree bound {}",
            p.class_count(),
            bound
        );
    }

    #[test]
    fn partition_pairs_of_four() {
        let p = partition_k_sets(4, 2);
        check_partition(&p);
        // perfect matchings of K4: three classes of three disjoint pairs
        assert_eq!(p.class_count(), 3);
        assert!(p.classes.iter().all(|c| c.len() == 2 || c.len() == 3));
        let total: usize = p.classes.iter().map(Vec::len).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn partition_trivial_cases() {
        let p = partition_k_sets(3, 3);
        assert_eq!(p.class_count(), 1);
        assert_eq!(p.classes[0], vec![vec![0, 1, 2]]);

        let p = partition_k_sets(5, 1);
        assert_eq!(p.class_count(), 1);
        assert_eq!(p.classes[0].len(), 5);
    }

    #[test]
    fn partition_exhaustive_small() {
        for n in 1..=8 {
            for k in 1..=n.min(4) {
                check_partition(&partition_k_sets(n, k));
            }
        }
    }

    /// The explicit class-count bound 2 C(k, ceil(k/2)) |X|^{k-1} + 1 for
    /// k < (|X|+2)/3.
    #[test]
    fn partition_explicit_bound() {
        for n in 2..=10usize {
            for k in 1..=n.min(4) {
                if 3 * k >= n + 2 {
                    continue;
                }
                let p = partition_k_sets(n, k);
                let bound = 2 * binomial(k, k.div_ceil(2)) * (n as u128).pow(k as u32 - 1) + 1;
                assert!(
                    (p.class_count() as u128) <= bound,
                    "({n},{k}): {} > {bound}",
                    p.class_count()
                );
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        let enc = IntSeqEncoding::from_values(2, &[2, 0, 3, 1]);
        assert_eq!(enc.values(), vec![2, 0, 3, 1]);
        assert!(enc.bit(0, 1));
        assert!(!enc.bit(0, 0));
        let raw = enc.to_u64();
        assert_eq!(IntSeqEncoding::from_u64(4, 2, raw), enc);
    }

    #[test]
    fn permutation_decoding() {
        let enc = IntSeqEncoding::from_values(2, &[2, 0, 3, 1]);
        assert_eq!(decode_permutation(&enc), Some(vec![2, 0, 3, 1]));

        let enc = IntSeqEncoding::from_values(2, &[1, 1, 2, 3]);
        assert_eq!(decode_permutation(&enc), None);

        // n=3 on 2 bits: the value 3 is representable but out of range
        let enc = IntSeqEncoding::from_values(2, &[0, 1, 3]);
        assert_eq!(decode_permutation(&enc), None);
    }

    #[test]
    fn edge_subset_decoding() {
        let enc = IntSeqEncoding::from_values(2, &[0, 3]);
        assert_eq!(decode_edge_subset(&enc, 4), Some(vec![0, 3]));
        let enc = IntSeqEncoding::from_values(2, &[2, 2]);
        assert_eq!(decode_edge_subset(&enc, 4), None);
        let enc = IntSeqEncoding::from_values(2, &[3]);
        assert_eq!(decode_edge_subset(&enc, 3), None);
    }

    #[test]
    fn schedule_respects_conflicts() {
        let groups = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 2]];
        let rounds = schedule_disjoint(&groups);
        let placed: usize = rounds.iter().map(Vec::len).sum();
        assert_eq!(placed, groups.len());
        for round in &rounds {
            for (a, b) in round
                .iter()
                .flat_map(|&i| round.iter().map(move |&j| (i, j)))
                .filter(|(i, j)| i < j)
            {
                assert!(groups[a].iter().all(|e| !groups[b].contains(e)));
            }
        }
    }
}
