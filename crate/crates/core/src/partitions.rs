//! Young diagrams in an m by n box: the (c, a, b) ladder decomposition,
//! depressions, Bruhat order, cell dimensions, normalization moves, and ℤ/2
//! Betti numbers by cell counting.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {parts:?}")]
    InvalidPartition { parts: Vec<usize> },
    #[error("partition {parts:?} does not fit in a {m}x{n} box")]
    BoxMismatch { m: usize, n: usize, parts: Vec<usize> },
    #[error("no depression to erase (single-block diagram)")]
    NoDepression,
    #[error("partition is not normalized (requires a part equal to 0 and all parts below {n})")]
    NotNormalized { n: usize },
    #[error("degree {degree} is outside 0..={max}")]
    InvalidDegree { degree: usize, max: usize },
}

/// A partition λ_1 ≥ … ≥ λ_m ≥ 0 with λ_1 ≤ n, kept together with its box.
/// Parts are stored zero-padded to length m.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    n: usize,
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts up to `m` weakly decreasing parts bounded by `n` and pads with
    /// zeros to length `m`.
    pub fn new(m: usize, n: usize, mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidPartition { parts });
        }
        if parts.len() > m || parts.first().is_some_and(|&p| p > n) {
            return Err(PartitionError::BoxMismatch { m, n, parts });
        }
        parts.resize(m, 0);
        Ok(Partition { m, n, parts })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Partition { m, n, parts: vec![0; m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_size(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// |λ|, the number of boxes of the diagram.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Dimension of the open cell attached to this partition: mn − |λ|.
    pub fn cell_dimension(&self) -> usize {
        self.m * self.n - self.weight()
    }

    /// Componentwise order; the variety attached to λ contains the one
    /// attached to μ exactly when λ ≤ μ.
    pub fn bruhat_leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(PartitionError::BoxMismatch {
                m: self.m,
                n: self.n,
                parts: other.parts.clone(),
            });
        }
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b))
    }

    /// The partition has a zero part and no part touching the right wall of
    /// the box (a_c > 0 and b_0 > 0 in ladder terms).
    pub fn is_normalized(&self) -> bool {
        match self.parts.as_slice() {
            [] => false,
            parts => parts[0] < self.n && *parts.last().unwrap() == 0,
        }
    }

    /// The ladder decomposition. Writing the distinct nonzero part values as
    /// v_1 > … > v_{c−1}, block i consists of the a_i rows of value v_i, block
    /// c of the a_c zero rows; b_0 = n − v_1, b_i = v_i − v_{i+1},
    /// b_{c−1} = v_{c−1}. The derived sequences are m_k = a_1+…+a_k,
    /// n_k = m+n−m_k and d_k = m_k + b_0+…+b_{k−1}.
    pub fn profile(&self) -> PartitionProfile {
        let mut values: Vec<usize> = Vec::new();
        let mut mults: Vec<usize> = Vec::new();
        for &p in &self.parts {
            if p == 0 {
                break;
            }
            if values.last() == Some(&p) {
                *mults.last_mut().unwrap() += 1;
            } else {
                values.push(p);
                mults.push(1);
            }
        }
        let zeros = self.m - mults.iter().sum::<usize>();
        let c = values.len() + 1;

        let mut a = mults;
        a.push(zeros);

        let mut b = Vec::with_capacity(c);
        b.push(self.n - values.first().copied().unwrap_or(0));
        for i in 0..values.len() {
            let next = values.get(i + 1).copied().unwrap_or(0);
            b.push(values[i] - next);
        }

        let mut mk = Vec::with_capacity(c);
        let mut acc = 0;
        for &ai in &a {
            acc += ai;
            mk.push(acc);
        }
        let nk: Vec<usize> = mk.iter().map(|&m_k| self.m + self.n - m_k).collect();
        let mut dk = Vec::with_capacity(c);
        let mut bacc = 0;
        for k in 0..c {
            bacc += b[k];
            dk.push(mk[k] + bacc);
        }
        debug_assert_eq!(dk.last().copied(), Some(self.m + self.n));

        let depressions = if self.is_normalized() {
            ladder_depressions(&a, &b)
        } else {
            // Outside the normalized range the formula's coordinates leave
            // the box, so report the depressions of the normalized core
            // instead (in the core's own box).
            match self.normalize().0 {
                NormalizedCore::Core(core) => {
                    let p = core.profile();
                    ladder_depressions(&p.a, &p.b)
                }
                NormalizedCore::Point { .. } => Vec::new(),
            }
        };

        PartitionProfile { c, a, b, mk, nk, dk, depressions }
    }

    /// Shrinks the diagram to its normalized core by iterating two moves:
    /// strip-top deletes the rows that span the full width n, shrink-ambient
    /// subtracts λ_m from every part and narrows the box. Returns the core
    /// (or a point when no rows remain) and the move sequence applied.
    pub fn normalize(&self) -> (NormalizedCore, Vec<NormalizeMove>) {
        let mut cur = self.clone();
        let mut moves = Vec::new();
        loop {
            if cur.m == 0 {
                return (NormalizedCore::Point { box_n: cur.n }, moves);
            }
            let full_rows = cur.parts.iter().take_while(|&&p| p == cur.n).count();
            let last = *cur.parts.last().unwrap();
            if full_rows == cur.m {
                moves.push(NormalizeMove::StripTop { rows: full_rows });
                cur = Partition::zero(0, cur.n);
            } else if last > 0 {
                moves.push(NormalizeMove::ShrinkAmbient { amount: last });
                cur = Partition {
                    m: cur.m,
                    n: cur.n - last,
                    parts: cur.parts.iter().map(|&p| p - last).collect(),
                };
            } else if full_rows > 0 {
                moves.push(NormalizeMove::StripTop { rows: full_rows });
                cur = Partition {
                    m: cur.m - full_rows,
                    n: cur.n,
                    parts: cur.parts[full_rows..].to_vec(),
                };
            } else {
                return (NormalizedCore::Core(cur), moves);
            }
        }
    }

    /// Drops the first block of rows (μ_k = λ_{k+a_1} in the (m−a_1)×n box),
    /// removing the first depression. Requires a normalized partition with at
    /// least one depression.
    pub fn erase_first_depression(&self) -> Result<Partition, PartitionError> {
        let profile = self.profile();
        if profile.c == 1 {
            return Err(PartitionError::NoDepression);
        }
        if !self.is_normalized() {
            return Err(PartitionError::NotNormalized { n: self.n });
        }
        let a1 = profile.a[0];
        Ok(Partition {
            m: self.m - a1,
            n: self.n,
            parts: self.parts[a1..].to_vec(),
        })
    }
}

fn ladder_depressions(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let c = a.len();
    (1..c)
        .map(|i| {
            let row = a[..i].iter().sum::<usize>() + 1;
            let col = b[i..].iter().sum::<usize>() + 1;
            (row, col)
        })
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}x{}", self, self.m, self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionWire {
    #[serde(rename = "box")]
    box_size: [usize; 2],
    parts: Vec<usize>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PartitionWire { box_size: [self.m, self.n], parts: self.parts.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PartitionWire::deserialize(deserializer)?;
        Partition::new(wire.box_size[0], wire.box_size[1], wire.parts)
            .map_err(serde::de::Error::custom)
    }
}

/// The (c, a, b) ladder of a partition plus the derived index sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionProfile {
    /// Number of blocks, counting the zero block.
    pub c: usize,
    /// Row multiplicities a_1..a_c (a_c counts the zero rows, may be 0).
    pub a: Vec<usize>,
    /// Column gaps b_0..b_{c−1} (b_0 measures the slack to the box wall).
    pub b: Vec<usize>,
    /// Partial row sums m_k = a_1+…+a_k.
    pub mk: Vec<usize>,
    /// Complements n_k = m+n−m_k.
    pub nk: Vec<usize>,
    /// Jump positions d_k = m_k + b_0+…+b_{k−1}; d_c = m+n.
    pub dk: Vec<usize>,
    /// Inner corners (row, col) of the diagram boundary, one per valley.
    pub depressions: Vec<(usize, usize)>,
}

impl PartitionProfile {
    /// Reconstructs the parts list from (c, a, b): block i holds a_i rows of
    /// value b_i+…+b_{c−1}.
    pub fn rebuild_parts(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for i in 0..self.c {
            let value: usize = self.b[i + 1..].iter().sum();
            parts.extend(std::iter::repeat(value).take(self.a[i]));
        }
        parts
    }

    /// Σ_k a_k (d_k − m_k); equals the cell dimension mn − |λ|.
    pub fn cell_dimension(&self) -> usize {
        (0..self.c).map(|k| self.a[k] * (self.dk[k] - self.mk[k])).sum()
    }
}

/// Result of normalization: either a partition with b_0 > 0 and a_c > 0 in a
/// possibly smaller box, or no rows left at all (a single point).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalizedCore {
    Core(Partition),
    Point { box_n: usize },
}

/// One normalization step, recorded so the embedding it induces can be
/// replayed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum NormalizeMove {
    StripTop { rows: usize },
    ShrinkAmbient { amount: usize },
}

/// All partitions in the m×n box, in descending lexicographic order.
pub fn partitions_in_box(m: usize, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m);
    gen_partitions(m, n, n, &mut prefix, &mut out);
    out
}

fn gen_partitions(
    m: usize,
    n: usize,
    bound: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if prefix.len() == m {
        out.push(Partition { m, n, parts: prefix.clone() });
        return;
    }
    for v in (0..=bound).rev() {
        prefix.push(v);
        gen_partitions(m, n, v, prefix, out);
        prefix.pop();
    }
}

/// ℤ/2 Betti numbers of the (m, n) Grassmannian: entry k counts the
/// partitions of weight mn−k in the box. Computed by the coefficient
/// recurrence N_{m,n}(j) = N_{m−1,n}(j) + N_{m,n−1}(j−m), which classifies
/// diagrams by whether the last row is empty.
pub fn betti_numbers(m: usize, n: usize) -> Vec<usize> {
    assert!(m >= 1 && n >= 1, "box sides must be positive");
    let mut table: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n + 1]; m + 1];
    for i in 0..=m {
        for k in 0..=n {
            let mut coeffs = vec![0usize; i * k + 1];
            if i == 0 || k == 0 {
                coeffs[0] = 1;
            } else {
                for j in 0..=i * k {
                    let mut total = 0;
                    if j <= (i - 1) * k {
                        total += table[i - 1][k][j];
                    }
                    if j >= i && j - i <= i * (k - 1) {
                        total += table[i][k - 1][j - i];
                    }
                    coeffs[j] = total;
                }
            }
            table[i][k] = coeffs;
        }
    }
    (0..=m * n).map(|k| table[m][n][m * n - k]).collect()
}

/// The partitions of weight mn−k in the box, in descending lexicographic
/// order; a basis of the degree-k ℤ/2 homology.
pub fn homology_basis(m: usize, n: usize, k: usize) -> Result<Vec<Partition>, PartitionError> {
    if k > m * n {
        return Err(PartitionError::InvalidDegree { degree: k, max: m * n });
    }
    Ok(partitions_in_box(m, n)
        .into_iter()
        .filter(|p| p.weight() == m * n - k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, n: usize, parts: &[usize]) -> Partition {
        Partition::new(m, n, parts.to_vec()).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert!(Partition::new(2, 2, vec![1, 2]).is_err());
        assert!(Partition::new(2, 2, vec![3, 0]).is_err());
        assert!(Partition::new(2, 2, vec![1, 1, 1]).is_err());
        assert_eq!(p(2, 2, &[1]).parts(), &[1, 0]);
    }

    #[test]
    fn profile_of_hook_in_two_by_two() {
        let prof = p(2, 2, &[1, 0]).profile();
        assert_eq!(prof.c, 2);
        assert_eq!(prof.a, vec![1, 1]);
        assert_eq!(prof.b, vec![1, 1]);
        assert_eq!(prof.mk, vec![1, 2]);
        assert_eq!(prof.nk, vec![3, 2]);
        assert_eq!(prof.dk, vec![2, 4]);
        assert_eq!(prof.depressions, vec![(2, 2)]);
    }

    #[test]
    fn profile_of_zero_partition() {
        for (m, n) in [(1, 1), (2, 2), (3, 2)] {
            let prof = Partition::zero(m, n).profile();
            assert_eq!(prof.c, 1);
            assert_eq!(prof.a, vec![m]);
            assert_eq!(prof.b, vec![n]);
            assert!(prof.depressions.is_empty());
        }
    }

    #[test]
    fn profile_allows_boundary_blocks() {
        let prof = p(2, 2, &[2, 1]).profile();
        assert_eq!(prof.c, 3);
        assert_eq!(prof.a, vec![1, 1, 0]);
        assert_eq!(prof.b, vec![0, 1, 1]);
        // not normalized, so depressions come from the core (0) in 1x1
        assert!(prof.depressions.is_empty());
    }

    #[test]
    fn profile_round_trips_exhaustively() {
        for m in 0..=4 {
            for n in 0..=4 {
                for lam in partitions_in_box(m, n) {
                    let prof = lam.profile();
                    assert_eq!(prof.rebuild_parts(), lam.parts(), "{:?}", lam);
                    assert_eq!(prof.a.iter().sum::<usize>(), m);
                    assert_eq!(prof.b.iter().sum::<usize>(), n);
                    assert_eq!(prof.cell_dimension(), lam.cell_dimension(), "{:?}", lam);
                }
            }
        }
    }

    #[test]
    fn depressions_of_non_normalized_come_from_core() {
        let prof = p(3, 3, &[2, 2, 1]).profile();
        // core is (1,1,0) in 3x2, whose single depression sits at (3,2)
        assert_eq!(prof.depressions, vec![(3, 2)]);
    }

    #[test]
    fn cell_dimension_examples() {
        assert_eq!(p(2, 2, &[1, 0]).cell_dimension(), 3);
        assert_eq!(p(3, 2, &[2, 2, 2]).cell_dimension(), 0);
        assert_eq!(p(2, 2, &[2, 1]).cell_dimension(), 1);
    }

    #[test]
    fn bruhat_examples() {
        let small = p(2, 2, &[1, 0]);
        let big = p(2, 2, &[2, 1]);
        assert!(small.bruhat_leq(&big).unwrap());
        assert!(!big.bruhat_leq(&small).unwrap());
        assert!(!p(2, 2, &[2, 0]).bruhat_leq(&p(2, 2, &[1, 1])).unwrap());
        assert!(small.bruhat_leq(&small).unwrap());
        assert!(small.bruhat_leq(&p(2, 3, &[1, 0])).is_err());
    }

    #[test]
    fn normalize_fixes_already_normalized() {
        let lam = p(2, 2, &[1, 0]);
        let (core, moves) = lam.normalize();
        assert_eq!(core, NormalizedCore::Core(lam));
        assert!(moves.is_empty());
    }

    #[test]
    fn normalize_shrinks_then_strips() {
        let (core, moves) = p(2, 2, &[2, 1]).normalize();
        assert_eq!(core, NormalizedCore::Core(Partition::zero(1, 1)));
        assert_eq!(
            moves,
            vec![
                NormalizeMove::ShrinkAmbient { amount: 1 },
                NormalizeMove::StripTop { rows: 1 }
            ]
        );
    }

    #[test]
    fn normalize_full_box_to_point() {
        let (core, moves) = p(2, 2, &[2, 2]).normalize();
        assert_eq!(core, NormalizedCore::Point { box_n: 2 });
        assert_eq!(moves, vec![NormalizeMove::StripTop { rows: 2 }]);
    }

    #[test]
    fn normalize_invariants_small_boxes() {
        for m in 0..=3 {
            for n in 0..=3 {
                for lam in partitions_in_box(m, n) {
                    let (core, moves) = lam.normalize();
                    match core {
                        NormalizedCore::Core(c) => {
                            assert!(c.is_normalized(), "{:?} -> {:?}", lam, c)
                        }
                        NormalizedCore::Point { .. } => {}
                    }
                    // each move shrinks the box strictly
                    let mut size = lam.m() + lam.n();
                    for mv in moves {
                        let delta = match mv {
                            NormalizeMove::StripTop { rows } => rows,
                            NormalizeMove::ShrinkAmbient { amount } => amount,
                        };
                        assert!(delta > 0);
                        size -= delta;
                    }
                    let _ = size;
                }
            }
        }
    }

    #[test]
    fn erase_first_depression_examples() {
        assert_eq!(
            p(2, 2, &[1, 0]).erase_first_depression().unwrap(),
            p(1, 2, &[0])
        );
        assert_eq!(
            p(3, 3, &[2, 1, 0]).erase_first_depression().unwrap(),
            p(2, 3, &[1, 0])
        );
        assert_eq!(
            Partition::zero(3, 3).erase_first_depression(),
            Err(PartitionError::NoDepression)
        );
        assert_eq!(
            p(2, 2, &[2, 1]).erase_first_depression(),
            Err(PartitionError::NotNormalized { n: 2 })
        );
    }

    #[test]
    fn erase_drops_exactly_one_depression() {
        for m in 1..=3 {
            for n in 1..=3 {
                for lam in partitions_in_box(m, n) {
                    if !lam.is_normalized() || lam.profile().c == 1 {
                        continue;
                    }
                    let before = lam.profile().depressions.len();
                    let after = lam.erase_first_depression().unwrap();
                    assert_eq!(after.profile().depressions.len(), before - 1);
                    assert!(after.is_normalized() || after.profile().c == 1);
                }
            }
        }
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_numbers(1, 1), vec![1, 1]);
        assert_eq!(betti_numbers(2, 2), vec![1, 1, 2, 1, 1]);
        assert_eq!(betti_numbers(1, 2), vec![1, 1, 1]);
    }

    #[test]
    fn betti_matches_enumeration() {
        for m in 1..=4 {
            for n in 1..=4 {
                let betti = betti_numbers(m, n);
                let mut counted = vec![0usize; m * n + 1];
                for lam in partitions_in_box(m, n) {
                    counted[m * n - lam.weight()] += 1;
                }
                assert_eq!(betti, counted, "box {}x{}", m, n);
            }
        }
    }

    #[test]
    fn homology_basis_examples() {
        let basis = homology_basis(2, 2, 2).unwrap();
        assert_eq!(basis, vec![p(2, 2, &[2, 0]), p(2, 2, &[1, 1])]);
        assert_eq!(homology_basis(2, 2, 0).unwrap(), vec![p(2, 2, &[2, 2])]);
        assert_eq!(homology_basis(2, 2, 4).unwrap(), vec![Partition::zero(2, 2)]);
        assert_eq!(
            homology_basis(2, 2, 5),
            Err(PartitionError::InvalidDegree { degree: 5, max: 4 })
        );
    }

    #[test]
    fn serde_wire_format() {
        let lam = p(2, 2, &[1, 0]);
        let text = serde_json::to_string(&lam).unwrap();
        assert_eq!(text, r#"{"box":[2,2],"parts":[1,0]}"#);
        let back: Partition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>(r#"{"box":[2,2],"parts":[1,2]}"#).is_err());
    }
}
