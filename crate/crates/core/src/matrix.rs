//! Coxeter matrices, generator subsets, and the `.cox` text format.
//!
//! Generators are numbered from 1 in files and from 0 everywhere else.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported number of generators. Subsets are stored as `u32` masks
/// and enumerated exhaustively, so this stays small.
pub const MAX_RANK: usize = 16;

/// The order `m_st` of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    /// True when the two generators are joined by an edge of the Coxeter
    /// diagram, i.e. `m >= 3` or `m = inf`.
    pub fn is_edge(self) -> bool {
        match self {
            Order::Finite(m) => m >= 3,
            Order::Infinite => true,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "inf" | "∞" => Ok(Order::Infinite),
            _ => s
                .parse::<u32>()
                .map(Order::Finite)
                .map_err(|_| format!("invalid order `{s}`")),
        }
    }
}

/// A set of generators, as a bitmask over generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= MAX_RANK);
        SubsetMask(((1u64 << rank) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SubsetMask(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn insert(self, i: usize) -> SubsetMask {
        SubsetMask(self.0 | 1 << i)
    }

    /// `(-1)^{|T|}`.
    pub fn sign(self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Generator indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, in increasing mask order (starting with the
    /// empty set, ending with `self`).
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(SubsetMask(cur))
        })
    }
}

impl fmt::Display for SubsetMask {
    /// 1-based set notation, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// A Coxeter system `(W, S)` given by its symmetric matrix of orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    orders: Vec<Order>,
}

impl CoxeterMatrix {
    /// Builds a matrix from a full table. Checks symmetry, the unit diagonal
    /// and `m >= 2` off the diagonal.
    pub fn new(orders: Vec<Vec<Order>>) -> Result<Self> {
        let rank = orders.len();
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        let mut flat = Vec::with_capacity(rank * rank);
        for (i, row) in orders.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidArgument(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != Order::Finite(1) {
                    return Err(Error::InvalidArgument(format!(
                        "diagonal entry ({0},{0}) must be 1",
                        i + 1
                    )));
                }
                if i != j {
                    if matches!(m, Order::Finite(k) if k < 2) {
                        return Err(Error::InvalidArgument(format!(
                            "entry ({},{}) must be at least 2",
                            i + 1,
                            j + 1
                        )));
                    }
                    if orders[j][i] != m {
                        return Err(Error::InvalidArgument(format!(
                            "matrix is not symmetric at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
                flat.push(m);
            }
        }
        Ok(CoxeterMatrix { rank, orders: flat })
    }

    /// A rank-`n` matrix with every off-diagonal order 2.
    pub fn commuting(rank: usize) -> Result<Self> {
        Self::from_pairs(rank, std::iter::empty())
    }

    /// Builds a matrix from 0-based `(i, j, m)` triples; unlisted pairs are 2.
    pub fn from_pairs<I>(rank: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Order)>,
    {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        let mut table = vec![vec![Order::Finite(2); rank]; rank];
        for (i, row) in table.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for (i, j, m) in pairs {
            if i >= rank || j >= rank || i == j {
                return Err(Error::InvalidArgument(format!(
                    "invalid generator pair ({},{})",
                    i + 1,
                    j + 1
                )));
            }
            table[i][j] = m;
            table[j][i] = m;
        }
        Self::new(table)
    }

    fn sentinel() -> Self {
        CoxeterMatrix {
            rank: 0,
            orders: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, i: usize, j: usize) -> Order {
        self.orders[i * self.rank + j]
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.rank)
    }

    /// All rows, for serialisation and display.
    pub fn rows(&self) -> Vec<Vec<Order>> {
        self.orders
            .chunks(self.rank.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    /// The parabolic subsystem on `subset`, with the map from its generators
    /// back to ours. The empty subset gives a rank-0 matrix.
    pub fn restrict(&self, subset: SubsetMask) -> Restriction {
        let index_map: Vec<usize> = subset.iter().filter(|&i| i < self.rank).collect();
        let matrix = if index_map.is_empty() {
            CoxeterMatrix::sentinel()
        } else {
            let rank = index_map.len();
            let mut orders = Vec::with_capacity(rank * rank);
            for &i in &index_map {
                for &j in &index_map {
                    orders.push(self.order(i, j));
                }
            }
            CoxeterMatrix { rank, orders }
        };
        Restriction { matrix, index_map }
    }

    /// Connected components of the Coxeter diagram restricted to `subset`,
    /// ordered by least element.
    pub fn diagram_components(&self, subset: SubsetMask) -> Vec<SubsetMask> {
        let mut remaining = subset;
        let mut components = Vec::new();
        while let Some(start) = remaining.iter().next() {
            let mut component = SubsetMask::singleton(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for u in remaining.difference(component).iter() {
                    if self.order(v, u).is_edge() {
                        component = component.insert(u);
                        frontier.push(u);
                    }
                }
            }
            remaining = remaining.difference(component);
            components.push(component);
        }
        components
    }

    /// Canonical `.cox` text: `rank`, then `m` lines in (I,J) order with
    /// order-2 pairs omitted.
    pub fn to_cox_string(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let m = self.order(i, j);
                if m != Order::Finite(2) {
                    out.push_str(&format!("m {} {} {}\n", i + 1, j + 1, m));
                }
            }
        }
        out
    }

    /// Parses the `.cox` format. Unlisted pairs default to 2.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut rank: Option<(usize, usize)> = None;
        let mut entries: Vec<Option<(Order, usize)>> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (fields[0], rank) {
                ("rank", None) => {
                    if fields.len() != 2 {
                        return Err(err(line_no, "expected `rank N`".into()));
                    }
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid rank `{}`", fields[1])))?;
                    if n == 0 {
                        return Err(err(line_no, "rank must be at least 1".into()));
                    }
                    if n > MAX_RANK {
                        return Err(err(
                            line_no,
                            format!("rank {n} exceeds the maximum of {MAX_RANK}"),
                        ));
                    }
                    rank = Some((n, line_no));
                    entries = vec![None; n * n];
                }
                ("rank", Some((_, first))) => {
                    return Err(err(
                        line_no,
                        format!("duplicate `rank` directive (first on line {first})"),
                    ));
                }
                ("m", None) => {
                    return Err(err(line_no, "`m` before `rank`".into()));
                }
                ("m", Some((n, _))) => {
                    if fields.len() != 4 {
                        return Err(err(line_no, "expected `m I J K`".into()));
                    }
                    let index = |s: &str| -> Result<usize> {
                        let v: usize = s
                            .parse()
                            .map_err(|_| err(line_no, format!("invalid index `{s}`")))?;
                        if v < 1 || v > n {
                            return Err(err(line_no, format!("index {v} out of range 1..{n}")));
                        }
                        Ok(v - 1)
                    };
                    let i = index(fields[1])?;
                    let j = index(fields[2])?;
                    if i == j {
                        return Err(err(line_no, "diagonal entries are fixed to 1".into()));
                    }
                    let (i, j) = (i.min(j), i.max(j));
                    let m: Order = fields[3].parse().map_err(|e| err(line_no, e))?;
                    if matches!(m, Order::Finite(k) if k < 2) {
                        return Err(err(line_no, format!("order {m} must be at least 2")));
                    }
                    match entries[i * n + j] {
                        Some((prev, prev_line)) if prev != m => {
                            return Err(err(
                                line_no,
                                format!(
                                    "pair ({},{}) set to {m}, contradicting {prev} on line {prev_line}",
                                    i + 1,
                                    j + 1
                                ),
                            ));
                        }
                        _ => entries[i * n + j] = Some((m, line_no)),
                    }
                }
                (other, _) => {
                    return Err(err(line_no, format!("unknown directive `{other}`")));
                }
            }
        }

        let (n, _) = rank.ok_or_else(|| err(0, "missing `rank` directive".into()))?;
        let pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| entries[i * n + j].map(|(m, _)| (i, j, m)));
        Self::from_pairs(n, pairs.collect::<Vec<_>>())
    }
}

impl FromStr for CoxeterMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A parabolic subsystem together with its embedding into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub matrix: CoxeterMatrix,
    /// `index_map[k]` is the parent generator of the subsystem's generator `k`.
    pub index_map: Vec<usize>,
}

impl Restriction {
    pub fn is_empty(&self) -> bool {
        self.index_map.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_tilde() -> CoxeterMatrix {
        "rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3".parse().unwrap()
    }

    #[test]
    fn parse_rank_one() {
        let m = CoxeterMatrix::parse("rank 1").unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rows(), vec![vec![Order::Finite(1)]]);
    }

    #[test]
    fn parse_infinite_dihedral() {
        let m = CoxeterMatrix::parse("rank 2\nm 1 2 inf").unwrap();
        assert_eq!(
            m.rows(),
            vec![
                vec![Order::Finite(1), Order::Infinite],
                vec![Order::Infinite, Order::Finite(1)]
            ]
        );
    }

    #[test]
    fn parse_triangle_and_defaults() {
        let m = a2_tilde();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1 } else { 3 };
                assert_eq!(m.order(i, j), Order::Finite(expected));
            }
        }
        let d = CoxeterMatrix::parse("# comment\n\nrank 3  # three\nm 1 2 4\n").unwrap();
        assert_eq!(d.order(0, 2), Order::Finite(2));
        assert_eq!(d.order(1, 0), Order::Finite(4));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("rank 2\nm 1 3 3", 2),
            ("rank 2\nm 1 2 1", 2),
            ("rank 2\nm 1 2 3\nm 2 1 4", 3),
            ("rank 2\nm 1 2 3\nfoo", 3),
            ("m 1 2 3\nrank 2", 1),
            ("rank 2\nm 1 2", 2),
            ("rank 0", 1),
            ("rank 17", 1),
            ("rank 2\nrank 2", 2),
            ("rank 2\nm 1 1 3", 2),
        ];
        for (text, line) in cases {
            match CoxeterMatrix::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
        assert!(matches!(
            CoxeterMatrix::parse("# nothing"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn duplicate_consistent_pair_is_accepted() {
        let m = CoxeterMatrix::parse("rank 2\nm 1 2 5\nm 2 1 5").unwrap();
        assert_eq!(m.order(0, 1), Order::Finite(5));
    }

    #[test]
    fn restrict_examples() {
        let m = a2_tilde();
        let r = m.restrict(SubsetMask::from_indices([0, 1]));
        assert_eq!(
            r.matrix.rows(),
            vec![
                vec![Order::Finite(1), Order::Finite(3)],
                vec![Order::Finite(3), Order::Finite(1)]
            ]
        );
        assert_eq!(r.index_map, vec![0, 1]);
        assert!(m.restrict(SubsetMask::EMPTY).is_empty());
        assert_eq!(m.restrict(SubsetMask::EMPTY).matrix.rank(), 0);

        let dihedral = CoxeterMatrix::parse("rank 2\nm 1 2 inf").unwrap();
        let r = dihedral.restrict(SubsetMask::singleton(0));
        assert_eq!(r.matrix.rows(), vec![vec![Order::Finite(1)]]);
    }

    #[test]
    fn diagram_component_examples() {
        assert_eq!(
            a2_tilde().diagram_components(SubsetMask::full(3)),
            vec![SubsetMask::full(3)]
        );
        let commuting = CoxeterMatrix::commuting(3).unwrap();
        assert_eq!(
            commuting.diagram_components(SubsetMask::full(3)),
            vec![
                SubsetMask::singleton(0),
                SubsetMask::singleton(1),
                SubsetMask::singleton(2)
            ]
        );
        let a2a1 = CoxeterMatrix::parse("rank 3\nm 1 2 3").unwrap();
        assert_eq!(
            a2a1.diagram_components(SubsetMask::full(3)),
            vec![SubsetMask::from_indices([0, 1]), SubsetMask::singleton(2)]
        );
    }

    #[test]
    fn subsets_enumerates_all() {
        let t = SubsetMask::from_indices([0, 2, 3]);
        let subs: Vec<_> = t.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], SubsetMask::EMPTY);
        assert_eq!(*subs.last().unwrap(), t);
        assert!(subs.iter().all(|s| s.is_subset_of(t)));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(SubsetMask::from_indices([0, 2]).to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }
}
