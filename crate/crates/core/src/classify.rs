//! Deciding which parabolic subgroups `W_T` are finite.
//!
//! Each connected component of the Coxeter diagram of `T` is matched against
//! the diagrams of the irreducible finite Coxeter groups by an explicit
//! labelled-graph isomorphism search. The per-family positive-root counts
//! and group orders live in a static table; the test suite checks every
//! entry small enough to enumerate against the word oracle.

use std::fmt;

use serde::Serialize;

use crate::matrix::{CoxeterMatrix, Order, SubsetMask};

/// An irreducible finite Coxeter type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FiniteFamily {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral of order `2m`, `m >= 5`. `I2(3)` and `I2(4)` are reported as
    /// `A2` and `B2`.
    I2(u32),
}

impl FiniteFamily {
    pub fn rank(self) -> usize {
        match self {
            FiniteFamily::A(n) | FiniteFamily::B(n) | FiniteFamily::D(n) => n,
            FiniteFamily::E6 => 6,
            FiniteFamily::E7 => 7,
            FiniteFamily::E8 => 8,
            FiniteFamily::F4 => 4,
            FiniteFamily::H3 => 3,
            FiniteFamily::H4 => 4,
            FiniteFamily::I2(_) => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FiniteFamily::A(_) => "A",
            FiniteFamily::B(_) => "B",
            FiniteFamily::D(_) => "D",
            FiniteFamily::E6 => "E6",
            FiniteFamily::E7 => "E7",
            FiniteFamily::E8 => "E8",
            FiniteFamily::F4 => "F4",
            FiniteFamily::H3 => "H3",
            FiniteFamily::H4 => "H4",
            FiniteFamily::I2(_) => "I2",
        }
    }

    /// The dihedral parameter for `I2(m)`.
    pub fn parameter(self) -> Option<u32> {
        match self {
            FiniteFamily::I2(m) => Some(m),
            _ => None,
        }
    }

    /// Number of positive roots, which is the length of the longest element.
    pub fn positive_roots(self) -> u64 {
        match self {
            FiniteFamily::A(n) => (n * (n + 1) / 2) as u64,
            FiniteFamily::B(n) => (n * n) as u64,
            FiniteFamily::D(n) => (n * (n - 1)) as u64,
            FiniteFamily::E6 => 36,
            FiniteFamily::E7 => 63,
            FiniteFamily::E8 => 120,
            FiniteFamily::F4 => 24,
            FiniteFamily::H3 => 15,
            FiniteFamily::H4 => 60,
            FiniteFamily::I2(m) => m as u64,
        }
    }

    pub fn group_order(self) -> u128 {
        let factorial = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            FiniteFamily::A(n) => factorial(n + 1),
            FiniteFamily::B(n) => (1u128 << n) * factorial(n),
            FiniteFamily::D(n) => (1u128 << (n - 1)) * factorial(n),
            FiniteFamily::E6 => 51_840,
            FiniteFamily::E7 => 2_903_040,
            FiniteFamily::E8 => 696_729_600,
            FiniteFamily::F4 => 1_152,
            FiniteFamily::H3 => 120,
            FiniteFamily::H4 => 14_400,
            FiniteFamily::I2(m) => 2 * m as u128,
        }
    }

    /// Edges `(i, j, m)` of the standard diagram on vertices `0..rank`.
    fn diagram(self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize, labels: &dyn Fn(usize) -> u32| {
            (0..n.saturating_sub(1))
                .map(|i| (i, i + 1, labels(i)))
                .collect::<Vec<_>>()
        };
        match self {
            FiniteFamily::A(n) => path(n, &|_| 3),
            FiniteFamily::B(n) => path(n, &|i| if i == 0 { 4 } else { 3 }),
            FiniteFamily::D(n) => {
                let mut e = path(n - 1, &|_| 3);
                e.push((n - 3, n - 1, 3));
                e
            }
            FiniteFamily::E6 | FiniteFamily::E7 | FiniteFamily::E8 => {
                let n = self.rank();
                let mut e = path(n - 1, &|_| 3);
                e.push((2, n - 1, 3));
                e
            }
            FiniteFamily::F4 => path(4, &|i| if i == 1 { 4 } else { 3 }),
            FiniteFamily::H3 => path(3, &|i| if i == 0 { 5 } else { 3 }),
            FiniteFamily::H4 => path(4, &|i| if i == 0 { 5 } else { 3 }),
            FiniteFamily::I2(m) => vec![(0, 1, m)],
        }
    }

    /// Candidate families with `n` generators.
    fn candidates(n: usize, dihedral: Option<Order>) -> Vec<FiniteFamily> {
        match n {
            0 => vec![],
            1 => vec![FiniteFamily::A(1)],
            2 => match dihedral {
                Some(Order::Finite(3)) => vec![FiniteFamily::A(2)],
                Some(Order::Finite(4)) => vec![FiniteFamily::B(2)],
                Some(Order::Finite(m)) if m >= 5 => vec![FiniteFamily::I2(m)],
                _ => vec![],
            },
            _ => {
                let mut c = vec![FiniteFamily::A(n), FiniteFamily::B(n)];
                if n >= 4 {
                    c.push(FiniteFamily::D(n));
                }
                match n {
                    3 => c.push(FiniteFamily::H3),
                    4 => c.extend([FiniteFamily::F4, FiniteFamily::H4]),
                    6 => c.push(FiniteFamily::E6),
                    7 => c.push(FiniteFamily::E7),
                    8 => c.push(FiniteFamily::E8),
                    _ => {}
                }
                c
            }
        }
    }
}

impl fmt::Display for FiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteFamily::A(n) | FiniteFamily::B(n) | FiniteFamily::D(n) => {
                write!(f, "{}{n}", self.label())
            }
            FiniteFamily::I2(m) => write!(f, "I2({m})"),
            _ => f.write_str(self.label()),
        }
    }
}

/// A matched diagram component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentType {
    pub generators: SubsetMask,
    pub family: FiniteFamily,
}

/// Classification verdict for a parabolic subgroup `W_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypeInfo {
    pub subset: SubsetMask,
    pub finite: bool,
    /// Per-component types; filled only when `finite`.
    pub components: Vec<ComponentType>,
    /// Length of the longest element; `Some` exactly when `finite`.
    pub longest_length: Option<u64>,
    /// Group order; `Some` exactly when `finite`.
    pub order: Option<u128>,
}

impl FiniteTypeInfo {
    /// Product notation such as `A2 x A1`, or `infinite`.
    pub fn type_name(&self) -> String {
        if !self.finite {
            return "infinite".to_string();
        }
        if self.components.is_empty() {
            return "trivial".to_string();
        }
        self.components
            .iter()
            .map(|c| c.family.to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn edge_label(m: Order) -> u32 {
    match m {
        Order::Finite(k) => k,
        Order::Infinite => u32::MAX,
    }
}

/// Labelled adjacency matrix of the diagram on `vertices`; 0 means no edge.
fn labelled_adjacency(matrix: &CoxeterMatrix, vertices: &[usize]) -> Vec<Vec<u32>> {
    vertices
        .iter()
        .map(|&i| {
            vertices
                .iter()
                .map(|&j| {
                    let m = matrix.order(i, j);
                    if i != j && m.is_edge() {
                        edge_label(m)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn template_adjacency(family: FiniteFamily) -> Vec<Vec<u32>> {
    let n = family.rank();
    let mut adj = vec![vec![0; n]; n];
    for (i, j, m) in family.diagram() {
        adj[i][j] = m;
        adj[j][i] = m;
    }
    adj
}

fn degree_profile(adj: &[Vec<u32>]) -> (Vec<usize>, Vec<u32>) {
    let mut degrees: Vec<usize> = adj
        .iter()
        .map(|row| row.iter().filter(|&&m| m != 0).count())
        .collect();
    degrees.sort_unstable();
    let mut labels: Vec<u32> = adj
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row[i + 1..].iter().copied().filter(|&m| m != 0))
        .collect();
    labels.sort_unstable();
    (degrees, labels)
}

/// Backtracking search for a label-preserving bijection `a -> b`.
fn isomorphic(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    fn extend(a: &[Vec<u32>], b: &[Vec<u32>], image: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = image.len();
        if v == a.len() {
            return true;
        }
        let deg = |adj: &[Vec<u32>], x: usize| adj[x].iter().filter(|&&m| m != 0).count();
        for cand in 0..b.len() {
            if used[cand] || deg(a, v) != deg(b, cand) {
                continue;
            }
            if (0..v).all(|u| a[v][u] == b[cand][image[u]]) {
                used[cand] = true;
                image.push(cand);
                if extend(a, b, image, used) {
                    return true;
                }
                image.pop();
                used[cand] = false;
            }
        }
        false
    }
    if a.len() != b.len() || degree_profile(a) != degree_profile(b) {
        return false;
    }
    extend(
        a,
        b,
        &mut Vec::with_capacity(a.len()),
        &mut vec![false; b.len()],
    )
}

fn match_component(matrix: &CoxeterMatrix, component: SubsetMask) -> Option<FiniteFamily> {
    let vertices: Vec<usize> = component.iter().collect();
    let dihedral = (vertices.len() == 2).then(|| matrix.order(vertices[0], vertices[1]));
    let adj = labelled_adjacency(matrix, &vertices);
    FiniteFamily::candidates(vertices.len(), dihedral)
        .into_iter()
        .find(|&family| isomorphic(&adj, &template_adjacency(family)))
}

/// Classifies `W_T`.
pub fn classify(matrix: &CoxeterMatrix, subset: SubsetMask) -> FiniteTypeInfo {
    let mut components = Vec::new();
    for generators in matrix.diagram_components(subset) {
        match match_component(matrix, generators) {
            Some(family) => components.push(ComponentType { generators, family }),
            None => {
                return FiniteTypeInfo {
                    subset,
                    finite: false,
                    components: Vec::new(),
                    longest_length: None,
                    order: None,
                }
            }
        }
    }
    let longest = components.iter().map(|c| c.family.positive_roots()).sum();
    let order = components.iter().map(|c| c.family.group_order()).product();
    FiniteTypeInfo {
        subset,
        finite: true,
        components,
        longest_length: Some(longest),
        order: Some(order),
    }
}

pub fn is_spherical(matrix: &CoxeterMatrix, subset: SubsetMask) -> bool {
    classify(matrix, subset).finite
}

/// All spherical subsets, in increasing mask order.
pub fn spherical_subsets(matrix: &CoxeterMatrix) -> Vec<SubsetMask> {
    matrix
        .full_mask()
        .subsets()
        .filter(|&t| is_spherical(matrix, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CoxeterMatrix {
        s.parse().unwrap()
    }

    fn classify_full(s: &str) -> FiniteTypeInfo {
        let m = parse(s);
        classify(&m, m.full_mask())
    }

    #[test]
    fn empty_subset_is_finite_with_zero_length() {
        let m = parse("rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3");
        let info = classify(&m, SubsetMask::EMPTY);
        assert!(info.finite);
        assert_eq!(info.longest_length, Some(0));
        assert_eq!(info.order, Some(1));
    }

    #[test]
    fn small_types() {
        let a2 = classify_full("rank 2\nm 1 2 3");
        assert_eq!(a2.components[0].family, FiniteFamily::A(2));
        assert_eq!(a2.longest_length, Some(3));

        let b2 = classify_full("rank 2\nm 1 2 4");
        assert_eq!(b2.components[0].family, FiniteFamily::B(2));

        let g2 = classify_full("rank 2\nm 1 2 6");
        assert_eq!(g2.components[0].family, FiniteFamily::I2(6));
        assert_eq!(g2.longest_length, Some(6));

        assert!(!classify_full("rank 2\nm 1 2 inf").finite);
        assert!(!classify_full("rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3").finite);
    }

    #[test]
    fn rank_three_catalog() {
        assert_eq!(
            classify_full("rank 3\nm 1 2 5\nm 2 3 3").longest_length,
            Some(15)
        );
        assert_eq!(
            classify_full("rank 3\nm 2 3 5\nm 1 2 3").longest_length,
            Some(15)
        );
        assert_eq!(
            classify_full("rank 3\nm 1 2 4\nm 2 3 3").longest_length,
            Some(9)
        );
        assert_eq!(
            classify_full("rank 3\nm 1 2 3\nm 2 3 3").longest_length,
            Some(6)
        );
        // B3 with the 4 at the other end of the path.
        assert_eq!(
            classify_full("rank 3\nm 1 2 3\nm 2 3 4").longest_length,
            Some(9)
        );
        assert!(!classify_full("rank 3\nm 1 2 4\nm 2 3 4").finite);
        assert!(!classify_full("rank 3\nm 1 2 5\nm 2 3 4").finite);
        assert!(!classify_full("rank 3\nm 1 2 6\nm 2 3 3").finite);
        assert!(!classify_full("rank 3\nm 1 2 4\nm 2 3 4\nm 1 3 2").finite);
        assert!(!classify_full("rank 3\nm 1 2 3\nm 2 3 7").finite);
    }

    #[test]
    fn exceptional_and_branched_types() {
        let d4 = classify_full("rank 4\nm 1 2 3\nm 2 3 3\nm 2 4 3");
        assert_eq!(d4.components[0].family, FiniteFamily::D(4));
        assert_eq!(d4.longest_length, Some(12));

        let f4 = classify_full("rank 4\nm 1 2 3\nm 2 3 4\nm 3 4 3");
        assert_eq!(f4.components[0].family, FiniteFamily::F4);

        let h4 = classify_full("rank 4\nm 1 2 5\nm 2 3 3\nm 3 4 3");
        assert_eq!(h4.components[0].family, FiniteFamily::H4);
        assert_eq!(h4.longest_length, Some(60));

        // E6 labelled in a scrambled order.
        let e6 = classify_full("rank 6\nm 6 5 3\nm 5 1 3\nm 1 2 3\nm 2 3 3\nm 1 4 3");
        assert_eq!(e6.components[0].family, FiniteFamily::E6);
        assert_eq!(e6.longest_length, Some(36));

        // Affine D4 (star with four arms) is infinite.
        assert!(!classify_full("rank 5\nm 1 2 3\nm 1 3 3\nm 1 4 3\nm 1 5 3").finite);
        // Affine E6: arms (2,2,2).
        assert!(
            !classify_full("rank 7\nm 1 2 3\nm 2 3 3\nm 1 4 3\nm 4 5 3\nm 1 6 3\nm 6 7 3").finite
        );
    }

    #[test]
    fn reducible_types_multiply() {
        let m = parse("rank 4\nm 1 2 3\nm 3 4 5");
        let info = classify(&m, m.full_mask());
        assert_eq!(info.type_name(), "A2 x I2(5)");
        assert_eq!(info.longest_length, Some(8));
        assert_eq!(info.order, Some(60));
    }

    #[test]
    fn spherical_subset_examples() {
        let dihedral = parse("rank 2\nm 1 2 inf");
        assert_eq!(
            spherical_subsets(&dihedral),
            vec![SubsetMask(0), SubsetMask(1), SubsetMask(2)]
        );
        assert_eq!(spherical_subsets(&parse("rank 2\nm 1 2 3")).len(), 4);
        let a2_tilde = parse("rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3");
        let s = spherical_subsets(&a2_tilde);
        assert_eq!(s.len(), 7);
        assert!(!s.contains(&a2_tilde.full_mask()));
    }

    #[test]
    fn catalog_table_values() {
        assert_eq!(FiniteFamily::A(3).group_order(), 24);
        assert_eq!(FiniteFamily::B(3).group_order(), 48);
        assert_eq!(FiniteFamily::D(4).group_order(), 192);
        assert_eq!(FiniteFamily::I2(7).group_order(), 14);
        assert_eq!(FiniteFamily::E8.positive_roots(), 120);
    }
}
