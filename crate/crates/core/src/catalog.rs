//! Built-in Coxeter systems covering finite, affine, hyperbolic and
//! right-angled behaviour.

use crate::matrix::CoxeterMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub cox: &'static str,
    /// Canonical display of `W(t)`, when recorded.
    pub expected_growth: Option<&'static str>,
    /// Sphere sizes from length 0 upwards, when recorded.
    pub expected_spheres: &'static [u64],
}

impl CatalogEntry {
    pub fn matrix(&self) -> CoxeterMatrix {
        self.cox.parse().expect("catalog entries parse")
    }
}

macro_rules! entry {
    ($name:expr, $desc:expr, $cox:expr, $growth:expr, $spheres:expr) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            cox: $cox,
            expected_growth: $growth,
            expected_spheres: $spheres,
        }
    };
}

pub static CATALOG: &[CatalogEntry] = &[
    entry!(
        "a1",
        "A1, order 2",
        "rank 1\n",
        Some("(1 + t) / (1)"),
        &[1, 1, 0]
    ),
    entry!(
        "a1xa1",
        "A1 x A1, order 4",
        "rank 2\n",
        Some("(1 + 2*t + t^2) / (1)"),
        &[1, 2, 1, 0]
    ),
    entry!(
        "a2",
        "A2, order 6",
        "rank 2\nm 1 2 3\n",
        Some("(1 + 2*t + 2*t^2 + t^3) / (1)"),
        &[1, 2, 2, 1, 0]
    ),
    entry!(
        "a3",
        "A3, order 24",
        "rank 3\nm 1 2 3\nm 2 3 3\n",
        Some("(1 + 3*t + 5*t^2 + 6*t^3 + 5*t^4 + 3*t^5 + t^6) / (1)"),
        &[1, 3, 5, 6, 5, 3, 1, 0]
    ),
    entry!(
        "b2",
        "B2, order 8",
        "rank 2\nm 1 2 4\n",
        Some("(1 + 2*t + 2*t^2 + 2*t^3 + t^4) / (1)"),
        &[1, 2, 2, 2, 1, 0]
    ),
    entry!(
        "b3",
        "B3, order 48",
        "rank 3\nm 1 2 4\nm 2 3 3\n",
        None,
        &[1, 3, 5, 7, 8, 8, 7, 5, 3, 1, 0]
    ),
    entry!(
        "h3",
        "H3, order 120",
        "rank 3\nm 1 2 5\nm 2 3 3\n",
        None,
        &[1, 3, 5, 7, 9, 11, 12, 12, 12, 12, 11, 9, 7, 5, 3, 1, 0]
    ),
    entry!(
        "i2-5",
        "I2(5), order 10",
        "rank 2\nm 1 2 5\n",
        None,
        &[1, 2, 2, 2, 2, 1, 0]
    ),
    entry!(
        "i2-6",
        "I2(6), order 12",
        "rank 2\nm 1 2 6\n",
        None,
        &[1, 2, 2, 2, 2, 2, 1, 0]
    ),
    entry!(
        "i2-7",
        "I2(7), order 14",
        "rank 2\nm 1 2 7\n",
        None,
        &[1, 2, 2, 2, 2, 2, 2, 1, 0]
    ),
    entry!(
        "i2-8",
        "I2(8), order 16",
        "rank 2\nm 1 2 8\n",
        None,
        &[1, 2, 2, 2, 2, 2, 2, 2, 1, 0]
    ),
    entry!(
        "inf-dihedral",
        "infinite dihedral group",
        "rank 2\nm 1 2 inf\n",
        Some("(1 + t) / (1 - t)"),
        &[1, 2, 2, 2, 2, 2]
    ),
    entry!(
        "tilde-a2",
        "affine triangle group (3,3,3)",
        "rank 3\nm 1 2 3\nm 1 3 3\nm 2 3 3\n",
        None,
        &[1, 3, 6, 9, 12]
    ),
    entry!(
        "triangle-244",
        "affine triangle group (2,4,4)",
        "rank 3\nm 1 2 4\nm 2 3 4\n",
        None,
        &[1, 3, 5, 8, 11, 13, 16, 19, 21]
    ),
    entry!(
        "triangle-237",
        "hyperbolic triangle group (2,3,7)",
        "rank 3\nm 1 2 3\nm 2 3 7\n",
        None,
        &[1, 3, 5, 7, 9, 12, 16, 20, 24]
    ),
    entry!(
        "free-product",
        "free product of three copies of Z/2",
        "rank 3\nm 1 2 inf\nm 1 3 inf\nm 2 3 inf\n",
        None,
        &[1, 3, 6, 12, 24]
    ),
    entry!(
        "right-angled-4",
        "right-angled, generators commuting along the path 1-2-3-4",
        "rank 4\nm 1 3 inf\nm 1 4 inf\nm 2 4 inf\n",
        Some("(1 + 2*t + t^2) / (1 - 2*t)"),
        &[1, 4, 9, 18, 36, 72, 144, 288, 576]
    ),
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_unique_and_entries_parse() {
        let names: HashSet<_> = CATALOG.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), CATALOG.len());
        for e in CATALOG {
            let m = e.matrix();
            assert_eq!(
                m.to_cox_string(),
                e.cox,
                "{} is not in canonical form",
                e.name
            );
        }
    }
}
