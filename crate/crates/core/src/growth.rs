//! Growth series `W_T(t)` of every parabolic subgroup, the coefficients
//! `chi_T`, the nerve links `L_T`, and symbolic checks of the four
//! alternating-sum identities.
//!
//! The series are built by recursion on `|T|`. Write
//! `Sigma(T) = sum_{T' < T} (-1)^{|T'|} / W_{T'}` over proper subsets. Then
//!
//! * for infinite `W_T`: `(-1)^{|T|} / W_T = -Sigma(T)`;
//! * for finite `W_T` with longest element of length `m`:
//!   `W_T = (t^m - (-1)^{|T|}) / Sigma(T)`.

use std::fmt;

use serde::Serialize;

use crate::classify::{classify, FiniteTypeInfo};
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, SubsetMask};
use crate::ratfunc::RationalFunction;

/// One entry of the growth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthEntry {
    pub series: RationalFunction,
    pub info: FiniteTypeInfo,
}

/// `W_T(t)` for every `T` contained in a fixed subset of `S`.
#[derive(Debug, Clone)]
pub struct GrowthTable {
    matrix: CoxeterMatrix,
    root: SubsetMask,
    entries: Vec<Option<GrowthEntry>>,
}

impl GrowthTable {
    /// Table over all subsets of `S`.
    pub fn build(matrix: &CoxeterMatrix) -> Result<Self> {
        Self::build_for(matrix, matrix.full_mask())
    }

    /// Table over the subsets of `root`, filled by increasing `|T|`.
    pub fn build_for(matrix: &CoxeterMatrix, root: SubsetMask) -> Result<Self> {
        let mut subsets: Vec<SubsetMask> = root.subsets().collect();
        subsets.sort_by_key(|t| (t.len(), *t));
        Self::build_in_order(matrix, root, &subsets)
    }

    /// Fills the table in the given order, which must list every subset of
    /// `root` after all of its proper subsets.
    pub fn build_in_order(
        matrix: &CoxeterMatrix,
        root: SubsetMask,
        order: &[SubsetMask],
    ) -> Result<Self> {
        let mut table = GrowthTable {
            matrix: matrix.clone(),
            root,
            entries: vec![None; 1usize << matrix.rank()],
        };
        for &t in order {
            let entry = table.compute_entry(t)?;
            table.entries[t.bits() as usize] = Some(entry);
        }
        Ok(table)
    }

    /// `Sigma(T)`: alternating sum of `1/W_{T'}` over proper subsets.
    fn proper_alternating_sum(&self, t: SubsetMask) -> Result<RationalFunction> {
        let mut sum = RationalFunction::zero();
        for sub in t.subsets().filter(|&sub| sub != t) {
            let w = &self
                .entries
                .get(sub.bits() as usize)
                .and_then(Option::as_ref)
                .ok_or_else(|| {
                    Error::InvariantViolation(format!("W_{sub} needed before it was computed"))
                })?
                .series;
            sum = &sum + &w.recip()?.scale(sub.sign());
        }
        Ok(sum)
    }

    fn compute_entry(&self, t: SubsetMask) -> Result<GrowthEntry> {
        let info = classify(&self.matrix, t);
        if t.is_empty() {
            return Ok(GrowthEntry {
                series: RationalFunction::one(),
                info,
            });
        }
        let sigma = self.proper_alternating_sum(t)?;
        let series = match info.longest_length {
            None => {
                if sigma.is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "1/W_{t} vanishes for a subgroup classified as infinite"
                    )));
                }
                // 1/W_T = -(-1)^{|T|} Sigma(T)
                sigma.scale(-t.sign()).recip()?
            }
            Some(m) => {
                if sigma.is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "alternating sum over proper subsets of {t} vanishes for a finite subgroup"
                    )));
                }
                let top =
                    &RationalFunction::t_power(m as usize) - &RationalFunction::integer(t.sign());
                let w = top.checked_div(&sigma)?;
                match w.as_polynomial() {
                    Some(p) if p.degree() == Some(m as usize) => {}
                    _ => {
                        return Err(Error::InvariantViolation(format!(
                            "W_{t} = {w} is not a polynomial of degree {m}"
                        )))
                    }
                }
                w
            }
        };
        Ok(GrowthEntry { series, info })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn root(&self) -> SubsetMask {
        self.root
    }

    pub fn entry(&self, t: SubsetMask) -> Option<&GrowthEntry> {
        self.entries.get(t.bits() as usize).and_then(Option::as_ref)
    }

    /// `W_T(t)`. Panics if `T` is not inside the table's root.
    pub fn series(&self, t: SubsetMask) -> &RationalFunction {
        &self
            .entry(t)
            .unwrap_or_else(|| panic!("{t} is outside the growth table"))
            .series
    }

    pub fn info(&self, t: SubsetMask) -> &FiniteTypeInfo {
        &self.entry(t).expect("subset outside the growth table").info
    }

    /// Spherical subsets of the root, in increasing mask order.
    pub fn spherical(&self) -> Vec<SubsetMask> {
        self.root
            .subsets()
            .filter(|&t| self.info(t).finite)
            .collect()
    }

    /// `W(t)` of the table's root.
    pub fn top(&self) -> &RationalFunction {
        self.series(self.root)
    }
}

/// `W_T(t)` via the recursion.
pub fn growth_series(matrix: &CoxeterMatrix, t: SubsetMask) -> Result<RationalFunction> {
    Ok(GrowthTable::build_for(matrix, t)?.top().clone())
}

/// `chi_T = sum over spherical U containing T of (-1)^{|U|}`.
pub fn chi_coefficient(matrix: &CoxeterMatrix, t: SubsetMask) -> i64 {
    chi_within(matrix, matrix.full_mask(), t)
}

/// The complex `L_T`: one simplex for each spherical `U` strictly containing
/// `T`, of dimension `|U| - |T| - 1`; its vertices are the sets `T + {u}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveLink {
    pub base: SubsetMask,
    /// `(U, dim)` in increasing mask order.
    pub simplices: Vec<(SubsetMask, usize)>,
}

impl NerveLink {
    pub fn vertices(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.simplices
            .iter()
            .filter(|(_, d)| *d == 0)
            .map(|(u, _)| *u)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|&(_, d)| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Each face of a simplex (a spherical set between `T` and `U`) is
    /// again a simplex.
    pub fn is_closed(&self) -> bool {
        self.simplices.iter().all(|&(u, _)| {
            u.difference(self.base).subsets().all(|extra| {
                extra.is_empty()
                    || self
                        .simplices
                        .iter()
                        .any(|&(v, _)| v == self.base.union(extra))
            })
        })
    }
}

/// Builds `L_T` by closing its vertex set under the simplex rule: a set of
/// vertices `T + {u_1}, ..., T + {u_k}` spans a simplex iff
/// `T + {u_1, ..., u_k}` is spherical.
pub fn nerve_link(matrix: &CoxeterMatrix, t: SubsetMask) -> NerveLink {
    let candidates: Vec<usize> = matrix
        .full_mask()
        .difference(t)
        .iter()
        .filter(|&u| classify(matrix, t.insert(u)).finite)
        .collect();
    let vertex_mask = SubsetMask::from_indices(candidates.iter().copied());
    let simplices = vertex_mask
        .subsets()
        .filter(|extra| !extra.is_empty())
        .filter(|&extra| classify(matrix, t.union(extra)).finite)
        .map(|extra| (t.union(extra), extra.len() - 1))
        .collect();
    NerveLink { base: t, simplices }
}

/// Which identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Identity {
    /// `sum_{T <= S} (-1)^{|T|} / W_T = 0`, for infinite `W`.
    InfiniteAlternatingSum = 1,
    /// `sum_{T <= S} (-1)^{|T|} / W_T = t^m / W`, for finite `W`.
    FiniteAlternatingSum = 2,
    /// `sum_{T spherical} (-1)^{|T|} chi_T / W_T = 1 / W(t)`.
    WeightedSpherical = 3,
    /// `sum_{T spherical} (-1)^{|T|} / W_T = 1 / W(1/t)`.
    Spherical = 4,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::InfiniteAlternatingSum,
        Identity::FiniteAlternatingSum,
        Identity::WeightedSpherical,
        Identity::Spherical,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.number() == n)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::InfiniteAlternatingSum => "sum_{T<=S} (-1)^|T| / W_T(t) = 0",
            Identity::FiniteAlternatingSum => "sum_{T<=S} (-1)^|T| / W_T(t) = t^m / W(t)",
            Identity::WeightedSpherical => "sum_{T spherical} (-1)^|T| chi_T / W_T(t) = 1 / W(t)",
            Identity::Spherical => "sum_{T spherical} (-1)^|T| / W_T(t) = 1 / W(1/t)",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityStatus {
    /// Both sides assembled independently and equal.
    Holds,
    /// Equal, but this identity was used to compute `W` itself.
    HoldsByConstruction,
    Fails,
    NotApplicable,
}

impl IdentityStatus {
    pub fn passed(self) -> bool {
        !matches!(self, IdentityStatus::Fails)
    }
}

impl fmt::Display for IdentityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityStatus::Holds => "holds",
            IdentityStatus::HoldsByConstruction => "holds (by construction)",
            IdentityStatus::Fails => "FAILS",
            IdentityStatus::NotApplicable => "not applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub status: IdentityStatus,
    pub lhs: Option<RationalFunction>,
    pub rhs: Option<RationalFunction>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        matches!(
            self.status,
            IdentityStatus::Holds | IdentityStatus::HoldsByConstruction
        )
    }
}

/// Assembles both sides of an identity from a full growth table.
pub fn verify_identity(table: &GrowthTable, which: Identity) -> Result<IdentityReport> {
    let matrix = table.matrix();
    let s = table.root();
    let top_info = table.info(s);
    let w = table.top();
    let not_applicable = IdentityReport {
        identity: which,
        status: IdentityStatus::NotApplicable,
        lhs: None,
        rhs: None,
    };
    let alternating = |filter: &dyn Fn(SubsetMask) -> bool,
                       weight: &dyn Fn(SubsetMask) -> i64|
     -> Result<RationalFunction> {
        let mut sum = RationalFunction::zero();
        for t in s.subsets().filter(|&t| filter(t)) {
            let c = t.sign() * weight(t);
            if c != 0 {
                sum = &sum + &table.series(t).recip()?.scale(c);
            }
        }
        Ok(sum)
    };
    let finite = |t: SubsetMask| table.info(t).finite;

    let (lhs, rhs, by_construction) = match which {
        Identity::InfiniteAlternatingSum => {
            if top_info.finite {
                return Ok(not_applicable);
            }
            (
                alternating(&|_| true, &|_| 1)?,
                RationalFunction::zero(),
                true,
            )
        }
        Identity::FiniteAlternatingSum => {
            let Some(m) = top_info.longest_length else {
                return Ok(not_applicable);
            };
            let rhs = RationalFunction::t_power(m as usize).checked_div(w)?;
            (alternating(&|_| true, &|_| 1)?, rhs, true)
        }
        Identity::WeightedSpherical => (
            alternating(&finite, &|t| chi_within(matrix, s, t))?,
            w.recip()?,
            false,
        ),
        Identity::Spherical => (
            alternating(&finite, &|_| 1)?,
            w.substitute_t_inverse().recip()?,
            false,
        ),
    };
    let status = match (lhs == rhs, by_construction) {
        (true, true) => IdentityStatus::HoldsByConstruction,
        (true, false) => IdentityStatus::Holds,
        (false, _) => IdentityStatus::Fails,
    };
    Ok(IdentityReport {
        identity: which,
        status,
        lhs: Some(lhs),
        rhs: Some(rhs),
    })
}

/// `chi_T` for the parabolic subsystem on `root`.
pub fn chi_within(matrix: &CoxeterMatrix, root: SubsetMask, t: SubsetMask) -> i64 {
    root.difference(t)
        .subsets()
        .map(|extra| t.union(extra))
        .filter(|&u| classify(matrix, u).finite)
        .map(SubsetMask::sign)
        .sum()
}

/// Every identity, in order.
pub fn verify_all(table: &GrowthTable) -> Result<Vec<IdentityReport>> {
    Identity::ALL
        .into_iter()
        .map(|i| verify_identity(table, i))
        .collect()
}
