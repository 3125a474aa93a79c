//! Simplex censuses of the Coxeter complex, the Davis complex and the Tits
//! non-complex, all built over the chamber `Y` by gluing copies `wY`.
//!
//! Simplices are purely combinatorial. A simplex of type `T` in chamber `wY`
//! is identified with the coset `w W_T` plus its face of `Y`:
//!
//! * Coxeter complex: one face `Delta_T` per proper subset `T`, of dimension
//!   `|S| - |T| - 1`.
//! * Davis complex: one simplex per strict chain `T_0 < T_1 < ... < T_k` of
//!   spherical subsets, of dimension `k` and type `T_0`.
//! * Tits non-complex: one face `Delta_T` per spherical `T`, of dimension
//!   `|S| - |T| - 1`. For finite `W` this includes `T = S`, the empty face of
//!   dimension `-1`.
//!
//! `l(sigma)` is the least length of a chamber containing `sigma`, `L(sigma)`
//! the greatest. Both are found by exhaustive search over the coset inside
//! an enumerated ball, never by a closed formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::growth::{chi_coefficient, GrowthTable};
use crate::matrix::{CoxeterMatrix, SubsetMask};
use crate::oracle::{bfs_enumerate, Ball, NormalFormWord};
use crate::ratfunc::{RationalFunction, SeriesTruncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Coxeter,
    Davis,
    Tits,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 3] = [ComplexKind::Coxeter, ComplexKind::Davis, ComplexKind::Tits];

    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Coxeter => "coxeter",
            ComplexKind::Davis => "davis",
            ComplexKind::Tits => "tits",
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown complex `{s}`")))
    }
}

/// One simplex of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexRecord {
    pub kind: ComplexKind,
    /// Shortest element of the coset of chambers containing the simplex.
    pub coset_rep: NormalFormWord,
    /// The type `S(sigma)`.
    pub subgroup: SubsetMask,
    /// `[T]` for Coxeter and Tits simplices; the chain `T_0 < ... < T_k`
    /// for Davis simplices.
    pub chain: Vec<SubsetMask>,
    pub dim: i64,
    /// `l(sigma)`, or `L(sigma)` for the Tits non-complex.
    pub length_value: usize,
}

impl SimplexRecord {
    pub fn sign(&self) -> i64 {
        if self.dim.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn face_dim(rank: usize, t: SubsetMask) -> i64 {
    rank as i64 - t.len() as i64 - 1
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn is_finite_group(matrix: &CoxeterMatrix) -> bool {
    classify(matrix, matrix.full_mask()).finite
}

fn require_infinite_for_davis(matrix: &CoxeterMatrix, kind: ComplexKind) -> Result<()> {
    if kind == ComplexKind::Davis && is_finite_group(matrix) {
        Err(Error::DavisFiniteGroup)
    } else {
        Ok(())
    }
}

/// The possible types of simplices of the given complex.
pub fn simplex_types(matrix: &CoxeterMatrix, kind: ComplexKind) -> Vec<SubsetMask> {
    let full = matrix.full_mask();
    full.subsets()
        .filter(|&t| match kind {
            ComplexKind::Coxeter => t != full,
            ComplexKind::Davis | ComplexKind::Tits => classify(matrix, t).finite,
        })
        .collect()
}

/// All strict chains of spherical subsets starting at `base`.
pub fn davis_chains(spherical: &[SubsetMask], base: SubsetMask) -> Vec<Vec<SubsetMask>> {
    fn extend(
        spherical: &[SubsetMask],
        chain: &mut Vec<SubsetMask>,
        out: &mut Vec<Vec<SubsetMask>>,
    ) {
        out.push(chain.clone());
        let last = *chain.last().unwrap();
        for &u in spherical {
            if u != last && last.is_subset_of(u) {
                chain.push(u);
                extend(spherical, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(spherical, &mut vec![base], &mut out);
    out
}

/// Chains of the Davis chamber grouped by their minimum.
fn chains_by_type(spherical: &[SubsetMask]) -> BTreeMap<SubsetMask, Vec<Vec<SubsetMask>>> {
    spherical
        .iter()
        .map(|&t| (t, davis_chains(spherical, t)))
        .collect()
}

/// `sum (-1)^dim` over the simplices of `D` of type `T`: the interior
/// simplices of the cone `D_T`.
pub fn davis_type_sum(matrix: &CoxeterMatrix, t: SubsetMask) -> i64 {
    let spherical = simplex_types(matrix, ComplexKind::Davis);
    davis_chains(&spherical, t)
        .iter()
        .map(|c| parity(c.len() as i64 - 1))
        .sum()
}

/// Every simplex whose length value lies in the ball, each exactly once,
/// sorted by `(length_value, type, coset_rep, chain)`.
pub fn enumerate_in_ball(ball: &Ball, kind: ComplexKind) -> Result<Vec<SimplexRecord>> {
    let matrix = ball.matrix();
    require_infinite_for_davis(matrix, kind)?;
    let rank = matrix.rank();
    let types = simplex_types(matrix, kind);
    let chains = match kind {
        ComplexKind::Davis => chains_by_type(&types),
        _ => BTreeMap::new(),
    };
    let mut records = Vec::new();
    for id in 0..ball.len() {
        for &t in &types {
            match kind {
                ComplexKind::Coxeter | ComplexKind::Davis => {
                    // Record each coset once, from its shortest element.
                    if ball.coset_min(id, t)? != id {
                        continue;
                    }
                    let rep = ball.element(id).word.clone();
                    if kind == ComplexKind::Coxeter {
                        records.push(SimplexRecord {
                            kind,
                            coset_rep: rep,
                            subgroup: t,
                            chain: vec![t],
                            dim: face_dim(rank, t),
                            length_value: ball.length(id),
                        });
                    } else {
                        for chain in &chains[&t] {
                            records.push(SimplexRecord {
                                kind,
                                coset_rep: rep.clone(),
                                subgroup: t,
                                chain: chain.clone(),
                                dim: chain.len() as i64 - 1,
                                length_value: ball.length(id),
                            });
                        }
                    }
                }
                ComplexKind::Tits => {
                    // Record each coset once, from its longest element; a
                    // coset leaving the ball has L beyond the horizon.
                    let Some(coset) = ball.coset_closure(id, t) else {
                        continue;
                    };
                    let max_len = coset.iter().map(|&(x, _)| ball.length(x)).max().unwrap();
                    let longest: Vec<usize> = coset
                        .iter()
                        .filter(|&&(x, _)| ball.length(x) == max_len)
                        .map(|&(x, _)| x)
                        .collect();
                    if longest.len() != 1 {
                        return Err(Error::InvariantViolation(format!(
                            "coset {} W_{t} has {} longest elements",
                            ball.element(id).word,
                            longest.len()
                        )));
                    }
                    if longest[0] != id {
                        continue;
                    }
                    let shortest = coset
                        .iter()
                        .map(|&(x, _)| x)
                        .min_by_key(|&x| ball.length(x))
                        .unwrap();
                    records.push(SimplexRecord {
                        kind,
                        coset_rep: ball.element(shortest).word.clone(),
                        subgroup: t,
                        chain: vec![t],
                        dim: face_dim(rank, t),
                        length_value: max_len,
                    });
                }
            }
        }
    }
    records.sort_by(|a, b| {
        (a.length_value, a.subgroup, &a.coset_rep, &a.chain).cmp(&(
            b.length_value,
            b.subgroup,
            &b.coset_rep,
            &b.chain,
        ))
    });
    Ok(records)
}

/// Simplices with length value at most `horizon`.
pub fn enumerate_simplices(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    horizon: usize,
) -> Result<Vec<SimplexRecord>> {
    require_infinite_for_davis(matrix, kind)?;
    enumerate_in_ball(&bfs_enumerate(matrix, horizon)?, kind)
}

/// `sum (-1)^dim t^value` over the records, truncated at `horizon`.
pub fn series_from_records<'a, I>(records: I, horizon: usize) -> SeriesTruncation
where
    I: IntoIterator<Item = &'a SimplexRecord>,
{
    let mut series = SeriesTruncation::zeros(horizon);
    for r in records {
        if r.length_value <= horizon {
            series.coeffs_mut()[r.length_value] += BigInt::from(r.sign());
        }
    }
    series
}

/// Truncation of `chi_t(X)` (or `chi^t(X)` for the Tits non-complex).
pub fn chi_t_truncated(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    horizon: usize,
) -> Result<SeriesTruncation> {
    Ok(series_from_records(
        &enumerate_simplices(matrix, kind, horizon)?,
        horizon,
    ))
}

/// The census of simplices of one type, next to the closed form derived by
/// summing over the chambers containing each simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeCensus {
    pub kind: ComplexKind,
    pub subgroup: SubsetMask,
    pub census: SeriesTruncation,
    pub closed_form: SeriesTruncation,
}

impl TypeCensus {
    pub fn agrees(&self) -> bool {
        self.census == self.closed_form
    }
}

/// Closed form for the type-`T` part:
///
/// * Coxeter: `(-1)^{|S|-|T|-1} W(t) / W_T(t)`
/// * Davis: `(-1)^{|T|} chi_T W(t) / W_T(t)`
/// * Tits: `(-1)^{|S|-|T|-1} W(t) / W_T(1/t)`
pub fn closed_form(
    table: &GrowthTable,
    kind: ComplexKind,
    t: SubsetMask,
) -> Result<RationalFunction> {
    let matrix = table.matrix();
    let w = table.top();
    let wt = table.series(t);
    Ok(match kind {
        ComplexKind::Coxeter => w.checked_div(wt)?.scale(parity(face_dim(matrix.rank(), t))),
        ComplexKind::Davis => w
            .checked_div(wt)?
            .scale(t.sign() * chi_coefficient(matrix, t)),
        ComplexKind::Tits => w
            .checked_div(&wt.substitute_t_inverse())?
            .scale(parity(face_dim(matrix.rank(), t))),
    })
}

/// Type-by-type census for every valid type, sharing one ball and one
/// growth table.
pub fn census_by_type(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    horizon: usize,
) -> Result<Vec<TypeCensus>> {
    require_infinite_for_davis(matrix, kind)?;
    let ball = bfs_enumerate(matrix, horizon)?;
    let records = enumerate_in_ball(&ball, kind)?;
    let table = GrowthTable::build(matrix)?;
    simplex_types(matrix, kind)
        .into_iter()
        .map(|t| {
            Ok(TypeCensus {
                kind,
                subgroup: t,
                census: series_from_records(records.iter().filter(|r| r.subgroup == t), horizon),
                closed_form: closed_form(&table, kind, t)?.series_expand(horizon)?,
            })
        })
        .collect()
}

/// Census of the simplices of type `T` only.
pub fn chi_t_by_type(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    t: SubsetMask,
    horizon: usize,
) -> Result<TypeCensus> {
    if !simplex_types(matrix, kind).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "{t} is not a simplex type of the {kind} complex"
        )));
    }
    census_by_type(matrix, kind, horizon)?
        .into_iter()
        .find(|c| c.subgroup == t)
        .ok_or_else(|| Error::InvariantViolation(format!("type {t} missing from census")))
}

/// Result of checking `l(sigma) < l(w) <=> S(sigma) meets In(w)` over every
/// simplex of every chamber in a ball.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub chambers: usize,
    pub simplices: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// A simplex of `wY` has a shorter chamber than `wY` exactly when it lies in
/// a panel `(wY)_s` with `s` in `In(w)`, i.e. when its type meets `In(w)`.
pub fn check_panel_lemma(
    matrix: &CoxeterMatrix,
    kind: ComplexKind,
    horizon: usize,
) -> Result<LemmaReport> {
    if kind == ComplexKind::Tits {
        return Err(Error::InvalidArgument(
            "the descent lemma concerns the Coxeter and Davis complexes".into(),
        ));
    }
    require_infinite_for_davis(matrix, kind)?;
    let ball = bfs_enumerate(matrix, horizon)?;
    let types = simplex_types(matrix, kind);
    let chain_counts: BTreeMap<SubsetMask, usize> = match kind {
        ComplexKind::Davis => chains_by_type(&types)
            .into_iter()
            .map(|(t, c)| (t, c.len()))
            .collect(),
        _ => types.iter().map(|&t| (t, 1)).collect(),
    };
    let mut report = LemmaReport::default();
    for id in 0..ball.len() {
        report.chambers += 1;
        let element = ball.element(id);
        let w_len = element.length();
        for &t in &types {
            let sigma_len = ball.length(ball.coset_min(id, t)?);
            let shorter = sigma_len < w_len;
            let in_panel = !t.intersection(element.descents.mask()).is_empty();
            let n = chain_counts[&t];
            report.simplices += n;
            if shorter != in_panel {
                report.counterexamples.push(format!(
                    "w = {}, type {t}: l(sigma) = {sigma_len}, l(w) = {w_len}, In(w) = {} ({n} simplices)",
                    element.word,
                    element.descents.mask()
                ));
            }
        }
    }
    Ok(report)
}

/// Euler characteristic of the panel union `Y^A` in the chamber `Y`, by
/// direct simplex count.
pub fn panel_union_euler(matrix: &CoxeterMatrix, kind: ComplexKind, a: SubsetMask) -> Result<i64> {
    if !a.is_subset_of(matrix.full_mask()) {
        return Err(Error::InvalidArgument(format!(
            "{a} is not a set of generators"
        )));
    }
    match kind {
        ComplexKind::Coxeter => Ok(simplex_types(matrix, kind)
            .into_iter()
            .filter(|t| !t.intersection(a).is_empty())
            .map(|t| parity(face_dim(matrix.rank(), t)))
            .sum()),
        ComplexKind::Davis => {
            require_infinite_for_davis(matrix, kind)?;
            if !classify(matrix, a).finite {
                return Err(Error::InvalidArgument(format!(
                    "{a} has non-spherical subsets"
                )));
            }
            let spherical = simplex_types(matrix, kind);
            Ok(chains_by_type(&spherical)
                .into_iter()
                .filter(|(t, _)| !t.intersection(a).is_empty())
                .flat_map(|(_, chains)| chains)
                .map(|c| parity(c.len() as i64 - 1))
                .sum())
        }
        ComplexKind::Tits => Err(Error::InvalidArgument(
            "panel unions are computed for the Coxeter and Davis chambers".into(),
        )),
    }
}

/// Per-chamber contributions to the Tits census.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LocalSumReport {
    pub chambers: usize,
    pub failures: Vec<String>,
}

impl LocalSumReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each chamber `w`, `sum_{T <= In(w)} (-1)^{|S|-|T|-1}` must be
/// `(-1)^{|S|-1}` at `w = 1` and 0 elsewhere, and must equal the signed
/// count of Tits simplices whose longest chamber is `w`.
pub fn local_sum_check(matrix: &CoxeterMatrix, horizon: usize) -> Result<LocalSumReport> {
    let ball = bfs_enumerate(matrix, horizon)?;
    let rank = matrix.rank();
    let types = simplex_types(matrix, ComplexKind::Tits);
    let mut report = LocalSumReport::default();
    for (id, element) in ball.elements().iter().enumerate() {
        let direct: i64 = element
            .descents
            .mask()
            .subsets()
            .map(|t| parity(face_dim(rank, t)))
            .sum();
        // Signed count of faces of wY whose longest chamber is w. A coset
        // that leaves the ball has a chamber longer than w.
        let census: i64 = types
            .iter()
            .filter(|&&t| {
                ball.coset_closure(id, t).is_some_and(|coset| {
                    coset
                        .iter()
                        .all(|&(x, _)| ball.length(x) <= element.length())
                })
            })
            .map(|&t| parity(face_dim(rank, t)))
            .sum();
        let expected = if id == 0 { parity(rank as i64 - 1) } else { 0 };
        report.chambers += 1;
        if direct != expected || census != expected {
            report.failures.push(format!(
                "w = {}: direct sum {direct}, census {census}, expected {expected}",
                element.word
            ));
        }
    }
    Ok(report)
}
