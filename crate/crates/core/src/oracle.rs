//! Brute-force ground truth: reduced words, braid classes, descent sets, and
//! breadth-first enumeration of group elements by length.
//!
//! An element is represented by the lexicographically least word in its
//! braid class (all reduced words of an element have the same length, so
//! this is the ShortLex-least reduced word). Two reduced words represent the
//! same element exactly when one is reachable from the other by braid moves,
//! and a word is reduced exactly when no word in its braid class contains a
//! repeated adjacent letter.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, SubsetMask};

/// Largest braid class the oracle will enumerate.
pub const BRAID_CLASS_CAP: usize = 1_000_000;

/// Largest ball the oracle will enumerate.
pub const BALL_CAP: usize = 1_000_000;

/// A generator index, 0-based.
pub type Letter = u8;

/// Canonical reduced word of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalFormWord(Vec<Letter>);

impl NormalFormWord {
    pub fn identity() -> Self {
        NormalFormWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses 1-based digits (`"121"`) or dot-separated indices (`"1.12.3"`).
    /// `"e"` and `""` are the identity.
    pub fn parse_letters(s: &str) -> Option<Vec<Letter>> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Some(Vec::new());
        }
        let parts: Vec<&str> = if s.contains('.') {
            s.split('.').collect()
        } else {
            s.split("").filter(|p| !p.is_empty()).collect()
        };
        parts
            .into_iter()
            .map(|p| p.parse::<u8>().ok().filter(|&v| v >= 1).map(|v| v - 1))
            .collect()
    }
}

impl fmt::Display for NormalFormWord {
    /// 1-based letters; concatenated when every letter is a single digit,
    /// otherwise dot-separated. The identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.0.iter().all(|&l| l < 9) {
            ""
        } else {
            "."
        };
        let parts: Vec<String> = self.0.iter().map(|l| (l + 1).to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl Serialize for NormalFormWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Right descent set `In(w) = { s : l(ws) < l(w) }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DescentSet(pub SubsetMask);

impl DescentSet {
    pub fn mask(self) -> SubsetMask {
        self.0
    }
}

/// The braid-move partner of an alternating factor starting at `i`, if any.
fn braid_partner(matrix: &CoxeterMatrix, word: &[Letter], i: usize) -> Option<Vec<Letter>> {
    let a = *word.get(i)?;
    let b = *word.get(i + 1)?;
    if a == b {
        return None;
    }
    let m = matrix.order(a as usize, b as usize).finite()? as usize;
    if i + m > word.len() {
        return None;
    }
    let alternates = word[i..i + m]
        .iter()
        .enumerate()
        .all(|(k, &l)| l == if k % 2 == 0 { a } else { b });
    if !alternates {
        return None;
    }
    let mut out = word.to_vec();
    for (k, slot) in out[i..i + m].iter_mut().enumerate() {
        *slot = if k % 2 == 0 { b } else { a };
    }
    Some(out)
}

/// Closure of `{word}` under braid moves.
pub fn braid_class(matrix: &CoxeterMatrix, word: &[Letter]) -> Result<BTreeSet<Vec<Letter>>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if let Some(next) = braid_partner(matrix, &w, i) {
                if seen.insert(next.clone()) {
                    if seen.len() > BRAID_CLASS_CAP {
                        return Err(Error::OracleHorizon(format!(
                            "braid class of a length-{} word exceeds {BRAID_CLASS_CAP} words",
                            word.len()
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn has_square(word: &[Letter]) -> bool {
    word.windows(2).any(|p| p[0] == p[1])
}

/// Tits' criterion: reduced iff no braid-equivalent word has a repeated
/// adjacent letter.
pub fn is_reduced(matrix: &CoxeterMatrix, word: &[Letter]) -> Result<bool> {
    Ok(!braid_class(matrix, word)?.iter().any(|w| has_square(w)))
}

fn last_letters(class: &BTreeSet<Vec<Letter>>) -> SubsetMask {
    class
        .iter()
        .filter_map(|w| w.last())
        .fold(SubsetMask::EMPTY, |acc, &l| acc.insert(l as usize))
}

/// `In(w)` for a reduced word: the letters some braid-equivalent word ends with.
pub fn right_descents(matrix: &CoxeterMatrix, word: &NormalFormWord) -> Result<DescentSet> {
    Ok(DescentSet(last_letters(&braid_class(
        matrix,
        word.letters(),
    )?)))
}

/// Canonical form of a reduced word.
pub fn normal_form(matrix: &CoxeterMatrix, reduced: &[Letter]) -> Result<NormalFormWord> {
    let class = braid_class(matrix, reduced)?;
    Ok(NormalFormWord(class.into_iter().next().unwrap_or_default()))
}

/// Canonical form of the product of an arbitrary word, reducing letter by
/// letter.
pub fn reduce_word(matrix: &CoxeterMatrix, word: &[Letter]) -> Result<NormalFormWord> {
    let mut current: Vec<Letter> = Vec::new();
    for &s in word {
        if s as usize >= matrix.rank() {
            return Err(Error::InvalidArgument(format!(
                "generator {} out of range",
                s + 1
            )));
        }
        let class = braid_class(matrix, &current)?;
        match class.iter().find(|w| w.last() == Some(&s)) {
            Some(w) => current = w[..w.len() - 1].to_vec(),
            None => current.push(s),
        }
    }
    normal_form(matrix, &current)
}

/// One enumerated element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub word: NormalFormWord,
    pub descents: DescentSet,
}

impl Element {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// All elements of length at most `horizon`, layered by length, with the
/// right multiplication table restricted to the ball.
#[derive(Debug, Clone)]
pub struct Ball {
    matrix: CoxeterMatrix,
    horizon: usize,
    elements: Vec<Element>,
    /// `layer_starts[k]..layer_starts[k + 1]` are the ids of length `k`.
    layer_starts: Vec<usize>,
    /// `right_mul[id * rank + s]` is the id of `w s`, if inside the ball.
    right_mul: Vec<Option<u32>>,
}

/// Breadth-first enumeration of the ball of radius `horizon`.
///
/// Sphere `k + 1` is the set of canonical forms of `ws` for `w` in sphere
/// `k` and `s` not a right descent of `w`.
pub fn bfs_enumerate(matrix: &CoxeterMatrix, horizon: usize) -> Result<Ball> {
    let rank = matrix.rank();
    let mut elements = vec![Element {
        word: NormalFormWord::identity(),
        descents: DescentSet(SubsetMask::EMPTY),
    }];
    let mut layer_starts = vec![0, 1];
    let mut right_mul: Vec<Option<u32>> = vec![None; rank];
    // Every reduced word of the previous and current layers.
    let mut prev_words: HashMap<Vec<Letter>, u32> = HashMap::from([(Vec::new(), 0)]);

    for k in 0..horizon {
        let (lo, hi) = (layer_starts[k], layer_starts[k + 1]);
        if lo == hi {
            layer_starts.push(hi);
            continue;
        }
        let mut layer_words: HashMap<Vec<Letter>, u32> = HashMap::new();
        for id in lo..hi {
            for s in 0..rank {
                if elements[id].descents.0.contains(s) {
                    continue;
                }
                let mut candidate = elements[id].word.letters().to_vec();
                candidate.push(s as Letter);
                let target = match layer_words.get(&candidate) {
                    Some(&t) => t,
                    None => {
                        let class = braid_class(matrix, &candidate)?;
                        if class.iter().any(|w| has_square(w)) {
                            return Err(Error::InvariantViolation(format!(
                                "{} followed by a non-descent is not reduced",
                                elements[id].word
                            )));
                        }
                        if elements.len() >= BALL_CAP {
                            return Err(Error::OracleHorizon(format!(
                                "the ball of radius {horizon} has more than {BALL_CAP} elements"
                            )));
                        }
                        let new_id = elements.len() as u32;
                        let descents = last_letters(&class);
                        // Each descent s' of the new element leads back down
                        // to the element spelt by dropping a trailing s'.
                        right_mul.extend(std::iter::repeat_n(None, rank));
                        for w in &class {
                            let (&last, prefix) = w.split_last().expect("nonempty word");
                            let Some(&below) = prev_words.get(prefix) else {
                                return Err(Error::InvariantViolation(format!(
                                    "prefix of a length-{} reduced word missing from the ball",
                                    k + 1
                                )));
                            };
                            right_mul[new_id as usize * rank + last as usize] = Some(below);
                            right_mul[below as usize * rank + last as usize] = Some(new_id);
                        }
                        let canonical = class.iter().next().cloned().unwrap_or_default();
                        for w in class {
                            layer_words.insert(w, new_id);
                        }
                        elements.push(Element {
                            word: NormalFormWord(canonical),
                            descents: DescentSet(descents),
                        });
                        new_id
                    }
                };
                if right_mul[id * rank + s] != Some(target) {
                    return Err(Error::InvariantViolation(format!(
                        "inconsistent multiplication table at {} * {}",
                        elements[id].word,
                        s + 1
                    )));
                }
            }
        }
        prev_words = layer_words;
        layer_starts.push(elements.len());
    }

    Ok(Ball {
        matrix: matrix.clone(),
        horizon,
        elements,
        layer_starts,
        right_mul,
    })
}

impl Ball {
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Element {
        &self.elements[id]
    }

    pub fn length(&self, id: usize) -> usize {
        self.elements[id].length()
    }

    /// Ids of the elements of length `k`.
    pub fn sphere_ids(&self, k: usize) -> std::ops::Range<usize> {
        self.layer_starts[k]..self.layer_starts[k + 1]
    }

    pub fn sphere(&self, k: usize) -> &[Element] {
        &self.elements[self.sphere_ids(k)]
    }

    /// Number of elements of each length `0..=horizon`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.layer_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// True when the whole group fits inside the ball.
    pub fn exhausts_group(&self) -> bool {
        self.sphere_sizes().last() == Some(&0)
    }

    /// Id of `w s`, or `None` if it lies outside the ball.
    pub fn mul(&self, id: usize, s: usize) -> Option<usize> {
        self.right_mul[id * self.matrix.rank() + s].map(|v| v as usize)
    }

    /// Id of the element spelt by `letters`, if the whole walk stays in the ball.
    pub fn locate(&self, letters: &[Letter]) -> Option<usize> {
        letters
            .iter()
            .try_fold(0usize, |id, &s| self.mul(id, s as usize))
    }

    /// The right coset `w W_T` as ids, with each element's distance from `w`
    /// in the `T`-Cayley graph, or `None` if the coset leaves the ball.
    pub fn coset_closure(&self, id: usize, subset: SubsetMask) -> Option<Vec<(usize, usize)>> {
        let mut dist: HashMap<usize, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([id]);
        let mut order = vec![(id, 0)];
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for t in subset.iter() {
                let y = self.mul(x, t)?;
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    order.push((y, d + 1));
                    queue.push_back(y);
                }
            }
        }
        Some(order)
    }

    /// Shortest elements of `w W_T`, found by exhaustive search over the
    /// coset elements of length at most `l(w)`, which all lie in the ball
    /// and are connected through `T`-moves. Sorted ids.
    pub fn coset_minima(&self, id: usize, subset: SubsetMask) -> Vec<usize> {
        let bound = self.length(id);
        let mut seen: HashSet<usize> = HashSet::from([id]);
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for t in subset.iter() {
                if let Some(y) = self.mul(x, t) {
                    if self.length(y) <= bound && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        let min = seen.iter().map(|&x| self.length(x)).min().unwrap_or(bound);
        let mut minima: Vec<usize> = seen
            .into_iter()
            .filter(|&x| self.length(x) == min)
            .collect();
        minima.sort_unstable();
        minima
    }

    /// Shortest element of `w W_T`; errors if it is not unique.
    pub fn coset_min(&self, id: usize, subset: SubsetMask) -> Result<usize> {
        match self.coset_minima(id, subset).as_slice() {
            [single] => Ok(*single),
            many => Err(Error::InvariantViolation(format!(
                "coset {} W_{} has {} shortest elements",
                self.elements[id].word,
                subset,
                many.len()
            ))),
        }
    }
}

/// Outcome of the coset decomposition check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub subset: SubsetMask,
    pub horizon: usize,
    pub complete_cosets: usize,
    pub skipped_incomplete: usize,
    /// Length offsets `l(x) - l(u)` of every complete coset, sorted, keyed by
    /// shortest element.
    pub offsets: Vec<(NormalFormWord, Vec<usize>)>,
    pub violations: Vec<String>,
}

impl CosetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Groups the ball into right cosets of `W_T` and checks, for every coset
/// lying wholly inside the ball, that it has a unique shortest element `u`
/// and that `l(u v) = l(u) + l(v)` for all `v` in `W_T`.
pub fn coset_decomposition_check(
    matrix: &CoxeterMatrix,
    subset: SubsetMask,
    horizon: usize,
) -> Result<CosetReport> {
    let ball = bfs_enumerate(matrix, horizon)?;
    let mut report = CosetReport {
        subset,
        horizon,
        ..CosetReport::default()
    };
    let info = classify(matrix, subset);
    let mut assigned = vec![false; ball.len()];
    for id in 0..ball.len() {
        if assigned[id] {
            continue;
        }
        let Some(coset) = ball.coset_closure(id, subset) else {
            report.skipped_incomplete += 1;
            continue;
        };
        for &(x, _) in &coset {
            assigned[x] = true;
        }
        let min_len = coset.iter().map(|&(x, _)| ball.length(x)).min().unwrap();
        let shortest: Vec<usize> = coset
            .iter()
            .filter(|&&(x, _)| ball.length(x) == min_len)
            .map(|&(x, _)| x)
            .collect();
        if shortest.len() != 1 {
            report.violations.push(format!(
                "coset of {} has {} shortest elements",
                ball.element(id).word,
                shortest.len()
            ));
            continue;
        }
        let u = shortest[0];
        // Distances from u inside the coset are T-word lengths of u^-1 x.
        let from_u = ball
            .coset_closure(u, subset)
            .expect("same coset is complete");
        let mut offsets = Vec::with_capacity(from_u.len());
        for &(x, d) in &from_u {
            if ball.length(x) != min_len + d {
                report.violations.push(format!(
                    "l({}) = {} but l({}) + l_T = {} + {}",
                    ball.element(x).word,
                    ball.length(x),
                    ball.element(u).word,
                    min_len,
                    d
                ));
            }
            offsets.push(ball.length(x) - min_len);
        }
        if let Some(order) = info.order {
            if from_u.len() as u128 != order {
                report.violations.push(format!(
                    "coset of {} has {} elements, expected |W_T| = {order}",
                    ball.element(u).word,
                    from_u.len()
                ));
            }
        }
        offsets.sort_unstable();
        report.complete_cosets += 1;
        report.offsets.push((ball.element(u).word.clone(), offsets));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CoxeterMatrix {
        s.parse().unwrap()
    }

    fn words(ws: &[&str]) -> BTreeSet<Vec<Letter>> {
        ws.iter()
            .map(|w| NormalFormWord::parse_letters(w).unwrap())
            .collect()
    }

    fn letters(w: &str) -> Vec<Letter> {
        NormalFormWord::parse_letters(w).unwrap()
    }

    #[test]
    fn braid_class_examples() {
        let a2 = parse("rank 2\nm 1 2 3");
        assert_eq!(
            braid_class(&a2, &letters("121")).unwrap(),
            words(&["121", "212"])
        );
        assert_eq!(braid_class(&a2, &letters("1")).unwrap(), words(&["1"]));
        let b2 = parse("rank 2\nm 1 2 4");
        assert_eq!(
            braid_class(&b2, &letters("1212")).unwrap(),
            words(&["1212", "2121"])
        );
    }

    #[test]
    fn descent_examples() {
        let a2 = parse("rank 2\nm 1 2 3");
        let e = NormalFormWord::identity();
        assert_eq!(right_descents(&a2, &e).unwrap().mask(), SubsetMask::EMPTY);
        let w0 = normal_form(&a2, &letters("121")).unwrap();
        assert_eq!(
            right_descents(&a2, &w0).unwrap().mask(),
            SubsetMask::full(2)
        );
        let dihedral = parse("rank 2\nm 1 2 inf");
        let w = normal_form(&dihedral, &letters("1212")).unwrap();
        assert_eq!(
            right_descents(&dihedral, &w).unwrap().mask(),
            SubsetMask::singleton(1)
        );
    }

    #[test]
    fn reducedness() {
        let a2 = parse("rank 2\nm 1 2 3");
        assert!(is_reduced(&a2, &letters("121")).unwrap());
        assert!(!is_reduced(&a2, &letters("1212")).unwrap());
        assert!(!is_reduced(&a2, &letters("11")).unwrap());
        assert_eq!(
            reduce_word(&a2, &letters("1212")).unwrap().to_string(),
            "21"
        );
        assert_eq!(reduce_word(&a2, &letters("1221")).unwrap().to_string(), "e");
    }

    #[test]
    fn sphere_size_examples() {
        let a1 = parse("rank 1");
        assert_eq!(
            bfs_enumerate(&a1, 3).unwrap().sphere_sizes(),
            vec![1, 1, 0, 0]
        );
        let dihedral = parse("rank 2\nm 1 2 inf");
        assert_eq!(
            bfs_enumerate(&dihedral, 4).unwrap().sphere_sizes(),
            vec![1, 2, 2, 2, 2]
        );
        let a2 = parse("rank 2\nm 1 2 3");
        let ball = bfs_enumerate(&a2, 4).unwrap();
        assert_eq!(ball.sphere_sizes(), vec![1, 2, 2, 1, 0]);
        assert!(ball.exhausts_group());
    }

    #[test]
    fn multiplication_table_is_an_involution() {
        let m = parse("rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3");
        let ball = bfs_enumerate(&m, 6).unwrap();
        for id in 0..ball.len() {
            for s in 0..3 {
                if let Some(y) = ball.mul(id, s) {
                    assert_eq!(ball.mul(y, s), Some(id));
                    assert_eq!(ball.length(y).abs_diff(ball.length(id)), 1);
                }
            }
            assert_eq!(ball.locate(ball.element(id).word.letters()), Some(id));
        }
    }

    #[test]
    fn coset_check_examples() {
        let a2 = parse("rank 2\nm 1 2 3");
        let trivial = coset_decomposition_check(&a2, SubsetMask::EMPTY, 3).unwrap();
        assert!(trivial.passed());
        assert_eq!(trivial.complete_cosets, 6);

        let r = coset_decomposition_check(&a2, SubsetMask::singleton(0), 3).unwrap();
        assert!(r.passed());
        let shortest: Vec<String> = r.offsets.iter().map(|(u, _)| u.to_string()).collect();
        assert_eq!(shortest, vec!["e", "2", "12"]);
        assert!(r.offsets.iter().all(|(_, o)| o == &vec![0, 1]));

        let a2_tilde = parse("rank 3\nm 1 2 3\nm 2 3 3\nm 1 3 3");
        let r = coset_decomposition_check(&a2_tilde, SubsetMask::from_indices([0, 1]), 8).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.complete_cosets > 0);
        assert!(r.offsets.iter().all(|(_, o)| o == &vec![0, 1, 1, 2, 2, 3]));
    }

    #[test]
    fn word_display_and_parse() {
        assert_eq!(NormalFormWord(vec![0, 1, 0]).to_string(), "121");
        assert_eq!(NormalFormWord(vec![0, 11]).to_string(), "1.12");
        assert_eq!(NormalFormWord::parse_letters("1.12"), Some(vec![0, 11]));
        assert_eq!(NormalFormWord::parse_letters("e"), Some(vec![]));
        assert_eq!(NormalFormWord::parse_letters("10"), None);
    }
}
