//! Relations and correspondences between finite metric spaces, their
//! distortion, and Gromov-Hausdorff distance computation.
//!
//! Pairs are addressed by a flat index `i * n + j` for `(i, j)` in `X × Y`.
//! For `|X|·|Y| ≤ 25` a relation fits in a `u32` bitmask, which is how the
//! exhaustive enumeration and the exact solver walk the search space.

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::FiniteMetricSpace;

/// Largest `|X|·|Y|` accepted by the exhaustive routines.
pub const MAX_SEARCH_PAIRS: usize = 25;

/// A nonempty subset of `[0,m) × [0,n)`, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRelation")]
pub struct Relation {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawRelation {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<RawRelation> for Relation {
    type Error = Error;

    fn try_from(raw: RawRelation) -> Result<Self> {
        Relation::new(raw.m, raw.n, raw.pairs)
    }
}

impl Relation {
    pub fn new(m: usize, n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.is_empty() {
            return Err(Error::EmptyRelation);
        }
        for &(i, j) in &pairs {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i, len: m });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, len: n });
            }
        }
        Ok(Self { m, n, pairs })
    }

    /// Relation whose pair `(i, j)` is present iff bit `i * n + j` is set.
    pub fn from_mask(m: usize, n: usize, mask: u64) -> Result<Self> {
        if m * n > 64 {
            return Err(Error::SearchSpaceTooLarge { pairs: m * n, cap: 64 });
        }
        let pairs = (0..m * n).filter(|&p| mask >> p & 1 == 1).map(|p| (p / n, p % n));
        Self::new(m, n, pairs)
    }

    pub fn source_size(&self) -> usize {
        self.m
    }

    pub fn target_size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn mask(&self) -> Option<u64> {
        (self.m * self.n <= 64).then(|| self.pairs.iter().fold(0u64, |acc, &(i, j)| acc | 1 << (i * self.n + j)))
    }

    /// Both projections are onto.
    pub fn is_correspondence(&self) -> bool {
        self.uncovered().is_none()
    }

    fn uncovered(&self) -> Option<String> {
        let mut rows = vec![false; self.m];
        let mut cols = vec![false; self.n];
        for &(i, j) in &self.pairs {
            rows[i] = true;
            cols[j] = true;
        }
        if let Some(i) = rows.iter().position(|&c| !c) {
            return Some(format!("source point {i} is not covered"));
        }
        cols.iter().position(|&c| !c).map(|j| format!("target point {j} is not covered"))
    }
}

impl AsRef<Relation> for Relation {
    fn as_ref(&self) -> &Relation {
        self
    }
}

/// A relation with surjective projections onto both factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Relation", into = "Relation")]
pub struct Correspondence(Relation);

impl TryFrom<Relation> for Correspondence {
    type Error = Error;

    fn try_from(rel: Relation) -> Result<Self> {
        match rel.uncovered() {
            None => Ok(Self(rel)),
            Some(why) => Err(Error::NotCorrespondence(why)),
        }
    }
}

impl From<Correspondence> for Relation {
    fn from(c: Correspondence) -> Self {
        c.0
    }
}

impl AsRef<Relation> for Correspondence {
    fn as_ref(&self) -> &Relation {
        &self.0
    }
}

impl Correspondence {
    pub fn new(m: usize, n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Relation::new(m, n, pairs)?.try_into()
    }

    pub fn from_mask(m: usize, n: usize, mask: u64) -> Result<Self> {
        Relation::from_mask(m, n, mask)?.try_into()
    }

    pub fn identity(n: usize) -> Self {
        Self(Relation { m: n, n, pairs: (0..n).map(|i| (i, i)).collect() })
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn source_size(&self) -> usize {
        self.0.m
    }

    pub fn target_size(&self) -> usize {
        self.0.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0.pairs
    }

    pub fn len(&self) -> usize {
        self.0.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self) -> Option<u64> {
        self.0.mask()
    }

    /// The same pairs read as a correspondence from `Y` to `X`.
    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs().iter().map(|&(i, j)| (j, i)).collect();
        pairs.sort_unstable();
        Self(Relation { m: self.0.n, n: self.0.m, pairs })
    }

    pub fn is_bijection(&self) -> bool {
        self.0.m == self.0.n && self.len() == self.0.m
    }
}

fn check_sizes(rel: &Relation, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<()> {
    if rel.m != x.len() || rel.n != y.len() {
        return Err(Error::SizeMismatch { m: rel.m, n: rel.n, x: x.len(), y: y.len() });
    }
    Ok(())
}

/// `max | |xx'| - |yy'| |` over all pairs of elements of the relation.
pub fn distortion<R: AsRef<Relation>>(rel: &R, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64> {
    let rel = rel.as_ref();
    check_sizes(rel, x, y)?;
    Ok(raw_distortion(rel.pairs(), x, y))
}

fn raw_distortion(pairs: &[(usize, usize)], x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let mut worst = 0.0f64;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for &(i2, j2) in &pairs[k + 1..] {
            worst = worst.max((x.distance(i, i2) - y.distance(j, j2)).abs());
        }
    }
    worst
}

fn check_cap(m: usize, n: usize) -> Result<()> {
    if m * n > MAX_SEARCH_PAIRS {
        return Err(Error::SearchSpaceTooLarge { pairs: m * n, cap: MAX_SEARCH_PAIRS });
    }
    Ok(())
}

/// Every correspondence between `[0,m)` and `[0,n)`, in increasing bitmask
/// order.
pub fn enumerate_correspondences(m: usize, n: usize) -> Result<Correspondences> {
    check_cap(m, n)?;
    let row_masks = (0..m).map(|i| ((1u32 << n) - 1) << (i * n)).collect();
    let col_masks = (0..n).map(|j| (0..m).fold(0u32, |acc, i| acc | 1 << (i * n + j))).collect();
    Ok(Correspondences { m, n, next: 1, end: 1u64 << (m * n), row_masks, col_masks })
}

#[derive(Debug, Clone)]
pub struct Correspondences {
    m: usize,
    n: usize,
    next: u64,
    end: u64,
    row_masks: Vec<u32>,
    col_masks: Vec<u32>,
}

impl Iterator for Correspondences {
    type Item = Correspondence;

    fn next(&mut self) -> Option<Correspondence> {
        while self.next < self.end {
            let mask = self.next as u32;
            self.next += 1;
            let onto = self.row_masks.iter().all(|r| mask & r != 0) && self.col_masks.iter().all(|c| mask & c != 0);
            if onto {
                let pairs =
                    (0..self.m * self.n).filter(|&p| mask >> p & 1 == 1).map(|p| (p / self.n, p % self.n)).collect();
                return Some(Correspondence(Relation { m: self.m, n: self.n, pairs }));
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Heuristic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
        })
    }
}

/// A Gromov-Hausdorff value with the correspondence that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhResult {
    /// Half the distortion of `witness`.
    pub value: f64,
    pub method: Method,
    #[serde(rename = "certified")]
    pub is_certified_optimal: bool,
    pub witness: Correspondence,
}

/// Exact distance by branch-and-bound over pair-inclusion bitmasks.
///
/// Among all minimizers the witness has the fewest pairs, then the
/// lexicographically smallest sorted pair list.
pub fn gh_distance_exact(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<GhResult> {
    let (m, n) = (x.len(), y.len());
    check_cap(m, n)?;
    let mut search = ExactSearch::new(x, y);
    search.run();
    let witness = Correspondence::from_mask(m, n, u64::from(search.best_mask))?;
    Ok(GhResult { value: 0.5 * search.best_dis, method: Method::Exact, is_certified_optimal: true, witness })
}

struct ExactSearch {
    m: usize,
    n: usize,
    // conflict[p * mn + q] = | |x_p x_q| - |y_p y_q| |
    conflict: Vec<f64>,
    included: Vec<usize>,
    rows: Vec<u32>,
    cols: Vec<u32>,
    best_dis: f64,
    best_count: usize,
    best_mask: u32,
    best_pairs: Vec<usize>,
}

impl ExactSearch {
    fn new(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Self {
        let (m, n) = (x.len(), y.len());
        let mn = m * n;
        let mut conflict = vec![0.0; mn * mn];
        for p in 0..mn {
            for q in 0..mn {
                conflict[p * mn + q] = (x.distance(p / n, q / n) - y.distance(p % n, q % n)).abs();
            }
        }
        // The full product is always a correspondence; start from it.
        let best_dis = conflict.iter().copied().fold(0.0, f64::max);
        let best_mask = if mn == 32 { u32::MAX } else { (1u32 << mn) - 1 };
        Self {
            m,
            n,
            conflict,
            included: Vec::with_capacity(mn),
            rows: vec![0; m],
            cols: vec![0; n],
            best_dis,
            best_count: mn,
            best_mask,
            best_pairs: (0..mn).collect(),
        }
    }

    fn run(&mut self) {
        self.dfs(0, 0.0, 0);
    }

    fn dominated(&self, dis: f64, count: usize) -> bool {
        dis > self.best_dis || (dis == self.best_dis && count > self.best_count)
    }

    fn dfs(&mut self, k: usize, partial: f64, mask: u32) {
        let count = self.included.len();
        if self.dominated(partial, count) {
            return;
        }
        let mn = self.m * self.n;
        let (i, j) = if k < mn { (k / self.n, k % self.n) } else { (self.m, 0) };
        // A row is fully decided once we leave it; columns only in the last row.
        if j == 0 && i > 0 && self.rows[i - 1] == 0 {
            return;
        }
        if i == self.m - 1 && j > 0 && self.cols[j - 1] == 0 {
            return;
        }
        if k == mn {
            if self.cols[self.n - 1] == 0 {
                return;
            }
            let better = match partial.partial_cmp(&self.best_dis) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => (count, &self.included) < (self.best_count, &self.best_pairs),
                _ => false,
            };
            if better {
                self.best_dis = partial;
                self.best_count = count;
                self.best_mask = mask;
                self.best_pairs.clone_from(&self.included);
            }
            return;
        }

        let row = &self.conflict[k * mn..(k + 1) * mn];
        let with = self.included.iter().map(|&q| row[q]).fold(partial, f64::max);
        if !self.dominated(with, count + 1) {
            self.included.push(k);
            self.rows[i] += 1;
            self.cols[j] += 1;
            self.dfs(k + 1, with, mask | 1 << k);
            self.included.pop();
            self.rows[i] -= 1;
            self.cols[j] -= 1;
        }
        self.dfs(k + 1, partial, mask);
    }
}

/// `½ |diam X - diam Y|`, a lower bound for the distance.
pub fn gh_lower_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    0.5 * (x.diameter() - y.diameter()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    /// Cap on accepted moves per restart.
    pub iterations: usize,
    pub seed: u64,
    /// Extra runs from random correspondences after the greedy start.
    pub restarts: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self { iterations: 1000, seed: 0, restarts: 8 }
    }
}

/// Upper bound on the distance by first-improvement hill climbing over
/// correspondences. Moves add a pair, drop a pair, or retarget one end of a
/// pair; surjectivity is kept throughout.
pub fn gh_distance_heuristic(x: &FiniteMetricSpace, y: &FiniteMetricSpace, config: HeuristicConfig) -> GhResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut climber = Climber::new(x, y);

    let mut best = climber.climb(greedy_start(x, y), config.iterations, &mut rng);
    for _ in 0..config.restarts {
        let start = random_start(x.len(), y.len(), &mut rng);
        let found = climber.climb(start, config.iterations, &mut rng);
        if (found.0.dis, found.1.len()) < (best.0.dis, best.1.len()) {
            best = found;
        }
    }
    let (score, mut pairs) = best;
    pairs.sort_unstable();
    GhResult {
        value: 0.5 * score.dis,
        method: Method::Heuristic,
        is_certified_optimal: false,
        witness: Correspondence(Relation { m: x.len(), n: y.len(), pairs }),
    }
}

/// Pairs points of equal eccentricity rank, stretching the shorter list.
fn greedy_start(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Vec<(usize, usize)> {
    let by_ecc = |s: &FiniteMetricSpace| {
        let mut idx: Vec<usize> = (0..s.len()).collect();
        idx.sort_by(|&a, &b| s.eccentricity(a).total_cmp(&s.eccentricity(b)).then(a.cmp(&b)));
        idx
    };
    let (xs, ys) = (by_ecc(x), by_ecc(y));
    let (m, n) = (x.len(), y.len());
    let len = m.max(n);
    let mut pairs: Vec<_> = (0..len).map(|k| (xs[k * m / len], ys[k * n / len])).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn random_start(m: usize, n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut pairs: Vec<_> = (0..m).map(|i| (i, rng.gen_range(0..n))).collect();
    let mut covered = vec![false; n];
    for &(_, j) in &pairs {
        covered[j] = true;
    }
    for (j, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        pairs.push((rng.gen_range(0..m), j));
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Distortion first, then how many element pairs attain it, then the total
/// conflict. The tail breaks plateaus of the max objective.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Score {
    dis: f64,
    at_max: usize,
    total: f64,
}

impl Score {
    fn better_than(&self, other: &Score) -> bool {
        (self.dis, self.at_max, self.total) < (other.dis, other.at_max, other.total)
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Add((usize, usize)),
    Remove((usize, usize)),
    Swap((usize, usize), (usize, usize)),
}

struct Climber<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
}

impl<'a> Climber<'a> {
    fn new(x: &'a FiniteMetricSpace, y: &'a FiniteMetricSpace) -> Self {
        Self { x, y }
    }

    fn conflict(&self, (i, j): (usize, usize), (i2, j2): (usize, usize)) -> f64 {
        (self.x.distance(i, i2) - self.y.distance(j, j2)).abs()
    }

    fn score(&self, pairs: &[(usize, usize)]) -> Score {
        let mut dis = 0.0f64;
        let mut at_max = 0;
        let mut total = 0.0;
        for (k, &p) in pairs.iter().enumerate() {
            for &q in &pairs[k + 1..] {
                let c = self.conflict(p, q);
                total += c;
                match c.partial_cmp(&dis) {
                    Some(Ordering::Greater) => {
                        dis = c;
                        at_max = 1;
                    }
                    Some(Ordering::Equal) => at_max += 1,
                    _ => {}
                }
            }
        }
        Score { dis, at_max, total }
    }

    fn moves(&self, pairs: &[(usize, usize)]) -> Vec<Move> {
        let (m, n) = (self.x.len(), self.y.len());
        let mut member = vec![false; m * n];
        let mut rows = vec![0usize; m];
        let mut cols = vec![0usize; n];
        for &(i, j) in pairs {
            member[i * n + j] = true;
            rows[i] += 1;
            cols[j] += 1;
        }
        let mut moves = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if !member[i * n + j] {
                    moves.push(Move::Add((i, j)));
                }
            }
        }
        for &(i, j) in pairs {
            if rows[i] > 1 && cols[j] > 1 {
                moves.push(Move::Remove((i, j)));
            }
            if cols[j] > 1 {
                for j2 in (0..n).filter(|&j2| !member[i * n + j2]) {
                    moves.push(Move::Swap((i, j), (i, j2)));
                }
            }
            if rows[i] > 1 {
                for i2 in (0..m).filter(|&i2| !member[i2 * n + j]) {
                    moves.push(Move::Swap((i, j), (i2, j)));
                }
            }
        }
        moves
    }

    fn apply(pairs: &[(usize, usize)], mv: Move) -> Vec<(usize, usize)> {
        let mut next = pairs.to_vec();
        match mv {
            Move::Add(p) => next.push(p),
            Move::Remove(p) => next.retain(|&q| q != p),
            Move::Swap(out, add) => {
                next.retain(|&q| q != out);
                next.push(add);
            }
        }
        next
    }

    fn climb(
        &mut self,
        mut pairs: Vec<(usize, usize)>,
        iterations: usize,
        rng: &mut impl Rng,
    ) -> (Score, Vec<(usize, usize)>) {
        let mut current = self.score(&pairs);
        for _ in 0..iterations {
            let mut moves = self.moves(&pairs);
            moves.shuffle(rng);
            let improved = moves.into_iter().find_map(|mv| {
                let next = Self::apply(&pairs, mv);
                let s = self.score(&next);
                s.better_than(&current).then_some((s, next))
            });
            match improved {
                Some((s, next)) => {
                    current = s;
                    pairs = next;
                }
                None => break,
            }
        }
        (current, pairs)
    }
}
