//! Bichromatic Hamming closest pair and batch Hamming nearest neighbors.
//!
//! Both sides are cut into groups of `s` vectors. For a distance bound `k`, `ℓ`
//! independent group polynomials are evaluated on every group pair through
//! [`eval_all_pairs`]; group pairs with a majority of ones are brute-forced, and
//! every reported pair is checked by recomputing its distance.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::hammingpoly::{sample_hamming_poly, GroupPredicateSpec};
use crate::paireval::{eval_all_pairs, BitMatrix, PairEvalConfig};
use crate::vectors::{BitVector, Dataset};

/// Group size: a fixed `s`, or the automatic rule `s = n^{1/(u·c·log₂²c)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GroupSize {
    #[default]
    Auto,
    Fixed(usize),
}

/// Number of sampled polynomials per distance bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rounds {
    /// `⌈10·log₂ n⌉`.
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosestPairConfig {
    pub group_size: GroupSize,
    pub u_param: f64,
    pub rounds: Rounds,
    /// Largest projected monomial count of one group polynomial; `s` halves until it fits.
    pub monomial_budget: usize,
    /// Recorded in results; the caller seeds the rng from it.
    pub seed: u64,
    /// Skip the polynomials and compare all pairs.
    pub brute_force: bool,
    /// Compare all pairs whenever that takes fewer steps than expanding the `ℓ`
    /// polynomials of one distance bound.
    pub cost_model: bool,
    pub pair_eval: PairEvalConfig,
}

impl Default for ClosestPairConfig {
    fn default() -> Self {
        Self {
            group_size: GroupSize::Auto,
            u_param: 16.0,
            rounds: Rounds::Auto,
            monomial_budget: 1 << 20,
            seed: 0,
            brute_force: false,
            cost_model: true,
            pair_eval: PairEvalConfig::default(),
        }
    }
}

impl ClosestPairConfig {
    pub fn validate(&self) -> Result<()> {
        if self.group_size == GroupSize::Fixed(0) {
            return Err(Error::InvalidParameters("group size must be at least 1".into()));
        }
        if self.rounds == Rounds::Fixed(0) {
            return Err(Error::InvalidParameters("rounds must be at least 1".into()));
        }
        if self.u_param.is_nan() || self.u_param <= 0.0 {
            return Err(Error::InvalidParameters(format!("u={} must be positive", self.u_param)));
        }
        Ok(())
    }

    pub fn rounds_for(&self, n: usize) -> usize {
        match self.rounds {
            Rounds::Fixed(l) => l,
            Rounds::Auto => ((10.0 * (n.max(2) as f64).log2()).ceil() as usize).max(1),
        }
    }

    /// Group size before the budget check.
    pub fn initial_group_size(&self, n: usize, dim: usize) -> usize {
        match self.group_size {
            GroupSize::Fixed(s) => s,
            GroupSize::Auto => auto_group_size(n, dim, self.u_param),
        }
    }

    /// Group size for distance bound `k`: halved until one polynomial fits the budget.
    /// `1` means brute force.
    pub fn group_size_for(&self, n: usize, dim: usize, k: usize) -> usize {
        if self.brute_force {
            return 1;
        }
        let mut s = self.initial_group_size(n, dim);
        while s > 1 {
            let projected = GroupPredicateSpec::new(s, dim, k)
                .map(|g| g.projected_monomials())
                .unwrap_or(u128::MAX);
            if projected <= self.monomial_budget as u128 {
                break;
            }
            s /= 2;
        }
        s
    }

    /// Group size for one query over `pairs` candidate pairs with `rounds` polynomials;
    /// `1` means brute force.
    fn plan(&self, n: usize, dim: usize, k: usize, pairs: usize, rounds: usize) -> usize {
        let s = self.group_size_for(n, dim, k);
        if s > 1 && self.cost_model {
            let expansion = GroupPredicateSpec::new(s, dim, k)
                .map(|g| g.projected_monomials())
                .unwrap_or(u128::MAX);
            if (pairs as u128) <= expansion.saturating_mul(rounds as u128) {
                return 1;
            }
        }
        s
    }
}

/// `max(2, ⌊n^{1/(u·c·log₂²c)}⌋)` with `c = dim / log₂ n` clamped to at least 2.
pub fn auto_group_size(n: usize, dim: usize, u: f64) -> usize {
    let log_n = (n.max(2) as f64).log2();
    let c = (dim as f64 / log_n).max(2.0);
    let exponent = 1.0 / (u * c * c.log2().powi(2));
    ((n.max(1) as f64).powf(exponent).floor() as usize).max(2)
}

/// A red/blue pair and its distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairHit {
    pub red: usize,
    pub blue: usize,
    pub distance: usize,
}

/// How a search ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct SearchMeta {
    /// Largest group size used.
    pub s: usize,
    pub rounds: usize,
    pub seed: u64,
    /// Distance bounds (or queries) answered by brute force instead of polynomials.
    pub fallback_count: usize,
}

/// One answered query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NNEntry {
    pub query: usize,
    pub nn: usize,
    pub dist: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NNResult {
    pub entries: Vec<NNEntry>,
    pub meta: SearchMeta,
}

/// Exact closest pair; ties go to the smallest red index, then the smallest blue index.
pub fn closest_pair_bruteforce(ds: &Dataset) -> Result<PairHit> {
    nonempty(ds)?;
    let (red, blue) = (ds.red(), ds.blue());
    let best = red
        .par_iter()
        .enumerate()
        .map(|(r, x)| {
            let (distance, b) = nearest(x, blue, 0..blue.len());
            (distance, r, b)
        })
        .min()
        .expect("nonempty");
    Ok(PairHit {
        red: best.1,
        blue: best.2,
        distance: best.0,
    })
}

/// Exact nearest neighbor of every query; ties go to the smallest database index.
pub fn batch_nn_bruteforce(db: &[BitVector], queries: &[BitVector]) -> Result<Vec<NNEntry>> {
    check_vectors(db, queries)?;
    Ok(queries
        .par_iter()
        .enumerate()
        .map(|(q, y)| {
            let (dist, nn) = nearest(y, db, 0..db.len());
            NNEntry { query: q, nn, dist }
        })
        .collect())
}

/// `(distance, index)` of the closest of `candidates`, smallest index on ties.
fn nearest(x: &BitVector, side: &[BitVector], candidates: impl Iterator<Item = usize>) -> (usize, usize) {
    candidates
        .map(|i| (x.distance_unchecked(&side[i]), i))
        .min()
        .expect("at least one candidate")
}

fn nonempty(ds: &Dataset) -> Result<()> {
    if ds.red().is_empty() || ds.blue().is_empty() {
        return Err(Error::EmptyInput("both colors need at least one vector".into()));
    }
    Ok(())
}

fn check_vectors(db: &[BitVector], queries: &[BitVector]) -> Result<usize> {
    let first = db
        .first()
        .ok_or_else(|| Error::EmptyInput("the database is empty".into()))?;
    let dim = first.dim();
    for v in db.iter().chain(queries) {
        check_dim(dim, v.dim())?;
    }
    Ok(dim)
}

/// Consecutive members in groups of `s`; the last group is padded with its first member.
struct Groups {
    members: Vec<Vec<usize>>,
    inputs: Vec<BitVector>,
}

impl Groups {
    fn new(side: &[BitVector], indices: &[usize], s: usize) -> Self {
        let members: Vec<Vec<usize>> = indices.chunks(s).map(<[usize]>::to_vec).collect();
        let inputs = members
            .iter()
            .map(|g| {
                let padded: Vec<&BitVector> = (0..s).map(|t| &side[*g.get(t).unwrap_or(&g[0])]).collect();
                BitVector::concat(padded)
            })
            .collect();
        Self { members, inputs }
    }
}

/// Majority of `rounds` sampled group polynomials on every group pair.
fn majority_flags<R: Rng + ?Sized>(
    spec: GroupPredicateSpec,
    left: &Groups,
    right: &Groups,
    rounds: usize,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<BitMatrix> {
    let (rows, cols) = (left.inputs.len(), right.inputs.len());
    let mut votes = vec![0u32; rows * cols];
    let pair_cfg = PairEvalConfig {
        monomial_budget: cfg.monomial_budget,
        ..cfg.pair_eval
    };
    for _ in 0..rounds {
        let q = sample_hamming_poly(spec, rng).expand(cfg.monomial_budget as u128)?;
        let table = eval_all_pairs(&q, &left.inputs, &right.inputs, &pair_cfg)?;
        for i in 0..rows {
            for j in table.row_ones(i) {
                votes[i * cols + j] += 1;
            }
        }
    }
    Ok(BitMatrix::from_fn(rows, cols, |i, j| 2 * votes[i * cols + j] as usize > rounds))
}

/// Repeated close-pair queries on one dataset, accumulating metadata.
pub struct ClosePairSearch<'a> {
    ds: &'a Dataset,
    cfg: ClosestPairConfig,
    meta: SearchMeta,
}

impl<'a> ClosePairSearch<'a> {
    pub fn new(ds: &'a Dataset, cfg: ClosestPairConfig) -> Result<Self> {
        cfg.validate()?;
        nonempty(ds)?;
        let n = ds.red().len().max(ds.blue().len());
        Ok(Self {
            ds,
            cfg,
            meta: SearchMeta {
                s: 0,
                rounds: cfg.rounds_for(n),
                seed: cfg.seed,
                fallback_count: 0,
            },
        })
    }

    pub fn meta(&self) -> SearchMeta {
        self.meta
    }

    /// Some pair at distance at most `k`, chosen as the smallest `(red, blue)` among
    /// verified pairs in flagged group pairs.
    pub fn query<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R) -> Result<Option<(usize, usize)>> {
        let dim = self.ds.dim();
        if k >= dim {
            return Err(Error::InvalidParameters(format!(
                "distance bound k={k} must be below the dimension {dim}"
            )));
        }
        let (red, blue) = (self.ds.red(), self.ds.blue());
        let n = red.len().max(blue.len());
        let s = self.cfg.plan(n, dim, k, red.len() * blue.len(), self.meta.rounds);
        self.meta.s = self.meta.s.max(s);
        if s > 1 {
            let spec = GroupPredicateSpec::new(s, dim, k)?;
            let left = Groups::new(red, &(0..red.len()).collect::<Vec<_>>(), s);
            let right = Groups::new(blue, &(0..blue.len()).collect::<Vec<_>>(), s);
            match majority_flags(spec, &left, &right, self.meta.rounds, &self.cfg, rng) {
                Ok(flags) => {
                    let found = (0..flags.rows())
                        .flat_map(|i| flags.row_ones(i).map(move |j| (i, j)).collect::<Vec<_>>())
                        .filter_map(|(i, j)| first_within(red, blue, &left.members[i], &right.members[j], k))
                        .min();
                    return Ok(found);
                }
                Err(Error::Budget { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        self.meta.fallback_count += 1;
        let all_red: Vec<usize> = (0..red.len()).collect();
        let all_blue: Vec<usize> = (0..blue.len()).collect();
        Ok(first_within(red, blue, &all_red, &all_blue, k))
    }
}

/// Smallest `(r, b)` from the two ascending index lists with distance at most `k`.
fn first_within(red: &[BitVector], blue: &[BitVector], rs: &[usize], bs: &[usize], k: usize) -> Option<(usize, usize)> {
    rs.iter().find_map(|&r| {
        bs.iter()
            .find(|&&b| red[r].distance_unchecked(&blue[b]) <= k)
            .map(|&b| (r, b))
    })
}

/// Some red/blue pair at distance at most `k`, whp when one exists; never a pair beyond `k`.
pub fn bichromatic_close_pair<R: Rng + ?Sized>(
    ds: &Dataset,
    k: usize,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<Option<(usize, usize)>> {
    ClosePairSearch::new(ds, *cfg)?.query(k, rng)
}

/// Closest pair by galloping and then binary search over the distance bound.
pub fn closest_pair<R: Rng + ?Sized>(
    ds: &Dataset,
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<(PairHit, SearchMeta)> {
    let mut search = ClosePairSearch::new(ds, *cfg)?;
    let dim = ds.dim();
    let hit_at = |pair: (usize, usize)| PairHit {
        red: pair.0,
        blue: pair.1,
        distance: ds.red()[pair.0].distance_unchecked(&ds.blue()[pair.1]),
    };
    if dim == 0 {
        return Ok((hit_at((0, 0)), search.meta()));
    }
    // gallop: k = 0, 1, 3, 7, ... until a pair appears
    let mut below = None::<usize>;
    let mut k = 0usize;
    let found = loop {
        if let Some(pair) = search.query(k, rng)? {
            break Some((k, pair));
        }
        if k == dim - 1 {
            break None;
        }
        below = Some(k);
        k = (2 * k + 1).min(dim - 1);
    };
    let Some((k_found, mut pair)) = found else {
        // nothing within dim - 1: every pair is complementary, or a miss
        search.meta.fallback_count += 1;
        let hit = closest_pair_bruteforce(ds)?;
        return Ok((hit, search.meta()));
    };
    // invariant: `pair` is a verified pair at distance `hi`, found with bound `pair_k`
    let mut pair_k = k_found;
    let mut hi = hit_at(pair).distance;
    let mut lo = below.map_or(0, |b| b + 1).min(hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match search.query(mid, rng)? {
            Some(p) => {
                pair = p;
                pair_k = mid;
                hi = hit_at(p).distance;
            }
            None => lo = mid + 1,
        }
    }
    if pair_k > hi {
        // settle ties among pairs at exactly `hi`
        if let Some(p) = search.query(hi, rng)? {
            pair = p;
        }
    }
    Ok((hit_at(pair), search.meta()))
}

/// Nearest database vector for every query.
///
/// Queries are grouped `⌈√n⌉` at a time. For `k` from `dim − 1` down to 0, each
/// query whose best known distance is `k + 1` is checked for a database vector
/// within `k`; queries without one keep their distance and drop out.
pub fn batch_nn<R: Rng + ?Sized>(
    db: &[BitVector],
    queries: &[BitVector],
    cfg: &ClosestPairConfig,
    rng: &mut R,
) -> Result<NNResult> {
    cfg.validate()?;
    let dim = check_vectors(db, queries)?;
    let n = db.len().max(queries.len());
    let mut meta = SearchMeta {
        s: 0,
        rounds: cfg.rounds_for(n),
        seed: cfg.seed,
        fallback_count: 0,
    };
    // best verified (distance, db index) per query; distance `dim` with no witness yet
    let mut best: Vec<(usize, Option<usize>)> = vec![(dim, None); queries.len()];
    let sqrt_n = (n as f64).sqrt().ceil() as usize;
    let default_cfg = ClosestPairConfig {
        group_size: match cfg.group_size {
            GroupSize::Auto => GroupSize::Fixed(sqrt_n.max(1)),
            fixed => fixed,
        },
        ..*cfg
    };
    let all_db: Vec<usize> = (0..db.len()).collect();
    for k in (0..dim).rev() {
        let pending: Vec<usize> = (0..queries.len()).filter(|&q| best[q].0 == k + 1).collect();
        if pending.is_empty() {
            continue;
        }
        let s = default_cfg.plan(n, dim, k, pending.len() * db.len(), meta.rounds);
        meta.s = meta.s.max(s);
        let mut flagged: Option<Vec<(Vec<usize>, Vec<usize>)>> = None;
        if s > 1 {
            let spec = GroupPredicateSpec::new(s, dim, k)?;
            let left = Groups::new(queries, &pending, s);
            let right = Groups::new(db, &all_db, s);
            match majority_flags(spec, &left, &right, meta.rounds, cfg, rng) {
                Ok(flags) => {
                    flagged = Some(
                        (0..flags.rows())
                            .flat_map(|i| {
                                flags
                                    .row_ones(i)
                                    .map(|j| (left.members[i].clone(), right.members[j].clone()))
                                    .collect::<Vec<_>>()
                            })
                            .collect(),
                    );
                }
                Err(Error::Budget { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let blocks = flagged.unwrap_or_else(|| {
            meta.fallback_count += 1;
            vec![(pending.clone(), all_db.clone())]
        });
        for (qs, ds) in blocks {
            for q in qs {
                let (dist, nn) = nearest(&queries[q], db, ds.iter().copied());
                let better = match best[q] {
                    (_, None) => true,
                    (d, Some(i)) => (dist, nn) < (d, i),
                };
                if better {
                    best[q] = (dist, Some(nn));
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(queries.len());
    for (q, &(dist, nn)) in best.iter().enumerate() {
        let entry = match nn {
            Some(nn) => NNEntry { query: q, nn, dist },
            None => {
                // never matched within dim - 1: either every vector is the complement or a miss
                meta.fallback_count += 1;
                let (dist, nn) = nearest(&queries[q], db, 0..db.len());
                NNEntry { query: q, nn, dist }
            }
        };
        entries.push(entry);
    }
    Ok(NNResult { entries, meta })
}
