//! First phase: choose low-dimensional subspaces, cluster the data in each
//! one with k-means and record every point's base cluster in a
//! [`MembershipTable`].

use std::collections::HashSet;
use std::io::{Read, Write};

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{rng, DataMatrix};
use crate::error::{DataError, ParamError};

/// Dimensionality below which every pair of dimensions is searched.
pub const ALL_PAIRS_BELOW: usize = 100;
const MAX_ITERATIONS: usize = 100;

/// Sorted, duplicate-free list of `p`-dimensional subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceSet {
    p: usize,
    subspaces: Vec<Vec<usize>>,
}

impl SubspaceSet {
    /// Wrap explicit subspaces. Each is sorted; they must all have `p`
    /// distinct dimensions and be pairwise distinct.
    pub fn new(p: usize, subspaces: Vec<Vec<usize>>) -> Result<Self, ParamError> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(subspaces.len());
        for mut s in subspaces {
            s.sort_unstable();
            s.dedup();
            if s.len() != p || !seen.insert(s.clone()) {
                return Err(ParamError::Dimensionality {
                    p,
                    d: s.last().map_or(0, |&x| x + 1),
                });
            }
            out.push(s);
        }
        Ok(Self { p, subspaces: out })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn get(&self, j: usize) -> &[usize] {
        &self.subspaces[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.subspaces.iter().map(Vec::as_slice)
    }

    /// How many subspaces each of the `d` dimensions appears in.
    pub fn occurrences(&self, d: usize) -> Vec<usize> {
        let mut occ = vec![0; d];
        for s in &self.subspaces {
            for &j in s {
                occ[j] += 1;
            }
        }
        occ
    }
}

/// How subspaces are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Every pair of dimensions.
    All,
    /// `count` distinct random subspaces with every dimension in at least
    /// `coverage` of them.
    Sample { count: usize, coverage: usize },
}

impl Policy {
    /// All pairs for `d < 100`, otherwise a sample in which every dimension
    /// is covered 10 times.
    pub fn auto(d: usize, p: usize) -> Self {
        if d < ALL_PAIRS_BELOW && p == 2 {
            Policy::All
        } else {
            let available = binomial(d, p);
            let coverage = binomial(d - 1, p - 1).min(10) as usize;
            let count = (coverage * d).div_ceil(p).max(d) as u128;
            Policy::Sample {
                count: count.min(available) as usize,
                coverage,
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Choose the subspaces searched for base clusters.
pub fn enumerate_subspaces(
    d: usize,
    p: usize,
    policy: Policy,
    seed: u64,
) -> Result<SubspaceSet, ParamError> {
    if p == 0 || p >= d {
        return Err(ParamError::Dimensionality { p, d });
    }
    match policy {
        Policy::All => {
            if p != 2 {
                return Err(ParamError::AllNeedsPairs(p));
            }
            let subspaces = (0..d).tuple_combinations().map(|(a, b)| vec![a, b]).collect();
            Ok(SubspaceSet { p, subspaces })
        }
        Policy::Sample { count, coverage } => sample_subspaces(d, p, count, coverage, seed),
    }
}

fn sample_subspaces(
    d: usize,
    p: usize,
    count: usize,
    coverage: usize,
    seed: u64,
) -> Result<SubspaceSet, ParamError> {
    let available = binomial(d, p);
    if count as u128 > available {
        return Err(ParamError::TooManySubspaces { count, available });
    }
    let needed = (coverage * d).div_ceil(p);
    let infeasible = ParamError::InfeasibleCoverage {
        count,
        coverage,
        d,
        p,
        needed,
    };
    if count < needed || coverage as u128 > binomial(d - 1, p - 1) {
        return Err(infeasible);
    }

    let mut rng = rng(seed);
    let mut chosen: HashSet<Vec<usize>> = HashSet::with_capacity(count);
    let mut occ = vec![0usize; d];

    // Cover the least-used dimensions first until every one reaches `coverage`.
    while occ.iter().any(|&c| c < coverage) {
        let mut order: Vec<usize> = (0..d).collect();
        order.shuffle(&mut rng);
        order.sort_by_key(|&j| occ[j]);
        let pick = first_new_subset(&order, p, &chosen).ok_or_else(|| infeasible.clone())?;
        for &j in &pick {
            occ[j] += 1;
        }
        chosen.insert(pick);
        if chosen.len() > count {
            return Err(infeasible);
        }
    }

    // Fill up with uniformly random distinct subspaces.
    let remaining = count - chosen.len();
    if remaining > 0 && (count as u128) * 2 > available && available <= 2_000_000 {
        let mut rest: Vec<Vec<usize>> = (0..d)
            .combinations(p)
            .filter(|c| !chosen.contains(c))
            .collect();
        rest.shuffle(&mut rng);
        chosen.extend(rest.into_iter().take(remaining));
    } else {
        while chosen.len() < count {
            let mut s = index::sample(&mut rng, d, p).into_vec();
            s.sort_unstable();
            chosen.insert(s);
        }
    }

    let mut subspaces: Vec<Vec<usize>> = chosen.into_iter().collect();
    subspaces.sort_unstable();
    Ok(SubspaceSet { p, subspaces })
}

/// First unused `p`-subset drawn from a growing prefix of `order` that
/// contains `order[0]`.
fn first_new_subset(order: &[usize], p: usize, chosen: &HashSet<Vec<usize>>) -> Option<Vec<usize>> {
    let (&lead, rest) = order.split_first()?;
    for width in p - 1..=rest.len() {
        for others in rest[..width].iter().copied().combinations(p - 1) {
            let mut candidate = others;
            candidate.push(lead);
            candidate.sort_unstable();
            if !chosen.contains(&candidate) {
                return Some(candidate);
            }
        }
    }
    None
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[f64], p: usize) -> (u32, f64) {
    let mut best = (0u32, f64::INFINITY);
    for (c, centroid) in centroids.chunks_exact(p).enumerate() {
        let dist = sq_dist(point, centroid);
        if dist < best.1 {
            best = (c as u32, dist);
        }
    }
    best
}

fn kmeans_plus_plus(points: &[f64], p: usize, k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let n = points.len() / p;
    let mut centroids = Vec::with_capacity(k * p);
    let first = rng.gen_range(0..n);
    centroids.extend_from_slice(&points[first * p..(first + 1) * p]);
    let mut d2: Vec<f64> = points
        .chunks_exact(p)
        .map(|x| sq_dist(x, &centroids[..p]))
        .collect();
    for _ in 1..k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    pick = i;
                    break;
                }
                target -= w;
            }
            pick
        } else {
            rng.gen_range(0..n)
        };
        let centre = points[next * p..(next + 1) * p].to_vec();
        for (w, x) in d2.iter_mut().zip(points.chunks_exact(p)) {
            *w = w.min(sq_dist(x, &centre));
        }
        centroids.extend_from_slice(&centre);
    }
    centroids
}

/// Lloyd's k-means with k-means++ seeding on an `n x p` row-major grid.
///
/// Stops after 100 iterations or when no assignment changes. A cluster that
/// empties out is re-seeded at the point farthest from its own centroid.
pub fn cluster_base(points: &[f64], p: usize, k: usize, seed: u64) -> Result<Vec<u32>, ParamError> {
    if p == 0 || !points.len().is_multiple_of(p) {
        return Err(ParamError::PointWidth {
            p,
            width: points.len(),
        });
    }
    let n = points.len() / p;
    if k == 0 || k > n {
        return Err(ParamError::ClusterCount { k, n });
    }
    if k == 1 {
        return Ok(vec![0; n]);
    }

    let mut rng = rng(seed);
    let mut centroids = kmeans_plus_plus(points, p, k, &mut rng);
    let mut labels = vec![u32::MAX; n];
    let mut sums = vec![0.0; k * p];
    let mut counts = vec![0usize; k];

    for _ in 0..MAX_ITERATIONS {
        let mut changed = false;
        for (label, x) in labels.iter_mut().zip(points.chunks_exact(p)) {
            let (c, _) = nearest(x, &centroids, p);
            if *label != c {
                *label = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }

        sums.iter_mut().for_each(|s| *s = 0.0);
        counts.iter_mut().for_each(|c| *c = 0);
        for (&label, x) in labels.iter().zip(points.chunks_exact(p)) {
            let c = label as usize;
            counts[c] += 1;
            for (s, v) in sums[c * p..(c + 1) * p].iter_mut().zip(x) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                for t in 0..p {
                    centroids[c * p + t] = sums[c * p + t] / counts[c] as f64;
                }
            }
        }

        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let far = labels
                .iter()
                .zip(points.chunks_exact(p))
                .enumerate()
                .filter(|(_, (&l, _))| counts[l as usize] > 1)
                .map(|(i, (&l, x))| {
                    let l = l as usize;
                    (i, sq_dist(x, &centroids[l * p..(l + 1) * p]))
                })
                .fold(None, |best: Option<(usize, f64)>, cur| match best {
                    Some(b) if b.1 >= cur.1 => Some(b),
                    _ => Some(cur),
                });
            if let Some((i, _)) = far {
                counts[labels[i] as usize] -= 1;
                counts[c] = 1;
                labels[i] = c as u32;
                centroids[c * p..(c + 1) * p].copy_from_slice(&points[i * p..(i + 1) * p]);
            }
        }
    }
    Ok(labels)
}

/// Points x subspaces grid of base-cluster ids. `None` marks a point that
/// belongs to no (sufficiently large) base cluster in that subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipTable {
    n: usize,
    subspaces: SubspaceSet,
    columns: Vec<Vec<Option<u32>>>,
}

impl MembershipTable {
    /// Assemble from column vectors; every column must have `n` cells.
    pub fn from_columns(subspaces: SubspaceSet, columns: Vec<Vec<Option<u32>>>) -> Self {
        assert_eq!(subspaces.len(), columns.len(), "one column per subspace");
        let n = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == n), "ragged membership columns");
        Self {
            n,
            subspaces,
            columns,
        }
    }

    /// Assemble from per-point rows.
    pub fn from_rows(subspaces: SubspaceSet, rows: &[Vec<Option<u32>>]) -> Self {
        let m = subspaces.len();
        let columns = (0..m).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        let mut table = Self::from_columns(subspaces, columns);
        table.n = rows.len();
        table
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn subspaces(&self) -> &SubspaceSet {
        &self.subspaces
    }

    pub fn cell(&self, point: usize, subspace: usize) -> Option<u32> {
        self.columns[subspace][point]
    }

    pub fn column(&self, subspace: usize) -> &[Option<u32>] {
        &self.columns[subspace]
    }

    /// Present cells of one point as `(subspace, cluster)` pairs.
    pub fn row(&self, point: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .filter_map(move |(j, col)| col[point].map(|c| (j, c)))
    }

    /// Debug dump: one line per point, one field per subspace, empty field
    /// for an absent cell.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header = self
            .subspaces
            .iter()
            .map(|s| format!("S{}", s.iter().join("_")))
            .join(",");
        writeln!(out, "{header}")?;
        for i in 0..self.n {
            let line = self
                .columns
                .iter()
                .map(|col| col[i].map(|c| c.to_string()).unwrap_or_default())
                .join(",");
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Parse the format written by [`MembershipTable::write_csv`]: a header of
/// `S<d1>_<d2>...` subspace names, then one row per point with 0-based
/// cluster ids or empty cells.
pub fn read_membership_csv<R: Read>(source: R) -> Result<MembershipTable, DataError> {
    let bad = |msg: String| DataError::Membership(msg);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut dims = Vec::new();
    for name in reader.headers()?.iter() {
        let parsed: Option<Vec<usize>> = name
            .strip_prefix('S')
            .map(|rest| rest.split('_').map(|t| t.parse().ok()).collect())
            .unwrap_or(None);
        dims.push(parsed.ok_or_else(|| bad(format!("bad subspace name {name:?}")))?);
    }
    let p = dims.first().map_or(0, Vec::len);
    let subspaces = SubspaceSet::new(p, dims).map_err(|e| bad(e.to_string()))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, cell)| match cell {
                "" => Ok(None),
                c => c.parse().map(Some).map_err(|_| DataError::NotNumeric {
                    row: i + 1,
                    column: j + 1,
                    value: c.to_owned(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() || subspaces.is_empty() {
        return Err(DataError::Empty);
    }
    Ok(MembershipTable::from_rows(subspaces, &rows))
}

/// Run k-means in every subspace and erase base clusters smaller than
/// `min_base_size`.
///
/// Column `j` is clustered with seed `seed ^ j`, so the table does not
/// depend on processing order or on the size of the rayon pool.
pub fn build_membership(
    x: &DataMatrix,
    subspaces: &SubspaceSet,
    k: usize,
    min_base_size: usize,
    seed: u64,
) -> Result<MembershipTable, ParamError> {
    if min_base_size == 0 {
        return Err(ParamError::MinBaseSize);
    }
    if k == 0 || k > x.n() {
        return Err(ParamError::ClusterCount { k, n: x.n() });
    }
    let columns = (0..subspaces.len())
        .into_par_iter()
        .map(|j| {
            let dims = subspaces.get(j);
            let labels = cluster_base(&x.project(dims), dims.len(), k, seed ^ j as u64)?;
            let mut sizes = vec![0usize; k];
            for &l in &labels {
                sizes[l as usize] += 1;
            }
            Ok(labels
                .into_iter()
                .map(|l| (sizes[l as usize] >= min_base_size).then_some(l))
                .collect())
        })
        .collect::<Result<Vec<Vec<Option<u32>>>, ParamError>>()?;
    let mut table = MembershipTable::from_columns(subspaces.clone(), columns);
    table.n = x.n();
    Ok(table)
}
