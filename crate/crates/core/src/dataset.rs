//! Input data: dense matrices, CSV ingestion, normalization and synthetic
//! benchmark generation with planted subspace clusters.
//!
//! All randomness goes through [`rng`], a ChaCha8 stream seeded from a
//! `u64`, so generated data is identical across platforms.

use std::io::{Read, Write};
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{DataError, SpecError};

/// The seedable generator used everywhere in this crate.
pub type Rng64 = ChaCha8Rng;

/// Build the crate's portable generator from a seed.
pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points by `d` dimensions of finite reals, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    d: usize,
    values: Vec<f64>,
    names: Vec<String>,
}

impl DataMatrix {
    pub fn new(n: usize, d: usize, values: Vec<f64>) -> Result<Self, DataError> {
        let names = (0..d).map(|j| format!("d{j}")).collect();
        Self::with_names(n, d, values, names)
    }

    pub fn with_names(
        n: usize,
        d: usize,
        values: Vec<f64>,
        names: Vec<String>,
    ) -> Result<Self, DataError> {
        if n == 0 {
            return Err(DataError::Empty);
        }
        if d < 2 {
            return Err(DataError::TooFewDimensions(d));
        }
        if values.len() != n * d || names.len() != d {
            return Err(DataError::Shape {
                n,
                d,
                len: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(DataError::NotFinite {
                row: pos / d + 1,
                column: pos % d + 1,
            });
        }
        Ok(Self {
            n,
            d,
            values,
            names,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DataError> {
        let d = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(DataError::Ragged {
                    line: i + 1,
                    expected: d,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(rows.len(), d, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.d + j]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(j).step_by(self.d).copied()
    }

    /// Copy the given columns into a contiguous `n x dims.len()` buffer.
    pub fn project(&self, dims: &[usize]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * dims.len());
        for row in self.values.chunks_exact(self.d) {
            out.extend(dims.iter().map(|&j| row[j]));
        }
        out
    }

    /// Write as delimited text with a header row. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn write_csv<W: Write>(&self, writer: W, delimiter: u8) -> Result<(), DataError> {
        let mut out = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(writer);
        out.write_record(&self.names)?;
        for row in self.values.chunks_exact(self.d) {
            out.write_record(row.iter().map(|v| v.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Parse a delimited numeric table.
///
/// Rows and columns in error messages are 1-based and count data rows only;
/// `line` in [`DataError::Ragged`] counts physical records including the
/// header.
pub fn load_matrix<R: Read>(
    source: R,
    has_header: bool,
    delimiter: u8,
) -> Result<DataMatrix, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(source);

    let mut names: Option<Vec<String>> = None;
    let mut width: Option<usize> = None;
    let mut values = Vec::new();
    let mut rows = 0usize;
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let line = idx + 1;
        if width.is_none() {
            width = Some(record.len());
        }
        let expected = width.unwrap_or_default();
        if record.len() != expected {
            return Err(DataError::Ragged {
                line,
                expected,
                found: record.len(),
            });
        }
        if has_header && idx == 0 {
            names = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        rows += 1;
        for (col, field) in record.iter().enumerate() {
            if field.is_empty() {
                return Err(DataError::Missing {
                    row: rows,
                    column: col + 1,
                });
            }
            let v: f64 = field.parse().map_err(|_| DataError::NotNumeric {
                row: rows,
                column: col + 1,
                value: field.to_owned(),
            })?;
            if !v.is_finite() {
                return Err(DataError::NotFinite {
                    row: rows,
                    column: col + 1,
                });
            }
            values.push(v);
        }
    }
    let d = width.ok_or(DataError::Empty)?;
    if rows == 0 {
        return Err(DataError::Empty);
    }
    match names {
        Some(names) => DataMatrix::with_names(rows, d, values, names),
        None => DataMatrix::new(rows, d, values),
    }
}

/// Column-wise z-score with the population standard deviation. Constant
/// columns become all zeros.
pub fn zscore_normalize(m: &DataMatrix) -> DataMatrix {
    let n = m.n as f64;
    let mut out = m.clone();
    for j in 0..m.d {
        let mean = m.column(j).sum::<f64>() / n;
        let var = m.column(j).map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        for i in 0..m.n {
            let v = &mut out.values[i * m.d + j];
            *v = if std > 0.0 { (*v - mean) / std } else { 0.0 };
        }
    }
    out
}

/// A planted cluster as seen by an evaluator: which points, which dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthCluster {
    pub points: Vec<usize>,
    pub dims: Vec<usize>,
}

/// Known subspace clusters of a dataset. Point and dimension sets may
/// overlap between clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub n: usize,
    pub clusters: Vec<TruthCluster>,
    pub outliers: Vec<usize>,
}

impl GroundTruth {
    /// Build from cluster point/dimension sets; outliers are derived.
    pub fn from_clusters(n: usize, clusters: Vec<TruthCluster>) -> Self {
        let mut covered = vec![false; n];
        for c in &clusters {
            for &p in &c.points {
                covered[p] = true;
            }
        }
        let outliers = (0..n).filter(|&i| !covered[i]).collect();
        Self {
            n,
            clusters,
            outliers,
        }
    }

    /// Hard per-point labels: the first listed cluster containing the point,
    /// or a distinct singleton label for points in no cluster.
    pub fn labels(&self) -> Vec<usize> {
        let k = self.clusters.len();
        let mut labels: Vec<usize> = (0..self.n).map(|i| k + i).collect();
        for (c, cluster) in self.clusters.iter().enumerate().rev() {
            for &p in &cluster.points {
                labels[p] = c;
            }
        }
        labels
    }

    /// Membership lists, one per point.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (c, cluster) in self.clusters.iter().enumerate() {
            for &p in &cluster.points {
                out[p].push(c);
            }
        }
        out
    }
}

/// One dimension of a planted cluster: coordinates are drawn from
/// `Normal(mean, std)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimSpec {
    pub dim: usize,
    pub mean: f64,
    pub std: f64,
}

/// A planted cluster over the half-open point range `start..end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub start: usize,
    pub end: usize,
    pub dims: Vec<DimSpec>,
}

impl ClusterSpec {
    pub fn new(points: Range<usize>, dims: Vec<DimSpec>) -> Self {
        Self {
            start: points.start,
            end: points.end,
            dims,
        }
    }

    /// Cluster over `dims` with a shared `std` and means spread evenly over
    /// `[mean_low, mean_high]` in the order the dimensions are given.
    pub fn spread(
        points: Range<usize>,
        dims: impl IntoIterator<Item = usize>,
        mean_low: f64,
        mean_high: f64,
        std: f64,
    ) -> Self {
        let dims: Vec<usize> = dims.into_iter().collect();
        let steps = dims.len().saturating_sub(1).max(1) as f64;
        let dims = dims
            .iter()
            .enumerate()
            .map(|(i, &dim)| DimSpec {
                dim,
                mean: mean_low + (mean_high - mean_low) * i as f64 / steps,
                std,
            })
            .collect();
        Self::new(points, dims)
    }

    pub fn points(&self) -> Range<usize> {
        self.start..self.end
    }
}

/// Closed interval for background coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Background {
    pub low: f64,
    pub high: f64,
}

/// Description of a synthetic dataset with planted subspace clusters.
///
/// Cells not claimed by any cluster are drawn uniformly from `background`,
/// which defaults to `[min mean - 3 max std, max mean + 3 max std]` over all
/// cluster dimensions (or `[0, 1]` without clusters).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n: usize,
    pub d: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub clusters: Vec<ClusterSpec>,
    #[serde(default)]
    pub background: Option<Background>,
}

impl SyntheticSpec {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("synthetic spec is always representable as toml")
    }

    pub fn background(&self) -> Background {
        if let Some(bg) = self.background {
            return bg;
        }
        let dims = || self.clusters.iter().flat_map(|c| c.dims.iter());
        let max_std = dims().map(|s| s.std).fold(0.0, f64::max);
        let lo = dims().map(|s| s.mean).fold(f64::INFINITY, f64::min);
        let hi = dims().map(|s| s.mean).fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi.is_finite() {
            Background {
                low: lo - 3.0 * max_std,
                high: hi + 3.0 * max_std,
            }
        } else {
            Background {
                low: 0.0,
                high: 1.0,
            }
        }
    }

    /// Owner cluster of every cell, or the first conflict found.
    fn cell_owners(&self) -> Result<Vec<Option<(usize, usize)>>, SpecError> {
        let (n, d) = (self.n, self.d);
        if n == 0 || d < 2 {
            return Err(SpecError::Shape { n, d });
        }
        let mut owners: Vec<Option<(usize, usize)>> = vec![None; n * d];
        for (c, cluster) in self.clusters.iter().enumerate() {
            if cluster.start > cluster.end || cluster.end > n {
                return Err(SpecError::PointRange {
                    cluster: c,
                    start: cluster.start,
                    end: cluster.end,
                    n,
                });
            }
            for (k, spec) in cluster.dims.iter().enumerate() {
                if spec.dim >= d {
                    return Err(SpecError::DimensionOutOfRange {
                        cluster: c,
                        dim: spec.dim,
                        d,
                    });
                }
                if !(spec.std.is_finite() && spec.std >= 0.0 && spec.mean.is_finite()) {
                    return Err(SpecError::BadStd {
                        cluster: c,
                        dim: spec.dim,
                    });
                }
                for p in cluster.points() {
                    let cell = &mut owners[p * d + spec.dim];
                    if let Some((first, _)) = *cell {
                        return Err(SpecError::Conflict {
                            first,
                            second: c,
                            point: p,
                            dim: spec.dim,
                        });
                    }
                    *cell = Some((c, k));
                }
            }
        }
        Ok(owners)
    }
}

/// Draw a dataset and its ground truth from `spec`. Deterministic in the seed.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<(DataMatrix, GroundTruth), SpecError> {
    let owners = spec.cell_owners()?;
    let bg = spec.background();
    let uniform = Uniform::new_inclusive(bg.low, bg.high);
    let mut normals = Vec::with_capacity(spec.clusters.len());
    for (c, cluster) in spec.clusters.iter().enumerate() {
        let mut row = Vec::with_capacity(cluster.dims.len());
        for s in &cluster.dims {
            row.push(Normal::new(s.mean, s.std).map_err(|_| SpecError::BadStd {
                cluster: c,
                dim: s.dim,
            })?);
        }
        normals.push(row);
    }

    let mut rng = rng(spec.seed);
    let values: Vec<f64> = owners
        .iter()
        .map(|owner| match *owner {
            Some((c, k)) => normals[c][k].sample(&mut rng),
            None => uniform.sample(&mut rng),
        })
        .collect();

    let clusters = spec
        .clusters
        .iter()
        .map(|c| {
            let mut dims: Vec<usize> = c.dims.iter().map(|s| s.dim).collect();
            dims.sort_unstable();
            TruthCluster {
                points: c.points().collect(),
                dims,
            }
        })
        .collect();
    let truth = GroundTruth::from_clusters(spec.n, clusters);
    let data = DataMatrix::new(spec.n, spec.d, values).expect("generated values are finite");
    Ok((data, truth))
}

/// Layout of the 300-point, 3-dimensional covariance fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureMode {
    /// Each third of the points is dense in exactly one dimension and drawn
    /// independently elsewhere, so no 3-D cluster exists.
    IndependentDense,
    /// All three coordinates of a point come from the same normal, giving
    /// three real clusters even though no single dimension shows a peak.
    Covariant,
}

/// Means of the three generating normals; each has variance 2.
pub const FIXTURE_MEANS: [f64; 3] = [1.0, 7.0, 10.0];
pub const FIXTURE_GROUP: usize = 100;

/// Generate the covariance fixture. Every dimension has the same marginal in
/// both modes: 100 draws from each of the three normals.
pub fn generate_covariant_fixture(mode: FixtureMode, seed: u64) -> DataMatrix {
    let n = 3 * FIXTURE_GROUP;
    let normals: Vec<Normal<f64>> = FIXTURE_MEANS
        .iter()
        .map(|&m| Normal::new(m, 2f64.sqrt()).expect("valid normal"))
        .collect();
    let mut rng = rng(seed);

    // source[j][i]: which normal feeds coordinate j of point i
    let mut source = vec![vec![0usize; n]; 3];
    for (j, col) in source.iter_mut().enumerate() {
        match mode {
            FixtureMode::Covariant => {
                for (i, s) in col.iter_mut().enumerate() {
                    *s = i / FIXTURE_GROUP;
                }
            }
            FixtureMode::IndependentDense => {
                let mut others: Vec<usize> = (0..3)
                    .filter(|&g| g != j)
                    .flat_map(|g| std::iter::repeat_n(g, FIXTURE_GROUP))
                    .collect();
                others.shuffle(&mut rng);
                let mut rest = others.into_iter();
                for (i, s) in col.iter_mut().enumerate() {
                    *s = if i / FIXTURE_GROUP == j {
                        j
                    } else {
                        rest.next().expect("200 slots for 200 points")
                    };
                }
            }
        }
    }

    let mut values = Vec::with_capacity(n * 3);
    for i in 0..n {
        for col in &source {
            values.push(normals[col[i]].sample(&mut rng));
        }
    }
    DataMatrix::new(n, 3, values).expect("fixture values are finite")
}

/// Generating-group label of each fixture point (0, 1 or 2 by thirds).
pub fn fixture_labels() -> Vec<usize> {
    (0..3 * FIXTURE_GROUP).map(|i| i / FIXTURE_GROUP).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, header: bool) -> Result<DataMatrix, DataError> {
        load_matrix(text.as_bytes(), header, b',')
    }

    #[test]
    fn parses_plain_rows() {
        let m = parse("1,2\n3,4\n", false).unwrap();
        assert_eq!((m.n(), m.d()), (2, 2));
        assert_eq!(m.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.names(), &["d0", "d1"]);
    }

    #[test]
    fn header_names_columns() {
        let m = parse("a,b\n0,0\n", true).unwrap();
        assert_eq!(m.n(), 1);
        assert_eq!(m.names(), &["a", "b"]);
    }

    #[test]
    fn tab_delimiter() {
        let m = load_matrix("1\t2\n3\t4".as_bytes(), false, b'\t').unwrap();
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn non_numeric_names_row_and_column() {
        match parse("1,x\n", false) {
            Err(DataError::NotNumeric { row, column, .. }) => assert_eq!((row, column), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_name_the_line() {
        match parse("1,2\n3,4,5\n", false) {
            Err(DataError::Ragged { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_missing_and_nan() {
        assert!(matches!(parse("", false), Err(DataError::Empty)));
        assert!(matches!(parse("a,b\n", true), Err(DataError::Empty)));
        assert!(matches!(
            parse("1,\n", false),
            Err(DataError::Missing { row: 1, column: 2 })
        ));
        assert!(matches!(
            parse("1,NaN\n", false),
            Err(DataError::NotFinite { .. })
        ));
        assert!(matches!(
            parse("1\n2\n", false),
            Err(DataError::TooFewDimensions(1))
        ));
    }

    #[test]
    fn zscore_two_points_and_constant() {
        let m = DataMatrix::from_rows(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        let z = zscore_normalize(&m);
        assert_eq!(z.column(0).collect::<Vec<_>>(), vec![-1.0, 1.0]);
        assert_eq!(z.column(1).collect::<Vec<_>>(), vec![0.0, 0.0]);
    }

    #[test]
    fn zscore_matches_direct_arithmetic() {
        let m = DataMatrix::from_rows(&[
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![3.0, 0.0],
            vec![4.0, 0.0],
        ])
        .unwrap();
        // mean 2.5, population variance 1.25
        let std = 1.25f64.sqrt();
        let expected = [-1.5 / std, -0.5 / std, 0.5 / std, 1.5 / std];
        for (got, want) in zscore_normalize(&m).column(0).zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    fn disjoint_900x35() -> SyntheticSpec {
        SyntheticSpec {
            n: 900,
            d: 35,
            seed: 3,
            clusters: vec![
                ClusterSpec::spread(0..300, 0..10, 0.0, 20.0, 1.0),
                ClusterSpec::spread(300..600, 10..30, 0.0, 20.0, 1.0),
            ],
            background: None,
        }
    }

    #[test]
    fn synthetic_truth_mirrors_spec() {
        let (data, truth) = generate_synthetic(&disjoint_900x35()).unwrap();
        assert_eq!((data.n(), data.d()), (900, 35));
        assert_eq!(truth.clusters.len(), 2);
        assert_eq!(truth.outliers.len(), 300);
        assert_eq!(truth.clusters[1].dims, (10..30).collect::<Vec<_>>());
    }

    #[test]
    fn synthetic_without_clusters_is_all_noise() {
        let spec = SyntheticSpec {
            n: 10,
            d: 3,
            seed: 1,
            clusters: vec![],
            background: None,
        };
        let (data, truth) = generate_synthetic(&spec).unwrap();
        assert!(truth.clusters.is_empty());
        assert_eq!(truth.outliers, (0..10).collect::<Vec<_>>());
        assert!(data.values().iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn non_disjoint_dimension_sets_overlap() {
        let spec = SyntheticSpec {
            n: 200,
            d: 10,
            seed: 2,
            clusters: vec![
                ClusterSpec::spread(0..100, [5, 6, 7, 8], 0.0, 10.0, 1.0),
                ClusterSpec::spread(100..200, [4, 5, 6, 7], 10.0, 0.0, 1.0),
            ],
            background: None,
        };
        let (_, truth) = generate_synthetic(&spec).unwrap();
        let shared: Vec<usize> = truth.clusters[0]
            .dims
            .iter()
            .filter(|d| truth.clusters[1].dims.contains(d))
            .copied()
            .collect();
        assert_eq!(shared, vec![5, 6, 7]);
    }

    #[test]
    fn conflicting_cells_are_reported() {
        let spec = SyntheticSpec {
            n: 20,
            d: 4,
            seed: 0,
            clusters: vec![
                ClusterSpec::spread(0..10, [0, 1], 0.0, 1.0, 1.0),
                ClusterSpec::spread(5..15, [1, 2], 0.0, 1.0, 1.0),
            ],
            background: None,
        };
        assert_eq!(
            generate_synthetic(&spec).unwrap_err(),
            SpecError::Conflict {
                first: 0,
                second: 1,
                point: 5,
                dim: 1
            }
        );
    }

    #[test]
    fn out_of_range_dimension() {
        let spec = SyntheticSpec {
            n: 5,
            d: 3,
            seed: 0,
            clusters: vec![ClusterSpec::spread(0..5, [3], 0.0, 0.0, 1.0)],
            background: None,
        };
        assert!(matches!(
            generate_synthetic(&spec),
            Err(SpecError::DimensionOutOfRange { dim: 3, .. })
        ));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_synthetic(&disjoint_900x35()).unwrap();
        let b = generate_synthetic(&disjoint_900x35()).unwrap();
        assert_eq!(a, b);
        for mode in [FixtureMode::Covariant, FixtureMode::IndependentDense] {
            assert_eq!(
                generate_covariant_fixture(mode, 9),
                generate_covariant_fixture(mode, 9)
            );
        }
    }

    #[test]
    fn planted_means_within_four_standard_errors() {
        let spec = disjoint_900x35();
        let (data, _) = generate_synthetic(&spec).unwrap();
        for cluster in &spec.clusters {
            let size = (cluster.end - cluster.start) as f64;
            for s in &cluster.dims {
                let mean = cluster.points().map(|i| data.get(i, s.dim)).sum::<f64>() / size;
                assert!((mean - s.mean).abs() <= 4.0 * s.std / size.sqrt());
            }
        }
    }

    #[test]
    fn covariant_fixture_rows_come_from_one_normal() {
        let m = generate_covariant_fixture(FixtureMode::Covariant, 4);
        assert_eq!((m.n(), m.d()), (300, 3));
        // with std sqrt(2), coordinates of one point stay within a few
        // standard deviations of each other
        for i in 0..m.n() {
            let row = m.row(i);
            let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            assert!(hi - lo < 2.0 * 5.0 * 2f64.sqrt(), "row {i}: {row:?}");
        }
        let group_mean = |g: usize| {
            (g * 100..(g + 1) * 100)
                .flat_map(|i| m.row(i).to_vec())
                .sum::<f64>()
                / 300.0
        };
        for (g, mu) in FIXTURE_MEANS.iter().enumerate() {
            assert!((group_mean(g) - mu).abs() < 0.5);
        }
    }

    #[test]
    fn independent_fixture_has_dense_diagonal() {
        let m = generate_covariant_fixture(FixtureMode::IndependentDense, 4);
        for g in 0..3 {
            let own = (g * 100..(g + 1) * 100).map(|i| m.get(i, g)).sum::<f64>() / 100.0;
            assert!((own - FIXTURE_MEANS[g]).abs() < 0.6);
        }
        // every dimension still carries 100 draws from each normal
        for j in 0..3 {
            let mean = m.column(j).sum::<f64>() / 300.0;
            assert!((mean - 6.0).abs() < 0.6);
        }
    }

    #[test]
    fn spec_toml_round_trip() {
        let spec = disjoint_900x35();
        assert_eq!(SyntheticSpec::from_toml(&spec.to_toml()).unwrap(), spec);
    }
}
