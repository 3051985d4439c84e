//! Lagged design matrices and least-squares fits of restricted and
//! unrestricted autoregressions.

use crate::datagen::TrivariateSample;
use crate::error::{Error, Result};
use crate::series::LagSpec;
use crate::topology::SeriesId;

/// Relative pivot tolerance of the QR factorisation.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Shape of one autoregression: the target's own lags come first, then
/// each predictor's lags in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub target: SeriesId,
    pub predictors: Vec<SeriesId>,
    pub lags: LagSpec,
    /// First response index; rows run from here to the end of the series.
    pub window_start: usize,
    pub intercept: bool,
}

impl ModelSpec {
    pub fn new(target: SeriesId, predictors: Vec<SeriesId>, lags: LagSpec) -> Result<Self> {
        if predictors.len() != lags.predictor_lags.len() {
            return Err(Error::InvalidConfig(format!(
                "{} predictors but {} predictor lag counts",
                predictors.len(),
                lags.predictor_lags.len()
            )));
        }
        if predictors.contains(&target) {
            return Err(Error::InvalidConfig(format!(
                "target {target} listed as a predictor"
            )));
        }
        for (i, p) in predictors.iter().enumerate() {
            if predictors[..i].contains(p) {
                return Err(Error::InvalidConfig(format!("duplicate predictor {p}")));
            }
        }
        let window_start = lags.max_lag();
        Ok(Self {
            target,
            predictors,
            lags,
            window_start,
            intercept: false,
        })
    }

    /// Moves the first response row later, e.g. to share the window of a
    /// model with a longer look-back.
    pub fn with_window_start(mut self, start: usize) -> Result<Self> {
        if start < self.lags.max_lag() {
            return Err(Error::InvalidConfig(format!(
                "window start {start} precedes max lag {}",
                self.lags.max_lag()
            )));
        }
        self.window_start = start;
        Ok(self)
    }

    pub fn with_intercept(mut self, intercept: bool) -> Self {
        self.intercept = intercept;
        self
    }

    pub fn n_params(&self) -> usize {
        self.lags.n_params() + usize::from(self.intercept)
    }
}

/// Column-major regressor matrix plus response.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    matrix: Vec<f64>,
    response: Vec<f64>,
    n_obs: usize,
    n_params: usize,
}

impl Design {
    pub fn from_columns(columns: &[Vec<f64>], response: Vec<f64>) -> Result<Self> {
        let n_obs = response.len();
        if columns.iter().any(|c| c.len() != n_obs) {
            return Err(Error::InvalidConfig("column lengths differ from response".into()));
        }
        let n_params = columns.len();
        if n_params == 0 {
            return Err(Error::InvalidConfig("design has no columns".into()));
        }
        Ok(Self {
            matrix: columns.concat(),
            response,
            n_obs,
            n_params,
        })
    }

    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.matrix[j * self.n_obs..(j + 1) * self.n_obs]
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[col * self.n_obs + row]
    }
}

/// Builds the lagged regression for `spec` over the rows
/// `spec.window_start..len`.
pub fn build_design(sample: &TrivariateSample, spec: &ModelSpec) -> Result<Design> {
    let target = sample.series(spec.target).values();
    let len = target.len();
    let n_params = spec.n_params();
    let n_obs = len.saturating_sub(spec.window_start);
    if n_obs < n_params + 1 {
        return Err(Error::InsufficientData { n_obs, n_params });
    }
    let start = spec.window_start;

    let mut matrix = Vec::with_capacity(n_obs * n_params);
    let mut push_lags = |series: &[f64], lags: usize| {
        for k in 1..=lags {
            matrix.extend_from_slice(&series[start - k..len - k]);
        }
    };
    push_lags(target, spec.lags.target_lags);
    for (&p, &lags) in spec.predictors.iter().zip(&spec.lags.predictor_lags) {
        push_lags(sample.series(p).values(), lags);
    }
    if spec.intercept {
        matrix.extend(std::iter::repeat_n(1.0, n_obs));
    }
    Ok(Design {
        matrix,
        response: target[start..].to_vec(),
        n_obs,
        n_params,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// In design-column order.
    pub coefficients: Vec<f64>,
    /// Residual sum of squares.
    pub rss: f64,
    pub n_obs: usize,
    pub n_params: usize,
}

impl FitResult {
    pub fn residual_dof(&self) -> usize {
        self.n_obs - self.n_params
    }
}

/// Least squares by Householder QR. The cross-product matrix is never
/// formed.
pub fn ols_fit(design: &Design) -> Result<FitResult> {
    let (n, p) = (design.n_obs, design.n_params);
    if n < p + 1 {
        return Err(Error::InsufficientData {
            n_obs: n,
            n_params: p,
        });
    }
    let mut a = design.matrix.clone();
    let mut b = design.response.clone();

    let max_norm = (0..p)
        .map(|j| a[j * n..(j + 1) * n].iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let tol = RANK_TOLERANCE * max_norm;

    let mut v = vec![0.0; n];
    let mut diag = vec![0.0; p];
    for j in 0..p {
        let col = &a[j * n + j..(j + 1) * n];
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > tol) {
            return Err(Error::RankDeficient { column: j });
        }
        let alpha = if col[0] >= 0.0 { -norm } else { norm };
        let m = n - j;
        v[..m].copy_from_slice(col);
        v[0] -= alpha;
        let vnorm2: f64 = v[..m].iter().map(|x| x * x).sum();
        let scale = 2.0 / vnorm2;

        a[j * n + j] = alpha;
        for x in &mut a[j * n + j + 1..(j + 1) * n] {
            *x = 0.0;
        }
        for k in j + 1..p {
            let ck = &mut a[k * n + j..(k + 1) * n];
            let s = scale * dot(&v[..m], ck);
            ck.iter_mut().zip(&v[..m]).for_each(|(c, vi)| *c -= s * vi);
        }
        let s = scale * dot(&v[..m], &b[j..]);
        b[j..].iter_mut().zip(&v[..m]).for_each(|(c, vi)| *c -= s * vi);
        diag[j] = alpha;
    }

    let mut coefficients = vec![0.0; p];
    for j in (0..p).rev() {
        let mut acc = b[j];
        for k in j + 1..p {
            acc -= a[k * n + j] * coefficients[k];
        }
        coefficients[j] = acc / diag[j];
    }
    let rss = b[p..].iter().map(|r| r * r).sum();
    Ok(FitResult {
        coefficients,
        rss,
        n_obs: n,
        n_params: p,
    })
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds and fits in one step.
pub fn fit_model(sample: &TrivariateSample, spec: &ModelSpec) -> Result<FitResult> {
    ols_fit(&build_design(sample, spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TimeSeries;

    fn sample(x: Vec<f64>, y: Vec<f64>, z: Vec<f64>) -> TrivariateSample {
        TrivariateSample::observed(
            TimeSeries::new(x).unwrap(),
            TimeSeries::new(y).unwrap(),
            TimeSeries::new(z).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn one_lag_design_is_a_shift() {
        let s = sample(
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
            vec![10.0, 20.0, 30.0, 40.0, 50.0],
            vec![0.0; 5],
        );
        let spec =
            ModelSpec::new(SeriesId::Y, vec![SeriesId::X], LagSpec::new(1, vec![1]).unwrap())
                .unwrap();
        let d = build_design(&s, &spec).unwrap();
        assert_eq!((d.n_obs(), d.n_params()), (4, 2));
        assert_eq!(d.column(0), &[10.0, 20.0, 30.0, 40.0]);
        assert_eq!(d.column(1), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.response(), &[20.0, 30.0, 40.0, 50.0]);
    }

    #[test]
    fn trivariate_shape_with_two_lags() {
        let n = 40;
        let s = sample(
            (0..n).map(|t| t as f64).collect(),
            (0..n).map(|t| (t * t) as f64).collect(),
            (0..n).map(|t| (t as f64).sin()).collect(),
        );
        let spec = ModelSpec::new(
            SeriesId::Z,
            vec![SeriesId::Y, SeriesId::X],
            LagSpec::new(2, vec![2, 2]).unwrap(),
        )
        .unwrap();
        let d = build_design(&s, &spec).unwrap();
        assert_eq!(d.n_params(), 6);
        assert_eq!(d.n_obs(), n - 2);
        // Row 0 is t = 2: [z1, z2, y1, y2, x1, x2].
        assert_eq!(d.get(0, 2), 1.0);
        assert_eq!(d.get(0, 3), 0.0);
        assert_eq!(d.get(0, 4), 1.0);
        assert_eq!(d.get(0, 5), 0.0);
    }

    #[test]
    fn too_short_is_insufficient() {
        let s = sample(vec![1.0, 2.0, 3.0], vec![1.0, 0.0, 2.0], vec![0.5, 1.0, 2.0]);
        let spec = ModelSpec::new(
            SeriesId::Z,
            vec![SeriesId::Y, SeriesId::X],
            LagSpec::new(2, vec![2, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            build_design(&s, &spec),
            Err(Error::InsufficientData {
                n_obs: 1,
                n_params: 6
            })
        );
    }

    #[test]
    fn rejects_bad_specs() {
        let lags = LagSpec::new(1, vec![1]).unwrap();
        assert!(ModelSpec::new(SeriesId::Y, vec![SeriesId::Y], lags.clone()).is_err());
        assert!(ModelSpec::new(SeriesId::Y, vec![], lags.clone()).is_err());
        let two = LagSpec::new(1, vec![1, 1]).unwrap();
        assert!(ModelSpec::new(SeriesId::Z, vec![SeriesId::X, SeriesId::X], two).is_err());
        let spec = ModelSpec::new(SeriesId::Y, vec![SeriesId::X], lags).unwrap();
        assert!(spec.with_window_start(0).is_err());
    }

    #[test]
    fn exact_fit() {
        let col: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let resp = col.iter().map(|v| 2.0 * v).collect();
        let fit = ols_fit(&Design::from_columns(&[col], resp).unwrap()).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-14);
        assert!(fit.rss < 1e-24);
    }

    #[test]
    fn constant_duplicate_column_is_rank_deficient() {
        let c: Vec<f64> = (0..10).map(|i| (i as f64).cos()).collect();
        let d = Design::from_columns(&[c.clone(), c.clone()], c).unwrap();
        assert_eq!(ols_fit(&d), Err(Error::RankDeficient { column: 1 }));
        let zero = Design::from_columns(&[vec![0.0; 5]], vec![1.0; 5]).unwrap();
        assert!(matches!(ols_fit(&zero), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn intercept_column_is_appended() {
        let s = sample(
            (0..20).map(|t| (t as f64 * 0.7).sin()).collect(),
            (0..20).map(|t| 3.0 + (t as f64 * 1.3).cos()).collect(),
            vec![0.0; 20],
        );
        let spec =
            ModelSpec::new(SeriesId::Y, vec![SeriesId::X], LagSpec::new(1, vec![1]).unwrap())
                .unwrap()
                .with_intercept(true);
        let d = build_design(&s, &spec).unwrap();
        assert_eq!(d.n_params(), 3);
        assert!(d.column(2).iter().all(|&v| v == 1.0));
    }
}
