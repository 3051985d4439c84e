//! Bivariate Granger tests and the two-step trivariate procedure.
//!
//! Step one tests every forward link pairwise. When that scan returns the
//! complete topology, step two re-tests X->Z and Y->Z conditionally on the
//! other candidate cause and replaces those two edges with the conditional
//! decisions.
//!
//! Every model fitted for one sample shares the same observation window,
//! starting at the longest lag in use, so the RSS values of nested pairs
//! are comparable.

use serde::Serialize;

use crate::criteria::{Criterion, NestedRss};
use crate::datagen::TrivariateSample;
use crate::error::{Error, Result};
use crate::regress::{fit_model, FitResult, ModelSpec};
use crate::series::{LagSpec, TimeSeries};
use crate::topology::{EdgeSet, Link, LinkDecision, SeriesId, TopologyLabel};

pub const DEFAULT_LAGS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrangerConfig {
    /// Lags of the series being predicted.
    pub own_lags: usize,
    /// Lags of every predictor series.
    pub cross_lags: usize,
    pub criterion: Criterion,
    /// Reject the null (infer a link) when p < significance.
    pub significance: f64,
    /// Run the conditional step for every sample instead of only after a
    /// complete pairwise scan.
    pub always_conditional: bool,
}

impl GrangerConfig {
    pub fn new(criterion: Criterion, significance: f64) -> Self {
        Self {
            own_lags: DEFAULT_LAGS,
            cross_lags: DEFAULT_LAGS,
            criterion,
            significance,
            always_conditional: false,
        }
    }

    pub fn with_lags(mut self, own: usize, cross: usize) -> Self {
        self.own_lags = own;
        self.cross_lags = cross;
        self
    }

    pub fn with_always_conditional(mut self, on: bool) -> Self {
        self.always_conditional = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.significance > 0.0 && self.significance < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "significance {} must lie strictly between 0 and 1",
                self.significance
            )));
        }
        if self.own_lags == 0 || self.cross_lags == 0 {
            return Err(Error::InvalidConfig("lag counts must be at least 1".into()));
        }
        Ok(())
    }

    fn window_start(&self) -> usize {
        self.own_lags.max(self.cross_lags)
    }

    fn spec(&self, target: SeriesId, predictors: &[SeriesId]) -> Result<ModelSpec> {
        let lags = LagSpec::new(self.own_lags, vec![self.cross_lags; predictors.len()])?;
        ModelSpec::new(target, predictors.to_vec(), lags)?.with_window_start(self.window_start())
    }

    fn fit(
        &self,
        sample: &TrivariateSample,
        target: SeriesId,
        predictors: &[SeriesId],
    ) -> Result<FitResult> {
        fit_model(sample, &self.spec(target, predictors)?)
    }
}

fn other_cause(tested: SeriesId) -> Result<SeriesId> {
    match tested {
        SeriesId::X => Ok(SeriesId::Y),
        SeriesId::Y => Ok(SeriesId::X),
        SeriesId::Z => Err(Error::InvalidConfig(
            "conditional tests take X or Y as the tested cause".into(),
        )),
    }
}

/// Residual sums of squares for every test the procedure may need.
///
/// Fitting is independent of criterion and significance level, so one
/// evidence set answers any number of (criterion, level) queries.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkEvidence {
    bivariate: Vec<(Link, NestedRss)>,
    /// X->Z given Y, then Y->Z given X.
    conditional: [NestedRss; 2],
}

impl LinkEvidence {
    /// Fits the models behind the forward links (and the reverse links when
    /// `include_reverse`) plus both conditional tests.
    pub fn collect(
        sample: &TrivariateSample,
        config: &GrangerConfig,
        include_reverse: bool,
    ) -> Result<Self> {
        config.validate()?;
        let mut own: [Option<FitResult>; 3] = [None, None, None];
        let mut own_fit = |s: SeriesId| -> Result<FitResult> {
            let slot = &mut own[s as usize];
            if slot.is_none() {
                *slot = Some(config.fit(sample, s, &[])?);
            }
            Ok(slot.clone().expect("just filled"))
        };

        let xy = config.fit(sample, SeriesId::Y, &[SeriesId::X])?;
        let xz = config.fit(sample, SeriesId::Z, &[SeriesId::X])?;
        let yz = config.fit(sample, SeriesId::Z, &[SeriesId::Y])?;
        let full = config.fit(sample, SeriesId::Z, &[SeriesId::Y, SeriesId::X])?;

        let mut bivariate = vec![
            (Link::XY, NestedRss::from_fits(&own_fit(SeriesId::Y)?, &xy)?),
            (Link::XZ, NestedRss::from_fits(&own_fit(SeriesId::Z)?, &xz)?),
            (Link::YZ, NestedRss::from_fits(&own_fit(SeriesId::Z)?, &yz)?),
        ];
        if include_reverse {
            for link in Link::REVERSE {
                let u = config.fit(sample, link.effect, &[link.cause])?;
                bivariate.push((link, NestedRss::from_fits(&own_fit(link.effect)?, &u)?));
            }
        }
        let conditional = [
            NestedRss::from_fits(&yz, &full)?,
            NestedRss::from_fits(&xz, &full)?,
        ];
        Ok(Self {
            bivariate,
            conditional,
        })
    }

    pub fn bivariate(&self, link: Link) -> Option<&NestedRss> {
        self.bivariate
            .iter()
            .find(|(l, _)| *l == link)
            .map(|(_, r)| r)
    }

    pub fn conditional(&self, tested_cause: SeriesId) -> Result<&NestedRss> {
        other_cause(tested_cause)?;
        Ok(&self.conditional[usize::from(tested_cause == SeriesId::Y)])
    }

    /// Runs the two-step procedure on the stored fits.
    pub fn infer(
        &self,
        criterion: Criterion,
        significance: f64,
        always_conditional: bool,
    ) -> Inference {
        let scan: Vec<LinkDecision> = self
            .bivariate
            .iter()
            .map(|(link, rss)| LinkDecision::new(*link, rss.test(criterion), significance))
            .collect();
        let scan_edges = EdgeSet::from_links(
            scan.iter()
                .filter(|d| d.decided_causal && d.link.is_forward())
                .map(|d| d.link),
        );
        let mut edges = scan_edges;
        let conditional = (always_conditional || scan_edges == EdgeSet::COMPLETE).then(|| {
            let decide = |link, rss: &NestedRss| {
                LinkDecision::new(link, rss.test(criterion), significance)
            };
            [
                decide(Link::XZ, &self.conditional[0]),
                decide(Link::YZ, &self.conditional[1]),
            ]
        });
        if let Some(cond) = &conditional {
            for d in cond {
                edges.set(d.link, d.decided_causal);
            }
        }
        Inference {
            scan,
            scan_edges,
            conditional,
            edges,
            label: TopologyLabel::from_edges(edges),
        }
    }
}

/// Full record of one run of the two-step procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference {
    /// Pairwise decisions, forward links first.
    pub scan: Vec<LinkDecision>,
    pub scan_edges: EdgeSet,
    /// Conditional decisions for X->Z and Y->Z, when step two ran.
    pub conditional: Option<[LinkDecision; 2]>,
    pub edges: EdgeSet,
    pub label: TopologyLabel,
}

/// Pairwise test of whether `cause` Granger-causes `effect`. The decision is
/// labelled X->Y (cause as X, effect as Y).
pub fn bivariate_test(
    cause: &TimeSeries,
    effect: &TimeSeries,
    config: &GrangerConfig,
) -> Result<LinkDecision> {
    let z = TimeSeries::new(vec![0.0; cause.len()])?;
    let sample = TrivariateSample::observed(cause.clone(), effect.clone(), z)?;
    bivariate_link_test(&sample, Link::XY, config)
}

/// Pairwise test of one directed link within a sample.
pub fn bivariate_link_test(
    sample: &TrivariateSample,
    link: Link,
    config: &GrangerConfig,
) -> Result<LinkDecision> {
    config.validate()?;
    if link.cause == link.effect {
        return Err(Error::InvalidConfig(format!("self link {link}")));
    }
    let restricted = config.fit(sample, link.effect, &[])?;
    let unrestricted = config.fit(sample, link.effect, &[link.cause])?;
    let rss = NestedRss::from_fits(&restricted, &unrestricted)?;
    Ok(LinkDecision::new(
        link,
        rss.test(config.criterion),
        config.significance,
    ))
}

/// Result of the pairwise scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scan {
    /// Forward links first, then reverse links.
    pub decisions: Vec<LinkDecision>,
    #[serde(skip)]
    pub edges: EdgeSet,
}

/// Tests every ordered pair. Only forward links enter the edge set.
pub fn bivariate_scan(sample: &TrivariateSample, config: &GrangerConfig) -> Result<Scan> {
    let decisions = Link::FORWARD
        .into_iter()
        .chain(Link::REVERSE)
        .map(|l| bivariate_link_test(sample, l, config))
        .collect::<Result<Vec<_>>>()?;
    let edges = EdgeSet::from_links(
        decisions
            .iter()
            .filter(|d| d.decided_causal && d.link.is_forward())
            .map(|d| d.link),
    );
    Ok(Scan { decisions, edges })
}

/// Does `tested_cause` (X or Y) improve the prediction of Z given the other
/// candidate cause?
pub fn trivariate_test(
    sample: &TrivariateSample,
    tested_cause: SeriesId,
    config: &GrangerConfig,
) -> Result<LinkDecision> {
    config.validate()?;
    let other = other_cause(tested_cause)?;
    let unrestricted = config.fit(sample, SeriesId::Z, &[SeriesId::Y, SeriesId::X])?;
    let restricted = config.fit(sample, SeriesId::Z, &[other])?;
    let rss = NestedRss::from_fits(&restricted, &unrestricted)?;
    Ok(LinkDecision::new(
        Link::new(tested_cause, SeriesId::Z),
        rss.test(config.criterion),
        config.significance,
    ))
}

/// Both steps, with reverse links reported in the scan.
pub fn infer(sample: &TrivariateSample, config: &GrangerConfig) -> Result<Inference> {
    let evidence = LinkEvidence::collect(sample, config, true)?;
    Ok(evidence.infer(
        config.criterion,
        config.significance,
        config.always_conditional,
    ))
}

pub fn infer_topology(sample: &TrivariateSample, config: &GrangerConfig) -> Result<TopologyLabel> {
    infer(sample, config).map(|i| i.label)
}
