//! Causal-graph vocabulary for three series and the spurious/unidentified
//! classification of an inferred topology against the truth.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::criteria::TestOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SeriesId {
    X,
    Y,
    Z,
}

impl SeriesId {
    pub const ALL: [SeriesId; 3] = [SeriesId::X, SeriesId::Y, SeriesId::Z];

    pub fn as_char(self) -> char {
        match self {
            SeriesId::X => 'X',
            SeriesId::Y => 'Y',
            SeriesId::Z => 'Z',
        }
    }
}

impl FromStr for SeriesId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(SeriesId::X),
            "y" => Ok(SeriesId::Y),
            "z" => Ok(SeriesId::Z),
            other => Err(format!("unknown axis '{other}'")),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A directed link `cause -> effect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Link {
    pub cause: SeriesId,
    pub effect: SeriesId,
}

impl Link {
    pub const XY: Link = Link::new(SeriesId::X, SeriesId::Y);
    pub const XZ: Link = Link::new(SeriesId::X, SeriesId::Z);
    pub const YZ: Link = Link::new(SeriesId::Y, SeriesId::Z);

    /// The links that make up a topology.
    pub const FORWARD: [Link; 3] = [Link::XY, Link::XZ, Link::YZ];
    /// Reverse directions; tested for diagnostics only.
    pub const REVERSE: [Link; 3] = [
        Link::new(SeriesId::Y, SeriesId::X),
        Link::new(SeriesId::Z, SeriesId::X),
        Link::new(SeriesId::Z, SeriesId::Y),
    ];

    pub const fn new(cause: SeriesId, effect: SeriesId) -> Self {
        Self { cause, effect }
    }

    pub fn is_forward(self) -> bool {
        Link::FORWARD.contains(&self)
    }

    fn bit(self) -> Option<u8> {
        Link::FORWARD
            .iter()
            .position(|&l| l == self)
            .map(|i| 1u8 << i)
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.cause, self.effect)
    }
}

/// A subset of the forward links {X->Y, X->Z, Y->Z}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(u8);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);
    pub const COMPLETE: EdgeSet = EdgeSet(0b111);

    pub fn from_links<I: IntoIterator<Item = Link>>(links: I) -> Self {
        let mut set = EdgeSet::EMPTY;
        for link in links {
            set.insert(link);
        }
        set
    }

    /// Inserts a forward link. Returns false for reverse links, which are
    /// not part of the topology.
    pub fn insert(&mut self, link: Link) -> bool {
        match link.bit() {
            Some(b) => {
                self.0 |= b;
                true
            }
            None => false,
        }
    }

    pub fn remove(&mut self, link: Link) {
        if let Some(b) = link.bit() {
            self.0 &= !b;
        }
    }

    pub fn set(&mut self, link: Link, present: bool) {
        if present {
            self.insert(link);
        } else {
            self.remove(link);
        }
    }

    pub fn contains(self, link: Link) -> bool {
        link.bit().is_some_and(|b| self.0 & b != 0)
    }

    pub fn links(self) -> impl Iterator<Item = Link> {
        Link::FORWARD.into_iter().filter(move |&l| self.contains(l))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Links in `self` that are absent from `other`.
    pub fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.links().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyLabel {
    Complete,
    Driver,
    Indirect,
    Null,
    Other(EdgeSet),
}

impl TopologyLabel {
    pub fn edges(self) -> EdgeSet {
        match self {
            TopologyLabel::Complete => EdgeSet::COMPLETE,
            TopologyLabel::Driver => EdgeSet::from_links([Link::XY, Link::XZ]),
            TopologyLabel::Indirect => EdgeSet::from_links([Link::XY, Link::YZ]),
            TopologyLabel::Null => EdgeSet::EMPTY,
            TopologyLabel::Other(e) => e,
        }
    }

    /// The named label for an edge set, or `Other` when none matches.
    pub fn from_edges(edges: EdgeSet) -> Self {
        [
            TopologyLabel::Complete,
            TopologyLabel::Driver,
            TopologyLabel::Indirect,
            TopologyLabel::Null,
        ]
        .into_iter()
        .find(|l| l.edges() == edges)
        .unwrap_or(TopologyLabel::Other(edges))
    }
}

impl fmt::Display for TopologyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyLabel::Complete => write!(f, "complete"),
            TopologyLabel::Driver => write!(f, "driver"),
            TopologyLabel::Indirect => write!(f, "indirect"),
            TopologyLabel::Null => write!(f, "null"),
            TopologyLabel::Other(e) => write!(f, "other{e}"),
        }
    }
}

/// The two topologies the generators can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Driver,
    Indirect,
}

impl Topology {
    pub fn label(self) -> TopologyLabel {
        match self {
            Topology::Driver => TopologyLabel::Driver,
            Topology::Indirect => TopologyLabel::Indirect,
        }
    }

    /// The link whose acceptance is spurious causality for this truth.
    pub fn spurious_key_link(self) -> Link {
        match self {
            Topology::Driver => Link::YZ,
            Topology::Indirect => Link::XZ,
        }
    }

    /// The link whose rejection is unidentified causality for this truth.
    pub fn unidentified_key_link(self) -> Link {
        match self {
            Topology::Driver => Link::XZ,
            Topology::Indirect => Link::YZ,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Driver => "driver",
            Topology::Indirect => "indirect",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "driver" => Ok(Topology::Driver),
            "indirect" => Ok(Topology::Indirect),
            other => Err(format!("unknown topology '{other}'")),
        }
    }
}

/// The outcome of testing one directed link.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkDecision {
    pub link: Link,
    pub outcome: TestOutcome,
    pub decided_causal: bool,
}

impl LinkDecision {
    pub fn new(link: Link, outcome: TestOutcome, significance: f64) -> Self {
        let decided_causal = outcome.p_value < significance;
        Self {
            link,
            outcome,
            decided_causal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifiedResult {
    pub inferred: TopologyLabel,
    pub truth: TopologyLabel,
    pub spurious: bool,
    pub unidentified: bool,
}

/// Link-level comparison of an inferred topology with the truth.
pub fn classify(inferred: TopologyLabel, truth: TopologyLabel) -> ClassifiedResult {
    let (i, t) = (inferred.edges(), truth.edges());
    ClassifiedResult {
        inferred,
        truth,
        spurious: !i.difference(t).is_empty(),
        unidentified: !t.difference(i).is_empty(),
    }
}
