//! Diagrams of dots and arcs, and the finite tree they form.
//!
//! A diagram is built by a sequence of steps. The first step puts a dot on
//! some `a_s` (`2 <= s <= n-1`) or an arc on `a_s a_{s-1}` (`2 <= s <= n`).
//! Later steps grow the used interval `[u, v]` by one on a side (a dot) or
//! by one on both sides (an arc above). An arc touching `a_1` or `a_n` is
//! extreme and ends the branch; those diagrams are the leaves.
//!
//! Child order is fixed: arc above, then dot left, then dot right. The
//! first level lists dots `a_2 .. a_{n-1}` then arcs `a_2 .. a_n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// One construction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Dot on `a_s`.
    InitialDot(usize),
    /// Arc joining `a_{s-1}` and `a_s`.
    InitialArc(usize),
    /// Arc joining `a_{u-1}` and `a_{v+1}` over the used interval.
    ArcAbove,
    /// Dot on `a_{u-1}`.
    DotLeft,
    /// Dot on `a_{v+1}`.
    DotRight,
}

impl Step {
    pub fn is_arc(self) -> bool {
        matches!(self, Step::InitialArc(_) | Step::ArcAbove)
    }

    fn token(self) -> String {
        match self {
            Step::InitialDot(s) => format!("d{s}"),
            Step::InitialArc(s) => format!("a{s}"),
            Step::ArcAbove => "A".into(),
            Step::DotLeft => "L".into(),
            Step::DotRight => "R".into(),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// What a step placed, in absolute generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Placement {
    Dot { generator: usize },
    /// Arc with left end `a_x` and right end `a_y`, `x < y`.
    Arc { x: usize, y: usize },
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Dot { generator } => write!(f, "dot a{generator}"),
            Placement::Arc { x, y } => write!(f, "arc a{y}a{x}"),
        }
    }
}

/// A vertex of the tree: rank plus validated step sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: usize,
    steps: Vec<Step>,
    placements: Vec<Placement>,
    /// Used generators `[u, v]`; `None` for the root.
    interval: Option<(usize, usize)>,
}

impl Diagram {
    /// The root: no generator used.
    pub fn root(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        Ok(Diagram { n, steps: Vec::new(), placements: Vec::new(), interval: None })
    }

    /// Replays `steps` from the root, rejecting any illegal move.
    pub fn from_steps(n: usize, steps: &[Step]) -> Result<Self> {
        let mut d = Diagram::root(n)?;
        for &step in steps {
            d = d.child(step)?;
        }
        Ok(d)
    }

    /// Parses an id such as `"d2 A L"`; `"root"` or `""` is the root.
    pub fn parse_id(n: usize, id: &str) -> Result<Self> {
        let id = id.trim();
        if id.is_empty() || id == "root" {
            return Diagram::root(n);
        }
        let malformed = |why: &str| Error::MalformedDiagram(format!("{id:?}: {why}"));
        let mut steps = Vec::new();
        for (pos, tok) in id.split(' ').enumerate() {
            let step = match (pos, tok) {
                (0, t) if t.starts_with('d') || t.starts_with('a') => {
                    let s: usize = t[1..].parse().map_err(|_| malformed("bad initial index"))?;
                    if t.starts_with('d') {
                        Step::InitialDot(s)
                    } else {
                        Step::InitialArc(s)
                    }
                }
                (0, _) => return Err(malformed("must start with d<s> or a<s>")),
                (_, "A") => Step::ArcAbove,
                (_, "L") => Step::DotLeft,
                (_, "R") => Step::DotRight,
                (_, t) => return Err(malformed(&format!("unknown token {t:?}"))),
            };
            steps.push(step);
        }
        Diagram::from_steps(n, &steps)
    }

    /// The diagram obtained by one more step, if legal.
    pub fn child(&self, step: Step) -> Result<Diagram> {
        if !self.legal_steps().contains(&step) {
            return Err(Error::MalformedDiagram(format!(
                "step {step} is not allowed after {:?} (rank {})",
                self.id(),
                self.n
            )));
        }
        let placement = match (step, self.interval) {
            (Step::InitialDot(s), None) => Placement::Dot { generator: s },
            (Step::InitialArc(s), None) => Placement::Arc { x: s - 1, y: s },
            (Step::ArcAbove, Some((u, v))) => Placement::Arc { x: u - 1, y: v + 1 },
            (Step::DotLeft, Some((u, _))) => Placement::Dot { generator: u - 1 },
            (Step::DotRight, Some((_, v))) => Placement::Dot { generator: v + 1 },
            _ => unreachable!("legal_steps only offers consistent moves"),
        };
        let interval = match (placement, self.interval) {
            (Placement::Dot { generator }, None) => (generator, generator),
            (Placement::Arc { x, y }, None) => (x, y),
            (Placement::Dot { generator }, Some((u, v))) => (u.min(generator), v.max(generator)),
            (Placement::Arc { x, y }, Some(_)) => (x, y),
        };
        let mut next = self.clone();
        next.steps.push(step);
        next.placements.push(placement);
        next.interval = Some(interval);
        Ok(next)
    }

    /// Steps allowed next, in canonical child order.
    pub fn legal_steps(&self) -> Vec<Step> {
        let n = self.n;
        let Some((u, v)) = self.interval else {
            let dots = (2..n).map(Step::InitialDot);
            let arcs = (2..=n).map(Step::InitialArc);
            return dots.chain(arcs).collect();
        };
        if self.is_leaf() {
            return Vec::new();
        }
        let left = u >= 3;
        let right = v + 2 <= n;
        let mut out = vec![Step::ArcAbove];
        match self.steps.last().copied() {
            Some(Step::InitialDot(_)) => {}
            Some(Step::InitialArc(_)) | Some(Step::ArcAbove) => {
                if left {
                    out.push(Step::DotLeft);
                }
                if right {
                    out.push(Step::DotRight);
                }
            }
            Some(Step::DotLeft) => {
                if left {
                    out.push(Step::DotLeft);
                }
            }
            Some(Step::DotRight) => {
                if right {
                    out.push(Step::DotRight);
                }
            }
            None => unreachable!("non-root diagram has steps"),
        }
        out
    }

    pub fn children(&self) -> Vec<Diagram> {
        self.legal_steps()
            .into_iter()
            .map(|s| self.child(s).expect("legal step"))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn used_interval(&self) -> Option<(usize, usize)> {
        self.interval
    }

    pub fn is_root(&self) -> bool {
        self.steps.is_empty()
    }

    /// True once an extreme arc (touching `a_1` or `a_n`) has been drawn.
    pub fn is_leaf(&self) -> bool {
        matches!(self.interval, Some((u, v)) if u == 1 || v == self.n)
    }

    pub fn level(&self) -> usize {
        self.steps.len()
    }

    pub fn used_count(&self) -> usize {
        self.interval.map_or(0, |(u, v)| v - u + 1)
    }

    pub fn unused_generators(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|g| !matches!(self.interval, Some((u, v)) if (u..=v).contains(g)))
            .collect()
    }

    pub fn dot_count(&self) -> usize {
        self.placements.iter().filter(|p| matches!(p, Placement::Dot { .. })).count()
    }

    pub fn arc_count(&self) -> usize {
        self.placements.len() - self.dot_count()
    }

    /// `(c, d)`: number of free abelian factors (dots and unused generators)
    /// and number of bicyclic-times-integer factors (arcs). `c + 2d = n`.
    pub fn schema_counts(&self) -> (usize, usize) {
        (self.dot_count() + self.n - self.used_count(), self.arc_count())
    }

    /// Space-separated step tokens, e.g. `"d2 A"`; `"root"` for the root.
    pub fn id(&self) -> String {
        if self.steps.is_empty() {
            return "root".into();
        }
        self.steps.iter().map(|s| s.token()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Every vertex of the tree in depth-first pre-order, starting at the root.
pub fn enumerate_vertices(n: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    walk(Diagram::root(n)?, &mut |d| out.push(d.clone()));
    Ok(out)
}

/// All leaves in depth-first order.
pub fn enumerate_leaves(n: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    walk(Diagram::root(n)?, &mut |d| {
        if d.is_leaf() {
            out.push(d.clone());
        }
    });
    Ok(out)
}

pub(crate) fn walk(d: Diagram, visit: &mut impl FnMut(&Diagram)) {
    visit(&d);
    for child in d.children() {
        walk(child, visit);
    }
}
