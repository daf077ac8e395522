use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::snake::SnakeComposition;

/// A multi-fan graph `F(c, d)`: spine vertices `v_1, …, v_ℓ` joined by paths
/// of `d_j` series edges, plus a hub vertex `x` joined to each `v_i` by a
/// bundle of `c_i` parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiFan {
    bundles: Vec<u32>,
    segments: Vec<u32>,
}

impl MultiFan {
    pub fn new(bundles: Vec<u32>, segments: Vec<u32>) -> Result<Self> {
        if bundles.is_empty() {
            return Err(Error::InvalidFan { message: "need at least one bundle".into() });
        }
        if segments.len() + 1 != bundles.len() {
            return Err(Error::InvalidFan {
                message: format!(
                    "{} bundles require {} path segments, got {}",
                    bundles.len(),
                    bundles.len() - 1,
                    segments.len()
                ),
            });
        }
        if bundles.iter().chain(&segments).any(|&v| v == 0) {
            return Err(Error::InvalidFan { message: "all parameters must be positive".into() });
        }
        Ok(MultiFan { bundles, segments })
    }

    /// Parses the text form `"F(c=2,1;d=2)"`; the `d` part may be omitted
    /// for a single bundle: `"F(c=2)"`.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = cleaned.to_ascii_uppercase();
        let inner = upper
            .strip_prefix("F(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                position: 1,
                message: "expected multi-fan text of the form F(c=...;d=...)".into(),
            })?;
        let (c_part, d_part) = match inner.split_once(';') {
            Some((c, d)) => (c, Some(d)),
            None => (inner, None),
        };
        let parse_list = |part: &str, prefix: &str| -> Result<Vec<u32>> {
            let body = part.strip_prefix(prefix).ok_or_else(|| Error::Parse {
                position: 1,
                message: format!("expected '{prefix}' in multi-fan text"),
            })?;
            if body.is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .enumerate()
                .map(|(i, piece)| {
                    piece.parse().map_err(|_| Error::Parse {
                        position: i + 1,
                        message: format!("'{piece}' is not a positive integer"),
                    })
                })
                .collect()
        };
        let bundles = parse_list(c_part, "C=")?;
        let segments = match d_part {
            Some(d) => parse_list(d, "D=")?,
            None => Vec::new(),
        };
        MultiFan::new(bundles, segments)
    }

    pub fn bundles(&self) -> &[u32] {
        &self.bundles
    }

    pub fn segments(&self) -> &[u32] {
        &self.segments
    }

    pub fn num_spine_vertices(&self) -> usize {
        self.bundles.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.bundles.iter().sum::<u32>() + self.segments.iter().sum::<u32>()
    }

    /// The multi-fan whose graphic matroid is the given snake:
    /// spine vertex `w_i` stands for the i-th interval of the presentation,
    /// and its bundle size is the number of elements in no other interval.
    pub fn from_snake(s: &SnakeComposition) -> MultiFan {
        let a = s.runs();
        let n = a.len();
        let mut bundles = Vec::new();
        let mut segments = Vec::new();
        if n == 1 {
            bundles.push(a[0] + 1);
        } else {
            bundles.push(a[0]);
            for i in (2..n - 1).step_by(2) {
                bundles.push(a[i] - 1);
            }
            if n % 2 == 1 {
                bundles.push(a[n - 1]);
            } else {
                bundles.push(1);
            }
            for i in (1..n).step_by(2) {
                segments.push(a[i] - 1);
            }
        }
        let fan = MultiFan { bundles, segments };
        debug_assert_eq!(fan.edge_count(), s.num_elements());
        fan
    }

    /// The multi-fan whose graphic matroid is the dual of the given snake,
    /// with the parameter vectors spelled out case by case. Always agrees
    /// with `from_snake(s.dual())`.
    pub fn from_dual_snake(s: &SnakeComposition) -> MultiFan {
        let a = s.runs();
        let n = a.len();
        let a1 = a[0];
        let mut c = Vec::new();
        let mut d = Vec::new();
        if n == 1 {
            if a1 > 1 {
                c.extend([1, 1]);
                d.push(a1 - 1);
            } else {
                c.push(2);
            }
        } else if a1 > 1 && n % 2 == 1 {
            c.push(1);
            for i in (1..n).step_by(2) {
                c.push(a[i] - 1);
            }
            c.push(1);
            for i in (0..n).step_by(2) {
                d.push(a[i] - 1);
            }
        } else if a1 > 1 {
            c.push(1);
            for i in (1..n - 1).step_by(2) {
                c.push(a[i] - 1);
            }
            c.push(a[n - 1]);
            for i in (0..n - 1).step_by(2) {
                d.push(a[i] - 1);
            }
        } else if n == 2 {
            c.push(a[1] + 1);
        } else if n % 2 == 1 {
            c.push(a[1]);
            for i in (3..n).step_by(2) {
                c.push(a[i] - 1);
            }
            c.push(1);
            for i in (2..n).step_by(2) {
                d.push(a[i] - 1);
            }
        } else {
            c.push(a[1]);
            for i in (3..n - 1).step_by(2) {
                c.push(a[i] - 1);
            }
            c.push(a[n - 1]);
            for i in (2..n - 1).step_by(2) {
                d.push(a[i] - 1);
            }
        }
        let fan = MultiFan { bundles: c, segments: d };
        debug_assert_eq!(fan.edge_count(), s.num_elements());
        fan
    }

    /// Expands to an explicit multigraph: hub `x` is vertex 0, spine vertex
    /// `v_j` follows the `d_{j-1} - 1` intermediate path vertices before it.
    /// Edges are emitted bundle-first per spine vertex, then the segment to
    /// the next one.
    pub fn expand(&self) -> Multigraph {
        let total = 2 + self.segments.iter().sum::<u32>() as usize;
        let mut g = Multigraph::new(total);
        let mut spine = 1usize;
        for (i, &c) in self.bundles.iter().enumerate() {
            for _ in 0..c {
                g.add_edge(0, spine);
            }
            if i < self.segments.len() {
                for _ in 0..self.segments[i] {
                    g.add_edge(spine, spine + 1);
                    spine += 1;
                }
            }
        }
        g
    }

    /// Closed form for the number of acyclic orientations,
    /// `2 · Π (2^{d_j + 1} - 1)`; only the segment vector matters.
    pub fn acyclic_orientations_formula(&self) -> BigUint {
        let mut p = BigUint::from(2u32);
        for &d in &self.segments {
            p *= (BigUint::one() << (d + 1)) - BigUint::one();
        }
        p
    }
}

impl fmt::Display for MultiFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F(c=")?;
        for (i, c) in self.bundles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        if !self.segments.is_empty() {
            write!(f, ";d=")?;
            for (i, d) in self.segments.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
        }
        write!(f, ")")
    }
}
