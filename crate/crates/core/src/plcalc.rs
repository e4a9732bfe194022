//! Continuous piecewise-linear functions on `[0, d]` with exact rational
//! breakpoints.
//!
//! A [`PlFunction`] is stored in canonical form: breakpoint abscissae are
//! strictly increasing, start at 0 and end at the domain end, and no three
//! consecutive breakpoints are collinear. Structural equality is therefore
//! equality of functions.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlFunction {
    points: Vec<(Rational, Rational)>,
}

/// A line `t ↦ slope·t + intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Line {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Line { slope, intercept }
    }

    pub fn at(&self, t: &Rational) -> Rational {
        &self.slope * t + &self.intercept
    }
}

impl PlFunction {
    /// Builds a function from breakpoints `(t, value)`; the points must be
    /// strictly increasing in `t`, start at `t = 0` and span a nonempty domain.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Argument("a PL function needs at least two breakpoints".into()));
        }
        if !points[0].0.is_zero() {
            return Err(Error::Domain(format!(
                "first breakpoint must be at t = 0, got {}",
                format_rational(&points[0].0)
            )));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Argument("breakpoints must be strictly increasing in t".into()));
        }
        Ok(Self::canonical(points))
    }

    pub fn zero(domain_end: Rational) -> Self {
        PlFunction { points: vec![(int(0), int(0)), (domain_end, int(0))] }
    }

    /// The linear function `slope·t` on `[0, domain_end]`.
    pub fn linear(slope: Rational, domain_end: Rational) -> Self {
        let end_value = &slope * &domain_end;
        PlFunction { points: vec![(int(0), int(0)), (domain_end, end_value)] }
    }

    // merges collinear runs; input is strictly increasing with >= 2 points
    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
                let s2 = (&p.1 - &b.1) / (&p.0 - &b.0);
                if s1 == s2 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PlFunction { points: out }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn domain_end(&self) -> &Rational {
        &self.points[self.points.len() - 1].0
    }

    /// Slopes of the linear pieces, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if t.is_negative() || t > self.domain_end() {
            return Err(Error::Domain(format!(
                "t = {} outside [0, {}]",
                format_rational(t),
                format_rational(self.domain_end())
            )));
        }
        let idx = self.points.partition_point(|(x, _)| x < t);
        if idx < self.points.len() && &self.points[idx].0 == t {
            return Ok(self.points[idx].1.clone());
        }
        let (t0, v0) = &self.points[idx - 1];
        let (t1, v1) = &self.points[idx];
        Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    fn check_domain(&self, other: &PlFunction) -> Result<()> {
        if self.domain_end() != other.domain_end() {
            return Err(Error::Domain(format!(
                "mismatched domains [0, {}] and [0, {}]",
                format_rational(self.domain_end()),
                format_rational(other.domain_end())
            )));
        }
        Ok(())
    }

    fn merged_abscissae(&self, other: &PlFunction) -> Vec<Rational> {
        let mut ts: Vec<Rational> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|(t, _)| t.clone())
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }

    // both functions share the domain; `t` lies inside it
    fn value_at(&self, t: &Rational) -> Rational {
        self.eval(t).expect("abscissa inside the domain")
    }

    pub fn add(&self, other: &PlFunction) -> Result<PlFunction> {
        self.check_domain(other)?;
        let points = self
            .merged_abscissae(other)
            .into_iter()
            .map(|t| {
                let v = self.value_at(&t) + other.value_at(&t);
                (t, v)
            })
            .collect();
        Ok(Self::canonical(points))
    }

    pub fn sub(&self, other: &PlFunction) -> Result<PlFunction> {
        self.add(&other.negate())
    }

    pub fn scale(&self, c: &Rational) -> PlFunction {
        let points = self.points.iter().map(|(t, v)| (t.clone(), v * c)).collect();
        Self::canonical(points)
    }

    pub fn negate(&self) -> PlFunction {
        let points = self.points.iter().map(|(t, v)| (t.clone(), -v)).collect();
        PlFunction { points }
    }

    /// Pointwise minimum. Crossings inside a linear piece become breakpoints.
    pub fn min(&self, other: &PlFunction) -> Result<PlFunction> {
        self.check_domain(other)?;
        let ts = self.merged_abscissae(other);
        let mut points = Vec::with_capacity(ts.len() * 2);
        let mut prev: Option<(Rational, Rational)> = None;
        for t in ts {
            let (f, g) = (self.value_at(&t), other.value_at(&t));
            let diff = &f - &g;
            if let Some((t0, d0)) = &prev {
                if (d0.is_positive() && diff.is_negative()) || (d0.is_negative() && diff.is_positive()) {
                    let tc = t0 + (&t - t0) * d0 / (d0 - &diff);
                    let vc = self.value_at(&tc);
                    points.push((tc, vc));
                }
            }
            points.push((t.clone(), if f <= g { f } else { g }));
            prev = Some((t, diff));
        }
        Ok(Self::canonical(points))
    }

    /// Slopes are nondecreasing from left to right.
    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    /// Pointwise maximum of `lines` over `[0, domain_end]`, computed by a
    /// convex-hull sweep over lines sorted by slope. Among lines of equal
    /// slope the one with the larger intercept is kept.
    pub fn upper_envelope(lines: &[Line], domain_end: &Rational) -> Result<PlFunction> {
        if lines.is_empty() {
            return Err(Error::Argument("upper envelope of an empty set of lines".into()));
        }
        if !domain_end.is_positive() {
            return Err(Error::Domain("envelope domain must be [0, d] with d > 0".into()));
        }
        let mut sorted: Vec<&Line> = lines.iter().collect();
        sorted.sort_by(|a, b| a.slope.cmp(&b.slope).then_with(|| a.intercept.cmp(&b.intercept)));

        let crossing = |a: &Line, b: &Line| (&a.intercept - &b.intercept) / (&b.slope - &a.slope);
        let mut hull: Vec<&Line> = Vec::new();
        for line in sorted {
            if let Some(top) = hull.last() {
                if top.slope == line.slope {
                    // sorted by intercept within a slope: the later one dominates
                    hull.pop();
                }
            }
            while hull.len() >= 2 {
                let (l1, l2) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if crossing(l1, line) <= crossing(l1, l2) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(line);
        }

        let envelope_at = |t: &Rational| {
            hull.iter().map(|l| l.at(t)).max().expect("hull is nonempty")
        };
        let zero = int(0);
        let mut points = vec![(zero.clone(), envelope_at(&zero))];
        for pair in hull.windows(2) {
            let x = crossing(pair[0], pair[1]);
            if x.is_positive() && &x < domain_end {
                let v = pair[0].at(&x);
                points.push((x, v));
            }
        }
        points.push((domain_end.clone(), envelope_at(domain_end)));
        Ok(Self::canonical(points))
    }

    /// Extends a function on `[0, 1]` to `[0, 2]` by `g(t) = f(2 − t)` for
    /// `t > 1`.
    pub fn symmetrize(&self) -> Result<PlFunction> {
        if self.domain_end() != &int(1) {
            return Err(Error::Domain(format!(
                "symmetrize needs a function on [0, 1], got [0, {}]",
                format_rational(self.domain_end())
            )));
        }
        let two = int(2);
        let mut points = self.points.clone();
        for (t, v) in self.points.iter().rev().skip(1) {
            points.push((&two - t, v.clone()));
        }
        Ok(Self::canonical(points))
    }

    /// Restriction to `[0, end]` for `0 < end <= domain_end`.
    pub fn restrict(&self, end: &Rational) -> Result<PlFunction> {
        if !end.is_positive() || end > self.domain_end() {
            return Err(Error::Domain(format!("cannot restrict to [0, {}]", format_rational(end))));
        }
        let mut points: Vec<_> = self.points.iter().filter(|(t, _)| t < end).cloned().collect();
        points.push((end.clone(), self.value_at(end)));
        Ok(Self::canonical(points))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("PL functions always serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<PlFunction> {
        serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, e.to_string()))
    }

    /// CSV rows `t,value` at the breakpoints, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (t, v) in &self.points {
            out.push_str(&format!("{},{}\n", format_rational(t), format_rational(v)));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<PlFunction> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('t')) {
                continue;
            }
            let (t, v) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(lineno, format!("expected `t,value`, got `{line}`")))?;
            points.push((parse_rational(t)?, parse_rational(v)?));
        }
        PlFunction::new(points)
    }
}

impl fmt::Display for PlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(t, v)| format!("({}, {})", format_rational(t), format_rational(v)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonPoint {
    t: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPl {
    breakpoints: Vec<JsonPoint>,
}

impl Serialize for PlFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPl {
            breakpoints: self
                .points
                .iter()
                .map(|(t, v)| JsonPoint { t: format_rational(t), v: format_rational(v) })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonPl::deserialize(deserializer)?;
        let points = raw
            .breakpoints
            .iter()
            .map(|p| Ok((parse_rational(&p.t)?, parse_rational(&p.v)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PlFunction::new(points).map_err(D::Error::custom)
    }
}
