//! Problem files: a group and a fan over it.
//!
//! ```json
//! {
//!   "group": {"cyclic": {"order": 8, "weights": [1, 2, 5]}},
//!   "fan": {"rays": [["1", "0", "0"], "1/8(2,4,2)"], "cones": [[1, 2, 7]]}
//! }
//! ```
//!
//! The group may also be `{"abelian": {"orders": [...], "weight_matrix":
//! [[...]]}}` or the shorthand string `"1/8(1,2,5)"`. A ray is a list of
//! rationals (strings or integers) or a point string such as `1/8(2,4,2)`.
//! Cones list 1-based ray indices.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::Value;

use reductor_core::exact::{parse_rational, Rational};
use reductor_core::json::rational_from_json;
use reductor_core::{Fan, GroupData};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupSpec,
    pub fan: FanSpec,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Shorthand(String),
    Tagged(TaggedGroup),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TaggedGroup {
    Cyclic { order: u64, weights: Vec<i64> },
    Abelian { orders: Vec<u64>, weight_matrix: Vec<Vec<i64>> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub rays: Vec<Value>,
    pub cones: Vec<Vec<usize>>,
}

/// Splits `1/8(1,2,5)` into `(Some("1/8"), ["1","2","5"])`, or `(1,0,0)`
/// into `(None, ...)`.
fn split_point(s: &str) -> Option<(Option<&str>, Vec<&str>)> {
    let s = s.trim();
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    let prefix = s[..open].trim();
    let parts = inner.split(',').map(str::trim).collect();
    Some(((!prefix.is_empty()).then_some(prefix), parts))
}

fn parse_group_shorthand(s: &str) -> Result<GroupData> {
    let (prefix, parts) = split_point(s).ok_or_else(|| anyhow!("group shorthand must look like 1/r(a1,...,an), got {s:?}"))?;
    let order = prefix
        .and_then(|p| p.strip_prefix("1/"))
        .ok_or_else(|| anyhow!("group shorthand must start with 1/r, got {s:?}"))?
        .trim()
        .parse::<u64>()
        .with_context(|| format!("bad order in {s:?}"))?;
    let weights = parts
        .iter()
        .map(|p| p.parse::<i64>().with_context(|| format!("bad weight {p:?} in {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupData::cyclic(order, &weights)?)
}

/// `1/8(2,4,2)` or `(1,0,0)`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    let (prefix, parts) = split_point(s).ok_or_else(|| anyhow!("expected a point like 1/8(2,4,2), got {s:?}"))?;
    let scale = match prefix {
        Some(p) => parse_rational(p)?,
        None => Rational::from_integer(1.into()),
    };
    parts
        .iter()
        .map(|p| Ok(parse_rational(p)? * &scale))
        .collect()
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupData> {
        Ok(match self {
            GroupSpec::Shorthand(s) => parse_group_shorthand(s)?,
            GroupSpec::Tagged(TaggedGroup::Cyclic { order, weights }) => GroupData::cyclic(*order, weights)?,
            GroupSpec::Tagged(TaggedGroup::Abelian { orders, weight_matrix }) => {
                GroupData::new(orders.clone(), weight_matrix.clone())?
            }
        })
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).context("problem file is not valid")
    }

    pub fn build(&self) -> Result<Fan> {
        let group = self.group.build().context("group")?;
        let mut rays = Vec::with_capacity(self.fan.rays.len());
        for (i, v) in self.fan.rays.iter().enumerate() {
            let path = format!("fan.rays[{i}]");
            let ray = match v {
                Value::String(s) => parse_point(s).with_context(|| path.clone())?,
                Value::Array(items) => items
                    .iter()
                    .enumerate()
                    .map(|(k, x)| rational_from_json(x, &format!("{path}[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?,
                _ => bail!("{path}: expected a list of rationals or a point string"),
            };
            rays.push(ray);
        }
        let mut cones = Vec::with_capacity(self.fan.cones.len());
        for (i, c) in self.fan.cones.iter().enumerate() {
            let cone = c
                .iter()
                .map(|&k| {
                    if k == 0 || k > rays.len() {
                        Err(anyhow!("fan.cones[{i}]: ray index {k} out of range 1..={}", rays.len()))
                    } else {
                        Ok(k - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            cones.push(cone);
        }
        Fan::new(group, rays, cones).context("fan")
    }
}
