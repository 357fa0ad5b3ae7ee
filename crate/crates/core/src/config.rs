//! JSON instance files: the groups and actions, the length inputs and the run
//! parameters. Errors carry the JSON path of the offending field.

use crate::bicrossed::{twist_finite, twist_free, MatchedPair};
use crate::group::{
    build_finite, build_group, semidirect_product, AutAction, BuiltGroup, FiniteGroup, FreeProduct,
    GroupDescriptor, SemidirectProduct, Word,
};
use crate::length::{coordinate_dual_length, DirectSumLength, DualLength, GroupLength};
use crate::rep::IrrClass;
use crate::{Error, Result};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Built-in instances, by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("z3-semidirect", include_str!("../presets/z3-semidirect.json")),
    ("s3-twist", include_str!("../presets/s3-twist.json")),
    ("psl2z-twist", include_str!("../presets/psl2z-twist.json")),
    ("direct-sum-z2", include_str!("../presets/direct-sum-z2.json")),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub instance: InstanceSpec,
    #[serde(default)]
    pub lengths: LengthSpec,
    #[serde(default)]
    pub run: RunParams,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    /// `G ⋊ Λ` with `tau` keyed by generator ids of `Λ`.
    Semidirect {
        g: GroupDescriptor,
        lambda: GroupDescriptor,
        tau: BTreeMap<String, Vec<usize>>,
    },
    /// `Γ ⋈ (G ⋊ Λ)` for `τ: Γ → Aut(G)` and `Λ ≤ Γ`. Keys of `tau` are
    /// generators of `Γ` (element ids or names; letters `s`, `t`, ... for the
    /// factors of a free product) and `lambda` lists generators of `Λ`.
    Twist {
        gamma: GroupDescriptor,
        g: GroupDescriptor,
        tau: BTreeMap<String, Vec<usize>>,
        lambda: Vec<String>,
    },
    /// Only a length: `l(ξ) = Σ M_i` on a restricted direct sum of finite
    /// groups with the given (cyclically repeated) orders.
    DirectSumLength { orders: Vec<u64> },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthSpec {
    /// Word-length generators of `Γ`; the group's own generators when absent.
    #[serde(default)]
    pub gamma_generators: Option<Vec<String>>,
    /// Average `l_Γ` over conjugation by `Λ`.
    #[serde(default = "yes")]
    pub average_over_lambda: bool,
    #[serde(default)]
    pub dual_base: DualBaseSpec,
    #[serde(default)]
    pub rd: RdSpec,
}

fn yes() -> bool {
    true
}

/// Length on `Irr(G)` in canonical class order.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DualBaseSpec {
    #[default]
    Zero,
    Values {
        values: Vec<i64>,
    },
    /// `Σ |aᵢ|` for characters `Π exp(2πi aᵢ gᵢ / nᵢ)` of `⊕ Z_{nᵢ}`.
    Coordinate {
        orders: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RdLength {
    /// The family built from `l_Γ` and the dual base length.
    #[default]
    Affording,
    /// Word length in the generating classes of the fusion ring.
    Word,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSpec {
    #[default]
    None,
    /// The pairs `(Ad_r, Ad_(e,r))` for `r ∈ Λ`.
    AdLambda,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RdSpec {
    #[serde(default)]
    pub length: RdLength,
    #[serde(default)]
    pub theta: ThetaSpec,
    #[serde(default = "default_iters")]
    pub iters: usize,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_iters() -> usize {
    30
}

fn default_restarts() -> usize {
    4
}

impl Default for RdSpec {
    fn default() -> Self {
        RdSpec {
            length: RdLength::default(),
            theta: ThetaSpec::default(),
            iters: default_iters(),
            restarts: default_restarts(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    #[serde(default = "default_kmax")]
    pub kmax: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Enumeration radius in an infinite `Γ`; `kmax + 2` when absent.
    #[serde(default)]
    pub radius: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_kmax() -> usize {
    6
}

fn default_tol() -> f64 {
    1e-6
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            kmax: default_kmax(),
            seed: 0,
            tol: default_tol(),
            radius: None,
            out: None,
        }
    }
}

impl RunParams {
    pub fn radius(&self) -> usize {
        self.radius.unwrap_or(self.kmax + 2)
    }
}

/// A built instance.
pub enum Instance {
    Semidirect(Arc<SemidirectProduct>),
    FiniteTwist(MatchedPair<FiniteGroup>),
    FreeTwist(MatchedPair<FreeProduct>),
    DirectSum(DirectSumLength),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Semidirect(_) => "semidirect",
            Instance::FiniteTwist(_) => "twist over a finite group",
            Instance::FreeTwist(_) => "twist over a free product",
            Instance::DirectSum(_) => "direct-sum length",
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::config(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config { path: at, message } => Error::config(format!("{}: {at}", path.display()), message),
            other => other,
        })
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            Error::config("preset", format!("unknown preset {name:?} (known: {})", names.join(", ")))
        })?;
        Self::from_json(text)
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("instance")
    }

    pub fn build(&self) -> Result<Instance> {
        match &self.instance {
            InstanceSpec::Semidirect { g, lambda, tau } => {
                let g = Arc::new(build_finite(g).map_err(|e| locate(e, "instance.g"))?);
                let lambda = Arc::new(build_finite(lambda).map_err(|e| locate(e, "instance.lambda"))?);
                let mut gens = Vec::new();
                for (key, images) in tau {
                    let id = finite_element(&lambda, key).map_err(|e| locate(e, &format!("instance.tau.{key}")))?;
                    gens.push((id, images.clone()));
                }
                let action = AutAction::from_generators(lambda, g, &gens)?;
                Ok(Instance::Semidirect(Arc::new(semidirect_product(&action))))
            }
            InstanceSpec::Twist { gamma, g, tau, lambda } => {
                let g = Arc::new(build_finite(g).map_err(|e| locate(e, "instance.g"))?);
                match build_group(gamma).map_err(|e| locate(e, "instance.gamma"))? {
                    BuiltGroup::Finite(gamma) => {
                        let mut gens = Vec::new();
                        for (key, images) in tau {
                            let id = finite_element(&gamma, key)
                                .map_err(|e| locate(e, &format!("instance.tau.{key}")))?;
                            gens.push((id, images.clone()));
                        }
                        let lambda_gens = lambda
                            .iter()
                            .enumerate()
                            .map(|(i, s)| finite_element(&gamma, s).map_err(|e| locate(e, &format!("instance.lambda[{i}]"))))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Instance::FiniteTwist(twist_finite(gamma, g, &gens, &lambda_gens)?))
                    }
                    BuiltGroup::Enumerable(fp) => {
                        let n = g.order();
                        let mut perms: Vec<Option<Vec<usize>>> = vec![None; fp.orders().len()];
                        for (key, images) in tau {
                            let at = format!("instance.tau.{key}");
                            let w = parse_word(&fp, key).map_err(|e| locate(e, &at))?;
                            let f = match w.0.as_slice() {
                                [s] if s.exp == 1 => s.factor,
                                _ => return Err(Error::config(at, "key must be a factor generator")),
                            };
                            perms[f] = Some(images.clone());
                        }
                        let perms: Vec<Vec<usize>> = perms
                            .into_iter()
                            .map(|p| p.unwrap_or_else(|| (0..n).collect()))
                            .collect();
                        let lambda_gens = lambda
                            .iter()
                            .enumerate()
                            .map(|(i, s)| parse_word(&fp, s).map_err(|e| locate(e, &format!("instance.lambda[{i}]"))))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Instance::FreeTwist(twist_free(fp, g, &perms, &lambda_gens)?))
                    }
                }
            }
            InstanceSpec::DirectSumLength { orders } => {
                DirectSumLength::new(orders.clone()).map_err(|e| locate(e, "instance.orders"))
                    .map(Instance::DirectSum)
            }
        }
    }

    /// `l_Γ` on a finite `Γ`, averaged over `Λ` when configured.
    pub fn gamma_length_finite(&self, mp: &MatchedPair<FiniteGroup>) -> Result<GroupLength<usize>> {
        let gamma = mp.gamma().clone();
        let gens = match &self.lengths.gamma_generators {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    finite_element(&gamma, s).map_err(|e| locate(e, &format!("lengths.gamma_generators[{i}]")))
                })
                .collect::<Result<Vec<_>>>()?,
            None => gamma.generating_set(),
        };
        let l = GroupLength::finite_word(gamma.clone(), &gens)
            .map_err(|e| locate(e, "lengths.gamma_generators"))?;
        match (self.lengths.average_over_lambda, mp.twist()) {
            (true, Some(t)) => l.average_by_conjugation(gamma, t.lambda_elements()),
            _ => Ok(l),
        }
    }

    /// `l_Γ` on a free product: the word length, averaged over `Λ` when configured.
    pub fn gamma_length_free(&self, mp: &MatchedPair<FreeProduct>) -> Result<GroupLength<Word>> {
        if self.lengths.gamma_generators.is_some() {
            return Err(Error::config(
                "lengths.gamma_generators",
                "a free product always uses its factor generators",
            ));
        }
        let fp = mp.gamma().clone();
        let l = GroupLength::word(fp.clone());
        match (self.lengths.average_over_lambda, mp.twist()) {
            (true, Some(t)) => l.average_by_conjugation(fp, t.lambda_elements()),
            _ => Ok(l),
        }
    }

    /// The dual base length on `Irr(G)`.
    pub fn dual_base(&self, irr: &[IrrClass]) -> Result<DualLength> {
        let at = "lengths.dual_base";
        match &self.lengths.dual_base {
            DualBaseSpec::Zero => Ok(DualLength::zero(irr.len())),
            DualBaseSpec::Values { values } => {
                if values.len() != irr.len() {
                    return Err(Error::config(
                        format!("{at}.values"),
                        format!("{} values for {} classes", values.len(), irr.len()),
                    ));
                }
                Ok(DualLength::from_integers(values))
            }
            DualBaseSpec::Coordinate { orders } => {
                coordinate_dual_length(irr, orders).map_err(|e| locate(e, &format!("{at}.orders")))
            }
        }
    }
}

/// Attach a location to config-type errors that lack one.
fn locate(e: Error, at: &str) -> Error {
    match e {
        Error::Config { path, message } => Error::config(format!("{at}.{path}"), message),
        e if e.is_config_error() => Error::config(at, e.to_string()),
        e => e,
    }
}

/// An element of a finite group by id or by name.
pub fn finite_element(group: &FiniteGroup, s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(id) = s.parse::<usize>() {
        return if id < group.order() {
            Ok(id)
        } else {
            Err(Error::config("element", format!("id {id} out of range for order {}", group.order())))
        };
    }
    group
        .names()
        .iter()
        .position(|n| n == s)
        .ok_or_else(|| Error::config("element", format!("no element named {s:?}")))
}

/// Parse a word such as `st^2s`, `s t^-1` or `e` in a free product whose
/// factor generators are `s`, `t`, `u`, ...
pub fn parse_word(fp: &FreeProduct, s: &str) -> Result<Word> {
    let mut syllables = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace() && *c != '*').peekable();
    if s.trim() == "e" {
        return Ok(Word::identity());
    }
    while let Some(c) = chars.next() {
        if !c.is_ascii_lowercase() || c < 's' {
            return Err(Error::config("word", format!("unexpected {c:?} in {s:?}")));
        }
        let factor = (c as u8 - b's') as usize;
        let mut exp: i64 = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            if chars.peek() == Some(&'-') {
                digits.push('-');
                chars.next();
            }
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
            }
            exp = digits
                .parse()
                .map_err(|_| Error::config("word", format!("bad exponent in {s:?}")))?;
        }
        syllables.push((factor, exp));
    }
    fp.reduce(&syllables)
}
