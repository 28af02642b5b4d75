use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::protocols::{
    FrequencyOracle, HadamardResponse, Krr, LocalProtocol, ProjectiveGeometryResponse, Rappor,
    SubsetSelection,
};
use crate::transform::{Split, SplitConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Krr,
    Rappor,
    SubsetSelection,
    Hadamard,
    ProjectiveGeometry,
}

impl BaseKind {
    pub const ALL: [BaseKind; 5] = [
        BaseKind::Krr,
        BaseKind::Rappor,
        BaseKind::SubsetSelection,
        BaseKind::Hadamard,
        BaseKind::ProjectiveGeometry,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Krr => "krr",
            Self::Rappor => "rappor",
            Self::SubsetSelection => "ss",
            Self::Hadamard => "hr",
            Self::ProjectiveGeometry => "pgr",
        }
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "krr" | "k-rr" => Self::Krr,
            "rappor" => Self::Rappor,
            "ss" | "subset-selection" => Self::SubsetSelection,
            "hr" | "hadamard" => Self::Hadamard,
            "pgr" | "projective" => Self::ProjectiveGeometry,
            other => return Err(Error::Config(format!("unknown protocol {other:?}"))),
        })
    }
}

/// Protocol name as used on the command line and in CSV: a base name or
/// `split(<base>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProtocolSpec {
    pub base: BaseKind,
    pub split: bool,
}

impl FromStr for ProtocolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("split(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => Ok(Self {
                base: inner.parse()?,
                split: true,
            }),
            None => Ok(Self {
                base: s.parse()?,
                split: false,
            }),
        }
    }
}

impl fmt::Display for ProtocolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.split {
            write!(f, "split({})", self.base.name())
        } else {
            f.write_str(self.base.name())
        }
    }
}

fn boxed<P: LocalProtocol + 'static>(p: P) -> Box<dyn FrequencyOracle> {
    Box::new(p)
}

fn split_of<P: LocalProtocol + 'static>(
    cfg: SplitConfig,
    build: impl FnOnce(f64) -> Result<P>,
) -> Result<Box<dyn FrequencyOracle>> {
    Ok(boxed(Split::build(cfg, build)?))
}

impl ProtocolSpec {
    /// Instantiates the protocol for alphabet `k` at total budget `epsilon`.
    pub fn build(&self, k: usize, epsilon: f64, split_cap: Option<u32>) -> Result<Box<dyn FrequencyOracle>> {
        if !self.split {
            return Ok(match self.base {
                BaseKind::Krr => boxed(Krr::new(k, epsilon)?),
                BaseKind::Rappor => boxed(Rappor::new(k, epsilon)?),
                BaseKind::SubsetSelection => boxed(SubsetSelection::new(k, epsilon)?),
                BaseKind::Hadamard => boxed(HadamardResponse::for_alphabet(k, epsilon)?),
                BaseKind::ProjectiveGeometry => {
                    boxed(ProjectiveGeometryResponse::for_alphabet(k, epsilon)?)
                }
            });
        }
        let cfg = SplitConfig::new(epsilon, split_cap)?;
        match self.base {
            BaseKind::Krr => split_of(cfg, |e| Krr::new(k, e)),
            BaseKind::Rappor => split_of(cfg, |e| Rappor::new(k, e)),
            BaseKind::SubsetSelection => split_of(cfg, |e| SubsetSelection::new(k, e)),
            BaseKind::Hadamard => split_of(cfg, |e| HadamardResponse::for_alphabet(k, e)),
            BaseKind::ProjectiveGeometry => {
                split_of(cfg, |e| ProjectiveGeometryResponse::for_alphabet(k, e))
            }
        }
    }
}
