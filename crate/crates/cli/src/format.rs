//! JSON shapes for every command. Exact values are strings; floats appear
//! only as labelled approximations.

use flatcert_core::certify::{AnchorReport, Certificate, Verdict};
use flatcert_core::flats::{ConfigSpec, Flat};
use flatcert_core::moebius::{BoundaryPt, OrientedGeodesic};
use flatcert_core::quaternion::{AlgebraDesc, QuatElem};
use flatcert_core::{Error, QuadElem, QuadField, Rational};
use serde::{Deserialize, Serialize};

pub const CONFIG_FORMAT: &str = "flatcert-config/1";
pub const CERTIFICATE_FORMAT: &str = "flatcert-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub d: i64,
    pub a: String,
    pub b: String,
}

impl AlgebraJson {
    pub fn of(alg: &AlgebraDesc) -> Self {
        AlgebraJson {
            d: alg.field().d(),
            a: alg.a().to_string(),
            b: alg.b().to_string(),
        }
    }

    pub fn parse(&self) -> Result<AlgebraDesc, Error> {
        let f = QuadField::new(self.d)?;
        AlgebraDesc::new(
            f,
            QuadElem::parse(f, &self.a)?,
            QuadElem::parse(f, &self.b)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuatJson {
    pub coords: [String; 4],
    pub text: String,
}

impl QuatJson {
    pub fn of(x: &QuatElem) -> Self {
        QuatJson {
            coords: x.coords().clone().map(|c| c.to_string()),
            text: x.to_string(),
        }
    }
}

/// `"inf"`, a rational `"p/q"`, or the exact description of an algebraic
/// endpoint without its decimal approximation.
pub fn endpoint(p: &BoundaryPt) -> String {
    match p {
        BoundaryPt::Infinity => "inf".into(),
        BoundaryPt::Finite(x) => match x.as_rational() {
            Some(q) => q.to_string(),
            None => {
                let s = x.to_string();
                s.split(" ≈ ").next().unwrap_or(&s).to_string()
            }
        },
    }
}

/// Inverse of [`endpoint`] for `"inf"` and rationals.
pub fn parse_endpoint(s: &str) -> Result<BoundaryPt, Error> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(BoundaryPt::Infinity);
    }
    s.parse::<Rational>()
        .map(BoundaryPt::from_rational)
        .map_err(|_| Error::Parse(s.into()))
}

pub type FlatJson = Vec<[String; 2]>;

fn flat_json(f: &Flat) -> FlatJson {
    f.coords()
        .iter()
        .map(|g| [endpoint(g.start()), endpoint(g.end())])
        .collect()
}

fn flat_approx(f: &Flat) -> Vec<[Option<f64>; 2]> {
    let finite = |p: &BoundaryPt| Some(p.to_f64()).filter(|v| v.is_finite());
    f.coords()
        .iter()
        .map(|g| [finite(g.start()), finite(g.end())])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "A")]
    pub a: Vec<FlatJson>,
    #[serde(rename = "B")]
    pub b: Vec<FlatJson>,
}

impl ConfigJson {
    pub fn of(c: &ConfigSpec) -> Self {
        ConfigJson {
            n: c.n(),
            r: c.r(),
            a: c.a().iter().map(flat_json).collect(),
            b: c.b().iter().map(flat_json).collect(),
        }
    }

    /// Rebuilds the configuration; only `"inf"` and rational endpoints are
    /// accepted.
    pub fn parse(&self) -> Result<ConfigSpec, Error> {
        let flat = |f: &FlatJson| -> Result<Flat, Error> {
            let coords = f
                .iter()
                .map(|[s, e]| OrientedGeodesic::new(parse_endpoint(s)?, parse_endpoint(e)?))
                .collect::<Result<Vec<_>, _>>()?;
            Flat::new(coords)
        };
        let a = self.a.iter().map(flat).collect::<Result<Vec<_>, _>>()?;
        let b = self.b.iter().map(flat).collect::<Result<Vec<_>, _>>()?;
        let c = ConfigSpec::new(a, b)?;
        if c.n() != self.n || c.r() != self.r {
            return Err(Error::DimensionMismatch);
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigFile {
    pub format: &'static str,
    #[serde(flatten)]
    pub config: ConfigJson,
    pub triangular: bool,
    pub perturbation_radius: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingJson {
    pub embedding: String,
    pub sign_a: i8,
    pub sign_b: i8,
    pub split: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationJson {
    /// `already`, `found`, `not_found` or `not_applicable`.
    pub status: &'static str,
    pub algebra: Option<AlgebraJson>,
    /// Images of `1, i, j, k` in the normalized presentation.
    pub images: Option<Vec<QuatJson>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InspectJson {
    pub algebra: AlgebraJson,
    pub integral: bool,
    pub embeddings: Vec<EmbeddingJson>,
    pub r: usize,
    pub split_at: Vec<String>,
    pub normalization: NormalizationJson,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitJson {
    pub coords: [String; 4],
    pub text: String,
    /// `null` when the algebra has no split real place.
    pub polar_regular: Option<bool>,
    pub in_congruence: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitsJson {
    pub algebra: AlgebraJson,
    pub height: u32,
    pub level: u32,
    pub count: usize,
    pub congruence_count: usize,
    pub units: Vec<UnitJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnchorJson {
    pub radius: String,
    pub within_radius: bool,
    /// Floating endpoint distance of `A_1..A_n`, then `B_1..B_n`, to the
    /// canonical flats.
    pub deviation: Vec<Option<f64>>,
    pub alpha: Vec<QuatJson>,
    pub conjugators: Vec<QuatJson>,
    pub beta: Vec<QuatJson>,
}

impl AnchorJson {
    pub fn of(rep: &AnchorReport) -> Self {
        AnchorJson {
            radius: rep.radius.to_string(),
            within_radius: rep.within_radius(),
            deviation: rep
                .deviation
                .iter()
                .map(|&d| Some(d).filter(|d| d.is_finite()))
                .collect(),
            alpha: rep.alpha.iter().map(QuatJson::of).collect(),
            conjugators: rep.conjugators.iter().map(QuatJson::of).collect(),
            beta: rep.beta.iter().map(QuatJson::of).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub i: usize,
    pub j: usize,
    pub gamma: QuatJson,
    pub sign: i8,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxFlats {
    #[serde(rename = "A")]
    pub a: Vec<Vec<[Option<f64>; 2]>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<[Option<f64>; 2]>>,
}

impl ApproxFlats {
    pub fn of(c: &ConfigSpec) -> Self {
        ApproxFlats {
            a: c.a().iter().map(flat_approx).collect(),
            b: c.b().iter().map(flat_approx).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub format: &'static str,
    /// `RankAtLeastN`, `Inconclusive` or `NotFound`.
    pub verdict: &'static str,
    pub rank: Option<usize>,
    pub n: usize,
    pub algebra: AlgebraJson,
    pub input_algebra: AlgebraJson,
    pub height: u32,
    pub level: u32,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub sign_consistent: Option<Vec<Vec<bool>>>,
    pub degenerate: Option<Vec<Vec<usize>>>,
    pub caveats: Vec<String>,
    pub configuration: Option<ConfigJson>,
    pub configuration_approx: Option<ApproxFlats>,
    pub anchors: Option<AnchorJson>,
    pub witnesses: Vec<WitnessJson>,
}

impl CertificateJson {
    pub fn verdict_name(v: Verdict) -> &'static str {
        match v {
            Verdict::RankAtLeastN(_) => "RankAtLeastN",
            Verdict::Inconclusive => "Inconclusive",
        }
    }

    pub fn fill(&mut self, c: &ConfigSpec, rep: &AnchorReport, cert: &Certificate) {
        let m = &cert.matrix;
        self.verdict = Self::verdict_name(cert.verdict);
        self.rank = match cert.verdict {
            Verdict::RankAtLeastN(k) => Some(k),
            Verdict::Inconclusive => None,
        };
        self.matrix = Some(m.entries.clone());
        self.sign_consistent = Some(m.sign_consistent.clone());
        self.degenerate = Some(m.degenerate.clone());
        self.caveats = cert.caveats.clone();
        self.configuration = Some(ConfigJson::of(c));
        self.configuration_approx = Some(ApproxFlats::of(c));
        self.anchors = Some(AnchorJson::of(rep));
        self.witnesses = m
            .witnesses
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter().enumerate().flat_map(move |(j, recs)| {
                    recs.iter().map(move |rec| WitnessJson {
                        i: i + 1,
                        j: j + 1,
                        gamma: QuatJson::of(&rec.gamma),
                        sign: rec.sign.value(),
                    })
                })
            })
            .collect();
    }
}
