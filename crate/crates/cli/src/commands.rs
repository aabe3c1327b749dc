use std::path::Path;
use std::time::Instant;

use flatcert_core::certify::{anchor_configuration, certify, Certificate, Verdict};
use flatcert_core::flats::{build_configuration, perturbation_radius};
use flatcert_core::quaternion::{
    enumerate_norm_one, in_congruence_subgroup, is_polar_regular, normalize_positive_a,
    AlgebraDesc, GroupSpec,
};
use flatcert_core::Error;
use serde::Serialize;

use crate::args::{AlgebraArgs, CertifyArgs, Cli, Command, ConfigArgs, UnitsArgs};
use crate::format::*;
use crate::{exit, svg, CliError, RunReport};

/// What a finished invocation prints: JSON on stdout, the run report on
/// stderr, and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub report: RunReport,
    pub code: u8,
    pub error: Option<String>,
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let (name, result) = match &cli.command {
        Command::AlgebraInspect(a) => ("algebra-inspect", dispatch(a, cmd_algebra_inspect)),
        Command::Units(a) => ("units", dispatch(a, cmd_units)),
        Command::Config(a) => ("config", dispatch(a, cmd_config)),
        Command::Certify(a) => (
            "certify",
            dispatch(a, |a, rep| {
                cmd_certify(a, rep).map(|out| {
                    rep.exit_code = out.code;
                    out.json
                })
            }),
        ),
    };
    let (result, mut report) = result;
    let (stdout, error) = match result {
        Ok(json) => (json, None),
        Err(e) => {
            report.exit_code = e.exit_code();
            (String::new(), Some(e.to_string()))
        }
    };
    report.command = name.into();
    report.elapsed_ms = start.elapsed().as_millis();
    Outcome {
        stdout,
        code: report.exit_code,
        report,
        error,
    }
}

type Dispatched = (Result<String, CliError>, RunReport);

fn dispatch<A, T: Serialize>(
    args: &A,
    f: impl FnOnce(&A, &mut RunReport) -> Result<T, CliError>,
) -> Dispatched {
    let mut rep = RunReport::new("");
    let out = f(args, &mut rep).and_then(|v| to_json(&v));
    (out, rep)
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, contents: &str, rep: &mut RunReport) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))?;
    rep.output(path);
    Ok(())
}

fn algebra_params(a: &AlgebraArgs, rep: &mut RunReport) -> Result<AlgebraDesc, CliError> {
    rep.param("d", a.d)
        .param("a", a.a.as_str())
        .param("b", a.b.as_str());
    Ok(AlgebraJson {
        d: a.d,
        a: a.a.clone(),
        b: a.b.clone(),
    }
    .parse()?)
}

const NO_SPLIT_PLACE: &str = "no split real place: no flats exist";

pub fn cmd_algebra_inspect(
    args: &AlgebraArgs,
    rep: &mut RunReport,
) -> Result<InspectJson, CliError> {
    let alg = algebra_params(args, rep)?;
    let embeddings = alg
        .field()
        .embeddings()
        .into_iter()
        .map(|e| EmbeddingJson {
            embedding: e.to_string(),
            sign_a: alg.a().sign(e),
            sign_b: alg.b().sign(e),
            split: alg.is_split_at(e),
        })
        .collect();
    let mut warnings = Vec::new();
    let normalization = if alg.r() == 0 {
        warnings.push(NO_SPLIT_PLACE.to_string());
        NormalizationJson {
            status: "not_applicable",
            algebra: None,
            images: None,
        }
    } else if alg.is_normalized() {
        NormalizationJson {
            status: "already",
            algebra: Some(AlgebraJson::of(&alg)),
            images: None,
        }
    } else {
        match normalize_positive_a(&alg, 3) {
            Ok((norm, t)) => NormalizationJson {
                status: "found",
                algebra: Some(AlgebraJson::of(&norm)),
                images: Some(t.images().iter().map(QuatJson::of).collect()),
            },
            Err(Error::NotNormalizable) => {
                warnings.push(Error::NotNormalizable.to_string());
                NormalizationJson {
                    status: "not_found",
                    algebra: None,
                    images: None,
                }
            }
            Err(e) => return Err(e.into()),
        }
    };
    for w in &warnings {
        rep.warn(w.clone());
    }
    Ok(InspectJson {
        algebra: AlgebraJson::of(&alg),
        integral: alg.is_integral(),
        embeddings,
        r: alg.r(),
        split_at: alg
            .split_embeddings()
            .iter()
            .map(|e| e.to_string())
            .collect(),
        normalization,
        warnings,
    })
}

pub fn cmd_units(args: &UnitsArgs, rep: &mut RunReport) -> Result<UnitsJson, CliError> {
    let alg = algebra_params(&args.algebra, rep)?;
    rep.param("height", args.height).param("level", args.level);
    let all = GroupSpec::new(&alg, 1, args.height)?;
    let g = all.with_level(args.level)?;
    let split = alg.r() > 0;
    if !split {
        rep.warn(format!("{NO_SPLIT_PLACE}; polar_regular is null"));
    }
    let units = enumerate_norm_one(&all)
        .iter()
        .map(|x| {
            Ok(UnitJson {
                coords: x.coords().clone().map(|c| c.to_string()),
                text: x.to_string(),
                polar_regular: if split {
                    Some(is_polar_regular(x)?)
                } else {
                    None
                },
                in_congruence: in_congruence_subgroup(x, &g)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(UnitsJson {
        algebra: AlgebraJson::of(&alg),
        height: args.height,
        level: args.level,
        count: units.len(),
        congruence_count: units.iter().filter(|u| u.in_congruence).count(),
        units,
    })
}

pub fn cmd_config(args: &ConfigArgs, rep: &mut RunReport) -> Result<ConfigFile, CliError> {
    rep.param("n", args.n).param("r", args.r);
    let c = build_configuration(args.n, args.r)?;
    let file = ConfigFile {
        format: CONFIG_FORMAT,
        config: ConfigJson::of(&c),
        triangular: c.has_triangular_pattern()?,
        perturbation_radius: perturbation_radius(&c)?.to_string(),
    };
    if let Some(p) = &args.out {
        write_file(p, &to_json(&file)?, rep)?;
    }
    if let Some(p) = &args.svg {
        let title = format!("staircase configuration, n = {}, r = {}", args.n, args.r);
        write_file(p, &svg::render(&c, &title), rep)?;
    }
    Ok(file)
}

pub struct CertifyOutput {
    pub json: CertificateJson,
    /// `None` when anchoring failed.
    pub certificate: Option<Certificate>,
    pub code: u8,
}

pub fn cmd_certify(args: &CertifyArgs, rep: &mut RunReport) -> Result<CertifyOutput, CliError> {
    let input = algebra_params(&args.algebra, rep)?;
    rep.param("n", args.n)
        .param("height", args.height)
        .param("level", args.level)
        .param("normalize_bound", args.normalize_bound);
    if input.r() == 0 {
        return Err(CliError::Usage(format!("{NO_SPLIT_PLACE} to certify")));
    }
    let (alg, _) = normalize_positive_a(&input, args.normalize_bound)?;
    if alg != input {
        rep.warn(format!("working in the normalized presentation {alg}"));
    }
    let g = GroupSpec::new(&alg, args.level, args.height)?;
    let target = build_configuration(args.n, alg.r())?;
    let mut json = CertificateJson {
        format: CERTIFICATE_FORMAT,
        verdict: "NotFound",
        rank: None,
        n: args.n,
        algebra: AlgebraJson::of(&alg),
        input_algebra: AlgebraJson::of(&input),
        height: args.height,
        level: args.level,
        matrix: None,
        sign_consistent: None,
        degenerate: None,
        caveats: Vec::new(),
        configuration: None,
        configuration_approx: None,
        anchors: None,
        witnesses: Vec::new(),
    };
    let (certificate, code) = match anchor_configuration(&target, &alg, args.height) {
        Ok((config, anchors)) => {
            let cert = certify(&config, &g)?;
            json.fill(&config, &anchors, &cert);
            if let Some(p) = &args.csv {
                write_csv(p, &cert.matrix.entries)?;
                rep.output(p);
            }
            if let Some(p) = &args.svg {
                let title = format!(
                    "anchored configuration, n = {}, height {}",
                    args.n, args.height
                );
                write_file(p, &svg::render(&config, &title), rep)?;
            }
            let code = match cert.verdict {
                Verdict::RankAtLeastN(_) => exit::OK,
                Verdict::Inconclusive => exit::INCONCLUSIVE,
            };
            (Some(cert), code)
        }
        Err(Error::NotFound) => {
            json.caveats.push(format!(
                "no anchoring of the configuration among units of height {}: raise --height",
                args.height
            ));
            (None, exit::NOT_FOUND)
        }
        Err(e) => return Err(e.into()),
    };
    for c in &json.caveats {
        rep.warn(c.clone());
    }
    if let Some(p) = &args.out {
        write_file(p, &to_json(&json)?, rep)?;
    }
    Ok(CertifyOutput {
        json,
        certificate,
        code,
    })
}

fn write_csv(path: &Path, m: &[Vec<i64>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["A\\B".to_string()];
    header.extend((1..=m.len()).map(|j| format!("B{j}")));
    w.write_record(&header)?;
    for (i, row) in m.iter().enumerate() {
        let mut rec = vec![format!("A{}", i + 1)];
        rec.extend(row.iter().map(i64::to_string));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}
