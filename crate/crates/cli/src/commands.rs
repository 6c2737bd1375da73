use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::{json, Value};
use ucfreq::entropy::{
    bound_report, check_union_entropy_inequality_for, conditional_entropy_given_projection,
    projected_distribution,
};
use ucfreq::format::{parse_family, to_json_value, to_text};
use ucfreq::good_sets::{check_certificate, minimal_k_good};
use ucfreq::rational::{parse_rational, to_fraction_string};
use ucfreq::serde_util::round_sig12;
use ucfreq::verifier::{
    check_nagel, classify_range, random_check, sweep, RandomCheckOptions, SweepOptions, VerifyError,
};
use ucfreq::{
    direct_sum, nagel_example, near_k_cube, power_cube, NearKCubeSpec, SetFamily, SetMask,
};

use crate::args::{Command, Construction, FamilyInput, OutputFormat};

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check found a family that breaks a claimed bound.
    Verification(String),
    /// Bad input, bad flags, or I/O trouble.
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Usage(err.into())
    }
}

pub fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Construct { family, format } => construct(family, format),
        Command::Analyze { input, k } => analyze(&read_input(&input)?, k),
        Command::Bounds { alpha, k } => bounds(&alpha, k),
        Command::GoodSet { input, k } => good_set(&read_input(&input)?, k),
        Command::Verify {
            n,
            k,
            require_empty,
            jobs,
            budget_seconds,
            timing,
        } => {
            let options = SweepOptions {
                n,
                k_range: k,
                require_empty,
                jobs,
                budget: budget_seconds.map(Duration::from_secs),
            };
            let report = sweep(&options).map_err(verify_failure)?;
            let report = if timing {
                report
            } else {
                report.without_runtime()
            };
            Ok(pretty(&report))
        }
        Command::RandomCheck {
            n,
            generators,
            count,
            seed,
            jobs,
        } => {
            let options = RandomCheckOptions {
                n,
                generators,
                count,
                seed,
                jobs,
            };
            Ok(pretty(&random_check(&options).map_err(verify_failure)?))
        }
    }
}

fn verify_failure(err: VerifyError) -> Failure {
    match err {
        VerifyError::Failure(failure) => Failure::Verification(failure.to_string()),
        VerifyError::Setup(err) => Failure::Usage(err.into()),
    }
}

fn read_family_file(path: &Path) -> anyhow::Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_input(input: &FamilyInput) -> anyhow::Result<SetFamily> {
    match (&input.file, &input.inline) {
        (Some(path), None) => read_family_file(path),
        (None, Some(text)) => {
            let text = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                text.replace(';', "\n")
            };
            parse_family(&text).context("parsing --inline family")
        }
        _ => bail!("give exactly one of a family file or --inline"),
    }
}

fn construct(construction: Construction, format: OutputFormat) -> Result<String, Failure> {
    let family = match construction {
        Construction::NearKCube { k, extra } => {
            let spec = match extra {
                Some(text) => NearKCubeSpec::new(k, parse_elements(&text)?)?,
                None => NearKCubeSpec::minimal(k)?,
            };
            near_k_cube(spec)?
        }
        Construction::PowerCube { d } => power_cube(d)?,
        Construction::DirectSum { files } => {
            let parts = files
                .iter()
                .map(|p| read_family_file(p))
                .collect::<anyhow::Result<Vec<_>>>()?;
            direct_sum(&parts)?
        }
        Construction::NagelExample { n, k } => nagel_example(n, k)?,
    };
    Ok(match format {
        OutputFormat::Text => to_text(&family),
        OutputFormat::Json => format!("{}\n", to_json_value(&family)),
    })
}

fn parse_elements(text: &str) -> anyhow::Result<SetMask> {
    let elements = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad element `{t}`"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(SetMask::from_elements(elements)?)
}

fn check_k(family: &SetFamily, k: usize) -> anyhow::Result<()> {
    let support = family.support().len();
    if k == 0 || k > support {
        bail!("k = {k} must lie in 1..={support}, the support size of the family");
    }
    Ok(())
}

fn analyze(family: &SetFamily, k: usize) -> Result<String, Failure> {
    check_k(family, k)?;
    let nagel = check_nagel(family, k)?;
    let m = family.len();
    let range = if k >= 2 {
        serde_json::to_value(classify_range(m as u64, k)?)?
    } else {
        Value::Null
    };
    let certificate = if k >= 2 {
        let cert = minimal_k_good(family, k)?;
        check_certificate(family, &cert)
            .map_err(|fault| Failure::Verification(format!("certificate rejected: {fault:?}")))?;
        serde_json::to_value(&cert)?
    } else {
        Value::Null
    };

    let projected = projected_distribution(family, k)?;
    let projected_max = projected.max_marginal();
    let union_entropy = match check_union_entropy_inequality_for(&projected, &projected_max) {
        Ok(report) => serde_json::to_value(report)?,
        // Zero or at/above the threshold: the inequality says nothing.
        Err(_) => Value::Null,
    };
    let frequencies: Vec<String> = family
        .frequencies()
        .iter()
        .map(to_fraction_string)
        .collect();

    let mut out = json!({
        "m": m,
        "n": family.n(),
        "support_size": family.support().len(),
        "frequencies": frequencies,
        "frequency_order": family.frequency_order(),
        "nagel": nagel,
        "range": range,
        "certificate": certificate,
        "log2_m": (m as f64).log2(),
        "conditional_entropy": conditional_entropy_given_projection(family, k)?,
        "projected_max_frequency": to_fraction_string(&projected_max),
        "union_entropy": union_entropy,
    });
    round_floats(&mut out);
    Ok(pretty(&out))
}

fn bounds(alpha: &str, k: usize) -> Result<String, Failure> {
    let alpha = parse_rational(alpha).context("parsing --alpha")?;
    let report = bound_report(&alpha, k)?;
    let mut out = serde_json::to_value(&report)?;
    out["alpha"] = Value::String(to_fraction_string(&alpha));
    round_floats(&mut out);
    Ok(pretty(&out))
}

fn good_set(family: &SetFamily, k: usize) -> Result<String, Failure> {
    check_k(family, k)?;
    if k < 2 {
        return Err(Failure::Usage(anyhow::anyhow!("good sets need k >= 2")));
    }
    let cert = minimal_k_good(family, k)?;
    check_certificate(family, &cert)
        .map_err(|fault| Failure::Verification(format!("certificate rejected: {fault:?}")))?;
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .map(|(y, set)| json!({ "element": y, "set": set }))
        .collect();
    let mut out = json!({
        "k": cert.k,
        "top": cert.top,
        "good_set": cert.good_set,
        "witnesses": witnesses,
        "m": cert.m,
        "restricted_size": cert.restricted_size,
        "bound_by_size": to_fraction_string(&cert.bound_by_size),
        "bound_by_log": cert.bound_by_log,
        "f_k": to_fraction_string(&family.kth_frequency(k)?),
    });
    round_floats(&mut out);
    Ok(pretty(&out))
}

/// Floats in the output are entropies or bounds; keep 12 significant digits.
fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let rounded = round_sig12(n.as_f64().expect("checked"));
            if let Some(r) = serde_json::Number::from_f64(rounded) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}
