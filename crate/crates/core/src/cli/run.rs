use serde::Serialize;
use serde_json::{json, Value};

use super::config::{CommandKind, RunConfig};
use crate::error::{Error, Result};
use crate::ideals::{gr_of_nc_ideal, slice_restrict, ReportStatus};
use crate::liealg::{
    build_classical, build_setup, jacobson_morozov, partition_triple, NilpotentSetup, SetupOptions, TypeTag,
};
use crate::pbw::{NCPoly, UEnv};
use crate::poly::monomial_counts;
use crate::report::{overall, CheckReport, CheckStatus};
use crate::reps::{find_characters, gk_check, skryabin_truncated, FinModule};
use crate::starprod::{check_axioms, check_homogeneity, weyl_identify, QuantumComoment, StarContext};
use crate::walg::{trace_casimir, Quotient, WAlgebra, WhittakerSpace};

/// Version of the artifact layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

/// The JSON document every command emits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifact {
    #[serde(rename = "schemaVersion")]
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub statement: &'static str,
    pub config: RunConfig,
    pub seed: u64,
    /// Config fields lowered by `WALG_MAX_DEGREE`.
    #[serde(rename = "cappedFields", skip_serializing_if = "Vec::is_empty")]
    pub capped_fields: Vec<String>,
    pub status: CheckStatus,
    pub result: Value,
}

impl Artifact {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifacts serialize");
        s.push('\n');
        s
    }
}

/// Exit code of a finished run.
pub fn exit_code(status: CheckStatus) -> i32 {
    match status {
        CheckStatus::Pass => 0,
        CheckStatus::Fail => 1,
        CheckStatus::Inconclusive => 3,
    }
}

/// Exit code of a run that raised an error: bad input is a usage error,
/// a failed internal cross-check is a mathematical failure.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse { .. } | Error::Domain(_) => 2,
        Error::Consistency(_) => 1,
    }
}

pub fn build_nilpotent_setup(c: &RunConfig) -> Result<NilpotentSetup> {
    let tag: TypeTag = c.type_tag.parse()?;
    let g = build_classical(tag, c.rank)?;
    let triple = match (&c.partition, &c.nilpotent) {
        (Some(p), None) => partition_triple(&g, p)?,
        (None, Some(v)) => jacobson_morozov(&g, &g.parse_vector(v)?)?,
        (None, None) => return Err(Error::usage("a partition or an explicit nilpotent is required")),
        (Some(_), Some(_)) => return Err(Error::usage("give either a partition or an explicit nilpotent, not both")),
    };
    let h_prime = c.h_prime.as_deref().map(|v| g.parse_vector(v)).transpose()?;
    build_setup(&g, &triple, &SetupOptions { h_prime, y: None })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Runs one command. The config must already be capped.
pub fn run(config: &RunConfig, capped_fields: Vec<String>) -> Result<Artifact> {
    config.validate()?;
    let (status, result) = match config.command {
        CommandKind::Setup => {
            let s = build_nilpotent_setup(config)?;
            (CheckStatus::Pass, to_value(&s))
        }
        CommandKind::Walg => walg(config)?,
        CommandKind::VerifyGr => verify_gr(config)?,
        CommandKind::Chars => {
            let s = build_nilpotent_setup(config)?;
            let p = WAlgebra::build(&s, config.truncation)?.presentation()?;
            let r = find_characters(&p)?;
            (r.status, to_value(&r))
        }
        CommandKind::IdealDagger => ideal_dagger(config)?,
        CommandKind::Skryabin => skryabin(config)?,
        CommandKind::StarCheck => star_check(config)?,
    };
    Ok(Artifact {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo { name: "walg", version: env!("CARGO_PKG_VERSION") },
        command: config.command.name(),
        statement: config.command.statement(),
        config: config.clone(),
        seed: config.seed,
        capped_fields,
        status,
        result,
    })
}

fn walg(c: &RunConfig) -> Result<(CheckStatus, Value)> {
    let s = build_nilpotent_setup(c)?;
    let p = WAlgebra::build(&s, c.truncation)?.presentation()?;
    let commutative = p.structure_consts.values().all(|q| q.is_zero());
    let mut v = to_value(&p);
    v["commutative"] = json!(commutative);
    Ok((CheckStatus::Pass, v))
}

fn verify_gr(c: &RunConfig) -> Result<(CheckStatus, Value)> {
    let s = build_nilpotent_setup(c)?;
    let space = WhittakerSpace::compute(&Quotient::new(&s)?, c.truncation)?;
    let dims = space.filtration_dims();
    let counts = monomial_counts(&s.slice_degrees(), c.truncation);
    let mut rows = Vec::new();
    let mut cumulative = 0u64;
    let mut first_bad = None;
    for (k, n) in counts.iter().enumerate() {
        cumulative += n;
        let ok = dims[k] as u64 == cumulative;
        if !ok && first_bad.is_none() {
            first_bad = Some(k);
        }
        rows.push(json!({ "k": k, "dimF": dims[k], "sliceCount": cumulative, "equal": ok }));
    }
    let report = match first_bad {
        None => CheckReport::pass("gr-dimensions", rows.len()),
        Some(k) => CheckReport::fail(
            "gr-dimensions",
            k + 1,
            format!("dim F_{k} = {} but K[S] has {}", dims[k], rows[k]["sliceCount"]),
        ),
    };
    let result = json!({
        "sliceDegrees": s.slice_degrees(),
        "rows": rows,
        "report": report,
    });
    Ok((report.status, result))
}

fn ideal_dagger(c: &RunConfig) -> Result<(CheckStatus, Value)> {
    let s = build_nilpotent_setup(c)?;
    let env = UEnv::from_setup(&s)?;
    let gens: Vec<NCPoly> = match &c.generators {
        Some(list) => list.iter().map(|src| env.parse(src)).collect::<Result<_>>()?,
        None => {
            // augmentation ideal of the center: trace Casimirs minus their counit
            casimir_orders(s.frame.algebra())
                .into_iter()
                .map(|k| {
                    let z = trace_casimir(&s, k)?;
                    Ok(z.sub(&NCPoly::constant(z.constant_term())))
                })
                .collect::<Result<_>>()?
        }
    };
    let top = gens.iter().filter_map(|g| g.standard_degree().finite()).max().unwrap_or(0);
    let bound = c.bound.unwrap_or(top + 1);
    let gr = gr_of_nc_ideal(&env, &gens, bound)?;
    let restricted = slice_restrict(&gr.ideal, &s)?;
    // the slice variety is only trusted once the symbol ideal has stabilized
    let mut variety = restricted.variety_report();
    if !gr.stable() {
        variety.status = ReportStatus::Inconclusive;
    }
    let status = match variety.status {
        ReportStatus::Exact => CheckStatus::Pass,
        ReportStatus::Inconclusive => CheckStatus::Inconclusive,
    };
    let result = json!({
        "generators": gens.iter().map(|g| env.format(g)).collect::<Vec<_>>(),
        "bound": bound,
        "grJ": gr.ideal.generator_strings(),
        "grStable": gr.stable(),
        "grRows": gr.rows,
        "sliceVariables": restricted.names(),
        "sliceWeights": restricted.weights(),
        "restricted": restricted.generator_strings(),
        "codimension": restricted.codimension(),
        "variety": variety,
    });
    Ok((status, result))
}

fn casimir_orders(g: &crate::liealg::LieAlgebraData) -> Vec<u32> {
    match g.type_tag {
        TypeTag::A => (2..=g.rank as u32 + 1).collect(),
        _ => (1..=g.rank as u32).map(|k| 2 * k).collect(),
    }
}

fn skryabin(c: &RunConfig) -> Result<(CheckStatus, Value)> {
    let s = build_nilpotent_setup(c)?;
    let w = WAlgebra::build(&s, c.truncation)?;
    let module = match &c.module {
        Some(m) => m.clone(),
        None => {
            let chars = find_characters(&w.presentation()?)?;
            let ch = chars
                .characters
                .first()
                .ok_or_else(|| Error::domain("no rational character to build a default module from"))?;
            FinModule::from_character(ch, &chars.generators)?
        }
    };
    let degree = c.degree.unwrap_or(6);
    let report = skryabin_truncated(&w, &module, degree)?;
    let mut reports = vec![CheckReport {
        check: "skryabin-annihilator".into(),
        status: report.status,
        cases: report.rows.len(),
        detail: report.detail.clone(),
    }];
    let mut result = json!({ "module": module, "truncation": report });
    if let Some(window) = c.window {
        let g = gk_check(&w, &module, window)?;
        reports.push(CheckReport { check: "growth-degree".into(), status: g.status, cases: g.samples.len(), detail: g.detail.clone() });
        result["growth"] = to_value(&g);
    }
    Ok((overall(&reports), result))
}

fn star_check(c: &RunConfig) -> Result<(CheckStatus, Value)> {
    let pairs = c.pairs.unwrap_or(2);
    if pairs == 0 {
        return Err(Error::usage("at least one Darboux pair is required"));
    }
    let degree = c.degree.unwrap_or(6);
    let trials = c.trials.unwrap_or(50);
    let ctx = StarContext::darboux(pairs);
    let mut reports = vec![
        check_axioms(&ctx, degree as u32, trials, c.seed)?,
        check_homogeneity(&ctx, 3)?,
        weyl_identify(&ctx)?.report,
    ];
    let tag: TypeTag = c.type_tag.parse()?;
    let g = build_classical(tag, c.rank)?;
    let mut skipped = Value::Null;
    match QuantumComoment::defining(&g) {
        Ok(cm) => {
            reports.push(cm.check_derivations(5)?);
            reports.push(cm.check_homomorphism()?);
        }
        Err(Error::Domain(msg)) => skipped = json!(msg),
        Err(e) => return Err(e),
    }
    let result = json!({
        "variables": ctx.names(),
        "degree": degree,
        "trials": trials,
        "reports": reports,
        "comomentSkipped": skipped,
    });
    Ok((overall(&reports), result))
}
