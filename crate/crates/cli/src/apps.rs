//! `constrained`, `defects` and `vault` subcommands.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use rscodes::biometrics::{authenticate, AuthOutcome, BiometricTemplate, Scheme, Vault, VaultRecord};
use rscodes::constrained::{
    max_multiplicity, odp, AvoidanceConfig, ProfileDirection, ProfileMode, RllCode, SameWeightCode,
};
use rscodes::defect_memory::{build_matcher, cells_to_string, law_check, parse_cells, MatcherKind, MatcherParams};
use rscodes::{FieldElement, Matrix};
use serde_json::{json, Value};

use crate::codes::{CodeArgs, FieldArgs};
use crate::output::{num, word, Output};
use crate::params::{load, parse_list};
use crate::{config, CliError, CliResult, Global};

/// Symbols separated by commas or spaces; a run of digits without separators is one symbol per digit.
fn symbols(s: &str) -> CliResult<Vec<FieldElement>> {
    let s = s.trim();
    if s.contains(|c: char| c == ',' || c.is_whitespace()) {
        return parse_list(s);
    }
    s.chars()
        .map(|c| c.to_digit(10).ok_or_else(|| CliError::Config(format!("`{c}` is not a digit"))))
        .collect()
}

/// Matrix rows separated by `;`.
fn matrix(s: &str) -> CliResult<Matrix> {
    let rows = s.split(';').filter(|r| !r.trim().is_empty()).map(symbols).collect::<CliResult<Vec<_>>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return config("matrix rows must be non-empty and of equal length");
    }
    Ok(Matrix::from_rows(&rows))
}

#[derive(Subcommand, Debug)]
pub enum ConstrainedCmd {
    /// Codewords avoiding forbidden symbols via control symbols.
    Avoid {
        #[command(flatten)]
        code: CodeArgs,
        /// Information symbols; the remaining k - kappa are control symbols chosen by the encoder.
        #[arg(long)]
        kappa: usize,
        /// Forbidden symbols.
        #[arg(long)]
        forbidden: String,
        /// The kappa information symbols.
        #[arg(long, conflicts_with = "decode")]
        info: Option<String>,
        /// Received word to decode back to information symbols.
        #[arg(long)]
        decode: Option<String>,
    },
    /// The rate-3/5, d = 1 run-length limited code on ASCII 0/1 streams.
    Rll {
        /// Messages 0..7, comma separated.
        #[arg(long, conflicts_with = "decode")]
        encode: Option<String>,
        /// Channel bit stream.
        #[arg(long)]
        decode: Option<String>,
    },
    /// Optimum distance profile of a generator matrix.
    Odp {
        #[command(flatten)]
        code: CodeArgs,
        /// Generator rows separated by `;` (default: the RS generator).
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value = "deletion")]
        direction: String,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
    },
    /// Coset RS code whose codewords repeat no symbol often.
    SameWeight {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, conflicts_with = "decode")]
        info: Option<String>,
        #[arg(long)]
        decode: Option<String>,
        /// Erased positions for `--decode`.
        #[arg(long, default_value = "")]
        erasures: String,
    },
}

pub fn constrained(cmd: ConstrainedCmd, _g: &Global) -> CliResult<Output> {
    match cmd {
        ConstrainedCmd::Avoid { code, kappa, forbidden, info, decode } => {
            let cfg = AvoidanceConfig::new(code.code()?, kappa, &parse_list(&forbidden)?)?;
            match (info, decode) {
                (_, Some(r)) => {
                    let info = cfg.decode(&parse_list(&r)?)?;
                    Ok(Output::new(json!({ "info": info }), &["info"], vec![vec![word(&info)]]))
                }
                (Some(i), None) => {
                    let info = parse_list(&i)?;
                    let controls = cfg.suitable_controls(&info)?;
                    let cw = cfg.encode(&info)?;
                    let json = json!({ "info": info, "suitable_controls": controls, "codeword": cw });
                    let ctl = controls.iter().map(|c| word(c)).collect::<Vec<_>>().join(";");
                    Ok(Output::new(json, &["info", "suitable_controls", "codeword"], vec![vec![word(&info), ctl, word(&cw)]]))
                }
                (None, None) => config("one of --info or --decode is required"),
            }
        }
        ConstrainedCmd::Rll { encode, decode } => {
            let code = RllCode::rate_3_5();
            match (encode, decode) {
                (_, Some(s)) => {
                    let bits: Vec<u8> = s
                        .trim()
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(0),
                            '1' => Ok(1),
                            _ => config(format!("stream must be 0/1, got `{c}`")),
                        })
                        .collect::<CliResult<_>>()?;
                    let msgs = code.decode_hard(&bits)?;
                    let m32: Vec<u32> = msgs.iter().map(|&m| m as u32).collect();
                    Ok(Output::new(json!({ "messages": msgs }), &["messages"], vec![vec![word(&m32)]]))
                }
                (Some(m), None) => {
                    let msgs: Vec<usize> = parse_list(&m)?.into_iter().map(|x| x as usize).collect();
                    let bits = code.encode(&msgs)?;
                    let stream: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
                    Ok(Output::new(json!({ "messages": msgs, "stream": stream }), &["stream"], vec![vec![stream]]))
                }
                (None, None) => config("one of --encode or --decode is required"),
            }
        }
        ConstrainedCmd::Odp { code, matrix: m, direction, mode } => {
            let f = code.field.field()?;
            let g = match m {
                Some(s) => matrix(&s)?,
                None => code.code()?.g().clone(),
            };
            let p = odp(&f, &g, ProfileDirection::parse(&direction)?, ProfileMode::parse(&mode)?)?;
            let gen: Vec<String> = p.generator.to_rows().iter().map(|r| word(r)).collect();
            let vals: Vec<u32> = p.values.iter().map(|&v| v as u32).collect();
            let json = json!({ "direction": p.direction, "values": p.values, "generator": p.generator.to_rows() });
            Ok(Output::new(json, &["values", "generator"], vec![vec![word(&vals), gen.join(";")]]))
        }
        ConstrainedCmd::SameWeight { field, n, k, info, decode, erasures } => {
            let code = SameWeightCode::new(&field.field()?, n, k)?;
            match (info, decode) {
                (_, Some(r)) => {
                    let er: Vec<usize> = parse_list(&erasures)?.into_iter().map(|x| x as usize).collect();
                    let info = code.decode(&parse_list(&r)?, &er)?;
                    Ok(Output::new(json!({ "info": info }), &["info"], vec![vec![word(&info)]]))
                }
                (Some(i), None) => {
                    let info = parse_list(&i)?;
                    if info.len() != k || info.iter().any(|&x| !code.rs().field().contains(x)) {
                        return config(format!("information word needs {k} field symbols"));
                    }
                    let cw = code.encode(&info);
                    let mult = max_multiplicity(&cw);
                    let json = json!({ "codeword": cw, "max_multiplicity": mult });
                    Ok(Output::new(json, &["codeword", "max_multiplicity"], vec![vec![word(&cw), mult.to_string()]]))
                }
                (None, None) => config("one of --info or --decode is required"),
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct VariantArg {
    /// Matcher: one-defect, parity, two-defect, linear, combined-1d1e, combined-2d1e, rs-symbol, kt-random.
    /// Sizes come from `--set n=.. k=.. alpha=.. m=.. delta=.. t=.. seed=..`.
    #[arg(long)]
    variant: String,
}

#[derive(Subcommand, Debug)]
pub enum DefectsCmd {
    /// Store information so that stuck cells read their stuck values.
    Write {
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long)]
        info: String,
        /// Cell map: `?` free, a label or `S<label>` stuck.
        #[arg(long)]
        defects: String,
    },
    /// Recover information from stored cells.
    Read {
        #[command(flatten)]
        variant: VariantArg,
        #[arg(long)]
        stored: String,
    },
    /// Check write/read over all defect patterns up to a size.
    Sweep {
        /// Matcher; all variants when omitted.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_defects: usize,
        /// Messages per defect pattern when not enumerated.
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
}

pub fn defects(cmd: DefectsCmd, g: &Global) -> CliResult<Output> {
    let p: MatcherParams = load(g)?;
    match cmd {
        DefectsCmd::Write { variant, info, defects } => {
            let m = build_matcher(MatcherKind::parse(&variant.variant)?, &p)?;
            let info = symbols(&info)?;
            let cells = parse_cells(&defects)?;
            let stored = m.write(&info, &cells)?;
            let json = json!({ "variant": m.name(), "info": info, "defects": cells_to_string(&cells), "stored": stored });
            Ok(Output::new(json, &["variant", "info", "defects", "stored"], vec![vec![
                m.name().to_string(),
                word(&info),
                cells_to_string(&cells),
                word(&stored),
            ]]))
        }
        DefectsCmd::Read { variant, stored } => {
            let m = build_matcher(MatcherKind::parse(&variant.variant)?, &p)?;
            let stored = symbols(&stored)?;
            let info = m.read(&stored)?;
            let json = json!({ "variant": m.name(), "stored": stored, "info": info });
            Ok(Output::new(json, &["variant", "stored", "info"], vec![vec![m.name().to_string(), word(&stored), word(&info)]]))
        }
        DefectsCmd::Sweep { variant, max_defects, budget } => {
            let kinds = match variant {
                Some(v) => vec![MatcherKind::parse(&v)?],
                None => MatcherKind::ALL.to_vec(),
            };
            let mut rows = Vec::new();
            let mut docs = Vec::new();
            for kind in kinds {
                let m = build_matcher(kind, &p)?;
                let t = max_defects.min(m.capability());
                let rep = law_check(m.as_ref(), t, budget, g.seed);
                rows.push(vec![
                    kind.name().to_string(),
                    m.n().to_string(),
                    m.info_len().to_string(),
                    m.capability().to_string(),
                    t.to_string(),
                    rep.cases.to_string(),
                    rep.failures.to_string(),
                    rep.exhaustive.to_string(),
                    num(m.efficiency()),
                ]);
                docs.push(json!({
                    "variant": kind.name(), "n": m.n(), "info_len": m.info_len(), "capability": m.capability(),
                    "max_defects": t, "report": rep, "efficiency": m.efficiency(),
                }));
            }
            let header =
                ["variant", "n", "info_len", "capability", "max_defects", "cases", "failures", "exhaustive", "efficiency"];
            let failed = docs.iter().any(|d| d["report"]["failures"].as_u64() != Some(0));
            let out = Output::new(Value::Array(docs), &header, rows);
            if failed {
                let _ = out.emit(g.format, g.out.as_deref());
                return Err(CliError::Runtime("some writes were not recovered".into()));
            }
            Ok(out)
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum VaultCmd {
    /// Enroll a template; write the record with `--format json --out FILE`.
    Enroll {
        /// syndrome, jw, jw-t, js or js-dodis.
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Full vector of n symbols, or t distinct nonzero labels for jw-t, js and js-dodis.
        #[arg(long)]
        template: String,
    },
    /// Authenticate a noisy template against a stored record.
    Auth {
        /// JSON record produced by `enroll`.
        #[arg(long)]
        record: PathBuf,
        #[arg(long)]
        template: String,
    },
}

fn template(s: &str, properties: bool) -> CliResult<BiometricTemplate> {
    let v = parse_list(s)?;
    Ok(if properties { BiometricTemplate::properties(v)? } else { BiometricTemplate::Full(v) })
}

pub fn vault(cmd: VaultCmd, g: &Global) -> CliResult<Output> {
    match cmd {
        VaultCmd::Enroll { scheme, m, k, template: t } => {
            let Some(s) = Scheme::parse(&scheme) else {
                return config(format!("unknown scheme `{scheme}`"));
            };
            let rec = Vault::new(m, k)?.enroll(s, &template(&t, s.uses_properties())?, g.seed)?;
            Output::from_serialize(&rec)
        }
        VaultCmd::Auth { record, template: t } => {
            let text = std::fs::read_to_string(&record)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", record.display())))?;
            let rec: VaultRecord =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid record: {e}")))?;
            let properties = matches!(rec, VaultRecord::JwT { .. } | VaultRecord::Js { .. } | VaultRecord::JsDodis { .. });
            let outcome = authenticate(&rec, &template(&t, properties)?)?;
            let (decision, secret) = match &outcome {
                AuthOutcome::Accept(p) => ("accept", word(p)),
                AuthOutcome::Reject => ("reject", String::new()),
            };
            let json = json!({ "decision": decision, "outcome": outcome });
            Ok(Output::new(json, &["decision", "secret"], vec![vec![decision.to_string(), secret]]))
        }
    }
}
