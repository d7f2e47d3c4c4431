//! `gf`, `rs` and `packets` subcommands.

use clap::{Args, Subcommand};
use rscodes::galois::parse_polynomial;
use rscodes::packet_codes::{mk_decode, recover, CodeArray};
use rscodes::{FieldElement, GaloisField, Matrix, RsCode, Variant};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::output::{word, Output};
use crate::params::{load, parse_list};
use crate::{CliResult, Global};

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Extension degree of GF(2^m).
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    /// Primitive polynomial, e.g. `1+X+X^3` or `0b1011`; default per degree.
    #[arg(long)]
    pub poly: Option<String>,
}

impl FieldArgs {
    pub fn field(&self) -> CliResult<GaloisField> {
        Ok(match &self.poly {
            Some(p) => GaloisField::binary(self.m, parse_polynomial(p)?)?,
            None => GaloisField::binary_default(self.m)?,
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum GfCmd {
    /// Powers of alpha with polynomial, tuple and inverse.
    Table {
        #[command(flatten)]
        field: FieldArgs,
        /// Prime field GF(p) instead of GF(2^m).
        #[arg(long, conflicts_with = "poly")]
        prime: Option<u32>,
    },
}

pub fn gf(cmd: GfCmd, _g: &Global) -> CliResult<Output> {
    let GfCmd::Table { field, prime } = cmd;
    let f = match prime {
        Some(p) => GaloisField::prime(p)?,
        None => field.field()?,
    };
    let table = f.element_table();
    let rows: Vec<Vec<String>> = table
        .iter()
        .map(|r| vec![r.power.to_string(), r.label.to_string(), r.polynomial.clone(), r.tuple.clone(), r.inverse_power.to_string()])
        .collect();
    let json = json!({
        "q": f.q(),
        "poly": f.poly(),
        "rows": table.iter().map(|r| json!({
            "power": r.power, "label": r.label, "polynomial": r.polynomial,
            "tuple": r.tuple, "inverse_power": r.inverse_power,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, &["power", "label", "polynomial", "tuple", "inverse_power"], rows))
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 7)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// First row exponent of the generator (rows alpha^{(b+i) j}).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub window: i64,
}

impl CodeArgs {
    pub fn code(&self) -> CliResult<RsCode> {
        let f = self.field.field()?;
        let q = f.q() as usize;
        let variant = if self.n + 1 == q {
            Variant::Standard
        } else if self.n == q {
            Variant::Extended
        } else {
            Variant::Shortened
        };
        Ok(RsCode::with_window(&f, self.n, self.k, variant, self.window)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum RsCmd {
    /// Encode k information symbols.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Information symbols, comma separated.
        #[arg(long)]
        info: String,
        /// Place the information in the first k positions.
        #[arg(long)]
        systematic: bool,
    },
    /// Correct errors (and erasures) in a received word.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        word: String,
        /// Erased positions, 0-based.
        #[arg(long, default_value = "")]
        erasures: String,
    },
}

pub fn rs(cmd: RsCmd, g: &Global) -> CliResult<Output> {
    match cmd {
        RsCmd::Encode { code, info, systematic } => {
            let c = code.code()?;
            let info = parse_list(&info)?;
            check_symbols(&c, &info, c.k(), "information")?;
            let cw = if systematic { c.encode_systematic(&info) } else { c.encode(&info) };
            let json = json!({ "info": info, "codeword": cw });
            Ok(Output::new(json, &["info", "codeword"], vec![vec![word(&info), word(&cw)]]))
        }
        RsCmd::Decode { code, word: w, erasures } => {
            let c = code.code()?;
            let r = parse_list(&w)?;
            check_symbols(&c, &r, c.n(), "received")?;
            let er: Vec<usize> = parse_list(&erasures)?.into_iter().map(|x| x as usize).collect();
            let res = if er.is_empty() { c.decode_errors(&r) } else { c.decode_errors_and_erasures(&r, &er)? };
            let json = json!({
                "status": format!("{:?}", res.status).to_lowercase(),
                "codeword": res.codeword,
                "info": res.info,
                "error_positions": res.error_positions,
                "error_values": res.error_values,
                "syndrome": res.syndrome,
            });
            let pos: Vec<u32> = res.error_positions.iter().map(|&p| p as u32).collect();
            let row = vec![
                format!("{:?}", res.status).to_lowercase(),
                word(&res.codeword),
                word(&res.info),
                word(&pos),
                word(&res.error_values),
                word(&res.syndrome),
            ];
            let out = Output::new(json, &["status", "codeword", "info", "error_positions", "error_values", "syndrome"], vec![row]);
            if res.is_corrected() {
                Ok(out)
            } else {
                // the report is still useful, but the exit status must flag the failure
                let _ = out.emit(g.format, g.out.as_deref());
                Err(crate::CliError::Runtime("decoding failed".into()))
            }
        }
    }
}

fn check_symbols(c: &RsCode, v: &[FieldElement], len: usize, what: &str) -> CliResult<()> {
    if v.len() != len {
        return crate::config(format!("{what} word needs {len} symbols, got {}", v.len()));
    }
    if let Some(x) = v.iter().find(|&&x| !c.field().contains(x)) {
        return crate::config(format!("symbol {x} is not in GF({})", c.field().q()));
    }
    Ok(())
}

#[derive(Subcommand, Debug)]
pub enum PacketsCmd {
    /// Recover k packets from any k independent combined words (parameters via --json).
    Recover,
    /// Correct corrupted rows of an RS code array (parameters via --json).
    MkDecode,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct RecoverParams {
    m: u32,
    poly: Option<String>,
    /// Combining matrix, k rows.
    g: Vec<Vec<FieldElement>>,
    /// Received `[column id, word]` pairs.
    received: Vec<(usize, Vec<FieldElement>)>,
}

impl Default for RecoverParams {
    fn default() -> Self {
        Self { m: 3, poly: None, g: Vec::new(), received: Vec::new() }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct MkParams {
    m: u32,
    poly: Option<String>,
    n: usize,
    k: usize,
    /// Received array, n rows.
    rows: Vec<Vec<FieldElement>>,
}

impl Default for MkParams {
    fn default() -> Self {
        Self { m: 3, poly: None, n: 7, k: 3, rows: Vec::new() }
    }
}

fn field_of(m: u32, poly: &Option<String>) -> CliResult<GaloisField> {
    FieldArgs { m, poly: poly.clone() }.field()
}

pub fn packets(cmd: PacketsCmd, g: &Global) -> CliResult<Output> {
    match cmd {
        PacketsCmd::Recover => {
            let p: RecoverParams = load(g)?;
            if p.g.is_empty() {
                return crate::config("parameter `g` (combining matrix) is required");
            }
            let f = field_of(p.m, &p.poly)?;
            let block = recover(&f, &p.received, &Matrix::from_rows(&p.g))?;
            let rows = block.packets.iter().enumerate().map(|(i, w)| vec![i.to_string(), word(w)]).collect();
            Ok(Output::new(json!({ "packets": block.packets }), &["packet", "symbols"], rows))
        }
        PacketsCmd::MkDecode => {
            let p: MkParams = load(g)?;
            let args = CodeArgs { field: FieldArgs { m: p.m, poly: p.poly.clone() }, n: p.n, k: p.k, window: 0 };
            let code = args.code()?;
            let out = mk_decode(&CodeArray::unknown(p.rows), &code)?;
            let rows = out.block.packets.iter().enumerate().map(|(i, w)| vec![i.to_string(), word(w)]).collect();
            let json = json!({
                "packets": out.block.packets,
                "corrupt_rows": out.corrupt_rows,
                "rank": out.rank,
            });
            Ok(Output::new(json, &["packet", "symbols"], rows))
        }
    }
}
