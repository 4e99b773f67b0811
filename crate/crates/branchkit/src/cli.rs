//! Command-line front end. The binary is a thin wrapper around
//! [`run`]; every command writes deterministic JSON (or TSV) to the
//! given writer.
//!
//! Exit codes: `0` success, `1` a verdict or verification failure,
//! `2` usage error (the message names the offending token),
//! `3` resource cap exceeded.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::ansatz::{explore_sostar, is_good, star_groups, ClassifyOptions};
use crate::branching::{branch, branch_raw};
use crate::charspace::{exterior_decompose, km_shape, tensor_decompose};
use crate::error::Error;
use crate::family::GroupFamily;
use crate::image::{invariant_i, member_soe, preimage_su1n};
use crate::lattice::{default_generator_cap, lattice_member_capped};
use crate::vchar::VirtualChar;
use crate::weight::{KMLabel, KWeight};
use crate::weyl::weyl_terms;

#[derive(Parser)]
#[command(
    name = "branchkit",
    version,
    about = "Exact branching laws, Weyl spectral data and the good-highest-weight classifier \
             for SU(m,n), SO0(2,2n) and SO*(2n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct FamilyWeight {
    /// Family spec: su:<m>,<n> | soe:<n> | sostar:<n>
    #[arg(long)]
    family: String,
    /// Weight literal: su "l1,..|l1,..", soe "p=<int>;l1,..", sostar "l1,.."
    #[arg(long)]
    weight: String,
}

#[derive(Subcommand)]
enum Command {
    /// Branch a K-weight to K_M (raw terms plus the canonical character)
    Branch {
        #[command(flatten)]
        fw: FamilyWeight,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decompose tensor or exterior powers of K_M labels
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// List the Weyl terms: coset element, sign, restricted label, c-hat
    Weyl {
        #[command(flatten)]
        fw: FamilyWeight,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Group the Weyl terms by |c-hat| (the Ansatz groups)
    Star {
        #[command(flatten)]
        fw: FamilyWeight,
    },
    /// Classify a highest weight as good / notgood / unknown
    Good {
        #[command(flatten)]
        fw: FamilyWeight,
        /// Lattice search radius for families without a closed criterion
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Classify every dominant weight with entries in [-bound, bound]
    Scan {
        #[arg(long)]
        family: String,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Worker threads (deterministic output for any value)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Rank-one preimage of a K_M label under the restriction map
    Preimage {
        #[arg(long)]
        family: String,
        /// Label literal: su "mu1|mu2|p", soe "q=<int>;mu", sostar "nu|p"
        #[arg(long)]
        label: String,
    },
    /// The invariant I of a label or virtual character (su:3,2)
    Invariant {
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "vc")]
        label: Option<String>,
        /// Virtual character as JSON (as emitted by `branch`)
        #[arg(long)]
        vc: Option<String>,
    },
    /// Membership of a virtual character in the restriction image
    Member {
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "vc")]
        label: Option<String>,
        #[arg(long)]
        vc: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Which oracle: the soe span criterion, the HNF search, or
        /// whichever is exact for the family
        #[arg(long, value_enum, default_value = "auto")]
        oracle: OracleKind,
    },
    /// Explore sostar weights; per weight, the lattice status of every
    /// Ansatz group (JSON lines)
    ExploreSostar {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the acceptance criteria (all by default), one line per item
    VerifyPaper {
        /// Restrict to specific criteria (repeatable)
        #[arg(long = "criterion")]
        criteria: Vec<usize>,
        /// Keep running after the first failure
        #[arg(long)]
        keep_going: bool,
    },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Tensor product of two K_M labels
    Tensor {
        #[arg(long)]
        family: String,
        /// Exactly two label literals
        #[arg(long, num_args = 1)]
        label: Vec<String>,
    },
    /// Exterior power of a K_M label
    Exterior {
        #[arg(long)]
        family: String,
        #[arg(long)]
        label: String,
        #[arg(short = 'j', long)]
        power: usize,
    },
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => 3,
        _ => 2,
    }
}

enum Failure {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs <= 1 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

fn parse_vc(family: &GroupFamily, s: &str) -> Result<VirtualChar, Error> {
    let vc: VirtualChar =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("virtual character: {e}")))?;
    vc.checked(family)
}

fn vc_from_args(
    family: &GroupFamily,
    label: &Option<String>,
    vc: &Option<String>,
) -> Result<VirtualChar, Error> {
    match (label, vc) {
        (Some(l), None) => Ok(VirtualChar::single(*family, KMLabel::parse(family, l)?, 1)),
        (None, Some(s)) => parse_vc(family, s),
        _ => Err(Error::Parse("pass exactly one of --label or --vc".into())),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Auto,
    Span,
    Hnf,
}

/// Parses and executes one command line; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            code_of(&e)
        }
        // a closed pipe downstream is not our failure
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let emit = |out: &mut dyn Write, v: &serde_json::Value| -> std::io::Result<()> {
        writeln!(out, "{v}")
    };
    match cmd {
        Command::Branch { fw, format } => {
            let family = GroupFamily::parse(&fw.family)?;
            let w = KWeight::parse(&family, &fw.weight)?;
            let raw = branch_raw(&family, &w)?;
            let vc = branch(&family, &w)?;
            match format {
                Format::Json => {
                    let raw_terms: Vec<serde_json::Value> = raw
                        .iter()
                        .map(|(l, m)| {
                            json!({
                                "label": l,
                                "coef": m,
                                "canonical": l.canonical(),
                            })
                        })
                        .collect();
                    emit(
                        out,
                        &json!({
                            "family": family,
                            "weight": w,
                            "raw_terms": raw_terms,
                            "virtual_char": vc,
                        }),
                    )?;
                }
                Format::Tsv => {
                    for (l, m) in &raw {
                        writeln!(out, "{}\t{}\t{}", l.tsv(), m, l.canonical().tsv())?;
                    }
                }
            }
            Ok(0)
        }
        Command::Decompose(which) => {
            match which {
                DecomposeCmd::Tensor { family, label } => {
                    let family = GroupFamily::parse(&family)?;
                    if label.len() != 2 {
                        return Err(Failure::Domain(Error::Parse(format!(
                            "tensor needs exactly two --label arguments, got {}",
                            label.len()
                        ))));
                    }
                    let a = KMLabel::parse(&family, &label[0])?;
                    let b = KMLabel::parse(&family, &label[1])?;
                    let shape = km_shape(&family);
                    let dec = tensor_decompose(&shape, &a.torus_coords(), &b.torus_coords())?;
                    let terms: Vec<serde_json::Value> = dec
                        .iter()
                        .map(|(v, m)| {
                            json!({"label": KMLabel::from_torus_coords(&family, v), "coef": m})
                        })
                        .collect();
                    emit(
                        out,
                        &json!({"family": family, "op": "tensor", "terms": terms}),
                    )?;
                }
                DecomposeCmd::Exterior {
                    family,
                    label,
                    power,
                } => {
                    let family = GroupFamily::parse(&family)?;
                    let a = KMLabel::parse(&family, &label)?;
                    let shape = km_shape(&family);
                    let dec = exterior_decompose(&shape, &a.torus_coords(), power)?;
                    let terms: Vec<serde_json::Value> = dec
                        .iter()
                        .map(|(v, m)| {
                            json!({"label": KMLabel::from_torus_coords(&family, v), "coef": m})
                        })
                        .collect();
                    emit(
                        out,
                        &json!({"family": family, "op": "exterior", "j": power, "terms": terms}),
                    )?;
                }
            }
            Ok(0)
        }
        Command::Weyl { fw, format } => {
            let family = GroupFamily::parse(&fw.family)?;
            let w = KWeight::parse(&family, &fw.weight)?;
            let terms = weyl_terms(&family, &w)?;
            match format {
                Format::Json => emit(out, &json!({"family": family, "weight": w, "terms": terms}))?,
                Format::Tsv => {
                    for t in &terms {
                        writeln!(out, "{}\t{}\t{}", t.sign, t.c_hat, t.label.tsv())?;
                    }
                }
            }
            Ok(0)
        }
        Command::Star { fw } => {
            let family = GroupFamily::parse(&fw.family)?;
            let w = KWeight::parse(&family, &fw.weight)?;
            let groups = star_groups(&family, &w)?;
            emit(
                out,
                &json!({"family": family, "weight": w, "groups": groups}),
            )?;
            Ok(0)
        }
        Command::Good { fw, radius } => {
            let family = GroupFamily::parse(&fw.family)?;
            let w = KWeight::parse(&family, &fw.weight)?;
            let opts = ClassifyOptions {
                radius,
                max_generators: default_generator_cap(),
            };
            let verdict = is_good(&family, &w, &opts)?;
            let groups = star_groups(&family, &w)?;
            let mut v = serde_json::to_value(&verdict).expect("serializable verdict");
            let obj = v.as_object_mut().expect("verdict is an object");
            obj.insert("family".into(), serde_json::to_value(family).unwrap());
            obj.insert("lambda".into(), serde_json::to_value(&w).unwrap());
            obj.insert("groups".into(), serde_json::to_value(&groups).unwrap());
            emit(out, &v)?;
            Ok(if verdict.is_good() { 0 } else { 1 })
        }
        Command::Scan {
            family,
            bound,
            radius,
            jobs,
        } => {
            let family = GroupFamily::parse(&family)?;
            let opts = ClassifyOptions {
                radius,
                max_generators: default_generator_cap(),
            };
            let rows = with_pool(jobs, || crate::ansatz::good_scan(&family, bound, &opts))?;
            for (w, verdict) in rows {
                let mut v = serde_json::to_value(&verdict).expect("serializable verdict");
                let obj = v.as_object_mut().expect("verdict is an object");
                obj.insert("lambda".into(), serde_json::to_value(&w).unwrap());
                emit(out, &v)?;
            }
            Ok(0)
        }
        Command::Preimage { family, label } => {
            let family = GroupFamily::parse(&family)?;
            let label = KMLabel::parse(&family, &label)?;
            let pre = preimage_su1n(&family, &label)?;
            emit(out, &serde_json::to_value(&pre).expect("serializable"))?;
            Ok(0)
        }
        Command::Invariant { family, label, vc } => {
            let family = GroupFamily::parse(&family)?;
            let target = vc_from_args(&family, &label, &vc)?;
            let value = invariant_i(&target)?;
            emit(
                out,
                &json!({"family": family, "value": i64::try_from(&value)
                    .map(serde_json::Value::from)
                    .unwrap_or_else(|_| serde_json::Value::from(value.to_string()))}),
            )?;
            Ok(0)
        }
        Command::Member {
            family,
            label,
            vc,
            radius,
            oracle,
        } => {
            let family = GroupFamily::parse(&family)?;
            let target = vc_from_args(&family, &label, &vc)?;
            let use_span = match oracle {
                OracleKind::Span => true,
                OracleKind::Hnf => false,
                OracleKind::Auto => matches!(family, GroupFamily::Soe { .. }),
            };
            let res = if use_span {
                member_soe(&target)?
            } else {
                lattice_member_capped(&target, radius, default_generator_cap())?
            };
            emit(out, &serde_json::to_value(&res).expect("serializable"))?;
            Ok(if res.is_member() { 0 } else { 1 })
        }
        Command::ExploreSostar {
            n,
            bound,
            radius,
            jobs,
        } => {
            let rows = with_pool(jobs, || {
                explore_sostar(n, bound, radius, default_generator_cap())
            })?;
            for r in &rows {
                emit(out, &serde_json::to_value(r).expect("serializable row"))?;
            }
            Ok(0)
        }
        Command::VerifyPaper {
            criteria,
            keep_going,
        } => {
            let ok = crate::verify::run_criteria(&criteria, !keep_going, out)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut argv = vec!["branchkit"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn branch_su21_example() {
        let (code, out) = run_cmd(&["branch", "--family", "su:2,1", "--weight", "1,0|0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let raw = v["raw_terms"].as_array().unwrap();
        assert_eq!(raw.len(), 2);
        assert_eq!(
            raw[0]["label"],
            serde_json::json!({"mu1":[1],"mu2":[],"p":0})
        );
        assert_eq!(
            raw[1]["label"],
            serde_json::json!({"mu1":[0],"mu2":[],"p":1})
        );
        assert_eq!(
            raw[0]["canonical"],
            serde_json::json!({"mu1":[0],"mu2":[],"p":-2})
        );
    }

    #[test]
    fn good_examples() {
        let (code, out) = run_cmd(&["good", "--family", "soe:2", "--weight", "p=2;1,1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "good");

        let (code, out) = run_cmd(&["good", "--family", "su:3,2", "--weight", "0,0,0|0,0"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "notgood");
        assert_eq!(v["key"], 1);
        assert_eq!(v["certificate"]["kind"], "invariant_i");
    }

    #[test]
    fn usage_errors_are_exit_two() {
        let (code, _) = run_cmd(&["branch", "--family", "su:2,1", "--weight", "1,x|0"]);
        assert_eq!(code, 2);
        let (code, _) = run_cmd(&["branch", "--family", "nope:1", "--weight", "0|0"]);
        assert_eq!(code, 2);
        let (code, _) = run_cmd(&["frobnicate"]);
        assert_eq!(code, 2);
        // weight not dominant
        let (code, _) = run_cmd(&["branch", "--family", "su:2,1", "--weight", "0,1|0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn member_exit_codes() {
        let (code, out) = run_cmd(&["member", "--family", "soe:3", "--label", "q=4;1,1"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "nonmember");
        assert_eq!(v["certificate"]["mu"], serde_json::json!([1, 1]));

        let (code, out) = run_cmd(&["member", "--family", "soe:3", "--label", "q=4;1,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "member");
    }

    #[test]
    fn decompose_tensor_a1() {
        let (code, out) = run_cmd(&[
            "decompose",
            "tensor",
            "--family",
            "sostar:3",
            "--label",
            "0|1",
            "--label",
            "0|1",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 2); // 1 (x) 1 = 2 + 0
    }

    #[test]
    fn preimage_cli() {
        let (code, out) = run_cmd(&["preimage", "--family", "su:3,1", "--label", "1,0||0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn invariant_accepts_virtual_characters() {
        let (code, out) = run_cmd(&["branch", "--family", "su:3,2", "--weight", "1,0,0|0,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let vc = v["virtual_char"].to_string();
        // the invariant vanishes on the image of the restriction map
        let (code, out) = run_cmd(&["invariant", "--family", "su:3,2", "--vc", &vc]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 0);

        let (code, _) = run_cmd(&["invariant", "--family", "su:3,2", "--vc", "{broken"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn scan_deterministic_across_jobs() {
        let (c1, out1) = run_cmd(&["scan", "--family", "soe:2", "--bound", "1", "--jobs", "1"]);
        let (c2, out2) = run_cmd(&["scan", "--family", "soe:2", "--bound", "1", "--jobs", "3"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(out1, out2);
    }

    #[test]
    fn deterministic_across_jobs() {
        let (c1, out1) = run_cmd(&[
            "explore-sostar",
            "--n",
            "4",
            "--bound",
            "1",
            "--radius",
            "1",
            "--jobs",
            "1",
        ]);
        let (c2, out2) = run_cmd(&[
            "explore-sostar",
            "--n",
            "4",
            "--bound",
            "1",
            "--radius",
            "1",
            "--jobs",
            "3",
        ]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(out1, out2);
        assert!(!out1.is_empty());
    }
}
