use std::fs;
use std::io::Read;

use anyhow::{bail, Context, Result};
use pairpart::algebra::ModRing;
use pairpart::conjectures::{scan_conjecture, ScanMode, ScanOptions};
use pairpart::dyson::{dyson_bruteforce, dyson_formula, dyson_via_evaluation, DysonInstance};
use pairpart::nullstellensatz::{
    cn_coefficient, cn_witness, pairing_grid, pairing_polynomial, GridSpec,
};
use pairpart::poly::{CoeffRing, Integers, MultiPoly, PolyJson};
use pairpart::solvers::{
    check_packing_hypotheses, solve_pair_partition, solve_translate_packing,
    solve_vector_partition, verify_packing, verify_pair_partition, verify_vector_partition,
    HypothesisReport, Outcome, PackingInstance, PairPartition, PartitionInstance, Universe,
    VectorPartition, VectorPartitionInstance,
};
use pairpart::sumsets::{verify_cd_bound, CdMode, SumsetInstance};
use pairpart::Error;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::{
    CnArgs, DysonArgs, Format, InputArgs, PartitionArgs, ScanArgs, SumsetArgs, UniverseArg,
};

pub const PASS: i32 = 0;
pub const NEGATIVE: i32 = 2;

/// A solved instance together with its outcome, as printed by `partition`
/// and `pack` and read back by `verify`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SolutionDoc {
    Pairs {
        instance: PartitionInstance,
        #[serde(flatten)]
        outcome: Outcome<PairPartition>,
    },
    Vectors {
        instance: VectorPartitionInstance,
        #[serde(flatten)]
        outcome: Outcome<VectorPartition>,
    },
    Packing {
        instance: PackingInstance,
        hypotheses: HypothesisReport,
        #[serde(flatten)]
        outcome: Outcome<Vec<i64>>,
    },
}

impl SolutionDoc {
    fn status(&self) -> i32 {
        let feasible = match self {
            SolutionDoc::Pairs { outcome, .. } => outcome.is_feasible(),
            SolutionDoc::Vectors { outcome, .. } => outcome.is_feasible(),
            SolutionDoc::Packing { outcome, .. } => outcome.is_feasible(),
        };
        if feasible {
            PASS
        } else {
            NEGATIVE
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn read_source(src: &InputArgs) -> Result<Option<String>> {
    if let Some(json) = &src.json {
        return Ok(Some(json.clone()));
    }
    match &src.input {
        None => Ok(None),
        Some(path) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(Some(buf))
        }
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map(Some),
    }
}

fn require_source(src: &InputArgs) -> Result<String> {
    read_source(src)?.context("an instance is required: pass --input FILE or --json DOC")
}

pub fn partition(args: &PartitionArgs) -> Result<i32> {
    let doc = if let (Some(n), Some(d)) = (args.n, &args.d) {
        let universe = args.universe.map(|u| match u {
            UniverseArg::Nonzero => Universe::Nonzero,
            UniverseArg::Full => Universe::Full,
        });
        let instance = PartitionInstance::new(n, d, universe)?;
        let outcome = solve_pair_partition(&instance);
        SolutionDoc::Pairs { instance, outcome }
    } else {
        let text = require_source(&args.source)?;
        let value: Value = serde_json::from_str(&text).context("parsing instance JSON")?;
        if value.get("bases").is_some() {
            let instance: VectorPartitionInstance = serde_json::from_value(value)?;
            let outcome = solve_vector_partition(&instance);
            SolutionDoc::Vectors { instance, outcome }
        } else {
            let instance: PartitionInstance = serde_json::from_value(value)?;
            let outcome = solve_pair_partition(&instance);
            SolutionDoc::Pairs { instance, outcome }
        }
    };
    emit(&doc)?;
    Ok(doc.status())
}

pub fn pack(args: &InputArgs) -> Result<i32> {
    let text = require_source(args)?;
    let instance: PackingInstance = serde_json::from_str(&text).context("parsing packing JSON")?;
    let hypotheses = check_packing_hypotheses(&instance);
    let outcome = solve_translate_packing(&instance);
    let doc = SolutionDoc::Packing {
        instance,
        hypotheses,
        outcome,
    };
    emit(&doc)?;
    Ok(doc.status())
}

fn raw_number(v: impl ToString) -> Box<RawValue> {
    RawValue::from_string(v.to_string()).expect("integers are valid JSON")
}

#[derive(Serialize)]
struct DysonReport {
    a: Vec<u64>,
    formula: Box<RawValue>,
    bruteforce: Option<Box<RawValue>>,
    evaluation: Box<RawValue>,
    agree: bool,
}

pub fn dyson(args: &DysonArgs) -> Result<i32> {
    let inst = DysonInstance::new(args.a.clone())?;
    let formula = dyson_formula(&inst);
    let evaluation = dyson_via_evaluation(&inst);
    let brute = match dyson_bruteforce(&inst) {
        Ok(v) => Some(v),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let agree = formula == evaluation && brute.as_ref().is_none_or(|b| *b == formula);
    emit(&DysonReport {
        a: args.a.clone(),
        formula: raw_number(&formula),
        bruteforce: brute.map(raw_number),
        evaluation: raw_number(&evaluation),
        agree,
    })?;
    Ok(if agree { PASS } else { NEGATIVE })
}

#[derive(Deserialize)]
struct CnInput {
    #[serde(default)]
    modulus: Option<u64>,
    poly: PolyJson,
    grid: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct CnReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<Vec<u64>>,
    exponents: Vec<u32>,
    coefficient: String,
    nonzero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Option<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<(u64, u64)>>,
}

fn cn_report<R: CoeffRing>(
    poly: &MultiPoly<R>,
    grid: &GridSpec<R>,
    witness: bool,
) -> Result<CnReport> {
    let ring = poly.ring();
    let c = cn_coefficient(poly, grid)?;
    let witness = if witness {
        Some(cn_witness(poly, grid)?.map(|w| w.iter().map(|x| ring.format(x)).collect()))
    } else {
        None
    };
    Ok(CnReport {
        p: None,
        d: None,
        exponents: grid.degrees(),
        coefficient: ring.format(&c),
        nonzero: !ring.is_zero(&c),
        witness,
        pairs: None,
    })
}

fn grid_over<R: CoeffRing>(ring: &R, sets: &[Vec<i64>]) -> Result<GridSpec<R>> {
    Ok(GridSpec::new(
        sets.iter()
            .map(|s| s.iter().map(|&x| ring.from_i64(x)).collect())
            .collect(),
    )?)
}

pub fn cn_coeff(args: &CnArgs) -> Result<i32> {
    let report = if let (Some(p), Some(d)) = (args.p, &args.d) {
        let f = pairing_polynomial(p, d, false)?;
        let grid = pairing_grid(p, d)?;
        let c = cn_coefficient(&f, &grid)?;
        let ring = ModRing::new(p);
        let (witness, pairs) = if args.witness {
            let w = cn_witness(&f, &grid)?;
            let pairs = w.as_ref().map(|w| {
                w.iter()
                    .zip(d)
                    .map(|(&x, &di)| (x, ring.add(x, ring.reduce(di as i64))))
                    .collect()
            });
            (
                Some(w.map(|w| w.iter().map(u64::to_string).collect())),
                pairs,
            )
        } else {
            (None, None)
        };
        CnReport {
            p: Some(p),
            d: Some(d.clone()),
            exponents: grid.degrees(),
            coefficient: c.to_string(),
            nonzero: c != 0,
            witness,
            pairs,
        }
    } else {
        let text = require_source(&args.source)?;
        let input: CnInput = serde_json::from_str(&text).context("parsing polynomial JSON")?;
        match input.modulus {
            Some(n) => {
                let ring = ModRing::try_new(n)?;
                let poly = MultiPoly::from_json(ring, &input.poly)?;
                cn_report(&poly, &grid_over(&ring, &input.grid)?, args.witness)?
            }
            None => {
                let poly = MultiPoly::from_json(Integers, &input.poly)?;
                cn_report(&poly, &grid_over(&Integers, &input.grid)?, args.witness)?
            }
        }
    };
    emit(&report)?;
    Ok(if report.nonzero { PASS } else { NEGATIVE })
}

pub fn conjecture_scan(args: &ScanArgs, threads: Option<usize>, format: Format) -> Result<i32> {
    let mode = match (args.sample, args.seed) {
        (Some(count), Some(seed)) => ScanMode::Sample { count, seed },
        (None, None) => ScanMode::Exhaustive,
        _ => bail!("--sample and --seed go together"),
    };
    let opts = ScanOptions {
        threads,
        checkpoint: args.checkpoint.clone(),
        timing: args.timing,
    };
    let report = scan_conjecture(args.n, mode, &opts)?;
    match format {
        Format::Json => emit(&report)?,
        Format::Tsv => print!("{}", report.to_tsv()),
    }
    Ok(if report.holds() { PASS } else { NEGATIVE })
}

#[derive(Serialize)]
struct PairReport {
    p: u64,
    alpha: u32,
    a: Vec<u64>,
    b: Vec<u64>,
    sumset: Vec<u64>,
    size: u64,
    beta: u64,
    holds: bool,
    tight: bool,
}

pub fn sumset(args: &SumsetArgs) -> Result<i32> {
    if let (Some(a), Some(b)) = (&args.a, &args.b) {
        let inst = SumsetInstance::new(args.p, args.alpha, a, b)?;
        let check = inst.check();
        let holds = check.holds();
        emit(&PairReport {
            p: inst.p,
            alpha: inst.alpha,
            tight: check.tight(),
            a: inst.a,
            b: inst.b,
            sumset: check.sumset,
            size: check.size,
            beta: check.beta,
            holds,
        })?;
        return Ok(if holds { PASS } else { NEGATIVE });
    }
    let mode = match (args.exhaustive, args.sample, args.seed) {
        (true, None, None) => CdMode::Exhaustive,
        (false, Some(count), Some(seed)) => CdMode::Sample { count, seed },
        _ => bail!("choose one of --exhaustive, --sample N --seed S, or --a/--b"),
    };
    let report = verify_cd_bound(args.p, args.alpha, mode, args.max_tight)?;
    emit(&report)?;
    Ok(if report.violations.is_empty() {
        PASS
    } else {
        NEGATIVE
    })
}

#[derive(Serialize)]
struct VerifyReport {
    kind: &'static str,
    claimed: &'static str,
    valid: bool,
}

/// Feasible documents are re-checked by the independent verifiers;
/// infeasible ones by re-running the complete search.
pub fn verify(args: &InputArgs) -> Result<i32> {
    let text = require_source(args)?;
    let doc: SolutionDoc = serde_json::from_str(&text).context("parsing solution JSON")?;
    let (kind, feasible, valid) = match &doc {
        SolutionDoc::Pairs { instance, outcome } => (
            "pairs",
            outcome.is_feasible(),
            match outcome.solution() {
                Some(s) => verify_pair_partition(instance, s),
                None => !solve_pair_partition(instance).is_feasible(),
            },
        ),
        SolutionDoc::Vectors { instance, outcome } => (
            "vectors",
            outcome.is_feasible(),
            match outcome.solution() {
                Some(s) => verify_vector_partition(instance, s),
                None => !solve_vector_partition(instance).is_feasible(),
            },
        ),
        SolutionDoc::Packing {
            instance,
            hypotheses,
            outcome,
        } => (
            "packing",
            outcome.is_feasible(),
            *hypotheses == check_packing_hypotheses(instance)
                && match outcome.solution() {
                    Some(t) => verify_packing(instance, t),
                    None => !solve_translate_packing(instance).is_feasible(),
                },
        ),
    };
    emit(&VerifyReport {
        kind,
        claimed: if feasible { "feasible" } else { "infeasible" },
        valid,
    })?;
    Ok(if valid { PASS } else { NEGATIVE })
}
