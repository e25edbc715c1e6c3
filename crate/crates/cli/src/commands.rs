use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use weakcross_core::constructions::{
    make_covering, make_star, make_star_pair, make_sunflower, make_tight_pair, random_family, tight_pair_safe_n,
    StarSpec, TightPairSpec,
};
use weakcross_core::refutation::{claim1_petals, claim1_witness, claim3_cover};
use weakcross_core::search::{search_max_product, SearchLimits};
use weakcross_core::setfam::{binomial, Family, FamilyPair, GroundSet};
use weakcross_core::structures::{erdos_bound, find_sunflower, matching_number, max_family_no_matching};
use weakcross_core::weakcross::{check_weak_single, check_weak_cross, single_threshold, Verdict, WeakCrossParams};

use crate::report::{load_family, pair_paths, write_family, Report};

pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_VACUOUS: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub struct Outcome {
    pub code: u8,
    pub report: Report,
}

fn done(report: Report) -> Result<Outcome> {
    Ok(Outcome { code: 0, report })
}

fn verdict_code<W>(v: &Verdict<W>) -> u8 {
    match v {
        Verdict::Satisfied { .. } => 0,
        Verdict::Violated { .. } => EXIT_VIOLATED,
        Verdict::Vacuous => EXIT_VACUOUS,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize to JSON")
}

fn decimal(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

fn params(ell: u32, t: u32) -> Result<WeakCrossParams> {
    Ok(WeakCrossParams::new(ell, t)?)
}

fn pair(left: Family, right: Family) -> Result<FamilyPair> {
    FamilyPair::new(left, right).context("left and right families must share a ground set")
}

#[derive(Args, Debug)]
pub struct VerifyCross {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    t: u32,
}

pub fn verify_cross(a: &VerifyCross) -> Result<Outcome> {
    let mut report = Report::new("verify-cross");
    report.input("ell", a.ell).input("t", a.t);
    let p = params(a.ell, a.t)?;
    let left = load_family(&mut report, "left", &a.left)?;
    let right = load_family(&mut report, "right", &a.right)?;
    let verdict = check_weak_cross(&pair(left, right)?, p);
    report.result = to_value(&verdict.report(p.threshold()));
    Ok(Outcome { code: verdict_code(&verdict), report })
}

#[derive(Args, Debug)]
pub struct VerifySingle {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    ell: u32,
}

pub fn verify_single(a: &VerifySingle) -> Result<Outcome> {
    let mut report = Report::new("verify-single");
    report.input("ell", a.ell);
    if a.ell == 0 {
        bail!("ell must be positive");
    }
    let family = load_family(&mut report, "family", &a.family)?;
    let verdict = check_weak_single(&family, a.ell);
    report.result = to_value(&verdict.report(single_threshold(a.ell)));
    Ok(Outcome { code: verdict_code(&verdict), report })
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Star,
    TightPair,
    Sunflower,
    Covering,
    Random,
}

#[derive(Args, Debug)]
pub struct Construct {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// Right block size; turns `star` into a star pair.
    #[arg(long)]
    kprime: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    ell: Option<u32>,
    /// Number of sunflower petals.
    #[arg(long)]
    u: Option<u32>,
    /// Number of blocks for `random`.
    #[arg(long)]
    count: Option<usize>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file, or a prefix for `.left.fam`/`.right.fam` when the kind
    /// produces a pair.
    #[arg(long)]
    out: PathBuf,
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: Kind) -> Result<T> {
    v.ok_or_else(|| anyhow!("--kind {} requires --{flag}", kind.to_possible_value().unwrap().get_name()))
}

fn emit_pair(prefix: &Path, pair: &FamilyPair) -> Result<Value> {
    let (lp, rp) = pair_paths(prefix);
    write_family(&lp, pair.left())?;
    write_family(&rp, pair.right())?;
    Ok(json!({
        "files": [lp.display().to_string(), rp.display().to_string()],
        "sizes": [pair.left().len(), pair.right().len()],
        "product": decimal(&BigUint::from(pair.left().len() * pair.right().len())),
    }))
}

fn emit_single(path: &Path, family: &Family) -> Result<Value> {
    write_family(path, family)?;
    Ok(json!({ "files": [path.display().to_string()], "size": family.len() }))
}

pub fn construct(a: &Construct) -> Result<Outcome> {
    let mut report = Report::new("construct");
    let kind_name = a.kind.to_possible_value().unwrap().get_name().to_string();
    report.input("kind", kind_name).input("n", a.n).input("k", a.k);
    for (key, v) in [("kprime", a.kprime), ("t", a.t), ("ell", a.ell), ("u", a.u)] {
        if let Some(v) = v {
            report.input(key, v);
        }
    }
    let ground = GroundSet::new(a.n)?;
    let (n, k) = (a.n as u64, a.k as u64);
    let mut result = match a.kind {
        Kind::Star => {
            let t = need(a.t, "t", a.kind)?;
            let spec = StarSpec::packed(ground, a.k, t)?;
            match a.kprime {
                None => {
                    let mut r = emit_single(&a.out, &make_star(&spec)?)?;
                    r["expected_size"] = decimal(&binomial(n - t as u64, k - t as u64));
                    r
                }
                Some(kp) => {
                    let p = make_star_pair(ground, a.k, kp, spec.core)?;
                    let mut r = emit_pair(&a.out, &p)?;
                    r["expected_product"] = decimal(&weakcross_core::search::star_product(a.n, a.k, kp, t));
                    r
                }
            }
        }
        Kind::TightPair => {
            let t = need(a.t, "t", a.kind)?;
            let kp = need(a.kprime, "kprime", a.kind)?;
            let safe = tight_pair_safe_n(a.k, kp, a.ell.unwrap_or(1));
            if a.n < safe {
                log::warn!("n = {} is below {safe}; the pair may not reach grid sum ell^2 t - ell", a.n);
            }
            let p = make_tight_pair(&TightPairSpec::packed(ground, a.k, kp, t)?)?;
            let mut r = emit_pair(&a.out, &p)?;
            let m = a.n as u64 - t as u64;
            r["expected_sizes"] = json!([
                decimal(&binomial(m, k - t as u64)),
                decimal(&(binomial(m, kp as u64 - t as u64) + 1u32)),
            ]);
            r["safe_n"] = json!(safe);
            r
        }
        Kind::Sunflower => {
            let t = need(a.t, "t", a.kind)?;
            let u = need(a.u, "u", a.kind)?;
            let mut r = emit_single(&a.out, &make_sunflower(ground, a.k, t, u)?)?;
            r["expected_size"] = json!(u);
            r
        }
        Kind::Covering => {
            let ell = need(a.ell, "ell", a.kind)?;
            let mut r = emit_single(&a.out, &make_covering(ground, a.k, ell)?)?;
            r["expected_size"] = decimal(&erdos_bound(a.n, a.k, ell));
            r
        }
        Kind::Random => {
            let count = need(a.count, "count", a.kind)?;
            report.input("count", count).input("seed", a.seed);
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            emit_single(&a.out, &random_family(&mut rng, ground, a.k, count)?)?
        }
    };
    result["kind"] = report.inputs["kind"].clone();
    report.result = result;
    done(report)
}

#[derive(Args, Debug)]
pub struct SunflowerArgs {
    #[arg(long)]
    family: PathBuf,
    /// Kernel size.
    #[arg(long)]
    t: u32,
    /// Required number of petals.
    #[arg(long)]
    r: usize,
}

pub fn sunflower(a: &SunflowerArgs) -> Result<Outcome> {
    let mut report = Report::new("sunflower");
    report.input("t", a.t).input("r", a.r);
    let family = load_family(&mut report, "family", &a.family)?;
    let found = find_sunflower(&family, a.t, a.r)?;
    report.result = json!({ "found": found.is_some(), "sunflower": to_value(&found) });
    done(report)
}

#[derive(Args, Debug)]
pub struct MatchingArgs {
    #[arg(long)]
    family: PathBuf,
}

pub fn matching(a: &MatchingArgs) -> Result<Outcome> {
    let mut report = Report::new("matching");
    let family = load_family(&mut report, "family", &a.family)?;
    report.result = to_value(&matching_number(&family));
    done(report)
}

#[derive(Args, Debug)]
pub struct ErdosArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: u32,
    /// Also find a largest family without `ell` disjoint blocks.
    #[arg(long)]
    search: bool,
    /// Search even when the candidate set is above the default limit.
    #[arg(long, requires = "search")]
    force: bool,
}

pub fn erdos(a: &ErdosArgs) -> Result<Outcome> {
    let mut report = Report::new("erdos");
    report.input("n", a.n).input("k", a.k).input("ell", a.ell);
    if a.ell == 0 || a.k == 0 || a.k > a.n {
        bail!("need 1 <= k <= n and ell >= 1");
    }
    let bound = erdos_bound(a.n, a.k, a.ell);
    let mut result = json!({ "bound": decimal(&bound) });
    if a.search {
        let (size, family) = max_family_no_matching(a.n, a.k, a.ell, a.force)?;
        result["search_size"] = json!(size);
        result["search_family"] = to_value(&family);
        result["matches_bound"] = json!(BigUint::from(size) == bound);
    }
    report.result = result;
    done(report)
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    kprime: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    t: u32,
    /// Node budget. Without it only small instances are accepted.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Disable bound pruning (feasibility pruning stays on).
    #[arg(long)]
    no_prune: bool,
    /// Write the best pair to PREFIX.left.fam and PREFIX.right.fam.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn search(a: &SearchArgs) -> Result<Outcome> {
    let mut report = Report::new("search");
    report.input("n", a.n).input("k", a.k).input("kprime", a.kprime).input("ell", a.ell).input("t", a.t);
    report.input("max_nodes", to_value(&a.max_nodes)).input("prune", !a.no_prune);
    let limits = SearchLimits { max_nodes: a.max_nodes, prune: !a.no_prune };
    let res = search_max_product(a.n, a.k, a.kprime, params(a.ell, a.t)?, limits)?;
    let mut result = to_value(&res);
    if let Some(prefix) = &a.out {
        let (lp, rp) = pair_paths(prefix);
        write_family(&lp, res.best_pair.left())?;
        write_family(&rp, res.best_pair.right())?;
        result["files"] = json!([lp.display().to_string(), rp.display().to_string()]);
    }
    report.result = result;
    Ok(Outcome { code: if res.exhaustive { 0 } else { EXIT_BUDGET }, report })
}

#[derive(Args, Debug)]
pub struct Claim1Args {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    t: u32,
}

pub fn claim1(a: &Claim1Args) -> Result<Outcome> {
    let mut report = Report::new("claim1");
    report.input("ell", a.ell).input("t", a.t);
    let p = params(a.ell, a.t)?;
    let left = load_family(&mut report, "left", &a.left)?;
    let right = load_family(&mut report, "right", &a.right)?;
    let r = claim1_petals(right.k(), a.ell);
    let sf = find_sunflower(&left, a.t, r)?
        .ok_or_else(|| anyhow!("left family has no sunflower with kernel size {} and {r} petals", a.t))?;
    let trace = claim1_witness(&left, &right, &sf, p)?;
    let verdict = check_weak_cross(&pair(left, right)?, p);
    report.result = json!({
        "sunflower": to_value(&sf),
        "trace": to_value(&trace),
        "check": to_value(&verdict.report(p.threshold())),
    });
    done(report)
}

#[derive(Args, Debug)]
pub struct Claim3Args {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    t: u32,
    /// Comma-separated 0-based left indices; defaults to the first `ell`.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
}

pub fn claim3(a: &Claim3Args) -> Result<Outcome> {
    let mut report = Report::new("claim3");
    report.input("ell", a.ell).input("t", a.t);
    let p = params(a.ell, a.t)?;
    let left = load_family(&mut report, "left", &a.left)?;
    let right = load_family(&mut report, "right", &a.right)?;
    let rows = a.rows.clone().unwrap_or_else(|| (0..a.ell as usize).collect());
    report.input("rows", to_value(&rows));
    let cover = claim3_cover(&left, &right, &rows, a.t)?;
    let verdict = check_weak_cross(&pair(left, right.clone())?, p);
    report.result = json!({
        "cover": to_value(&cover),
        "exceptional_count": cover.exceptional.len(),
        "covers": cover.covers(right.len()),
        "check": to_value(&verdict.report(p.threshold())),
    });
    done(report)
}
