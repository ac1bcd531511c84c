use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use srcycles::dynamics::{
    check_prop61, cycle_ledger, ms_bound, normalized_tuple, orbit, periodic_points, verify_cycle,
    Prop61Violation, DEFAULT_HEIGHT_CAP,
};
use srcycles::equivalence::{classify_tuples, tuples_equivalent};
use srcycles::families::{build_family, ideal_census};
use srcycles::projline::{
    cross_ratio, delta_p, ideal_between, tuple_good_reduction, CrossRatio, ProjPoint,
};
use srcycles::sarith::{
    evertse_bound, factor, format_rational, solve_unit_eq, Rational, SPrimeSet,
    DEFAULT_FACTOR_BUDGET,
};
use srcycles::syntax::{format_forms, format_map, format_tuple, parse_map, parse_point, parse_tuple};
use srcycles::Error;

#[derive(Parser)]
#[command(name = "srcycles", version, about = "Cycles of rational maps with good reduction outside S")]
struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    records: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SArg {
    /// Finite primes of S, comma separated; empty for S = {}.
    #[arg(long = "s", default_value = "", value_name = "PRIMES")]
    s: String,
}

impl SArg {
    fn set(&self) -> Result<SPrimeSet, Error> {
        SPrimeSet::parse(&self.s)
    }
}

#[derive(Subcommand)]
enum Command {
    /// p-adic logarithmic distance between two points.
    Delta {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long = "p", value_name = "PRIME")]
        prime: BigInt,
    },
    /// Ideal between two distinct points, as its generator prime to S.
    Ideal {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        s: SArg,
    },
    /// Resultant, bad primes and good reduction of a map.
    ReductionMap {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[command(flatten)]
        s: SArg,
    },
    /// Good reduction of a tuple of points.
    ReductionTuple {
        #[arg(required = true, allow_negative_numbers = true)]
        points: Vec<String>,
        #[command(flatten)]
        s: SArg,
    },
    /// Forward orbit of a point.
    Orbit {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long, default_value_t = BigInt::from(DEFAULT_HEIGHT_CAP))]
        height_cap: BigInt,
    },
    /// Rational points of period dividing n.
    Periodic {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 1)]
        period: usize,
        #[arg(long, default_value_t = DEFAULT_FACTOR_BUDGET)]
        budget: u64,
    },
    /// Cycle ledger of a cycle, with the shift and gcd checks.
    Ledger {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(required = true, allow_negative_numbers = true)]
        points: Vec<String>,
        #[command(flatten)]
        s: SArg,
    },
    /// Normalized form of a cycle.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(required = true, allow_negative_numbers = true)]
        points: Vec<String>,
        #[command(flatten)]
        s: SArg,
    },
    /// Equivalence of two tuples under PGL2(Z_S); separate them with ';'.
    Equiv {
        #[arg(required = true, allow_negative_numbers = true)]
        tuples: Vec<String>,
        #[command(flatten)]
        s: SArg,
    },
    /// Partition the tuples of a file, one per line, into equivalence classes.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        s: SArg,
    },
    /// The explicit degree-4 family at a parameter u, or the ideal census.
    Thm2 {
        #[command(subcommand)]
        census: Option<Thm2Command>,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        s: SArg,
        /// Reject parameters that are not S-units.
        #[arg(long)]
        strict: bool,
    },
    /// Solve a_1 x_1 + ... + a_k x_k = 1 in S-units inside an exponent box.
    Sunit {
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        coeffs: Vec<String>,
        #[command(flatten)]
        s: SArg,
        #[arg(long = "box", default_value_t = 10)]
        max_exp: u32,
    },
    /// Upper bound on cycle lengths in terms of the number of places.
    Bound {
        #[arg(long)]
        s_count: usize,
    },
    /// Prime factorization of an integer.
    Factor {
        #[arg(allow_hyphen_values = true)]
        n: BigInt,
    },
    /// Cross-ratio of four distinct points.
    CrossRatio {
        #[arg(num_args = 4, required = true, allow_negative_numbers = true)]
        points: Vec<String>,
    },
}

#[derive(Subcommand)]
enum Thm2Command {
    /// Factor 2^{2n} - 2^n + 1 for n = 1..n_max.
    Census {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
}

/// Text lines for humans and records for machines.
#[derive(Default)]
struct Output {
    text: Vec<String>,
    records: Vec<Value>,
}

impl Output {
    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn record(&mut self, v: Value) {
        self.records.push(v);
    }
}

fn points(args: &[String]) -> Result<Vec<ProjPoint>, Error> {
    let mut out = Vec::new();
    for a in args {
        out.extend(parse_tuple(a)?);
    }
    Ok(out)
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    parse_point(text)?
        .affine()
        .ok_or_else(|| Error::InvalidPoint(format!("{text} is not a finite rational")))
}

fn strs<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn bracket_points(ps: &[ProjPoint]) -> Vec<String> {
    strs(ps)
}

fn run(command: Command) -> Result<Output, Error> {
    let mut out = Output::default();
    match command {
        Command::Delta { p, q, prime } => {
            let (a, b) = (parse_point(&p)?, parse_point(&q)?);
            if !srcycles::sarith::is_prime(&prime) {
                return Err(Error::NotPrime(prime.to_string()));
            }
            let d = delta_p(&a, &b, &prime);
            out.line(d.to_string());
            out.record(json!({
                "command": "delta", "p": a.to_string(), "q": b.to_string(),
                "prime": prime.to_string(), "delta": d.to_string(),
            }));
        }
        Command::Ideal { p, q, s } => {
            let s = s.set()?;
            let (a, b) = (parse_point(&p)?, parse_point(&q)?);
            let ideal = ideal_between(&a, &b, &s)?;
            out.line(ideal.to_string());
            out.record(json!({
                "command": "ideal", "p": a.to_string(), "q": b.to_string(),
                "s": s.to_string(), "ideal": ideal.to_string(),
            }));
        }
        Command::ReductionMap { map, s } => {
            let s = s.set()?;
            let phi = parse_map(&map)?;
            let res = phi.resultant();
            let bad = phi.bad_primes()?;
            let good = bad.iter().all(|p| s.contains(p));
            out.line(format!("map: {}", format_map(&phi)));
            out.line(format!("forms: {}", format_forms(&phi)));
            out.line(format!("degree: {}", phi.degree()));
            out.line(format!("resultant: {res}"));
            out.line(format!("bad primes: {}", list_or_none(&bad)));
            out.line(format!("good reduction outside {s}: {good}"));
            out.record(json!({
                "command": "reduction-map", "map": format_map(&phi), "s": s.to_string(),
                "degree": phi.degree(), "resultant": res.to_string(),
                "bad_primes": strs(&bad), "good_reduction": good,
            }));
        }
        Command::ReductionTuple { points: args, s } => {
            let s = s.set()?;
            let pts = points(&args)?;
            let r = tuple_good_reduction(&pts, &s)?;
            out.line(format!("good reduction outside {s}: {}", r.good));
            for (p, (i, j)) in &r.witnesses {
                out.line(format!("bad at {p}: points {i} and {j} collide"));
            }
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|(p, (i, j))| json!({"prime": p.to_string(), "pair": [i, j]}))
                .collect();
            out.record(json!({
                "command": "reduction-tuple", "points": bracket_points(&pts), "s": s.to_string(),
                "good_reduction": r.good, "witnesses": witnesses,
            }));
        }
        Command::Orbit { map, point, max_steps, height_cap } => {
            let phi = parse_map(&map)?;
            let p = parse_point(&point)?;
            let r = orbit(&phi, &p, max_steps, &height_cap);
            let cycle: Vec<ProjPoint> = r.cycle.as_ref().map(|c| c.points().to_vec()).unwrap_or_default();
            out.line(format!("outcome: {}", r.outcome.as_str()));
            out.line(format!("tail: {}", format_tuple(&r.tail)));
            out.line(format!("cycle: {}", format_tuple(&cycle)));
            out.record(json!({
                "command": "orbit", "map": format_map(&phi), "point": p.to_string(),
                "outcome": r.outcome.as_str(), "tail": bracket_points(&r.tail),
                "cycle": bracket_points(&cycle),
            }));
        }
        Command::Periodic { map, period, budget } => {
            let phi = parse_map(&map)?;
            let r = periodic_points(&phi, period, budget)?;
            out.line(format!("points: {}", format_tuple(&r.points)));
            out.line(format!("complete: {}", r.complete));
            out.record(json!({
                "command": "periodic", "map": format_map(&phi), "period": period,
                "points": bracket_points(&r.points), "complete": r.complete,
            }));
        }
        Command::Ledger { map, points: args, s } => {
            let s = s.set()?;
            let phi = parse_map(&map)?;
            let cycle = verify_cycle(&phi, &points(&args)?, &s)?;
            let report = check_prop61(&cycle)?;
            let ledger = cycle_ledger(&cycle, &s)?;
            let cs = strs(ledger.c.iter().skip(1).map(format_rational));
            let ideals = strs(&ledger.ideals);
            let reduced = strs(&ledger.reduced_ideals);
            let units: Vec<Vec<String>> = ledger
                .units
                .iter()
                .map(|row| strs(row.iter().map(format_rational)))
                .collect();
            let ls: Vec<Vec<String>> = ledger
                .l
                .iter()
                .map(|row| strs(row.iter().map(format_rational)))
                .collect();
            out.line(format!("C: {}", cs.join(" ")));
            for (j, row) in units.iter().enumerate() {
                out.line(format!("u_{j}: {}", row.join(" ")));
            }
            for (i, row) in ls.iter().enumerate() {
                out.line(format!("L_{}: {}", i + 1, row.join(" ")));
            }
            out.line(format!("ideals: {}", ideals.join(" ")));
            out.line(format!("reduced ideals: {}", reduced.join(" ")));
            out.line(format!(
                "shift and gcd checks: {} over primes {}",
                if report.passed() { "pass" } else { "FAIL" },
                list_or_none(&report.primes)
            ));
            for v in &report.violations {
                out.line(format!("violation: {}", describe(v)));
            }
            out.record(json!({
                "command": "ledger", "map": format_map(&phi), "points": bracket_points(cycle.points()),
                "s": s.to_string(), "c": cs, "units": units, "l": ls, "ideals": ideals,
                "reduced_ideals": reduced, "prop61_primes": strs(&report.primes),
                "prop61_pass": report.passed(),
            }));
        }
        Command::Normalize { map, points: args, s } => {
            let s = s.set()?;
            let phi = parse_map(&map)?;
            let cycle = verify_cycle(&phi, &points(&args)?, &s)?;
            let nt = normalized_tuple(&cycle, &s)?;
            out.line(format!("points: {}", format_tuple(&nt.points)));
            out.line(format!("A: {}", nt.a));
            out.line(format!("U: {}", nt.u));
            out.line(format!("D_2: {}", nt.d2));
            out.record(json!({
                "command": "normalize", "map": format_map(&phi), "points": bracket_points(cycle.points()),
                "s": s.to_string(), "normalized": bracket_points(&nt.points),
                "a": nt.a.to_string(), "u": nt.u.to_string(), "d2": nt.d2.to_string(),
            }));
        }
        Command::Equiv { tuples, s } => {
            let s = s.set()?;
            let joined = tuples.join(" ");
            let (left, right) = joined.split_once(';').ok_or_else(|| Error::Parse {
                position: 0,
                token: joined.clone(),
                message: "expected two tuples separated by ';'".into(),
            })?;
            let (ta, tb) = (parse_tuple(left)?, parse_tuple(right)?);
            let w = tuples_equivalent(&ta, &tb, &s)?;
            match &w {
                Some(m) => out.line(format!("equivalent via {m}")),
                None => out.line("not equivalent"),
            }
            out.record(json!({
                "command": "equiv", "a": bracket_points(&ta), "b": bracket_points(&tb),
                "s": s.to_string(), "equivalent": w.is_some(),
                "witness": w.map(|m| m.to_string()),
            }));
        }
        Command::Classify { file, s } => {
            let s = s.set()?;
            let text = fs::read_to_string(&file)
                .map_err(|e| Error::InvalidPoint(format!("cannot read {}: {e}", file.display())))?;
            let tuples = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_tuple)
                .collect::<Result<Vec<_>, _>>()?;
            let classes = classify_tuples(&tuples, &s)?;
            out.line(format!("{} tuples, {} classes", tuples.len(), classes.len()));
            for (k, c) in classes.iter().enumerate() {
                out.line(format!(
                    "class {k}: {} (lines {})",
                    format_tuple(&c.representative),
                    strs(c.members.iter().map(|m| m + 1)).join(",")
                ));
                out.record(json!({
                    "command": "classify", "s": s.to_string(), "class": k,
                    "representative": bracket_points(&c.representative),
                    "members": c.members,
                }));
            }
        }
        Command::Thm2 { census: Some(Thm2Command::Census { n_max }), .. } => {
            for row in ideal_census(n_max)? {
                let f = row.factorization.as_ref().map(|f| f.to_string());
                out.line(format!(
                    "n={} generator={} factorization={} cumulative_primes={} matches_family={}",
                    row.n,
                    row.generator,
                    f.as_deref().unwrap_or("(budget exceeded)"),
                    row.cumulative_primes,
                    row.matches_family
                ));
                out.record(json!({
                    "command": "thm2-census", "n": row.n, "generator": row.generator.to_string(),
                    "factorization": f, "complete": row.factorization.is_some(),
                    "cumulative_primes": row.cumulative_primes, "matches_family": row.matches_family,
                }));
            }
        }
        Command::Thm2 { census: None, u, s, strict } => {
            let s = s.set()?;
            let u = parse_rational(&u)?;
            let fam = build_family(&u, &s, strict)?;
            let bad = fam.phi.bad_primes()?;
            out.line(format!("u: {}", format_rational(&u)));
            out.line(format!("H: {}", fam.h));
            out.line(format!("psi1: {}", format_map(&fam.psi1)));
            out.line(format!("phi: {}", format_map(&fam.phi)));
            out.line(format!("degree: {}", fam.phi.degree()));
            out.line(format!("bad primes: {}", list_or_none(&bad)));
            out.line(format!("good reduction outside {s}: {}", fam.good_reduction));
            out.line(format!("triple: {}", format_tuple(&fam.triple)));
            out.line(format!("ideal1: {}", fam.ideal1));
            out.line(format!("ideal2: {}", fam.ideal2));
            out.record(json!({
                "command": "thm2", "u": format_rational(&u), "s": s.to_string(),
                "degree": fam.phi.degree(), "phi": format_map(&fam.phi),
                "bad_primes": strs(&bad), "good_reduction": fam.good_reduction,
                "cycle_certified": fam.cycle.is_some(), "triple": bracket_points(&fam.triple),
                "ideal1": fam.ideal1.to_string(), "ideal2": fam.ideal2.to_string(),
            }));
        }
        Command::Sunit { coeffs, s, max_exp } => {
            let s = s.set()?;
            let a = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
            let sol = solve_unit_eq(&a, &s, max_exp)?;
            let bound = evertse_bound(s.place_count());
            out.line(format!("{} solutions with exponents in [-{max_exp}, {max_exp}]", sol.solutions.len()));
            let mut rows = Vec::new();
            for u in &sol.solutions {
                let vals = strs(u.values.iter().map(format_rational));
                out.line(format!(
                    "({}){}",
                    vals.join(", "),
                    if u.degenerate { " degenerate" } else { "" }
                ));
                rows.push(json!({"values": vals, "degenerate": u.degenerate}));
            }
            out.record(json!({
                "command": "sunit", "coeffs": strs(a.iter().map(format_rational)), "s": s.to_string(),
                "box": max_exp, "count": sol.solutions.len(), "solutions": rows,
                "evertse_bound": bound.to_string(),
            }));
        }
        Command::Bound { s_count } => {
            if s_count == 0 {
                return Err(Error::InvalidPoint("--s-count must be at least 1".into()));
            }
            let b = ms_bound(s_count);
            out.line(b.to_string());
            out.record(json!({"command": "bound", "s_count": s_count, "bound": b.to_string()}));
        }
        Command::Factor { n } => {
            let f = factor(&n)?;
            out.line(f.to_string());
            out.record(json!({
                "command": "factor", "n": n.to_string(), "negative": f.is_negative(),
                "factors": f.factors().iter().map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
            }));
        }
        Command::CrossRatio { points: args } => {
            let pts = points(&args)?;
            if pts.len() != 4 {
                return Err(Error::LengthMismatch(pts.len(), 4));
            }
            let v = match cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])? {
                CrossRatio::Finite(q) => format_rational(&q),
                CrossRatio::Infinite => "inf".to_string(),
            };
            out.line(v.clone());
            out.record(json!({"command": "cross-ratio", "points": bracket_points(&pts), "value": v}));
        }
    }
    Ok(out)
}

fn list_or_none(xs: &[BigInt]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        strs(xs).join(" ")
    }
}

fn describe(v: &Prop61Violation) -> String {
    match v {
        Prop61Violation::Shift { prime, i, j, k, before, after } => {
            format!("p={prime}: delta(P{i},P{j})={before} but shifted by {k} gives {after}")
        }
        Prop61Violation::Coprime { prime, i, j, value, expected } => {
            format!("p={prime}: delta(P{i},P{j})={value}, expected {expected}")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            if cli.records {
                for r in &out.records {
                    println!("{r}");
                }
            } else {
                for l in &out.text {
                    println!("{l}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
