use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grlie::alexander::{
    alexander_presentation, chen_formula_test, gr_hilbert, graded_hilbert, linearized_presentation, ChenVerdict,
    ElimConfig, ThetaSeries,
};
use grlie::cohomology::{
    algebra_family, coproduct_algebra, egf_identity_check, presentation_algebra, tensor_algebra, AlgebraFamily,
    PoincareFamily, TwoStepAlgebra,
};
use grlie::combinatorics::{lcs_ranks_mobius, lcs_ranks_pbw, lcs_ranks_powersum, RankTable};
use grlie::groebner::krull_dimension;
use grlie::groups::{direct_product, family, free_product, Family, GroupPresentation};
use grlie::lie::{chen_dims, graded_dims, holonomy_presentation, initial_form_presentation, mildness_check, MildVerdict};
use grlie::numeric::{random_primes, UniPoly};
use grlie::resonance::{golden, resonance_ideal, subspace_in_resonance, LinearSubspaceParam};
use grlie::verify::{run_all, VerifyConfig, CRITERIA};
use grlie::Error;

#[derive(Parser)]
#[command(name = "grlie", version)]
#[command(about = "LCS ranks, Chen ranks, Alexander invariants and resonance of finitely presented groups")]
struct Cli {
    #[command(flatten)]
    job: JobArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct JobArgs {
    /// Seed for the random primes and sample points
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Maximum number of Hall basic commutators
    #[arg(long, global = true, default_value_t = grlie::lie::DEFAULT_HALL_BUDGET)]
    hall_budget: u64,

    /// Largest truncated elimination, in millions of matrix cells
    #[arg(long, global = true, default_value_t = 5_000)]
    cell_budget: u64,

    /// Number of random primes for modular eliminations
    #[arg(long, global = true, default_value_t = 2)]
    primes: usize,

    /// Suppress progress messages on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Args, Clone, Debug)]
struct Source {
    /// Family: P, vP, vPplus, Pbar4, F, Z; the index may be attached (vP3,
    /// vP4plus, F2, Z3). Join with '*' for free products and 'X' for direct
    /// products, e.g. Pbar4*Z.
    #[arg(long, conflicts_with = "presentation")]
    family: Option<String>,

    /// Family index n
    #[arg(long)]
    n: Option<usize>,

    /// Presentation JSON: {"generators": [...], "relators": [["x", "y^-1", ...], ...]}
    #[arg(long)]
    presentation: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LcsMethod {
    Pbw,
    Mobius,
    Powersum,
    Hall,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum HolonomyMethod {
    Linearized,
    Lie,
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré polynomial of the cohomology ring
    Poincare {
        #[command(flatten)]
        src: Source,
    },
    /// Lower central series ranks φ_1..φ_K
    LcsRanks {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Defaults to pbw for Koszul families and hall otherwise
        #[arg(long, value_enum)]
        method: Option<LcsMethod>,
    },
    /// Chen ranks θ_2..θ_K from the Alexander invariant
    ChenRanks {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Chen ranks θ_2..θ_K of the holonomy Lie algebra
    HolonomyChen {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = HolonomyMethod::Linearized)]
        method: HolonomyMethod,
    },
    /// Resonance variety R^1_d: dimension and known subspaces
    Resonance {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Anick's mildness criterion through degree K
    Mildness {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Exponential generating function identity through u^U
    EgfCheck {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 7)]
        max_degree: usize,
    },
    /// Tests θ_k = Σ h_m θ_k(F_m) for 3 <= k <= K
    ChenFormula {
        #[command(flatten)]
        src: Source,
        /// Components m:h, comma separated, e.g. 2:5
        #[arg(long)]
        components: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Runs the acceptance suite
    Verify {
        /// Comma-separated criterion ids; all by default
        #[arg(long)]
        criteria: Option<String>,
        /// Truncation degree for the vP3 Chen ranks
        #[arg(long, default_value_t = 8)]
        vp3_degree: usize,
        /// Print every check
        #[arg(long)]
        verbose: bool,
    },
}

/// Everything needed to run one command.
#[derive(Clone, Debug)]
struct JobConfig {
    seed: u64,
    format: Format,
    hall_budget: u64,
    cell_budget: u64,
    primes: usize,
    quiet: bool,
}

impl JobConfig {
    fn elim(&self) -> ElimConfig {
        use rand::SeedableRng;
        let mut c = ElimConfig::with_seed(self.seed);
        if self.primes != c.primes.len() {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed_a1e8);
            c.primes = random_primes(&mut rng, self.primes);
        }
        c.cell_budget_millions = self.cell_budget;
        c
    }

    fn progress(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("grlie: {}", msg.as_ref());
        }
    }
}

/// A group or algebra named on the command line.
struct Subject {
    name: String,
    group: Option<GroupPresentation>,
    algebra: Option<TwoStepAlgebra>,
    /// Poincaré polynomial coefficients, when known in closed form.
    poincare: Option<Vec<i64>>,
    /// Whether the LCS formula from the Poincaré polynomial applies.
    koszul: bool,
    egf: Option<(PoincareFamily, usize)>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn split_index(s: &str) -> (&str, Option<usize>) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &s[cut.len()..];
    (cut, if digits.is_empty() { None } else { digits.parse().ok() })
}

fn atom(token: &str, n_flag: Option<usize>) -> grlie::Result<Subject> {
    let t = token.trim();
    let (t, plus) = match t.strip_suffix("plus").or_else(|| t.strip_suffix('+')) {
        Some(base) => (base, true),
        None => (t, false),
    };
    let t = t.strip_prefix("Z^").map(|k| format!("Z{}", k)).unwrap_or_else(|| t.to_string());
    let (base, idx) = split_index(&t);
    let n = idx.or(n_flag);
    let need = |what: &str| n.ok_or_else(|| parse_error(format!("{} needs an index (--n or a suffix)", what)));
    let binoms = |n: usize| -> Vec<i64> {
        (0..=n).map(|k| i64::try_from(grlie::combinatorics::binomial(n as u64, k as u64)).unwrap()).collect()
    };
    let closed = |f: PoincareFamily, n: usize| -> grlie::Result<Vec<i64>> {
        Ok(grlie::cohomology::poincare_closed(f, n)?.int_coeffs().expect("integral"))
    };
    Ok(match (base, plus) {
        ("P", false) => {
            let n = need("P")?;
            Subject {
                name: format!("P{}", n),
                group: None,
                algebra: Some(algebra_family(AlgebraFamily::Arnold(n))?),
                poincare: Some(closed(PoincareFamily::P, n)?),
                koszul: true,
                egf: Some((PoincareFamily::P, n)),
            }
        }
        ("vP", false) => {
            let n = need("vP")?;
            Subject {
                name: format!("vP{}", n),
                group: Some(family(Family::VP(n))?),
                algebra: Some(algebra_family(AlgebraFamily::BeerVP(n))?),
                poincare: Some(closed(PoincareFamily::VP, n)?),
                koszul: true,
                egf: Some((PoincareFamily::VP, n)),
            }
        }
        ("vP", true) => {
            let n = need("vPplus")?;
            Subject {
                name: format!("vP{}+", n),
                group: Some(family(Family::VPPlus(n))?),
                algebra: Some(algebra_family(AlgebraFamily::BeerVPPlus(n))?),
                poincare: Some(closed(PoincareFamily::VPPlus, n)?),
                koszul: true,
                egf: Some((PoincareFamily::VPPlus, n)),
            }
        }
        ("Pbar", false) if n == Some(4) => {
            let g = family(Family::PBar4)?;
            Subject {
                name: "Pbar4".into(),
                algebra: Some(presentation_algebra(&g, true)?),
                group: Some(g),
                poincare: Some(vec![1, 5, 6]),
                koszul: true,
                egf: None,
            }
        }
        ("F", false) => {
            let n = need("F")?;
            Subject {
                name: format!("F{}", n),
                group: Some(family(Family::Free(n))?),
                algebra: Some(algebra_family(AlgebraFamily::Free(n))?),
                poincare: Some(vec![1, n as i64]),
                koszul: true,
                egf: None,
            }
        }
        ("Z", false) => {
            let k = n.unwrap_or(1);
            let group = if k == 1 { family(Family::Integers)? } else { family(Family::Abelian(k))? };
            Subject {
                name: if k == 1 { "Z".into() } else { format!("Z^{}", k) },
                group: Some(group),
                algebra: Some(algebra_family(AlgebraFamily::Abelian(k))?),
                poincare: Some(binoms(k)),
                koszul: true,
                egf: None,
            }
        }
        _ => return Err(parse_error(format!("unknown family {:?}", token))),
    })
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_wedge_sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        c[i] += x;
    }
    c[0] -= 1;
    c
}

fn combine(a: Subject, b: Subject, free: bool) -> Subject {
    let group = match (&a.group, &b.group) {
        (Some(g), Some(h)) => Some(if free { free_product(g, h) } else { direct_product(g, h) }),
        _ => None,
    };
    let algebra = match (&a.algebra, &b.algebra) {
        (Some(x), Some(y)) => Some(if free { coproduct_algebra(x, y) } else { tensor_algebra(x, y) }),
        _ => None,
    };
    let poincare = match (&a.poincare, &b.poincare) {
        (Some(x), Some(y)) => Some(if free { poly_wedge_sum(x, y) } else { poly_mul(x, y) }),
        _ => None,
    };
    Subject {
        name: format!("{}{}{}", a.name, if free { "*" } else { "X" }, b.name),
        group,
        algebra,
        poincare,
        koszul: a.koszul && b.koszul,
        egf: None,
    }
}

fn subject(src: &Source) -> grlie::Result<Subject> {
    if let Some(path) = &src.presentation {
        let text = std::fs::read_to_string(path).map_err(|e| parse_error(format!("{}: {}", path.display(), e)))?;
        let g = GroupPresentation::from_json(&text)?;
        let algebra = presentation_algebra(&g, false).ok();
        return Ok(Subject {
            name: path.display().to_string(),
            group: Some(g),
            algebra,
            poincare: None,
            koszul: false,
            egf: None,
        });
    }
    let name = src.family.as_deref().ok_or_else(|| parse_error("one of --family or --presentation is required"))?;
    let mut out: Option<Subject> = None;
    for (k, factor) in name.split('*').enumerate() {
        let mut part: Option<Subject> = None;
        for piece in factor.split(['X', '×']) {
            let s = atom(piece, if k == 0 && !name.contains(['*', 'X', '×']) { src.n } else { None })?;
            part = Some(match part {
                None => s,
                Some(p) => combine(p, s, false),
            });
        }
        let part = part.expect("split yields at least one piece");
        out = Some(match out {
            None => part,
            Some(p) => combine(p, part, true),
        });
    }
    Ok(out.expect("split yields at least one piece"))
}

fn need_group(s: &Subject) -> grlie::Result<&GroupPresentation> {
    s.group.as_ref().ok_or_else(|| Error::Invalid(format!("no group presentation is built in for {}", s.name)))
}

fn need_algebra(s: &Subject) -> grlie::Result<&TwoStepAlgebra> {
    s.algebra.as_ref().ok_or_else(|| Error::Invalid(format!("no cohomology algebra available for {}", s.name)))
}

/// Tabular output with a JSON form.
struct Report {
    text: Option<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
}

impl Report {
    fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Csv => {
                let mut s = self.columns.join(",") + "\n";
                for r in &self.rows {
                    s += &(r.join(",") + "\n");
                }
                s
            }
            Format::Table => {
                if let Some(t) = &self.text {
                    return t.clone() + "\n";
                }
                let w: Vec<usize> = (0..self.columns.len())
                    .map(|c| self.rows.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<&str>| -> String {
                    let parts: Vec<String> = cells.iter().zip(&w).map(|(c, w)| format!("{:>w$}", c, w = w)).collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(self.columns.clone());
                for r in &self.rows {
                    s += &line(r.iter().map(String::as_str).collect());
                }
                s
            }
        }
    }
}

fn ranks_report(name: &str, label: &'static str, first: usize, vals: &[i64], extra: Value) -> Report {
    let rows = vals.iter().enumerate().map(|(i, v)| vec![(i + first).to_string(), v.to_string()]).collect();
    let mut json = json!({ "subject": name, "quantity": label, "ranks": vals.iter().enumerate().map(|(i, v)| json!([i + first, v])).collect::<Vec<_>>() });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Report { text: None, columns: vec!["k", label], rows, json }
}

fn poincare_cmd(src: &Source) -> grlie::Result<Report> {
    let s = subject(src)?;
    let (coeffs, truncated) = match &s.poincare {
        Some(p) => (p.clone(), false),
        None => {
            let a = need_algebra(&s)?;
            (vec![1, a.b1 as i64, a.b2 as i64], !a.top_degree_two)
        }
    };
    let text = UniPoly::from_ints(&coeffs).to_string();
    let rows = coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect();
    Ok(Report {
        text: Some(if truncated { format!("{} + O(t^3)", text) } else { text.clone() }),
        columns: vec!["degree", "betti"],
        rows,
        json: json!({ "subject": s.name, "poincare": text, "coefficients": coeffs, "truncated": truncated }),
    })
}

fn lcs_cmd(src: &Source, k: usize, method: Option<LcsMethod>, job: &JobConfig) -> grlie::Result<Report> {
    let s = subject(src)?;
    let method = method.unwrap_or(if s.koszul && s.poincare.is_some() { LcsMethod::Pbw } else { LcsMethod::Hall });
    let vals = match method {
        LcsMethod::Hall => {
            let g = need_group(&s)?;
            job.progress(format!("Hall basis elimination for {} through degree {}", s.name, k));
            let l = initial_form_presentation(g)?;
            graded_dims(&l, k, job.hall_budget, &job.elim().primes)?.values()
        }
        m => {
            let p = s.poincare.as_ref().filter(|_| s.koszul).ok_or_else(|| {
                Error::Invalid(format!("{} has no Koszul Poincaré polynomial; use --method hall", s.name))
            })?;
            let b = &p[1..];
            let t: RankTable = match m {
                LcsMethod::Pbw => lcs_ranks_pbw(b, k)?,
                LcsMethod::Mobius => lcs_ranks_mobius(b, k)?,
                _ => lcs_ranks_powersum(b, k)?,
            };
            t.values()
        }
    };
    Ok(ranks_report(&s.name, "phi", 1, &vals, json!({ "method": format!("{:?}", method).to_lowercase() })))
}

fn theta(s: &Subject, k: usize, job: &JobConfig) -> grlie::Result<ThetaSeries> {
    if k < 2 {
        return Err(Error::Invalid("max degree must be >= 2".into()));
    }
    let g = need_group(s)?;
    job.progress(format!("Alexander presentation of {} ({} generators)", s.name, g.ngens()));
    let m = alexander_presentation(g)?;
    job.progress(format!("eliminating through degree {} ({} columns)", k - 2, m.columns.len()));
    let t0 = Instant::now();
    let gr = gr_hilbert(&m, k - 2, &job.elim())?;
    job.progress(format!("done in {:.2} s", t0.elapsed().as_secs_f64()));
    Ok(ThetaSeries::from_gr(&gr))
}

fn chen_cmd(src: &Source, k: usize, job: &JobConfig) -> grlie::Result<Report> {
    let s = subject(src)?;
    let th = theta(&s, k, job)?;
    Ok(ranks_report(&s.name, "theta", 2, &th.values, json!({})))
}

fn holonomy_chen_cmd(src: &Source, k: usize, method: HolonomyMethod, job: &JobConfig) -> grlie::Result<Report> {
    if k < 2 {
        return Err(Error::Invalid("max degree must be >= 2".into()));
    }
    let s = subject(src)?;
    let vals = match (method, &s.group) {
        (HolonomyMethod::Linearized, Some(g)) => {
            job.progress(format!("linearized Alexander presentation of {}", s.name));
            let m = linearized_presentation(&alexander_presentation(g)?)?;
            graded_hilbert(&m, k - 2, &job.elim())?
        }
        _ => {
            let a = need_algebra(&s)?;
            job.progress(format!("holonomy Lie algebra of {} through degree {}", s.name, k));
            let d = chen_dims(&holonomy_presentation(a), k, job.hall_budget, &job.elim().primes)?.values();
            d[1..].to_vec()
        }
    };
    Ok(ranks_report(&s.name, "theta", 2, &vals, json!({ "method": format!("{:?}", method).to_lowercase() })))
}

fn known_subspaces(name: &str) -> Vec<(String, LinearSubspaceParam)> {
    match name {
        "vP4+" => golden::vp4_plus_lines().into_iter().enumerate().map(|(i, l)| (format!("line {}", i + 1), l)).collect(),
        "vP3" => {
            let mut v: Vec<(String, LinearSubspaceParam)> =
                golden::vp3_planes().into_iter().enumerate().map(|(i, p)| (format!("plane {}", i + 1), p)).collect();
            v.push(("line".into(), golden::vp3_line()));
            v
        }
        _ => vec![],
    }
}

fn fmt_vec(v: &[grlie::Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(grlie::numeric::scalar_to_string).collect();
    format!("({})", parts.join(" "))
}

fn resonance_cmd(src: &Source, depth: usize, job: &JobConfig) -> grlie::Result<Report> {
    let s = subject(src)?;
    let a = need_algebra(&s)?;
    job.progress(format!("minors of size {} of the {} x {} Aomoto matrix", a.b1.saturating_sub(depth), a.b2, a.b1));
    let ideal = resonance_ideal(a, depth)?;
    job.progress(format!("Groebner basis of {} minors", ideal.generators().len()));
    let dim = krull_dimension(&ideal)?;
    let mut rows = vec![vec!["dimension".to_string(), dim.to_string(), String::new()]];
    let mut subs = Vec::new();
    for (label, l) in known_subspaces(&s.name) {
        let ok = subspace_in_resonance(a, &l, depth)?;
        let basis: Vec<String> = l.vectors.iter().map(|v| fmt_vec(v)).collect();
        rows.push(vec![label.clone(), if ok { "verified" } else { "not contained" }.into(), basis.join(" ")]);
        subs.push(json!({ "label": label, "basis": basis, "contained": ok }));
    }
    let verified = subs.iter().filter(|x| x["contained"] == true).count();
    Ok(Report {
        text: None,
        columns: vec!["item", "value", "basis"],
        rows,
        json: json!({
            "subject": s.name,
            "depth": depth,
            "generators": ideal.generators().len(),
            "dimension": dim,
            "verified_subspaces": verified,
            "subspaces": subs,
        }),
    })
}

fn mildness_cmd(src: &Source, k: usize, job: &JobConfig) -> grlie::Result<Report> {
    let s = subject(src)?;
    let g = need_group(&s)?;
    job.progress(format!("initial forms of {} relators, Hall elimination through degree {}", g.relators().len(), k));
    let v = mildness_check(g, k, job.hall_budget, &job.elim().primes)?;
    let text = match &v {
        MildVerdict::MildUpTo(d) => format!("{}: mild through degree {}", s.name, d),
        MildVerdict::FailsAt { degree, expected, actual } => {
            format!("{}: not mild, degree {}: expected {}, got {}", s.name, degree, expected, actual)
        }
    };
    let row = match &v {
        MildVerdict::MildUpTo(d) => vec!["mild".into(), d.to_string(), String::new(), String::new()],
        MildVerdict::FailsAt { degree, expected, actual } => {
            vec!["fails".into(), degree.to_string(), expected.to_string(), actual.to_string()]
        }
    };
    Ok(Report {
        text: Some(text),
        columns: vec!["verdict", "degree", "expected", "actual"],
        rows: vec![row],
        json: json!({ "subject": s.name, "verdict": v }),
    })
}

fn egf_cmd(src: &Source, u: usize) -> grlie::Result<Report> {
    let s = subject(src)?;
    let (fam, _) = s.egf.ok_or_else(|| Error::Invalid(format!("no generating function for {}; use P, vP or vPplus", s.name)))?;
    let r = egf_identity_check(fam, u)?;
    let rows = r.mismatches.iter().map(|(n, a, b)| vec![n.to_string(), a.clone(), b.clone()]).collect();
    Ok(Report {
        text: Some(if r.holds {
            format!("{:?}: identity holds through u^{}", fam, u)
        } else {
            format!("{:?}: identity fails at n = {:?}", fam, r.mismatches.iter().map(|m| m.0).collect::<Vec<_>>())
        }),
        columns: vec!["n", "closed form", "series"],
        rows,
        json: json!({ "family": format!("{:?}", fam), "through": u, "report": r }),
    })
}

fn parse_components(s: &str) -> grlie::Result<Vec<(u64, i64)>> {
    s.split(',')
        .map(|p| {
            let (m, h) = p.split_once(':').ok_or_else(|| parse_error(format!("component {:?} is not m:h", p)))?;
            let m = m.trim().parse().map_err(|_| parse_error(format!("bad dimension in {:?}", p)))?;
            let h = h.trim().parse().map_err(|_| parse_error(format!("bad count in {:?}", p)))?;
            Ok((m, h))
        })
        .collect()
}

fn chen_formula_cmd(src: &Source, comps: &str, k: usize, job: &JobConfig) -> grlie::Result<Report> {
    let comps = parse_components(comps)?;
    let s = subject(src)?;
    let th = theta(&s, k, job)?;
    let v = chen_formula_test(&th, &comps, 3, k)?;
    let text = match &v {
        ChenVerdict::Holds { through } => format!("{}: formula holds for 3 <= k <= {}", s.name, through),
        ChenVerdict::Fails { k, theta, formula } => {
            format!("{}: formula fails at k = {}: theta = {}, formula = {}", s.name, k, theta, formula)
        }
    };
    let rows = (2..=k).map(|i| vec![i.to_string(), th.theta(i).map_or(String::new(), |x| x.to_string())]).collect();
    Ok(Report {
        text: Some(text),
        columns: vec!["k", "theta"],
        rows,
        json: json!({ "subject": s.name, "components": comps, "theta": th.values, "verdict": v }),
    })
}

fn verify_cmd(criteria: &Option<String>, vp3_degree: usize, verbose: bool, job: &JobConfig) -> grlie::Result<(Report, bool, bool)> {
    let ids: Vec<usize> = match criteria {
        None => CRITERIA.iter().map(|c| c.0).collect(),
        Some(s) => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .ok()
                    .filter(|i| CRITERIA.iter().any(|c| c.0 == *i))
                    .ok_or_else(|| parse_error(format!("unknown criterion {:?}", x)))
            })
            .collect::<grlie::Result<_>>()?,
    };
    let cfg = VerifyConfig { seed: job.seed, hall_budget: job.hall_budget, cell_budget_millions: job.cell_budget, vp3_degree };
    let reports = run_all(&cfg, &ids, |r| job.progress(format!("criterion {} finished in {:.2} s", r.id, r.seconds)));
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        text += &format!("[{}] {:>2} {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.id, r.title);
        for c in r.checks.iter().filter(|c| verbose || !c.ok) {
            text += &format!("     {} {}: {}\n", if c.ok { "ok  " } else { "FAIL" }, c.label, c.detail);
        }
        if let Some(e) = &r.error {
            text += &format!("     error: {}\n", e);
        }
        rows.push(vec![r.id.to_string(), r.title.clone(), r.passed().to_string(), r.checks.len().to_string()]);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    text += &format!("{} passed, {} failed", reports.len() - failed, failed);
    let budget = reports.iter().any(|r| r.is_budget_error());
    let json_reports: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed(), "checks": r.checks, "error": r.error }))
        .collect();
    Ok((
        Report { text: Some(text), columns: vec!["id", "title", "passed", "checks"], rows, json: json!({ "criteria": json_reports }) },
        failed == 0,
        budget,
    ))
}

fn init_threads() {
    if let Ok(v) = std::env::var("GRLIE_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("grlie: ignoring GRLIE_THREADS={:?}", v),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Budget(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let j = &cli.job;
    let job = JobConfig {
        seed: j.seed,
        format: j.format,
        hall_budget: j.hall_budget,
        cell_budget: j.cell_budget,
        primes: j.primes,
        quiet: j.quiet,
    };
    if job.primes == 0 {
        eprintln!("grlie: --primes must be at least 1");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Poincare { src } => poincare_cmd(src),
        Command::LcsRanks { src, max_degree, method } => lcs_cmd(src, *max_degree, *method, &job),
        Command::ChenRanks { src, max_degree } => chen_cmd(src, *max_degree, &job),
        Command::HolonomyChen { src, max_degree, method } => holonomy_chen_cmd(src, *max_degree, *method, &job),
        Command::Resonance { src, depth } => resonance_cmd(src, *depth, &job),
        Command::Mildness { src, max_degree } => mildness_cmd(src, *max_degree, &job),
        Command::EgfCheck { src, max_degree } => egf_cmd(src, *max_degree),
        Command::ChenFormula { src, components, max_degree } => chen_formula_cmd(src, components, *max_degree, &job),
        Command::Verify { criteria, vp3_degree, verbose } => match verify_cmd(criteria, *vp3_degree, *verbose, &job) {
            Ok((report, ok, budget)) => {
                print!("{}", report.render(job.format));
                return ExitCode::from(if ok { 0 } else if budget { 3 } else { 1 });
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(job.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("grlie: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
