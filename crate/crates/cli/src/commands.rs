use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use e2_core::algebra::{PresentationDocument, StructuredAlgebra};
use e2_core::bigraded::BiDegree;
use e2_core::coeffs::Prime;
use e2_core::gstar::{bstar_basis, gstar_algebra, BStarSkeleton};
use e2_core::resolution::{
    bar_oracle, chart_render, ext_chart, resolve as resolve_trivial, resolve_with, ChartFormat,
    ModulePresentation, ResolutionError, ResolveOptions,
};
use e2_core::steenrod::{
    adem_normalize, adem_relation_set, admissible_basis, milnor_dimension, parse_monomial,
};

/// Largest `N` accepted by `gstar-verify`.
pub const MAX_GSTAR_N: i64 = 64;

#[derive(Debug)]
pub enum Failure {
    /// Exit 1: a check ran and failed.
    Verify { output: String, message: String },
    /// Exit 2: bad arguments, unreadable or invalid input.
    Usage(String),
    /// Exit 3: a resource bound stopped the computation.
    Bound { output: String, message: String },
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verify { .. } => 1,
            Failure::Usage(_) => 2,
            Failure::Bound { .. } => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verify { message, .. } | Failure::Bound { message, .. } => message,
            Failure::Usage(m) => m,
        }
    }

    pub fn partial_output(&self) -> Option<&str> {
        match self {
            Failure::Verify { output, .. } | Failure::Bound { output, .. } => Some(output),
            Failure::Usage(_) => None,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn adem(text: &str) -> Result<String, Failure> {
    let word = parse_monomial(text).map_err(usage)?;
    Ok(format!("{}\n", adem_normalize(&word)))
}

pub fn basis(degree: i64, oracle: bool) -> Result<String, Failure> {
    let n = u32::try_from(degree)
        .map_err(|_| usage(format!("degree must be non-negative, got {degree}")))?;
    let basis = admissible_basis(n);
    let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
    let mut out = format!("{}\ncount {}\n", names.join(", "), basis.len());
    if oracle {
        let milnor = milnor_dimension(n);
        writeln!(out, "milnor {milnor}").unwrap();
        if milnor != basis.len() as u64 {
            out.push_str("DISAGREE\n");
            return Err(Failure::Verify {
                output: out,
                message: format!(
                    "degree {n}: {} admissible monomials, {milnor} Milnor elements",
                    basis.len()
                ),
            });
        }
        out.push_str("AGREE\n");
    }
    Ok(out)
}

fn prime(p: u32) -> Result<Prime, Failure> {
    Prime::new(p).map_err(usage)
}

pub fn gstar_verify(p: u32, max_n: i64, presentation: Option<&Path>) -> Result<String, Failure> {
    if !(0..=MAX_GSTAR_N).contains(&max_n) {
        return Err(usage(format!(
            "--max-n must lie in 0..={MAX_GSTAR_N}, got {max_n}"
        )));
    }
    let algebra = match presentation {
        Some(path) => {
            let doc = PresentationDocument::from_json(&read(path)?).map_err(usage)?;
            doc.to_algebra().map_err(usage)?
        }
        None => gstar_algebra(prime(p)?, max_n as u32 + 2),
    };
    verify_algebra(&algebra, max_n)
}

fn verify_algebra(algebra: &StructuredAlgebra, max_n: i64) -> Result<String, Failure> {
    let fail = |output: String, message: String| Failure::Verify { output, message };
    let bound = BiDegree::new(max_n, max_n);
    let report = algebra
        .verify_sigma_structure(bound)
        .map_err(|e| fail(String::new(), e.to_string()))?;
    let h = &report.homology;

    let mut out = format!(
        "p = {}, window (n, m) ≤ ({max_n}, {max_n})\n",
        algebra.ring().prime()
    );
    out.push_str("   n  dim H(n,n)  elsewhere\n");
    let mut first_bad = None;
    for n in 0..=max_n {
        let diag = h.get(BiDegree::new(n, n));
        let dim = diag.f_dimension();
        let stray = (0..=max_n).find(|&k| k != n && !h.get(BiDegree::new(k, n)).is_zero());
        let shown = dim.map_or_else(|| "non-F".to_string(), |d| d.to_string());
        let elsewhere = stray.map_or_else(|| "0".to_string(), |k| format!("nonzero at ({k},{n})"));
        writeln!(out, "{n:>4}  {shown:>10}  {elsewhere}").unwrap();
        if first_bad.is_none() {
            if dim != Some(1) {
                first_bad = Some(format!("H_{n} at ({n},{n}) is {diag}, not F"));
            } else if let Some(k) = stray {
                first_bad = Some(format!("H_{n} is nonzero at ({k},{n})"));
            }
        }
    }

    let sigma = match (&report.central_failure, report.first_failure()) {
        (Some((b, z)), _) => Some(format!(
            "relation [1]·z = z·[1] fails in homology for the cycle z = {z} at {b}"
        )),
        (None, f) => f,
    };
    writeln!(
        out,
        "[1] central and Σ-structure: {}",
        if sigma.is_none() { "ok" } else { "FAIL" }
    )
    .unwrap();

    match sigma.or(first_bad) {
        None => {
            out.push_str("all checks pass\n");
            Ok(out)
        }
        Some(message) => Err(fail(out, message)),
    }
}

pub fn export_gstar(p: u32, max_dim: u32) -> Result<String, Failure> {
    let doc = PresentationDocument::from_algebra(&gstar_algebra(prime(p)?, max_dim));
    Ok(doc.to_json() + "\n")
}

pub struct ResolveArgs {
    pub max_s: u32,
    pub max_t: u32,
    pub out: PathBuf,
    pub render: Option<ChartFormat>,
    pub oracle: bool,
    pub max_basis: Option<usize>,
}

pub fn resolve(args: &ResolveArgs) -> Result<String, Failure> {
    let mut opts = ResolveOptions::new(args.max_s, args.max_t);
    opts.max_basis = args.max_basis;
    let res = resolve_with(&ModulePresentation::trivial(), opts);
    let chart = ext_chart(&res);
    write(&args.out, &chart_render(&chart, ChartFormat::Json))?;

    let mut out = format!(
        "wrote {} ({} classes)\n",
        args.out.display(),
        chart.classes.len()
    );
    if let Some(f) = res.frontier {
        writeln!(out, "frontier s = {} t = {}", f.s, f.t).unwrap();
        return Err(Failure::Bound {
            output: out,
            message: format!(
                "basis bound reached at (s, t) = ({}, {}); the chart holds every class below it",
                f.s, f.t
            ),
        });
    }
    match args.render {
        Some(ChartFormat::Svg) => {
            let path = args.out.with_extension("svg");
            write(&path, &chart_render(&chart, ChartFormat::Svg))?;
            writeln!(out, "wrote {}", path.display()).unwrap();
        }
        Some(format) => out.push_str(&chart_render(&chart, format)),
        None => {}
    }
    if args.oracle {
        let bar = match bar_oracle(args.max_s, args.max_t) {
            Ok(b) => b,
            Err(e @ ResolutionError::BarBoundExceeded { .. }) => {
                return Err(Failure::Bound {
                    output: out,
                    message: e.to_string(),
                })
            }
            Err(e) => return Err(usage(e)),
        };
        let mismatches = chart.dims().mismatches(&bar);
        if mismatches.is_empty() {
            out.push_str("AGREE\n");
        } else {
            for (s, t, a, b) in &mismatches {
                writeln!(out, "(s, t) = ({s}, {t}): resolution {a}, bar complex {b}").unwrap();
            }
            out.push_str("DISAGREE\n");
            return Err(Failure::Verify {
                output: out,
                message: format!(
                    "{} bidegrees disagree with the bar complex",
                    mismatches.len()
                ),
            });
        }
    }
    Ok(out)
}

pub fn dump(max_s: u32, max_t: u32, out: Option<&Path>) -> Result<String, Failure> {
    let d = resolve_trivial(&ModulePresentation::trivial(), max_s, max_t).dump();
    let json = serde_json::to_string_pretty(&d).expect("serializable") + "\n";
    match out {
        Some(path) => {
            write(path, &json)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(json),
    }
}

pub fn bstar_basis_cmd(degree: i64, dimension: i64, skeleton: &Path) -> Result<String, Failure> {
    let skel = BStarSkeleton::from_json(&read(skeleton)?).map_err(usage)?;
    skel.validate().map_err(usage)?;
    let e = skel.generator_set().map_err(usage)?;
    let words = bstar_basis(&skel, BiDegree::new(degree, dimension)).map_err(usage)?;
    let mut out = String::new();
    for w in &words {
        writeln!(out, "{}", w.display(&e)).unwrap();
    }
    writeln!(out, "count {}", words.len()).unwrap();
    Ok(out)
}

pub fn relations(max_degree: u32) -> Result<String, Failure> {
    let mut out = String::new();
    for r in adem_relation_set(max_degree) {
        writeln!(out, "{:<8} {:<8} {r}", r.label(), r.bidegree().to_string()).unwrap();
    }
    Ok(out)
}
