use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kh::{load_inputs, metadata, to_json_lines, to_text, Input};
use khovanov::algebra::Ring;
use khovanov::cube::Theory;
use khovanov::diagram::Diagram;
use khovanov::homology::{khovanov, universal_coefficient_check};
use khovanov::lee::{lee_homology, s_invariant, slice_bound, Variant};
use khovanov::oracle::{graded_euler, jones_skein, les_dimension_check, mirror_check, reduced_factor_check, width_and_tb};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "kh", version, about = "Khovanov homology of knots and links from PD codes")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Source {
    /// A PD code such as `X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)`, optionally
    /// followed by `@<edge>` for a basepoint.
    #[arg(long)]
    pd: Option<String>,
    /// A table file with `name | pd | signature | alternating` rows.
    #[arg(long)]
    table: Option<String>,
    /// Edge carrying the basepoint for reduced theories (default: 1).
    #[arg(long)]
    basepoint: Option<u32>,
    #[arg(long, value_enum, default_value_t = Out::Text)]
    out: Out,
    /// Refuse diagrams with more crossings than this.
    #[arg(long, default_value_t = 16)]
    max_crossings: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Euler,
    Les,
    Mirror,
    Factor,
    Ucf,
    Lee,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bigraded homology (kh, odd) or the associated graded of the
    /// filtered theories (lee, barnatan).
    Compute {
        #[command(flatten)]
        src: Source,
        /// kh, odd, lee or barnatan.
        #[arg(long, default_value = "kh")]
        theory: String,
        /// f2, fp:<p>, q or z.
        #[arg(long, default_value = "q")]
        ring: String,
        #[arg(long)]
        reduced: bool,
    },
    /// Run consistency checks and print one PASS or FAIL line per check.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long = "check", value_enum, value_delimiter = ',', default_value = "euler")]
        checks: Vec<Check>,
    },
    /// The s-invariant of each knot.
    SInvariant {
        #[command(flatten)]
        src: Source,
        /// lee or barnatan.
        #[arg(long, default_value = "lee")]
        theory: String,
        /// Defaults to q for lee and f2 for barnatan.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Jones polynomial by state sum, the Euler characteristic of Kh over
    /// Q, reduced width and the Thurston-Bennequin bound.
    Oracle {
        #[command(flatten)]
        src: Source,
    },
}

/// Result of one diagram: text to print, and whether it counts as failed.
struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failed: false }
    }
}

fn based(d: Diagram, reduced: bool) -> Result<Diagram> {
    if reduced && d.basepoint().is_none() {
        return Ok(d.with_basepoint(Some(1))?);
    }
    Ok(d)
}

fn compute(input: &Input, src: &Source, theory: Theory, ring: Ring, reduced: bool) -> Result<Outcome> {
    let d = based(input.diagram(src.basepoint, src.max_crossings)?, reduced)?;
    let g = if theory.is_filtered() {
        if reduced {
            bail!("no reduced version of {theory}");
        }
        let v = if theory == Theory::LEE { Variant::Lee } else { Variant::BarNatan };
        lee_homology(&d, v, ring)?.profile.associated_graded()
    } else {
        khovanov(&d, theory, ring, reduced)?
    };
    let meta = metadata(&input.name, &d, theory, ring, reduced);
    Ok(Outcome::ok(match src.out {
        Out::Text => to_text(&meta, &g, ring),
        Out::JsonLines => to_json_lines(&meta, &g),
    }))
}

fn verify(input: &Input, src: &Source, checks: &[Check]) -> Result<Outcome> {
    let d = input.diagram(src.basepoint, src.max_crossings)?;
    let all = checks.contains(&Check::All);
    let wanted = |c: Check| all || checks.contains(&c);
    let mut results: Vec<(&str, bool)> = Vec::new();
    if wanted(Check::Euler) {
        let g = khovanov(&d, Theory::Ordinary, Ring::Q, false)?;
        results.push(("euler", graded_euler(&g) == jones_skein(&d)));
    }
    if wanted(Check::Les) {
        let mut ok = true;
        for c in 0..d.crossing_count() {
            ok &= les_dimension_check(&d, c)?;
        }
        results.push(("les", ok));
    }
    if wanted(Check::Mirror) {
        results.push(("mirror", mirror_check(&d, Ring::F2)? && mirror_check(&d, Ring::Q)?));
    }
    if wanted(Check::Factor) {
        results.push(("factor", reduced_factor_check(&d)?));
    }
    if wanted(Check::Ucf) {
        results.push(("ucf", universal_coefficient_check(&d)?));
    }
    if wanted(Check::Lee) {
        let h = lee_homology(&d, Variant::Lee, Ring::Q)?;
        results.push(("lee", h.total_dim() == 1 << d.component_count()));
    }
    let failed = results.iter().any(|r| !r.1);
    let text = match src.out {
        Out::Text => results
            .iter()
            .map(|(c, ok)| format!("{} {} {}\n", if *ok { "PASS" } else { "FAIL" }, input.name, c))
            .collect(),
        Out::JsonLines => results
            .iter()
            .map(|(c, ok)| format!("{}\n", json!({ "diagram": input.name, "check": c, "pass": ok })))
            .collect(),
    };
    Ok(Outcome { text, failed })
}

fn s_command(input: &Input, src: &Source, variant: Variant, ring: Ring) -> Result<Outcome> {
    let d = input.diagram(src.basepoint, src.max_crossings)?;
    let s = s_invariant(&d, variant, ring)?;
    let bound = slice_bound(s);
    Ok(Outcome::ok(match src.out {
        Out::Text => format!("{}: s = {s} (slice genus >= {bound})\n", input.name),
        Out::JsonLines => format!("{}\n", json!({ "diagram": input.name, "s": s, "slice_genus_bound": bound, "ring": ring.to_string() })),
    }))
}

fn oracle(input: &Input, src: &Source) -> Result<Outcome> {
    let d = input.diagram(src.basepoint, src.max_crossings)?;
    let jones = jones_skein(&d);
    let kh = khovanov(&d, Theory::Ordinary, Ring::Q, false)?;
    let euler = graded_euler(&kh);
    let reduced = khovanov(&based(d.clone(), true)?, Theory::Ordinary, Ring::F2, true)?;
    let (width, _) = width_and_tb(&reduced)?;
    let (_, tb) = width_and_tb(&kh)?;
    let agree = jones == euler;
    let text = match src.out {
        Out::Text => format!(
            "{}: jones {jones}\n{}: euler {euler} ({})\n{}: reduced width {width}, tb <= {tb}\n",
            input.name,
            input.name,
            if agree { "agrees" } else { "DISAGREES" },
            input.name
        ),
        Out::JsonLines => format!(
            "{}\n",
            json!({ "diagram": input.name, "jones": jones.to_string(), "euler": euler.to_string(), "agree": agree, "width": width, "tb_bound": tb })
        ),
    };
    Ok(Outcome { text, failed: !agree })
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let src = match &cli.cmd {
        Cmd::Compute { src, .. } | Cmd::Verify { src, .. } | Cmd::SInvariant { src, .. } | Cmd::Oracle { src } => src.clone(),
    };
    let inputs = load_inputs(src.pd.as_deref(), src.table.as_deref())?;
    let job: Box<dyn Fn(&Input) -> Result<Outcome> + Sync> = match cli.cmd {
        Cmd::Compute { theory, ring, reduced, .. } => {
            let (theory, ring) = (Theory::parse(&theory)?, Ring::parse(&ring)?);
            Box::new(move |i| compute(i, &src, theory, ring, reduced))
        }
        Cmd::Verify { checks, .. } => Box::new(move |i| verify(i, &src, &checks)),
        Cmd::SInvariant { theory, ring, .. } => {
            let variant = match Theory::parse(&theory)? {
                Theory::LEE => Variant::Lee,
                Theory::BAR_NATAN => Variant::BarNatan,
                other => bail!("s needs lee or barnatan, not {other}"),
            };
            let default = if variant == Variant::Lee { "q" } else { "f2" };
            let ring = Ring::parse(ring.as_deref().unwrap_or(default))?;
            Box::new(move |i| s_command(i, &src, variant, ring))
        }
        Cmd::Oracle { .. } => Box::new(move |i| oracle(i, &src)),
    };
    let outcomes: Vec<Result<Outcome>> = inputs.par_iter().map(|i| job(i).with_context(|| format!("diagram {}", i.name))).collect();
    let mut ok = true;
    for o in outcomes {
        match o {
            Ok(o) => {
                print!("{}", o.text);
                ok &= !o.failed;
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
