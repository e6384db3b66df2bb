use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use icelat::analysis::{
    check_3464_bounds, default_center_radius, default_fit_sizes, demarcation, entropy_bracket, fit_free_entropy, flip_ratio,
    heatmap, zero_signature_entropies, FreeEntropyEstimate,
};
use icelat::boundary::{alternating_edge_split, cycle_config, fill_in, from_signature, parse_signature, seed_config, SeedRecipe};
use icelat::config::{height, validate};
use icelat::dynamics::{run, Parallelism};
use icelat::exact::{entropy_of, enumerate_with, flip_graph, DEFAULT_CAP};
use icelat::io::{parse_edge_file, read_boundary, read_config, read_stats, write_config};
use icelat::{build_domain, BoundarySpec, Configuration, FlipFamily, HexDomain, IceError, LatticeKind, Schedule};

const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_CAPACITY: u8 = 4;
const EXIT_VIOLATION: u8 = 5;
const EXIT_INPUT: u8 = 6;

#[derive(Parser)]
#[command(name = "ice", version, about = "Ice-type vertex models on hexagonal domains")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a domain and print (or export) its structure.
    Build {
        #[command(flatten)]
        dom: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the ice rule on a configuration file.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Height per dual vertex of a legal configuration.
    Height {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the flip sampler.
    Sample(SampleArgs),
    /// Count (and optionally list) the legal fill-ins of a boundary.
    Enumerate {
        #[command(flatten)]
        dom: DomainArgs,
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected components of the flip graph under a restricted move set.
    Flipgraph {
        #[command(flatten)]
        dom: DomainArgs,
        #[command(flatten)]
        src: SourceArgs,
        /// Allowed move families, e.g. fe,fo (default: all on the lattice).
        #[arg(long)]
        families: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Exact entropy per arrow; with a quadrant seed also the entropy bracket.
    Entropy {
        #[command(flatten)]
        dom: DomainArgs,
        #[command(flatten)]
        src: SourceArgs,
        /// Free-model entropy per arrow for the upper bound (fitted when absent).
        #[arg(long)]
        free_entropy: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Render a stats table as a PGM image.
    Heatmap {
        #[arg(long)]
        stats: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 4.0)]
        ppu: f64,
        #[arg(long)]
        families: Option<String>,
        /// Plain-text P2 instead of binary P5.
        #[arg(long)]
        plain: bool,
    },
    /// Boundary height-change bounds and cycle density on the 3.4.6.4 lattice.
    Bounds {
        #[command(flatten)]
        dom: DomainArgs,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Triangle to 1-hexagon flip ratio near the centre.
    Ratio {
        #[arg(long)]
        stats: PathBuf,
        /// Centre radius in lattice units (default N/6).
        #[arg(long)]
        radius: Option<f64>,
    },
}

#[derive(Args, Clone)]
struct DomainArgs {
    #[arg(long)]
    lattice: Option<LatticeKind>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct SourceArgs {
    /// sig:+1,+1,0,-1,-1,0 | split | cycle | file:<path>
    #[arg(long)]
    boundary: Option<String>,
    /// Repeatable: an integer sets the random seed, a recipe name
    /// (fig4a..fig4d, allcycles, alternating, quadrant:<x>, lines:<h,h,h>)
    /// sets the initial configuration.
    #[arg(long)]
    seed: Vec<String>,
    /// Initial configuration file (ICECFG).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    dom: DomainArgs,
    #[command(flatten)]
    src: SourceArgs,
    /// Comma list of move families, one pass each per sweep.
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    burnin: u64,
    #[arg(long, default_value_t = 1000)]
    window: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    heatmap: Option<PathBuf>,
    #[arg(long, default_value_t = 4.0)]
    ppu: f64,
    #[arg(long)]
    plain: bool,
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Write the final configuration (ICECFG).
    #[arg(long = "final")]
    final_config: Option<PathBuf>,
}

/// Plain-text key/value record written next to every output file.
struct Manifest(Vec<(String, String)>);

impl Manifest {
    fn new(cmd: &str) -> Self {
        Manifest(vec![("tool".into(), format!("ice {}", env!("CARGO_PKG_VERSION"))), ("command".into(), cmd.into())])
    }

    fn set(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.0.push((k.into(), v.to_string()));
        self
    }

    /// Writes each output and `<output>.manifest` beside it. Only file names
    /// enter the manifest so identical runs in different directories agree.
    fn write_outputs(&self, outputs: &[(&Path, Vec<u8>)]) -> anyhow::Result<()> {
        let mut text = String::new();
        for (k, v) in &self.0 {
            writeln!(text, "{k} = {v}")?;
        }
        let names: Vec<String> = outputs.iter().map(|(p, _)| p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into())).collect();
        writeln!(text, "outputs = {}", names.join(","))?;
        for (path, bytes) in outputs {
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
            let mut m = path.as_os_str().to_owned();
            m.push(".manifest");
            fs::write(&m, &text).with_context(|| format!("writing {}", PathBuf::from(&m).display()))?;
        }
        Ok(())
    }
}

struct Source {
    boundary: BoundarySpec,
    initial: Option<Configuration>,
    rng_seed: u64,
    describe: String,
    recipe: Option<SeedRecipe>,
}

fn domain_of(dom: &DomainArgs) -> anyhow::Result<HexDomain> {
    let kind = dom.lattice.ok_or_else(|| usage("--lattice is required"))?;
    let n = dom.n.ok_or_else(|| usage("--n is required"))?;
    Ok(build_domain(kind, n)?)
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow!(Input(format!("cannot read {}: {e}", path.display()))))
}

/// Domain named by a file header, checked against any explicit flags.
fn domain_from_file(path: &Path, dom: Option<&DomainArgs>) -> anyhow::Result<(HexDomain, String)> {
    let text = read_text(path)?;
    let f = parse_edge_file(&text)?;
    if let Some(d) = dom {
        if d.lattice.is_some_and(|k| k != f.kind) || d.n.is_some_and(|n| n != f.n) {
            bail!(usage(format!("{} is for {} N={}, which disagrees with the flags", path.display(), f.kind, f.n)));
        }
    }
    Ok((build_domain(f.kind, f.n)?, text))
}

fn resolve(dom: &DomainArgs, src: &SourceArgs) -> anyhow::Result<(HexDomain, Source)> {
    let domain = match (&src.config, dom.lattice) {
        (Some(p), None) => domain_from_file(p, Some(dom))?.0,
        _ => domain_of(dom)?,
    };
    let mut rng_seed = 0u64;
    let mut recipe = None;
    for s in &src.seed {
        match s.parse::<u64>() {
            Ok(v) => rng_seed = v,
            Err(_) => recipe = Some(s.parse::<SeedRecipe>()?),
        }
    }
    let mut initial = match (&recipe, &src.config) {
        (Some(_), Some(_)) => bail!(usage("give either a seed recipe or --config, not both")),
        (Some(r), None) => Some(seed_config(&domain, r)?),
        (None, Some(p)) => Some(read_config(&read_text(p)?, &domain)?),
        (None, None) => None,
    };
    let mut describe = Vec::new();
    let boundary = match src.boundary.as_deref() {
        Some(b) => {
            describe.push(format!("boundary {b}"));
            let spec = if let Some(sig) = b.strip_prefix("sig:") {
                from_signature(&domain, parse_signature(sig)?)?
            } else if b == "split" {
                alternating_edge_split(&domain)?
            } else if b == "cycle" {
                let c = cycle_config(&domain)?;
                initial.get_or_insert(c).boundary(&domain)
            } else if let Some(p) = b.strip_prefix("file:") {
                read_boundary(&read_text(Path::new(p))?, &domain)?
            } else {
                bail!(usage(format!("unknown boundary `{b}` (sig:..., split, cycle, file:<path>)")));
            };
            if let Some(c) = &initial {
                if !c.agrees_with(&domain, &spec) {
                    bail!(usage("the initial configuration does not match the boundary"));
                }
            }
            spec
        }
        None => match &initial {
            Some(c) => c.boundary(&domain),
            None => bail!(usage("give --boundary, a seed recipe or --config")),
        },
    };
    if let Some(r) = &recipe {
        describe.push(format!("seed {r}"));
    }
    if let Some(p) = &src.config {
        describe.push(format!("config {}", p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into())));
    }
    Ok((domain, Source { boundary, initial, rng_seed, describe: describe.join("; "), recipe }))
}

fn parse_families(kind: LatticeKind, s: Option<&str>) -> anyhow::Result<Vec<FlipFamily>> {
    match s {
        None => Ok(kind.families().to_vec()),
        Some(s) => {
            let fams = s.split(',').map(|t| t.trim().parse::<FlipFamily>()).collect::<Result<Vec<_>, _>>()?;
            if let Some(f) = fams.iter().find(|f| !kind.supports(**f)) {
                bail!(usage(format!("family {f} does not occur on the {kind} lattice")));
            }
            Ok(fams)
        }
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce(Parallelism) -> T + Send) -> anyhow::Result<T> {
    if threads == 0 {
        bail!(usage("--threads must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let par = if threads > 1 { Parallelism::Rayon } else { Parallelism::Sequential };
    Ok(pool.install(|| f(par)))
}

fn domain_manifest(m: &mut Manifest, d: &HexDomain) {
    m.set("lattice", d.kind).set("n", d.n);
}

fn cmd_build(dom: &DomainArgs, out: Option<&Path>) -> anyhow::Result<()> {
    let d = domain_of(dom)?;
    println!(
        "lattice {} n {} vertices {} interior_vertices {} edges {} boundary_arrows {} faces {}",
        d.kind,
        d.n,
        d.vertices.len(),
        d.interior_vertices.len(),
        d.edge_count(),
        d.boundary_count(),
        d.faces.len()
    );
    if let Some(p) = out {
        let mut m = Manifest::new("build");
        domain_manifest(&mut m, &d);
        m.write_outputs(&[(p, d.export().into_bytes())])?;
    }
    Ok(())
}

fn cmd_validate(path: &Path) -> anyhow::Result<()> {
    let (d, text) = domain_from_file(path, None)?;
    let c = read_config(&text, &d)?;
    let bad = validate(&d, &c)?;
    if bad.is_empty() {
        println!("OK");
        Ok(())
    } else {
        let list: Vec<String> = bad.iter().take(20).map(|v| v.to_string()).collect();
        bail!(Violation(format!("ice rule fails at {} vertices: {}", bad.len(), list.join(" "))))
    }
}

fn cmd_height(path: &Path, out: Option<&Path>) -> anyhow::Result<()> {
    let (d, text) = domain_from_file(path, None)?;
    let c = read_config(&text, &d)?;
    let bad = validate(&d, &c)?;
    if !bad.is_empty() {
        bail!(Violation(format!("height is undefined: ice rule fails at {} vertices", bad.len())));
    }
    let h = height(&d, &c)?;
    let mut s = String::from("# dual face x y height\n");
    for (i, dv) in d.dual.vertices.iter().enumerate() {
        let face = dv.face.map_or_else(|| "-".to_string(), |f| f.to_string());
        writeln!(s, "{i} {face} {:.6} {:.6} {}", dv.centroid[0], dv.centroid[1], h.get(i))?;
    }
    match out {
        Some(p) => {
            let mut m = Manifest::new("height");
            domain_manifest(&mut m, &d);
            m.set("config", path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into()));
            m.write_outputs(&[(p, s.into_bytes())])?;
        }
        None => print!("{s}"),
    }
    Ok(())
}

fn cmd_sample(a: &SampleArgs) -> anyhow::Result<()> {
    let (d, src) = resolve(&a.dom, &a.src)?;
    let schedule = match &a.schedule {
        Some(s) => Schedule::parse(d.kind, s, a.p)?,
        None => Schedule::new(d.kind, Schedule::default_for(d.kind).passes, a.p)?,
    };
    let initial = match &src.initial {
        Some(c) => c.clone(),
        None => fill_in(&d, &src.boundary, None)?,
    };
    let (fin, stats) =
        with_threads(a.threads, |par| run(&d, &src.boundary, &initial, &schedule, a.burnin, a.window, src.rng_seed, par))??;
    let report = demarcation(&stats, &d)?;
    println!(
        "sweeps {} window {}..{} flips {} frozen_faces {} temperate_faces {} frozen_fraction {:.6}",
        stats.total_sweeps,
        stats.window_start,
        stats.window_end,
        stats.total(),
        report.frozen.len(),
        report.temperate.len(),
        report.frozen_fraction
    );
    println!(
        "corner_frozen {}",
        report.corner_frozen.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    );
    let mut outputs: Vec<(&Path, Vec<u8>)> = Vec::new();
    if let Some(p) = &a.heatmap {
        outputs.push((p, heatmap(&stats, &d, a.ppu, None)?.to_pgm(!a.plain)));
    }
    if let Some(p) = &a.stats {
        outputs.push((p, stats.export(&d).into_bytes()));
    }
    if let Some(p) = &a.final_config {
        outputs.push((p, write_config(&fin).into_bytes()));
    }
    let mut m = Manifest::new("sample");
    domain_manifest(&mut m, &d);
    m.set("source", &src.describe)
        .set("schedule", schedule.codes())
        .set("p", schedule.flip_probability)
        .set("seed", src.rng_seed)
        .set("burnin", a.burnin)
        .set("window", a.window);
    if a.heatmap.is_some() {
        m.set("ppu", a.ppu).set("pgm", if a.plain { "P2" } else { "P5" });
    }
    m.write_outputs(&outputs)
}

fn cmd_enumerate(dom: &DomainArgs, src: &SourceArgs, cap: usize, threads: usize, out: Option<&Path>) -> anyhow::Result<()> {
    let (d, s) = resolve(dom, src)?;
    let r = with_threads(threads, |par| enumerate_with(&d, &s.boundary, cap, par))??;
    println!("count {}", r.count);
    if let Some(p) = out {
        if r.truncated {
            bail!(IceError::Capacity(format!("{} fill-ins exceed the storage cap {cap}", r.count)));
        }
        let mut m = Manifest::new("enumerate");
        domain_manifest(&mut m, &d);
        m.set("source", &s.describe).set("cap", cap);
        m.write_outputs(&[(p, r.export().into_bytes())])?;
    }
    Ok(())
}

fn cmd_flipgraph(dom: &DomainArgs, src: &SourceArgs, families: Option<&str>, cap: usize, threads: usize) -> anyhow::Result<()> {
    let (d, s) = resolve(dom, src)?;
    let fams = parse_families(d.kind, families)?;
    let g = with_threads(threads, |par| -> anyhow::Result<_> {
        let r = enumerate_with(&d, &s.boundary, cap, par)?;
        if r.truncated {
            bail!(IceError::Capacity(format!("{} fill-ins exceed the storage cap {cap}", r.count)));
        }
        Ok(flip_graph(&r, &d, &fams)?)
    })??;
    let codes: Vec<&str> = fams.iter().map(|f| f.code()).collect();
    println!("families {} nodes {} edges {} components {}", codes.join(","), g.nodes, g.edge_count(), g.component_count());
    Ok(())
}

fn cmd_entropy(dom: &DomainArgs, src: &SourceArgs, free: Option<f64>, threads: usize) -> anyhow::Result<()> {
    let (d, s) = resolve(dom, src)?;
    let r = with_threads(threads, |par| enumerate_with(&d, &s.boundary, 0, par))??;
    if r.count == 0 {
        bail!(IceError::Infeasible("boundary has no legal fill-in".into()));
    }
    let h = entropy_of(r.count, d.edge_count())?;
    println!("count {} arrows {} entropy {:.9}", r.count, d.edge_count(), h);
    if let Some(SeedRecipe::QuadrantCross(x)) = s.recipe {
        let est = match free {
            Some(v) => FreeEntropyEstimate::configured(v)?,
            None => fit_free_entropy(&zero_signature_entropies(d.kind, default_fit_sizes(d.kind))?)?,
        };
        let b = entropy_bracket(&d, x, est)?;
        println!(
            "bracket lower {:.9} upper {:.9} free_entropy {:.9} ({:?}) right_triangles {} off_frozen_arrows {} within {}",
            b.lower,
            b.upper,
            est.value,
            est.source,
            b.right_triangles,
            b.off_frozen_arrows,
            b.lower <= h + 1e-12 && h <= b.upper + 1e-12
        );
    }
    Ok(())
}

fn cmd_heatmap(stats: &Path, out: &Path, ppu: f64, families: Option<&str>, plain: bool) -> anyhow::Result<()> {
    let (kind, n, st) = read_stats(&read_text(stats)?)?;
    let d = build_domain(kind, n)?;
    if st.per_face.len() != d.faces.len() {
        bail!(Input(format!("stats list {} faces, the domain has {}", st.per_face.len(), d.faces.len())));
    }
    let fams = families.map(|f| parse_families(kind, Some(f))).transpose()?;
    let img = heatmap(&st, &d, ppu, fams.as_deref())?;
    let mut m = Manifest::new("heatmap");
    domain_manifest(&mut m, &d);
    m.set("stats", stats.file_name().map_or_else(String::new, |n| n.to_string_lossy().into()))
        .set("seed", st.seed)
        .set("window", format!("{}..{}", st.window_start, st.window_end))
        .set("ppu", ppu)
        .set("families", families.unwrap_or("all"))
        .set("pgm", if plain { "P2" } else { "P5" });
    m.write_outputs(&[(out, img.to_pgm(!plain))])
}

fn cmd_bounds(dom: &DomainArgs, src: &SourceArgs) -> anyhow::Result<()> {
    let kind = dom.lattice.or(match &src.config {
        Some(p) => Some(parse_edge_file(&read_text(p)?)?.kind),
        None => None,
    });
    if kind.is_some_and(|k| k != LatticeKind::T3464) {
        bail!(usage("bounds apply to the 3.4.6.4 lattice only"));
    }
    let (d, s) = resolve(dom, src)?;
    let conflicts = s.boundary.local_conflicts(&d);
    if !conflicts.is_empty() {
        bail!(IceError::Infeasible(format!("boundary arrows alone violate the ice rule at vertices {conflicts:?}")));
    }
    let config = match &s.initial {
        Some(c) => {
            let bad = validate(&d, c)?;
            if !bad.is_empty() {
                bail!(Violation(format!("configuration violates the ice rule at {} vertices", bad.len())));
            }
            Some(c)
        }
        None => None,
    };
    let r = check_3464_bounds(&d, &s.boundary, config)?;
    println!("blocks {} periodic8 {} long {} worst_ratio {:.6}", r.blocks_checked, r.periodic_blocks, r.long_blocks, r.worst_ratio);
    println!("tilt_ceiling {:.6}", r.tilt_ceiling);
    for v in &r.violations {
        println!("violation side {} start {} len {} dh {} bound {:.4}", v.side, v.start, v.len, v.dh, v.bound);
    }
    if let Some((k, t)) = r.density {
        println!("density {k}/{t} = {:.6} (>= 1/7: {})", k as f64 / t.max(1) as f64, 7 * k >= t);
    }
    if !r.holds() {
        bail!(Violation("a 3.4.6.4 bound is violated".into()));
    }
    Ok(())
}

fn cmd_ratio(stats: &Path, radius: Option<f64>) -> anyhow::Result<()> {
    let (kind, n, st) = read_stats(&read_text(stats)?)?;
    let d = build_domain(kind, n)?;
    if st.per_face.len() != d.faces.len() {
        bail!(Input(format!("stats list {} faces, the domain has {}", st.per_face.len(), d.faces.len())));
    }
    let r = radius.unwrap_or_else(|| default_center_radius(&d));
    println!("ratio {:.6} radius {r:.3}", flip_ratio(&st, &d, r)?);
    Ok(())
}

#[derive(Debug)]
struct Usage(String);
#[derive(Debug)]
struct Violation(String);
#[derive(Debug)]
struct Input(String);

macro_rules! message_error {
    ($($t:ident),*) => {$(
        impl std::fmt::Display for $t {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(&self.0)
            }
        }
        impl std::error::Error for $t {}
    )*};
}
message_error!(Usage, Violation, Input);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Usage>() {
        return EXIT_USAGE;
    }
    if e.is::<Violation>() {
        return EXIT_VIOLATION;
    }
    if e.is::<Input>() {
        return EXIT_INPUT;
    }
    match e.downcast_ref::<IceError>() {
        Some(IceError::Infeasible(_) | IceError::NoMaximalTilt { .. }) => EXIT_INFEASIBLE,
        Some(IceError::Capacity(_)) => EXIT_CAPACITY,
        Some(IceError::Parse { .. }) => EXIT_INPUT,
        Some(IceError::InvalidArgument(_)) => EXIT_USAGE,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Build { dom, out } => cmd_build(dom, out.as_deref()),
        Cmd::Validate { config } => cmd_validate(config),
        Cmd::Height { config, out } => cmd_height(config, out.as_deref()),
        Cmd::Sample(a) => cmd_sample(a),
        Cmd::Enumerate { dom, src, cap, threads, out } => cmd_enumerate(dom, src, *cap, *threads, out.as_deref()),
        Cmd::Flipgraph { dom, src, families, cap, threads } => cmd_flipgraph(dom, src, families.as_deref(), *cap, *threads),
        Cmd::Entropy { dom, src, free_entropy, threads } => cmd_entropy(dom, src, *free_entropy, *threads),
        Cmd::Heatmap { stats, out, ppu, families, plain } => cmd_heatmap(stats, out, *ppu, families.as_deref(), *plain),
        Cmd::Bounds { dom, src } => cmd_bounds(dom, src),
        Cmd::Ratio { stats, radius } => cmd_ratio(stats, *radius),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
