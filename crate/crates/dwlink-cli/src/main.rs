//! `dwlink` — exact link invariants for the rank-49 twisted doubles of
//! `Z_11 ⋊ Z_5` and the weak/strong distinguishability classifier.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dwlink::anyon::{twist_exponent, AnyonLabel, Category};
use dwlink::catalog::{builtin_catalog, load_catalog, LinkRecord};
use dwlink::classify::{classify_record, report_tables, verify_observations, Engine};
use dwlink::cocycle::Cocycle;
use dwlink::group::{Group, GroupSpec};
use dwlink::modular::{
    fusion_blocks, modular_permutations, verlinde_fusion, ModularData, ModularPermutation,
    TRespectingCandidates,
};
use dwlink::quandle::{
    count_colorings_bruteforce, count_colorings_linear, theorem22_value, AlexanderQuandle,
};
use dwlink::rep::{
    closure_invariant, verify_braid_relation, verify_markov_conjugation, ComponentLabeling,
    LinkInvariantSet,
};
use dwlink::store::{tensor_doc, ResultStore};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dwlink", version, about = "Framed link invariants beyond modular data")]
struct Cli {
    /// Odd prime q of G = Z_q x| Z_p
    #[arg(long, global = true, default_value_t = 11)]
    q: u32,
    /// Prime p dividing q - 1
    #[arg(long, global = true, default_value_t = 5)]
    p: u32,
    /// Action parameter n (multiplicative order p mod q)
    #[arg(long, global = true, default_value_t = 3)]
    n: u32,
    /// Catalog file (tab-separated); defaults to the built-in catalog
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Result-store directory for cached invariant tensors
    #[arg(long, global = true)]
    store: Option<PathBuf>,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant tensor of one link at one cocycle parameter
    Invariants {
        #[arg(long)]
        link: String,
        #[arg(long)]
        u: u32,
        /// Comma-separated component labels (e.g. B_1_0,B_2_3); omits the full sweep
        #[arg(long)]
        labels: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Modular permutations between two cocycle parameters
    Modperms {
        /// Pair of parameters, e.g. 1,4
        #[arg(long)]
        pair: String,
        /// Print the permutations as a label table, one row per source label
        #[arg(long)]
        emit_table: bool,
    },
    /// Classify the whole catalog and print the result tables
    Classify {
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Quandle coloring counts of one link (both backends)
    Quandle {
        #[arg(long)]
        link: String,
        /// Block index k = 1..p-1
        #[arg(long)]
        k: u32,
    },
    /// Exhaustive/sampled self-checks; exits 2 on any mismatch
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        u: Option<u32>,
    },
    /// Reference tables (anyon data, classification tables)
    Report {
        /// Emit the 49-row anyon table (label, d, twist) for --u
        #[arg(long)]
        anyons: bool,
        /// Emit the classification tables
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        u: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn spec_of(cli: &Cli) -> Result<GroupSpec> {
    GroupSpec::new(cli.q, cli.p, cli.n).map_err(|e| anyhow!(e))
}

fn catalog_of(cli: &Cli) -> Result<Vec<LinkRecord>> {
    match &cli.catalog {
        Some(path) => load_catalog(path).with_context(|| format!("loading {}", path.display())),
        None => Ok(builtin_catalog()),
    }
}

fn find_record<'a>(records: &'a [LinkRecord], id: &str) -> Result<&'a LinkRecord> {
    records
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| anyhow!("link {id:?} is not in the catalog"))
}

fn store_of(cli: &Cli, spec: &GroupSpec) -> Option<ResultStore> {
    cli.store.as_ref().map(|dir| ResultStore::new(dir, spec))
}

fn run(cli: &Cli) -> Result<bool> {
    let spec = spec_of(cli)?;
    match &cli.command {
        Command::Invariants {
            link,
            u,
            labels,
            format,
        } => cmd_invariants(cli, spec, link, *u, labels.as_deref(), *format),
        Command::Modperms { pair, emit_table } => cmd_modperms(spec, pair, *emit_table),
        Command::Classify { format } => cmd_classify(cli, spec, *format),
        Command::Quandle { link, k } => cmd_quandle(cli, spec, link, *k),
        Command::Verify { suite, u } => cmd_verify(cli, spec, suite, *u),
        Command::Report { anyons, tables, u } => cmd_report(cli, spec, *anyons, *tables, *u),
    }
}

fn cmd_invariants(
    cli: &Cli,
    spec: GroupSpec,
    link: &str,
    u: u32,
    labels: Option<&str>,
    format: Format,
) -> Result<bool> {
    let records = catalog_of(cli)?;
    let record = find_record(&records, link)?;
    let braid = record.braid();
    let cat = Category::build(spec, u)?;
    let label_names: Vec<AnyonLabel> = cat.anyons().iter().map(|a| a.label).collect();

    if let Some(csv) = labels {
        let chosen: Vec<usize> = csv
            .split(',')
            .map(|s| {
                let l: AnyonLabel = s.trim().parse()?;
                cat.index_of(l)
                    .ok_or_else(|| anyhow!("label {l} does not exist"))
            })
            .collect::<Result<_>>()?;
        let labeling = ComponentLabeling {
            per_component: chosen,
        };
        let strands = labeling.strand_labels(&braid)?;
        let value = closure_invariant(&cat, &braid, &strands)?;
        let canon = cat.ring().canonicalize(&value);
        let (re, im) = cat.ring().approx_canonical(&canon);
        match format {
            Format::Json => {
                let coeffs: std::collections::BTreeMap<u32, i64> =
                    canon.terms().iter().copied().collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "link": record.id, "u": u, "labels": csv.split(',').map(str::trim).collect::<Vec<_>>(),
                        "coeffs": coeffs, "approx": [re, im]
                    })
                );
            }
            Format::Tsv => println!("{}\t{}\t{re:.15e}\t{im:.15e}", csv, render_terms(&canon)),
        }
        return Ok(true);
    }

    let tensor = dwlink::rep::invariant_tensor(&cat, &record.id, &braid)?;
    let doc = tensor_doc(
        &tensor,
        braid.writhe(),
        &label_names,
        cat.ring(),
        &dwlink::store::engine_key(&spec),
    );
    if let Some(store) = store_of(cli, &spec) {
        store.save_doc(&doc)?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string(&doc)?),
        Format::Tsv => {
            for e in &doc.entries {
                let coeffs: Vec<String> =
                    e.coeffs.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                println!(
                    "{}\t{}\t{:.15e}\t{:.15e}",
                    e.labels.join(","),
                    coeffs.join(";"),
                    e.approx[0],
                    e.approx[1]
                );
            }
        }
    }
    Ok(true)
}

fn render_terms(c: &dwlink::CanonicalCyclo) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.terms()
        .iter()
        .map(|(e, v)| format!("{e}:{v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn modular_pipeline(
    spec: GroupSpec,
    us: &[u32],
) -> Result<Vec<(Category, ModularData, Vec<Vec<usize>>)>> {
    let group = Group::new(spec);
    let ring = std::sync::Arc::new(dwlink::CycloRing::new((spec.q * spec.p * spec.p) as usize));
    us.iter()
        .map(|&u| {
            let cat = Category::build_with_ring(&group, u, std::sync::Arc::clone(&ring))?;
            let md = ModularData::compute(&cat);
            md.verify_structure(cat.ring())?;
            let fusion = verlinde_fusion(&md, cat.ring())?;
            let blocks = fusion_blocks(&fusion, &md.dims, spec.q, spec.p as usize)?;
            Ok((cat, md, blocks))
        })
        .collect()
}

fn cmd_modperms(spec: GroupSpec, pair: &str, emit_table: bool) -> Result<bool> {
    let (i, j) = pair
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
        .ok_or_else(|| anyhow!("--pair expects i,j (e.g. 1,4)"))?;
    if i >= spec.p || j >= spec.p {
        bail!("parameters must be < p = {}", spec.p);
    }
    let built = modular_pipeline(spec, &[i, j])?;
    let (src, tgt) = (&built[0], &built[1]);
    let cands = TRespectingCandidates::build(&src.1, &tgt.1, &src.2, &tgt.2);
    let perms = modular_permutations(&src.1, &tgt.1, &src.2, &tgt.2)?;
    println!(
        "# u={i} -> u={j}: {} T-respecting candidates, {} modular permutations",
        cands.count(),
        perms.len()
    );
    let labels: Vec<AnyonLabel> = src.0.anyons().iter().map(|a| a.label).collect();
    if emit_table {
        print!("{}", permutation_table(&labels, &perms));
    } else {
        for (pi, perm) in perms.iter().enumerate() {
            let images: Vec<String> = (0..labels.len())
                .map(|a| labels[perm.apply(a)].to_string())
                .collect();
            println!("{}\t{}", pi + 1, images.join(" "));
        }
    }
    Ok(true)
}

fn permutation_table(labels: &[AnyonLabel], perms: &[ModularPermutation]) -> String {
    let mut out = String::new();
    let mut header = vec!["label".to_string()];
    header.extend((1..=perms.len()).map(|i| format!("rho_{i}")));
    out.push_str(&header.join("\t"));
    out.push('\n');
    for (a, l) in labels.iter().enumerate() {
        let mut row = vec![l.to_string()];
        row.extend(perms.iter().map(|p| labels[p.apply(a)].to_string()));
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn link_set(
    engine: &Engine,
    record: &LinkRecord,
    store: Option<&ResultStore>,
) -> Result<LinkInvariantSet> {
    if let Some(store) = store {
        if let Some(set) = store.load_set(&record.id, engine.parameters()) {
            return Ok(set);
        }
    }
    let set = engine.link_invariants(record)?;
    if let Some(store) = store {
        store.save_set(
            &set,
            &engine.labels(),
            engine.categories[0].ring(),
        )?;
    }
    Ok(set)
}

fn cmd_classify(cli: &Cli, spec: GroupSpec, format: Format) -> Result<bool> {
    let records = catalog_of(cli)?;
    let store = store_of(cli, &spec);
    let engine = Engine::build(spec)?;
    eprintln!(
        "# engine ready: {} categories, shared pairs {:?}",
        engine.parameters(),
        engine.shared_pairs
    );
    let mut rows = Vec::with_capacity(records.len());
    for record in &records {
        let set = link_set(&engine, record, store.as_ref())?;
        let result = classify_record(&engine, &set);
        eprintln!(
            "# {}\tweak={}\tstrong={}",
            record.id, result.weak, result.strong
        );
        rows.push((record.clone(), result));
    }
    match format {
        Format::Tsv => print!("{}", report_tables(&rows)),
        Format::Json => {
            let json: Vec<_> = rows
                .iter()
                .map(|(r, c)| {
                    serde_json::json!({
                        "id": r.id,
                        "braidword": r.braidword,
                        "components": r.components,
                        "weak": c.weak,
                        "strong": c.strong,
                        "all_equal": c.all_equal,
                        "pair_compatible": c.pair_compatible.iter()
                            .map(|((i, j), ok)| serde_json::json!({"pair": [i, j], "compatible": ok}))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
    }
    let strong: Vec<&str> = rows
        .iter()
        .filter(|(_, c)| c.strong)
        .map(|(r, _)| r.id.as_str())
        .collect();
    let weak_only: Vec<&str> = rows
        .iter()
        .filter(|(_, c)| c.weak && !c.strong)
        .map(|(r, _)| r.id.as_str())
        .collect();
    eprintln!("# strongly distinguishing: {}", strong.join(" "));
    eprintln!("# weakly-only distinguishing: {}", weak_only.join(" "));
    Ok(true)
}

fn cmd_quandle(cli: &Cli, spec: GroupSpec, link: &str, k: u32) -> Result<bool> {
    if k == 0 || k >= spec.p {
        bail!("k must be 1..{}", spec.p - 1);
    }
    let records = catalog_of(cli)?;
    let record = find_record(&records, link)?;
    let braid = record.braid();
    let quandle = AlexanderQuandle::for_block(&spec, k);
    let brute = count_colorings_bruteforce(&braid, &quandle);
    let linear = count_colorings_linear(&braid, &quandle);
    println!("link={link}\tk={k}\tbrute_force={brute}\tlinear={linear}");
    Ok(brute == linear)
}

fn cmd_verify(cli: &Cli, spec: GroupSpec, suite: &str, u: Option<u32>) -> Result<bool> {
    let all_us: Vec<u32> = match u {
        Some(u) if u < spec.p => vec![u],
        Some(u) => bail!("u = {u} out of range (p = {})", spec.p),
        None => (0..spec.p).collect(),
    };
    let mut ok = true;
    let mut check = |name: &str, passed: bool| {
        println!("{name}: {}", if passed { "ok" } else { "FAIL" });
        ok &= passed;
    };
    let suites: Vec<&str> = if suite == "all" {
        vec!["cocycle", "braid", "markov", "thm22", "observations", "modular"]
    } else {
        vec![suite]
    };
    for s in &suites {
        match *s {
            "cocycle" => {
                let group = Group::new(spec);
                for &u in &all_us {
                    let c = Cocycle::new(&group, u).map_err(|e| anyhow!(e))?;
                    check(&format!("cocycle identity (u={u}, all quadruples)"), c.verify());
                }
            }
            "braid" => {
                for &u in &all_us {
                    let cat = Category::build(spec, u)?;
                    let exhaustive = all_us.len() == 1;
                    let passed = verify_braid_relation(
                        &cat,
                        if exhaustive { None } else { Some(2000) },
                        0xb8a1d,
                    );
                    let mode = if exhaustive { "exhaustive" } else { "2000 samples" };
                    check(&format!("braid relation (u={u}, {mode})"), passed);
                }
            }
            "markov" => {
                let u = all_us[0];
                let cat = Category::build(spec, u)?;
                let records = catalog_of(cli)?;
                let mut passed = true;
                for record in &records {
                    passed &= verify_markov_conjugation(&cat, &record.braid(), 100, 0x51ab)?;
                }
                check(
                    &format!("markov conjugation (u={u}, 100 conjugates per link)"),
                    passed,
                );
            }
            "thm22" => {
                let cats: Vec<Category> = (0..spec.p)
                    .map(|u| Category::build(spec, u))
                    .collect::<Result<_, _>>()?;
                let records = catalog_of(cli)?;
                let mut passed = true;
                for record in &records {
                    let braid = record.braid();
                    for k in 1..spec.p {
                        let quandle = AlexanderQuandle::for_block(&spec, k);
                        if count_colorings_bruteforce(&braid, &quandle)
                            != count_colorings_linear(&braid, &quandle)
                        {
                            passed = false;
                        }
                        for s in 0..spec.p {
                            for cat in &cats {
                                let label = cat
                                    .index_of(AnyonLabel::B { k, s })
                                    .expect("B label exists");
                                let strands = vec![label; braid.strands()];
                                let engine_value = cat
                                    .ring()
                                    .canonicalize(&closure_invariant(cat, &braid, &strands)?);
                                let oracle = cat.ring().canonicalize(&theorem22_value(
                                    &spec,
                                    cat.ring(),
                                    &braid,
                                    k,
                                    s,
                                    cat.u(),
                                ));
                                if engine_value != oracle {
                                    passed = false;
                                }
                            }
                        }
                    }
                }
                check("theorem-2.2 oracle equality (full catalog)", passed);
            }
            "observations" => {
                let engine = Engine::build(spec)?;
                let records = catalog_of(cli)?;
                let mut sets = Vec::new();
                for record in records.iter().filter(|r| r.components == 1) {
                    sets.push((record, engine.link_invariants(record)?));
                }
                let borrowed: Vec<(&LinkRecord, &LinkInvariantSet)> =
                    sets.iter().map(|(r, s)| (*r, s)).collect();
                let report = verify_observations(&engine, &borrowed);
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                check(
                    &format!(
                        "knot observations ({} knots, {} zero-writhe)",
                        report.knots_checked, report.zero_writhe_knots
                    ),
                    report.ok(),
                );
            }
            "modular" => {
                let built = modular_pipeline(spec, &(0..spec.p).collect::<Vec<_>>())?;
                check("modular structure (symmetric, unit row, unitary)", true);
                let mut shared = Vec::new();
                for i in 0..built.len() {
                    for j in i + 1..built.len() {
                        let perms = modular_permutations(
                            &built[i].1,
                            &built[j].1,
                            &built[i].2,
                            &built[j].2,
                        )?;
                        if !perms.is_empty() {
                            let cands = TRespectingCandidates::build(
                                &built[i].1,
                                &built[j].1,
                                &built[i].2,
                                &built[j].2,
                            );
                            println!(
                                "pair ({i},{j}): {} candidates, {} permutations",
                                cands.count(),
                                perms.len()
                            );
                            shared.push((i as u32, j as u32));
                        }
                    }
                }
                check(
                    "modular-data sharing pattern {1,4},{2,3}",
                    shared == [(1, 4), (2, 3)],
                );
            }
            other => bail!("unknown suite {other:?} (cocycle|braid|markov|thm22|observations|modular|all)"),
        }
    }
    Ok(ok)
}

fn cmd_report(
    cli: &Cli,
    spec: GroupSpec,
    anyons: bool,
    tables: bool,
    u: Option<u32>,
) -> Result<bool> {
    if anyons == tables {
        bail!("report requires exactly one of --anyons or --tables");
    }
    if anyons {
        let u = u.ok_or_else(|| anyhow!("--anyons requires --u"))?;
        let cat = Category::build(spec, u)?;
        let n = cat.ring().order() as u32;
        println!("label\td\ttheta");
        for a in cat.anyons() {
            debug_assert_eq!(a.twist, twist_exponent(&spec, a.label, u));
            let theta = if a.twist == 0 {
                "1".to_string()
            } else {
                let g = gcd(a.twist, n);
                format!("{}/{}", a.twist / g, n / g)
            };
            println!("{}\t{}\t{}", a.label, a.qdim, theta);
        }
        return Ok(true);
    }
    cmd_classify(cli, spec, Format::Tsv)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
