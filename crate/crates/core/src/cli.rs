//! The `bqg` command line. Exit codes: 0 on success, 1 when an audit or an
//! oracle comparison fails, 2 on a malformed instance or invocation.

use crate::bicrossed::{
    ad_lambda_automorphisms, classify_bicrossed, BicrossedClassification, FiniteQuantumAlgebra, GammaRange, MatchedPair,
};
use crate::config::{Instance, InstanceConfig, RdLength, ThetaSpec, PRESETS};
use crate::fusion::FusionTable;
use crate::group::{EnumerableGroup, FiniteGroup, FreeProduct, GroupLaw};
use crate::length::{
    affording_family_check, build_affording_family, check_dual_length, dual_growth, dual_length_semidirect,
    dual_word_length, generating_classes, group_growth, rd_shell_ratio, theta_ball_check, twist_dual_growth,
    DualLength, GrowthProfile,
};
use crate::mackey::{classify_semidirect, oracle_fusion_table, semidirect_fusion_table};
use crate::rep::irreps;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "bqg", version, about = "Representation theory of bicrossed products at finite scale")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the irreducible classes and audit Σ dim².
    Irr(Common),
    /// Compute the fusion table and compare it with an independent oracle.
    Fuse(Common),
    /// Write shell counts of the group and dual lengths.
    Growth(Common),
    /// Bracket the Fourier-to-Sobolev norm ratio on each dual shell.
    Rd(Common),
    /// List the built-in presets.
    Presets,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Instance file (JSON).
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub instance: Option<PathBuf>,
    /// Built-in instance name.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory (default `bqg-out`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<(InstanceConfig, PathBuf)> {
        let mut cfg = match (&self.instance, &self.preset) {
            (Some(path), _) => InstanceConfig::from_file(path)?,
            (None, Some(name)) => InstanceConfig::preset(name)?,
            (None, None) => return Err(Error::config("--instance", "an instance file or a preset is required")),
        };
        if let Some(k) = self.kmax {
            cfg.run.kmax = k;
        }
        if let Some(s) = self.seed {
            cfg.run.seed = s;
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::config("--tol", "must be a nonnegative number"));
            }
            cfg.run.tol = t;
        }
        let out = self
            .out
            .clone()
            .or_else(|| cfg.run.out.clone())
            .unwrap_or_else(|| PathBuf::from("bqg-out"));
        std::fs::create_dir_all(&out)?;
        Ok((cfg, out))
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config_error() {
                2
            } else {
                1
            }
        }
    }
}

/// Runs a command; `Ok(false)` means an audit failed.
pub fn execute(command: &Command) -> Result<bool> {
    match command {
        Command::Presets => {
            for (name, _) in PRESETS {
                println!("{name}");
            }
            Ok(true)
        }
        Command::Irr(c) => {
            let (cfg, out) = c.load()?;
            irr(&cfg, &out)
        }
        Command::Fuse(c) => {
            let (cfg, out) = c.load()?;
            fuse(&cfg, &out)
        }
        Command::Growth(c) => {
            let (cfg, out) = c.load()?;
            growth(&cfg, &out)
        }
        Command::Rd(c) => {
            let (cfg, out) = c.load()?;
            rd(&cfg, &out)
        }
    }
}

fn write(out: &Path, name: &str, contents: &str) -> Result<()> {
    let path = out.join(name);
    std::fs::write(&path, contents)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn write_json(out: &Path, name: &str, value: &serde_json::Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write(out, name, &s)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn classify_finite(mp: &MatchedPair<FiniteGroup>, cfg: &InstanceConfig) -> Result<BicrossedClassification<FiniteGroup>> {
    eprintln!("classifying {} ...", cfg.display_name());
    classify_bicrossed(mp, GammaRange::All, cfg.run.seed)
}

fn classify_free(mp: &MatchedPair<FreeProduct>, cfg: &InstanceConfig) -> Result<BicrossedClassification<FreeProduct>> {
    let radius = cfg.run.radius();
    eprintln!("classifying orbits meeting the ball of radius {radius} ...");
    let points = mp.gamma().ball(radius)?;
    classify_bicrossed(mp, GammaRange::Points(points), cfg.run.seed)
}

fn bicrossed_irr_csv<D: GroupLaw>(cls: &BicrossedClassification<D>) -> String {
    let g = cls.matched_pair().gamma();
    let mut s = String::from("class,dim,orbit,orbit_size,base,isotype,isotype_dim\n");
    for c in cls.classes() {
        let o = &cls.orbits()[c.orbit];
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.id,
            c.dim,
            c.orbit,
            o.orbit.len(),
            g.describe(o.orbit.base()),
            c.isotype,
            o.isotypes[c.isotype].dim()
        ));
    }
    s
}

fn irr(cfg: &InstanceConfig, out: &Path) -> Result<bool> {
    let name = cfg.display_name();
    match cfg.build()? {
        Instance::Semidirect(product) => {
            let cls = classify_semidirect(&product, cfg.run.seed)?;
            let sum: usize = cls.dims().iter().map(|d| d * d).sum();
            let order = product.group().order();
            let classes: Vec<serde_json::Value> = cls
                .classes()
                .iter()
                .map(|c| {
                    json!({
                        "class": c.id,
                        "dim": c.dim(),
                        "g_class": c.orbit_rep,
                        "stabilizer": c.drp.lambda0.elements(),
                        "v_index": c.v_index,
                    })
                })
                .collect();
            let mut csv = String::from("class,dim,g_class,stabilizer_order,v_index\n");
            for c in cls.classes() {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.id,
                    c.dim(),
                    c.orbit_rep,
                    c.drp.lambda0.order(),
                    c.v_index
                ));
            }
            let ok = sum == order;
            write_json(
                out,
                "irr.json",
                &json!({"instance": name, "order": order, "sum_dim_squared": sum, "classes": classes}),
            )?;
            write(out, "irr.csv", &csv)?;
            eprintln!("{} classes; Σ dim² = {sum}, |G ⋊ Λ| = {order}: {}", cls.len(), verdict(ok));
            Ok(ok)
        }
        Instance::FiniteTwist(mp) => {
            let cls = classify_finite(&mp, cfg)?;
            let sum = cls.total_dim_squared();
            let order = mp.gamma().order() * mp.compact().order();
            let ok = sum == order && cls.is_complete();
            write_json(
                out,
                "irr.json",
                &json!({
                    "instance": name,
                    "order": order,
                    "sum_dim_squared": sum,
                    "orbits": cls.orbits().len(),
                    "classes": cls.describe(),
                }),
            )?;
            write(out, "irr.csv", &bicrossed_irr_csv(&cls))?;
            eprintln!("{} classes; Σ dim² = {sum}, |Γ|·|K| = {order}: {}", cls.len(), verdict(ok));
            Ok(ok)
        }
        Instance::FreeTwist(mp) => {
            // classification fails unless Σ dim² = |𝒪|·|K| on every orbit
            let cls = classify_free(&mp, cfg)?;
            let ok = true;
            write_json(
                out,
                "irr.json",
                &json!({
                    "instance": name,
                    "radius": cfg.run.radius(),
                    "orbits": cls.orbits().len(),
                    "classes": cls.describe(),
                }),
            )?;
            write(out, "irr.csv", &bicrossed_irr_csv(&cls))?;
            eprintln!(
                "{} classes on {} orbits; per-orbit Σ dim² = |𝒪|·|K|: ok",
                cls.len(),
                cls.orbits().len()
            );
            Ok(ok)
        }
        Instance::DirectSum(_) => Err(unsupported("irr", "a direct-sum length instance")),
    }
}

fn unsupported(command: &str, what: &str) -> Error {
    Error::config("instance", format!("`{command}` is not available for {what}"))
}

fn fusion_outputs(out: &Path, name: &str, table: &FusionTable, oracle: &FusionTable, oracle_name: &str) -> Result<bool> {
    let diff = table.diff(oracle);
    let conj_ok = (0..table.len()).all(|x| table.conj(x) == oracle.conj(x));
    let audit = table.audit();
    write(out, "fusion.csv", &table.to_csv())?;
    write_json(
        out,
        "fusion.json",
        &json!({
            "instance": name,
            "table": table.to_json(),
            "oracle": oracle_name,
            "oracle_diff": diff,
            "conjugates_agree": conj_ok,
            "audit": audit,
        }),
    )?;
    eprintln!(
        "{} classes; {} entries differ from the {oracle_name} oracle; conjugates {}; ring axioms: {}",
        table.len(),
        diff.len(),
        verdict(conj_ok),
        verdict(audit.is_clean())
    );
    Ok(diff.is_empty() && conj_ok && audit.is_clean())
}

fn fuse(cfg: &InstanceConfig, out: &Path) -> Result<bool> {
    let name = cfg.display_name();
    match cfg.build()? {
        Instance::Semidirect(product) => {
            let cls = classify_semidirect(&product, cfg.run.seed)?;
            eprintln!("computing fusion from incidence numbers ...");
            let table = semidirect_fusion_table(&cls)?;
            let oracle = oracle_fusion_table(&cls)?;
            fusion_outputs(out, name, &table, &oracle, "character")
        }
        Instance::FiniteTwist(mp) => {
            let cls = classify_finite(&mp, cfg)?;
            eprintln!("computing fusion from twisted tensor products ...");
            let table = cls.fusion_table()?;
            let alg = FiniteQuantumAlgebra::new(&cls)?;
            let oracle = alg.oracle_fusion_table()?;
            fusion_outputs(out, name, &table, &oracle, "Haar")
        }
        Instance::FreeTwist(_) => Err(unsupported("fuse", "an infinite Γ")),
        Instance::DirectSum(_) => Err(unsupported("fuse", "a direct-sum length instance")),
    }
}

fn report_ratios(p: &GrowthProfile) {
    for (k, (s, c)) in p.shells.iter().zip(p.cumulative()).enumerate().skip(1) {
        eprintln!("k = {k}: shell {s} (shell/k = {:.3}), ball {c}", *s as f64 / k as f64);
    }
}

fn growth(cfg: &InstanceConfig, out: &Path) -> Result<bool> {
    let kmax = cfg.run.kmax;
    match cfg.build()? {
        Instance::DirectSum(l) => {
            let p = GrowthProfile {
                kmax,
                shells: l.shells(kmax),
            };
            write(out, "growth.csv", &p.to_csv())?;
            let bad: Vec<u64> = (1..=kmax as u64).filter(|&n| l.count_below(n) > n as u128).collect();
            eprintln!("#{{l < n}} ≤ n for 1 ≤ n ≤ {kmax}: {}", verdict(bad.is_empty()));
            Ok(bad.is_empty())
        }
        Instance::Semidirect(product) => {
            let cls = classify_semidirect(&product, cfg.run.seed)?;
            let l_ghat = cfg.dual_base(cls.g_irreps())?;
            let l = dual_length_semidirect(&cls, &l_ghat)?;
            let p = dual_growth(&cls.dims(), &l, kmax);
            write(out, "growth_dual.csv", &p.to_csv())?;
            let report = check_dual_length(&l, &semidirect_fusion_table(&cls)?);
            eprintln!("length axioms on the dual: {}", verdict(report.is_clean()));
            Ok(report.is_clean())
        }
        Instance::FiniteTwist(mp) => {
            let l_gamma = cfg.gamma_length_finite(&mp)?;
            let group = GrowthProfile::from_values(kmax, mp.gamma().elements().map(|g| (l_gamma.value(&g), 1)));
            write(out, "growth_group.csv", &group.to_csv())?;
            let cls = classify_finite(&mp, cfg)?;
            let irr = irreps(mp.twist().expect("twist instance").g(), 0)?;
            let l_ghat = cfg.dual_base(&irr)?;
            let fam = build_affording_family(&cls, &l_gamma, &l_ghat)?;
            let dual = dual_growth(&cls.dims(), &fam.values, kmax);
            write(out, "growth_dual.csv", &dual.to_csv())?;
            let report = affording_family_check(&cls, &fam, &l_gamma, &l_ghat, None)?;
            write_json(out, "affording.json", &json!({"values": fam.values, "report": report}))?;
            eprintln!(
                "affording family: {} violations in {} triples: {}",
                report.violation_count(),
                report.triples_checked,
                verdict(report.is_clean())
            );
            Ok(report.is_clean())
        }
        Instance::FreeTwist(mp) => {
            let radius = cfg.run.radius();
            let l_gamma = cfg.gamma_length_free(&mp)?;
            eprintln!("enumerating the ball of radius {radius} ...");
            let group = group_growth(mp.gamma().as_ref(), &l_gamma, kmax, radius)?;
            write(out, "growth_group.csv", &group.to_csv())?;
            report_ratios(&group);
            let irr = irreps(mp.twist().expect("twist instance").g(), 0)?;
            let l_ghat = cfg.dual_base(&irr)?;
            let dual = twist_dual_growth(&mp, &l_gamma, &l_ghat, kmax, radius, cfg.run.seed)?;
            write(out, "growth_dual.csv", &dual.to_csv())?;
            Ok(true)
        }
    }
}

fn rd(cfg: &InstanceConfig, out: &Path) -> Result<bool> {
    let Instance::FiniteTwist(mp) = cfg.build()? else {
        return Err(unsupported("rd", "anything but a twist over a finite Γ"));
    };
    let spec = &cfg.lengths.rd;
    let (kmax, seed, tol) = (cfg.run.kmax, cfg.run.seed, cfg.run.tol);
    let cls = classify_finite(&mp, cfg)?;
    let alg = FiniteQuantumAlgebra::new(&cls)?;
    let l: DualLength = match spec.length {
        RdLength::Affording => {
            let l_gamma = cfg.gamma_length_finite(&mp)?;
            let irr = irreps(mp.twist().expect("twist instance").g(), 0)?;
            build_affording_family(&cls, &l_gamma, &cfg.dual_base(&irr)?)?.values
        }
        RdLength::Word => {
            let table = cls.fusion_table()?;
            dual_word_length(&table, &generating_classes(&table))?
        }
    };
    let mut ok = true;
    let mut shells = Vec::new();
    for k in 0..=kmax {
        let b = rd_shell_ratio(&alg, &l, k, seed, spec.iters, spec.restarts)?;
        eprintln!("shell {k}: {} classes, {:.6} ≤ sup ≤ {:.6}", b.classes.len(), b.lower, b.upper);
        ok &= b.lower <= b.upper + tol;
        shells.push(b);
    }
    let mut doc = json!({
        "instance": cfg.display_name(),
        "seed": seed,
        "iters": spec.iters,
        "restarts": spec.restarts,
        "length": l,
        "shells": shells,
    });
    if spec.theta == ThetaSpec::AdLambda {
        let perms: Vec<Vec<usize>> = ad_lambda_automorphisms(&mp)?
            .iter()
            .map(|t| alg.dual_action(t).map(|a| a.pushforward))
            .collect::<Result<_>>()?;
        let mut checks = Vec::new();
        for k in 0..=kmax {
            let c = theta_ball_check(&alg, &l, &perms, k, seed, spec.iters, spec.restarts, tol)?;
            eprintln!(
                "ball {k} under Θ: {:.6} ≤ {:.6} = √{}·{:.6}: {}",
                c.lower,
                c.bound,
                c.theta_size,
                c.max_upper,
                verdict(c.holds)
            );
            ok &= c.holds;
            checks.push(c);
        }
        doc["theta"] = json!({"pushforwards": perms, "balls": checks});
    }
    write_json(out, "rd.json", &doc)?;
    Ok(ok)
}
