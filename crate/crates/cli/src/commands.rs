use std::path::{Path, PathBuf};

use mfcert::complexes::{curvature_check, strict_exactness_sample, CurvedComplex, SupportLocus, Verdict};
use mfcert::constructions::{
    cone_lift, cone_lift_difference, lemma1_build, lemma2_build, remark_decompose, s_lambda_check, s_xi_reduce,
};
use mfcert::io::{bundle_from_json, bundle_to_json, map_spec, Instance, InstanceFile};
use mfcert::kcert::KCertificate;
use mfcert::{gen, Error, Result};

use crate::report::{Report, Section};

/// Settings shared by every command.
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    pub field: Option<String>,
    pub out: Option<PathBuf>,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::from(e).context(format!("reading {}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::from(e).context(format!("writing {}", path.display())))
}

fn load(cfg: &Config, path: &Path) -> Result<(InstanceFile, String)> {
    let text = read(path)?;
    let mut file = InstanceFile::parse(&text)?;
    if let Some(f) = &cfg.field {
        file.set_field(f);
    }
    Ok((file, text))
}

fn load_instance(cfg: &Config, path: &Path, want: &str) -> Result<Instance> {
    let (file, text) = load(cfg, path)?;
    if file.kind() != want {
        return Err(Error::InvalidArgument(format!("expected an instance of kind `{want}`, got `{}`", file.kind())));
    }
    file.build(Some(&text))
}

/// `input.json` → `input.cert.json` unless `--out` is given.
fn bundle_path(cfg: &Config, input: &Path) -> PathBuf {
    cfg.out.clone().unwrap_or_else(|| {
        let stem = input.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
        input.with_file_name(format!("{stem}.cert.json"))
    })
}

fn write_bundle(cfg: &Config, report: &mut Report, input: &Path, cert: &KCertificate) -> Result<()> {
    let path = bundle_path(cfg, input);
    write(&path, &bundle_to_json(cert)?)?;
    report.outputs.push(path.display().to_string());
    Ok(())
}

fn certificate_section(title: &str, cert: &KCertificate) -> Result<Section> {
    let rep = cert.verify()?;
    let mut s = Section::new(title);
    let claim: Vec<String> = cert.claim.iter().map(|t| format!("{}·[{}]", t.coeff, t.name)).collect();
    s.info("claim", format!("{} = 0", claim.join(" + ")));
    s.info("moves", rep.moves.len());
    for m in &rep.moves {
        let check = format!("move {} ({}: {})", m.index, m.kind, m.note);
        let v = match m.checks.iter().find(|c| !c.pass) {
            None => Verdict::pass(check),
            Some(bad) => Verdict::fail(check, bad.to_string()),
        };
        s.check(v);
    }
    s.check(rep.ledger.clone());
    if !rep.assumed_exact_off_z.is_empty() {
        s.info("assumed exact off Z", rep.assumed_exact_off_z.join(", "));
    }
    if let Some(i) = rep.first_failing_move {
        s.info("first failing move", i);
    }
    Ok(s)
}

fn exactness_section(cfg: &Config, c: &CurvedComplex, z: &SupportLocus) -> Result<Section> {
    let rep = strict_exactness_sample(c, z, cfg.trials, cfg.seed)?;
    let mut s = Section::new("exactness sample");
    s.info("points", rep.points.len());
    if let Some(n) = &rep.note {
        s.info("note", n);
    }
    let check = "strictly exact at sampled points off Z";
    s.check(if rep.pass { Verdict::pass(check) } else { Verdict::fail(check, "a sampled fiber is not exact") });
    Ok(s)
}

pub fn check_mf(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let (file, text) = load(cfg, input)?;
    let d = file.differential(Some(&text))?;
    let mut s = Section::new("curvature");
    let (even, odd) = d.source().ranks();
    s.info("rank", format!("({even}|{odd})"));
    match curvature_check(d.source(), &d) {
        Ok(c) => {
            s.info("curvature", c.curvature());
            s.check(Verdict::pass("d² is a scalar multiple of the identity"));
        }
        Err(Error::NotScalarSquare { row, col, entry, expected }) => {
            s.check(Verdict::fail(
                "d² is a scalar multiple of the identity",
                format!("entry ({row}, {col}) of d² is {entry}, expected {expected}"),
            ));
        }
        Err(e) => return Err(e),
    }
    report.push(s);
    Ok(())
}

pub fn lemma1(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::LambdaFamily(fam) = load_instance(cfg, input, "lambda-family")? else { unreachable!() };
    let out = lemma1_build(&fam)?;
    let mut s = Section::new("construction");
    s.info("r", fam.r()).info("W rank", format!("{:?}", out.w.module().ranks())).checks(out.verdicts.clone());
    report.push(s);
    report.push(certificate_section("certificate", &out.kcert)?);
    report.push(exactness_section(cfg, &out.w, &out.kcert.locus)?);
    write_bundle(cfg, report, input, &out.kcert)
}

pub fn lemma2(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::TwistFamily(fam) = load_instance(cfg, input, "twist-family")? else { unreachable!() };
    let out = lemma2_build(&fam)?;
    let mut s = Section::new("construction");
    s.info("r", fam.r()).info("W rank", format!("{:?}", out.w.module().ranks())).checks(out.verdicts.clone());
    report.push(s);
    report.push(certificate_section("certificate", &out.kcert)?);
    report.push(exactness_section(cfg, &out.w, &out.kcert.locus)?);
    write_bundle(cfg, report, input, &out.kcert)
}

pub fn remark(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::RemarkFamily(fam) = load_instance(cfg, input, "remark-family")? else { unreachable!() };
    let out = remark_decompose(&fam)?;
    let mut s = Section::new("construction");
    s.info("f", fam.f());
    for (z, m) in fam.roots().iter().zip(&out.multiplicities) {
        s.info(format!("root {z}"), format!("multiplicity {m}"));
    }
    s.checks(out.verdicts.clone());
    report.push(s);
    report.push(certificate_section("certificate", &out.kcert)?);
    report.push(exactness_section(cfg, &out.window, &out.kcert.locus)?);
    write_bundle(cfg, report, input, &out.kcert)
}

pub fn slambda(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::TauData(t) = load_instance(cfg, input, "tau-data")? else { unreachable!() };
    let out = s_lambda_check(&t)?;
    let mut s = Section::new("section");
    s.info("r", t.r()).info("pairing - λ^r", &out.residual);
    s.check(t.zerocomp()?);
    s.checks(out.verdicts.clone());
    if out.family.is_none() {
        s.check(Verdict::fail("induced λ-family", "the Clifford action of s_λ is not a valid λ-family"));
    }
    report.push(s);
    if let Some(fam) = &out.family {
        let l1 = lemma1_build(fam)?;
        let mut s = Section::new("induced λ-family");
        s.info("V rank", format!("{:?}", fam.module().ranks())).checks(l1.verdicts.clone());
        report.push(s);
        report.push(certificate_section("certificate", &l1.kcert)?);
        write_bundle(cfg, report, input, &l1.kcert)?;
    }
    Ok(())
}

pub fn sxi(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::RamondData(data) = load_instance(cfg, input, "ramond-data")? else { unreachable!() };
    let out = s_xi_reduce(&data)?;
    let mut s = Section::new("roots");
    for (xi, f) in out.xis.iter().zip(&out.f_list) {
        s.info(format!("f_({xi})"), f);
    }
    report.push(s);
    let mut s = Section::new("per-root match");
    s.checks(out.verdicts.clone());
    report.push(s);
    let mut s = Section::new("twisted family");
    s.checks(out.lemma2.verdicts.clone());
    report.push(s);
    report.push(certificate_section("certificate", &out.kcert)?);
    write_bundle(cfg, report, input, &out.kcert)
}

pub fn conelift(cfg: &Config, report: &mut Report, input: &Path) -> Result<()> {
    let Instance::ConeLift(inst) = load_instance(cfg, input, "cone-lift")? else { unreachable!() };
    let l1 = cone_lift(&inst.g, &inst.f, &inst.h)?;
    let mut s = Section::new("lift");
    s.info("cone rank", format!("{:?}", l1.cone.complex.module().ranks())).checks(l1.verdicts.clone());
    report.push(s);
    if let Some(h2) = &inst.h2 {
        let l2 = cone_lift(&inst.g, &inst.f, h2)?;
        let mut s = Section::new("second lift");
        s.checks(l2.verdicts.clone()).check(cone_lift_difference(&l1, &l2)?);
        report.push(s);
    }
    if let Some(path) = &cfg.out {
        let value = serde_json::json!({
            "cone": map_spec(l1.cone.complex.differential()),
            "lift": map_spec(l1.lift.map()),
        });
        write(path, &(serde_json::to_string_pretty(&value)? + "\n"))?;
        report.outputs.push(path.display().to_string());
    }
    Ok(())
}

/// Returns the instance text when no output path is set.
pub fn gen(cfg: &Config, report: &mut Report, kind: &str, r: u32, size: usize) -> Result<Option<String>> {
    let inst = gen::generate(kind, r, size, cfg.seed)?;
    let mut text = inst.to_json(Some(cfg.seed), Some(size))?;
    if let Some(f) = &cfg.field {
        let mut file = InstanceFile::parse(&text)?;
        file.set_field(f);
        let inst = file.build(None)?;
        text = inst.to_json(Some(cfg.seed), Some(size))?;
    }
    let mut s = Section::new("instance");
    s.info("kind", kind).info("r", r).info("size", size);
    s.check(Verdict::pass("instance invariants"));
    report.push(s);
    match &cfg.out {
        Some(path) => {
            write(path, &text)?;
            report.outputs.push(path.display().to_string());
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

pub fn verify(report: &mut Report, inputs: &[PathBuf]) -> Result<()> {
    for path in inputs {
        let text = read(path)?;
        let title = format!("bundle {}", path.display());
        match bundle_from_json(&text) {
            Ok(cert) => report.push(certificate_section(&title, &cert)?),
            Err(e) if is_usage(&e) => return Err(e),
            Err(e) => {
                let mut s = Section::new(title);
                s.check(Verdict::fail("bundle data", e.to_string()));
                report.push(s);
            }
        }
    }
    Ok(())
}

/// Errors that mean the input could not be read or understood, as opposed
/// to data that was understood and found to violate an invariant.
pub fn is_usage(e: &Error) -> bool {
    matches!(
        e.root(),
        Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::Malformed(_)
            | Error::Shape(_)
            | Error::Parity(_)
            | Error::UnknownVariable(_)
            | Error::RingMismatch { .. }
            | Error::InvalidArgument(_)
    )
}
