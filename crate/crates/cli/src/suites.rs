//! One function per command; each returns the reports it produced.

use std::fs;
use std::path::{Path, PathBuf};

use qsphere::casimir::{compress_identify, eigen_check, spectrum_check, Branch, Sign};
use qsphere::linalg::CMatrix;
use qsphere::morita::{
    a0_block, chain_check, orbit_equivalent, picard_group, podles_part_check, rp2_suite, PicardGroup, SphereParam,
};
use qsphere::ncalg::{AlgebraKind, Presentation};
use qsphere::qcore::{tau, HalfInt};
use qsphere::report::{ReportBuilder, VerificationReport};
use qsphere::trunc_rep::{
    oracle_check, relation_check, star_check, star_random_check, PodlesVariant, RandomSuite, TruncatedRep,
};
use qsphere::uq_action::{
    b0_matrix_units, ergodic_bl, ergodic_podles, functional_tail_bound, invariance_check, spin2l_check,
    ImplementingRep, InvariantSubspace, SINGULAR_THRESHOLD,
};
use qsphere::qcore::QParams;
use qsphere::scalar::{Scalar, TwoFloat};
use qsphere::QParamsF64;

/// Roundoff allowance added to the functional tail bound in the CLI suite.
pub const FUNCTIONAL_ROUNDOFF: f64 = 1e-12;
/// Tolerance of the rewriting oracle.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] qsphere::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl SuiteError {
    /// Invalid input maps to the usage exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Library(qsphere::Error::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, SuiteError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Relations,
    Casimir,
    Compress,
    Theta,
    Functional,
    Ergodic,
    Theorem2,
    Orbit,
    Picard,
    All,
}

/// Parsed flags shared by every command.
#[derive(Clone, Debug)]
pub struct Settings {
    pub q: f64,
    pub x: Option<String>,
    pub y: Option<String>,
    pub l: Option<f64>,
    pub n: usize,
    pub d: usize,
    pub tol: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub alg: Option<String>,
    pub dump: Option<PathBuf>,
}

impl Default for Settings {
    fn default() -> Self {
        Self { q: 0.5, x: None, y: None, l: None, n: 64, d: 6, tol: None, seed: 0, count: 200, alg: None, dump: None }
    }
}

impl Settings {
    fn params(&self) -> Result<QParamsF64> {
        Ok(QParamsF64::new(self.q)?)
    }

    fn x_or(&self, default: f64) -> Result<f64> {
        match &self.x {
            None => Ok(default),
            Some(s) => match SphereParam::parse(s)? {
                SphereParam::Finite(v) => Ok(v),
                SphereParam::Standard => Err(SuiteError::Usage("this command needs a finite --x".into())),
            },
        }
    }

    fn xs_or(&self, defaults: &[f64]) -> Result<Vec<f64>> {
        match &self.x {
            None => Ok(defaults.to_vec()),
            Some(_) => Ok(vec![self.x_or(0.0)?]),
        }
    }

    fn ls_or(&self, defaults: &[u32]) -> Result<Vec<HalfInt>> {
        match self.l {
            None => Ok(defaults.iter().map(|t| HalfInt::from_twice(*t)).collect()),
            Some(v) => Ok(vec![HalfInt::parse(v)?]),
        }
    }

    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn suite(&self) -> RandomSuite {
        RandomSuite { seed: self.seed, count: self.count, max_len: 6 }
    }

    fn algs(&self, allowed: &[&str]) -> Result<Vec<String>> {
        match &self.alg {
            None => Ok(allowed.iter().map(|s| s.to_string()).collect()),
            Some(a) if allowed.contains(&a.as_str()) => Ok(vec![a.clone()]),
            Some(a) => Err(SuiteError::Usage(format!("--alg {a} is not one of {}", allowed.join(", ")))),
        }
    }
}

fn dump_rep(dir: &Path, prefix: &str, rep: &TruncatedRep<f64>) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| SuiteError::Io { path: dir.to_path_buf(), source })?;
    for g in rep.generators() {
        dump_matrix(dir, &format!("{prefix}-{g}"), &rep.image(g)?)?;
    }
    Ok(())
}

fn dump_matrix(dir: &Path, name: &str, a: &CMatrix<f64>) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| SuiteError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(format!("{name}.txt"));
    let file = fs::File::create(&path).map_err(|source| SuiteError::Io { path: path.clone(), source })?;
    a.write_dump(std::io::BufWriter::new(file)).map_err(|source| SuiteError::Io { path, source })
}

/// Presentation and representation of `alg` ("podles", "uqmp", "bl" or "uqsu2") at scalar type `T`.
pub fn algebra_pair<T: Scalar>(
    alg: &str,
    q: f64,
    x: f64,
    l: HalfInt,
    n: usize,
) -> Result<(Presentation<T>, TruncatedRep<T>)> {
    let p = QParams::new(T::lit(q))?;
    let xt = T::lit(x);
    Ok(match alg {
        "podles" => (Presentation::podles_extended(p, xt), TruncatedRep::podles(p, xt, PodlesVariant::DirectSum, n)?),
        "uqmp" => (Presentation::uqmp(p), TruncatedRep::podles(p, xt, PodlesVariant::DirectSum, n)?),
        "bl" => (Presentation::bl(p, l), TruncatedRep::bl(p, l, n)?),
        "uqsu2" => (Presentation::uqsu2(p), TruncatedRep::spin_half(p)),
        other => return Err(SuiteError::Usage(format!("unknown algebra {other}"))),
    })
}

/// Rewriting oracle in double-double precision.
///
/// Normal forms carry Z-polynomials whose expanded coefficients exceed their values by many
/// orders of magnitude, so the comparison is made at about 32 significant digits.
pub fn oracle_extended(alg: &str, q: f64, x: f64, l: HalfInt, n: usize, suite: RandomSuite) -> Result<VerificationReport> {
    let (pres, rep) = algebra_pair::<TwoFloat>(alg, q, x, l, n)?;
    let mut r = oracle_check(&pres, &rep, &pres.generators, suite, ORACLE_TOL)?;
    r.params.insert("precision".into(), "double-double".into());
    Ok(r)
}

pub fn relations(s: &Settings) -> Result<Vec<VerificationReport>> {
    let x = s.x_or(1.0)?;
    let l = HalfInt::parse(s.l.unwrap_or(1.0))?;
    let tol = s.tol_or(1e-11);
    let mut out = Vec::new();
    for alg in s.algs(&["podles", "uqmp", "bl", "uqsu2"])? {
        let (pres, rep) = algebra_pair::<f64>(&alg, s.q, x, l, s.n)?;
        if let Some(dir) = &s.dump {
            dump_rep(dir, &alg, &rep)?;
        }
        out.push(relation_check(&pres, &rep, tol)?);
        out.push(star_check(&pres, &rep, 1e-12)?);
        out.push(star_random_check(&pres, &rep, &pres.generators, s.suite(), 1e-12)?);
        out.push(oracle_extended(&alg, s.q, x, l, s.n, s.suite())?);
    }
    Ok(out)
}

pub fn casimir(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let x = s.x_or(0.7)?;
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        out.push(eigen_check(&p, x, sign, s.n, s.tol_or(1e-12), 1e-11)?);
        let mut r = spectrum_check(&p, x, sign, s.n, 2, 1e-9)?;
        r.params.insert("spectrum".into(), vec![tau(&p, x - 1.0), tau(&p, x + 1.0)].into());
        out.push(r);
        if let Some(dir) = &s.dump {
            let t2 = qsphere::casimir::casimir_matrix(&p, x, sign, s.n)?;
            let name = if sign == Sign::Plus { "T2-plus" } else { "T2-minus" };
            dump_matrix(dir, name, &t2)?;
        }
    }
    Ok(out)
}

pub fn compress(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let mut out = Vec::new();
    for x in s.xs_or(&[0.35, 1.0, 2.5])? {
        for sign in [Sign::Plus, Sign::Minus] {
            for branch in [Branch::Up, Branch::Down] {
                let (rep, r) = compress_identify(&p, x, sign, branch, s.n, s.tol_or(1e-10), 1e-11)?;
                if let Some(dir) = &s.dump {
                    let tag = format!("compress-x{x}-{}-{}", if sign == Sign::Plus { "plus" } else { "minus" }, branch);
                    dump_rep(dir, &tag, &rep)?;
                }
                out.push(r);
            }
        }
    }
    Ok(out)
}

pub fn theta(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let mut out = Vec::new();
    for l in s.ls_or(&[1, 2, 3, 4])? {
        let imp = ImplementingRep::bl(p, l, s.n, 2 * l.twice() as usize)?;
        out.push(spin2l_check(l, &imp, s.tol_or(1e-10))?);
    }
    Ok(out)
}

pub fn functional(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let threshold = s.tol.unwrap_or(functional_tail_bound(&p, s.n) + FUNCTIONAL_ROUNDOFF);
    let mut out = Vec::new();
    for alg in s.algs(&["podles", "bl"])? {
        let kind = if alg == "podles" {
            AlgebraKind::Podles { x: s.x_or(1.0)?, extended: false }
        } else {
            AlgebraKind::Bl { l: HalfInt::parse(s.l.unwrap_or(1.0))? }
        };
        let mut r = invariance_check(&p, kind, s.n, 4, threshold)?;
        r.params.insert("tail_bound".into(), functional_tail_bound(&p, s.n).into());
        out.push(r);
    }
    Ok(out)
}

fn ergodic_report(name: &str, sub: &InvariantSubspace, expected: usize, s: &Settings) -> VerificationReport {
    let mut b = ReportBuilder::new("ergodic")
        .param("algebra", name)
        .param("q", s.q)
        .param("N", s.n)
        .param("D", s.d)
        .param("dimension", sub.dim)
        .param("elements", sub.elements)
        .param("smallest_retained", sub.smallest_retained)
        .param("largest_discarded", sub.largest_discarded);
    b.item("dimension", (sub.dim as f64 - expected as f64).abs(), 0.0);
    if name == "bl(0)" {
        let outside = sub
            .basis
            .iter()
            .map(|v| v.iter().filter(|(w, _)| w != "1" && w != "A(0)").fold(0.0, |acc, (_, c)| acc + c.norm_sqr()).sqrt())
            .fold(0.0, f64::max);
        b.item("basis-span-1-A(0)", outside, SINGULAR_THRESHOLD);
    }
    b.finish()
}

pub fn ergodic(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let mut out = Vec::new();
    for alg in s.algs(&["podles", "bl", "b0m2"])? {
        match alg.as_str() {
            "podles" => {
                let x = s.x_or(1.0)?;
                out.push(ergodic_report(&format!("podles({x})"), &ergodic_podles(&p, x, s.n, s.d)?, 1, s));
            }
            "bl" => {
                for l in s.ls_or(&[0, 1, 2, 3, 4])? {
                    let expected = if l.twice() == 0 { 2 } else { 1 };
                    out.push(ergodic_report(&format!("bl({l})"), &ergodic_bl(&p, l, s.n, s.d)?, expected, s));
                }
            }
            _ => out.push(ergodic_report("b0m2", &b0_matrix_units(&p, s.n, s.d)?, 4, s)),
        }
    }
    Ok(out)
}

pub fn theorem2(s: &Settings) -> Result<Vec<VerificationReport>> {
    let p = s.params()?;
    let mut out = Vec::new();
    for l in s.ls_or(&[1, 2, 3])? {
        if l.twice() == 0 {
            continue;
        }
        for branch in [Branch::Up, Branch::Down] {
            out.push(a0_block(&p, l, branch, s.n, s.tol_or(1e-10), 1e-11)?.1);
        }
    }
    out.push(rp2_suite(&p, s.n, 1e-12)?);
    for l in s.ls_or(&[0, 1, 2, 3])? {
        out.push(podles_part_check(&p, l, s.n, 1e-10)?);
        out.push(chain_check(&p, l, s.n, 1e-9)?);
    }
    Ok(out)
}

fn table_item(b: &mut ReportBuilder, label: &str, ok: bool) {
    b.item(label, if ok { 0.0 } else { 1.0 }, 0.0);
}

fn orbit_table(b: &mut ReportBuilder, x: f64) {
    use SphereParam::*;
    table_item(b, "table:(0.3,1.7)", orbit_equivalent(Finite(0.3), Finite(1.7)) == (true, Some(-2)));
    table_item(b, "table:(0.3,0.4)", !orbit_equivalent(Finite(0.3), Finite(0.4)).0);
    table_item(b, "table:(x,x)", orbit_equivalent(Finite(x), Finite(x)).0);
    table_item(b, "table:(standard,x)", !orbit_equivalent(Standard, Finite(x)).0);
}

pub fn orbit(s: &Settings) -> Result<Vec<VerificationReport>> {
    let a = SphereParam::parse(s.x.as_deref().unwrap_or("0.3"))?;
    let c = SphereParam::parse(s.y.as_deref().unwrap_or("1.7"))?;
    let (eq, m) = orbit_equivalent(a, c);
    let mut b = ReportBuilder::new("orbit").param("x", a.to_string()).param("y", c.to_string()).param("equivalent", eq);
    if let Some(m) = m {
        b.set_param("witness", m);
    }
    let probe = match a {
        SphereParam::Finite(v) => v,
        SphereParam::Standard => 0.5,
    };
    orbit_table(&mut b, probe);
    Ok(vec![b.finish()])
}

pub fn picard(s: &Settings) -> Result<Vec<VerificationReport>> {
    use SphereParam::*;
    let a = SphereParam::parse(s.x.as_deref().unwrap_or("standard"))?;
    let mut b = ReportBuilder::new("picard").param("x", a.to_string()).param("group", picard_group(a).to_string());
    table_item(&mut b, "table:standard", picard_group(Standard) == PicardGroup::Z);
    table_item(&mut b, "table:2", picard_group(Finite(2.0)) == PicardGroup::Z2);
    table_item(&mut b, "table:0", picard_group(Finite(0.0)) == PicardGroup::Z2);
    table_item(&mut b, "table:0.7", picard_group(Finite(0.7)) == PicardGroup::Trivial);
    Ok(vec![b.finish()])
}

/// Every suite at its defaults; only q, N, D, seed and count are taken from the settings.
pub fn all(s: &Settings) -> Result<Vec<VerificationReport>> {
    let base = Settings { x: None, y: None, l: None, tol: None, alg: None, dump: None, ..s.clone() };
    let mut out = Vec::new();
    for f in [relations, casimir, compress, theta, functional, ergodic, theorem2, orbit, picard] {
        out.extend(f(&base)?);
    }
    Ok(out)
}

pub fn run_command(cmd: Command, s: &Settings) -> Result<Vec<VerificationReport>> {
    match cmd {
        Command::Relations => relations(s),
        Command::Casimir => casimir(s),
        Command::Compress => compress(s),
        Command::Theta => theta(s),
        Command::Functional => functional(s),
        Command::Ergodic => ergodic(s),
        Command::Theorem2 => theorem2(s),
        Command::Orbit => orbit(s),
        Command::Picard => picard(s),
        Command::All => all(s),
    }
}

