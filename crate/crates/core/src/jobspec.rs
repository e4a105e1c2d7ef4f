//! Line-oriented job files and the command dispatcher behind the binary.
//!
//! ```text
//! field p=<int> t=<int> [mod=<c0,c1,...>]
//! curve f=<c0,c1,...> h=<c0,...> [singular_ok]
//! divisor (<a>,<b>)*<m> ... inf*<m>
//! kappa <c0,c1,...>
//! g (<a>,<b>) (<a>,<b>) ...
//! fit shift=<c> exp=<lo>..<hi>
//! samples (<x>,<y>) ...
//! dims g=<g> j=<j> n=<lo>..<hi>
//! cmd <basis|encode|distance|dim|points|fitcurve> [--oracle]
//! ```
//!
//! `#` starts a comment. Field constants are integers or `[d0,d1,...]`.

use std::fmt;
use std::str::FromStr;

use crate::code::{generator_matrix, min_distance, parity_check, Distance, DEFAULT_BUDGET};
use crate::curve::{fit_curve, Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::function::Divisor;
use crate::oracle::dim_oracle;
use crate::poly::Poly;
use crate::riemann_roch::{rr_basis, rr_dim, ReducedDivisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Basis,
    Encode,
    Distance,
    Dim,
    Points,
    FitCurve,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Encode => "encode",
            Command::Distance => "distance",
            Command::Dim => "dim",
            Command::Points => "points",
            Command::FitCurve => "fitcurve",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Command, String> {
        Ok(match s {
            "basis" => Command::Basis,
            "encode" => Command::Encode,
            "distance" => Command::Distance,
            "dim" => Command::Dim,
            "points" => Command::Points,
            "fitcurve" => Command::FitCurve,
            _ => return Err(format!("unknown command '{s}'")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub t: usize,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.t, self.modulus.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub f: Vec<FieldElement>,
    pub h: Vec<FieldElement>,
    pub singular_ok: bool,
}

impl CurveSpec {
    pub fn build(&self, k: &Field) -> Result<Curve> {
        Curve::new(k.clone(), Poly::new(self.f.clone()), Poly::new(self.h.clone()), self.singular_ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSpec {
    pub affine: Vec<(Point, i64)>,
    pub omega: i64,
}

impl DivisorSpec {
    pub fn build(&self) -> Divisor {
        Divisor::from_parts(&self.affine, self.omega)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitSpec {
    pub shift: FieldElement,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsSpec {
    pub g: i64,
    pub j: i64,
    pub n_lo: i64,
    pub n_hi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub field: Option<FieldSpec>,
    pub curve: Option<CurveSpec>,
    pub divisor: Option<DivisorSpec>,
    pub kappa: Option<Vec<FieldElement>>,
    pub points: Option<Vec<Point>>,
    pub fit: Option<FitSpec>,
    pub samples: Option<Vec<(FieldElement, FieldElement)>>,
    pub dims: Option<DimsSpec>,
    pub command: Command,
    pub oracle: bool,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn semantic(line: usize, e: Error) -> Error {
    Error::Semantic { line, message: format!("{} ({e})", e.code()) }
}

/// Splits on commas that are not inside brackets or parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_int<T: FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("bad {what} '{s}'")))
}

fn parse_elem(k: &Field, line: usize, s: &str) -> Result<FieldElement> {
    k.parse(s).map_err(|e| parse_err(line, format!("bad field element '{s}': {e}")))
}

fn parse_coeffs(k: &Field, line: usize, s: &str) -> Result<Vec<FieldElement>> {
    if s.is_empty() {
        return Err(parse_err(line, "empty coefficient list"));
    }
    split_top(s).into_iter().map(|c| parse_elem(k, line, c)).collect()
}

fn parse_pair(k: &Field, line: usize, s: &str) -> Result<(FieldElement, FieldElement)> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected (a,b), found '{s}'")))?;
    match split_top(inner)[..] {
        [a, b] => Ok((parse_elem(k, line, a)?, parse_elem(k, line, b)?)),
        _ => Err(parse_err(line, format!("expected (a,b), found '{s}'"))),
    }
}

fn parse_range(line: usize, s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| parse_err(line, format!("expected <lo>..<hi>, found '{s}'")))?;
    Ok((parse_int(line, lo, "range bound")?, parse_int(line, hi, "range bound")?))
}

/// `key=value` arguments and bare flags of one directive.
struct Args<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
    flags: Vec<&'a str>,
}

impl<'a> Args<'a> {
    fn new(line: usize, tokens: &[&'a str]) -> Args<'a> {
        let mut pairs = Vec::new();
        let mut flags = Vec::new();
        for t in tokens {
            match t.split_once('=') {
                Some((key, v)) => pairs.push((key, v)),
                None => flags.push(*t),
            }
        }
        Args { line, pairs, flags }
    }

    fn get(&self, key: &str) -> Option<&'a str> {
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn require(&self, key: &str) -> Result<&'a str> {
        self.get(key).ok_or_else(|| parse_err(self.line, format!("missing {key}=")))
    }

    /// Rejects keys and flags outside the allowed sets.
    fn check(&self, keys: &[&str], flags: &[&str]) -> Result<()> {
        if let Some((key, _)) = self.pairs.iter().find(|(key, _)| !keys.contains(key)) {
            return Err(parse_err(self.line, format!("unexpected key '{key}'")));
        }
        if let Some(f) = self.flags.iter().find(|f| !flags.contains(f)) {
            return Err(parse_err(self.line, format!("unexpected token '{f}'")));
        }
        Ok(())
    }
}

struct Directive<'a> {
    line: usize,
    name: &'a str,
    tokens: Vec<&'a str>,
}

fn find<'a, 'b>(dirs: &'b [Directive<'a>], name: &str) -> Option<&'b Directive<'a>> {
    dirs.iter().find(|d| d.name == name)
}

impl JobSpec {
    /// Parses and validates a job file.
    pub fn parse(text: &str) -> Result<JobSpec> {
        let mut dirs: Vec<Directive> = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(name) = tokens.next() else { continue };
            if !["field", "curve", "divisor", "kappa", "g", "fit", "samples", "dims", "cmd"].contains(&name) {
                return Err(parse_err(line, format!("unknown directive '{name}'")));
            }
            if dirs.iter().any(|d| d.name == name) {
                return Err(parse_err(line, format!("duplicate directive '{name}'")));
            }
            dirs.push(Directive { line, name, tokens: tokens.collect() });
        }
        let eof = last_line + 1;
        let missing = |what: &str| parse_err(if what == "field" { 1 } else { eof }, format!("missing {what}"));

        let (command, oracle) = match find(&dirs, "cmd") {
            None if dirs.is_empty() => return Err(missing("field")),
            None => return Err(missing("cmd")),
            Some(d) => {
                let (name, rest) = d.tokens.split_first().ok_or_else(|| parse_err(d.line, "missing command"))?;
                let cmd = Command::from_str(name).map_err(|m| parse_err(d.line, m))?;
                match rest {
                    [] => (cmd, false),
                    ["--oracle"] if cmd == Command::Dim => (cmd, true),
                    [tok, ..] => return Err(parse_err(d.line, format!("unexpected token '{tok}'"))),
                }
            }
        };

        let dims = find(&dirs, "dims")
            .map(|d| {
                let args = Args::new(d.line, &d.tokens);
                args.check(&["g", "j", "n"], &[])?;
                let (n_lo, n_hi) = parse_range(d.line, args.require("n")?)?;
                let spec = DimsSpec {
                    g: parse_int(d.line, args.require("g")?, "genus")?,
                    j: parse_int(d.line, args.require("j")?, "j")?,
                    n_lo,
                    n_hi,
                };
                if n_hi < n_lo {
                    return Err(parse_err(d.line, "empty n range"));
                }
                rr_dim(spec.g, spec.j, spec.n_lo).map_err(|e| semantic(d.line, e))?;
                Ok(spec)
            })
            .transpose()?;

        let dims_only = command == Command::Dim && dims.is_some();
        let field_spec = match find(&dirs, "field") {
            Some(d) => {
                let args = Args::new(d.line, &d.tokens);
                args.check(&["p", "t", "mod"], &[])?;
                let modulus = args
                    .get("mod")
                    .map(|m| m.split(',').map(|c| parse_int(d.line, c, "modulus coefficient")).collect())
                    .transpose()?;
                let spec = FieldSpec {
                    p: parse_int(d.line, args.require("p")?, "prime")?,
                    t: args.get("t").map_or(Ok(1), |t| parse_int(d.line, t, "extension degree"))?,
                    modulus,
                };
                spec.build().map_err(|e| semantic(d.line, e))?;
                Some(spec)
            }
            None if dims_only => None,
            None => return Err(missing("field")),
        };
        let k = field_spec.as_ref().map(|s| s.build()).transpose()?;

        let mut job = JobSpec {
            field: field_spec,
            curve: None,
            divisor: None,
            kappa: None,
            points: None,
            fit: None,
            samples: None,
            dims,
            command,
            oracle,
        };
        let Some(k) = k else {
            return Ok(job);
        };

        let needs_curve = !matches!(command, Command::FitCurve) && !dims_only;
        let mut curve = None;
        if let Some(d) = find(&dirs, "curve") {
            let args = Args::new(d.line, &d.tokens);
            args.check(&["f", "h"], &["singular_ok"])?;
            let spec = CurveSpec {
                f: parse_coeffs(&k, d.line, args.require("f")?)?,
                h: args.get("h").map_or(Ok(vec![]), |h| parse_coeffs(&k, d.line, h))?,
                singular_ok: args.flags.contains(&"singular_ok"),
            };
            curve = Some(spec.build(&k).map_err(|e| semantic(d.line, e))?);
            job.curve = Some(spec);
        } else if needs_curve {
            return Err(missing("curve"));
        }

        let on_curve = |line: usize, p: Point| -> Result<Point> {
            match &curve {
                Some(c) if !c.on_curve(&p) => Err(semantic(line, Error::NotOnCurve(p.render(&k)))),
                _ => Ok(p),
            }
        };

        if let Some(d) = find(&dirs, "divisor") {
            let mut spec = DivisorSpec { affine: Vec::new(), omega: 0 };
            let mut seen_inf = false;
            for tok in &d.tokens {
                let (pt, mult) = match tok.rsplit_once('*') {
                    Some((pt, m)) if !pt.ends_with(')') || !m.contains(')') => (pt, parse_int::<i64>(d.line, m, "multiplicity")?),
                    _ => (*tok, 1),
                };
                if pt == "inf" {
                    if seen_inf {
                        return Err(parse_err(d.line, "inf listed twice"));
                    }
                    seen_inf = true;
                    spec.omega = mult;
                } else {
                    let (a, b) = parse_pair(&k, d.line, pt)?;
                    if mult < 1 {
                        return Err(semantic(d.line, Error::OutOfRange(format!("multiplicity {mult} of {pt} must be positive"))));
                    }
                    spec.affine.push((on_curve(d.line, Point::affine(a, b))?, mult));
                }
            }
            job.divisor = Some(spec);
        } else if matches!(command, Command::Basis | Command::Encode | Command::Distance) || (command == Command::Dim && !dims_only) {
            return Err(missing("divisor"));
        }

        if let Some(d) = find(&dirs, "kappa") {
            match &d.tokens[..] {
                [c] => job.kappa = Some(parse_coeffs(&k, d.line, c)?),
                _ => return Err(parse_err(d.line, "expected one coefficient list")),
            }
        }

        if let Some(d) = find(&dirs, "g") {
            let pts = d
                .tokens
                .iter()
                .map(|t| parse_pair(&k, d.line, t).and_then(|(a, b)| on_curve(d.line, Point::affine(a, b))))
                .collect::<Result<Vec<_>>>()?;
            if pts.is_empty() {
                return Err(parse_err(d.line, "no evaluation points"));
            }
            job.points = Some(pts);
        } else if matches!(command, Command::Encode | Command::Distance) {
            return Err(missing("g"));
        }

        if let Some(d) = find(&dirs, "fit") {
            let args = Args::new(d.line, &d.tokens);
            args.check(&["shift", "exp"], &[])?;
            let (lo, hi) = parse_range(d.line, args.require("exp")?)?;
            if lo < 0 || hi < lo {
                return Err(parse_err(d.line, format!("bad exponent range {lo}..{hi}")));
            }
            let shift = parse_elem(&k, d.line, args.require("shift")?)?;
            job.fit = Some(FitSpec { shift, lo: lo as usize, hi: hi as usize });
        } else if command == Command::FitCurve {
            return Err(missing("fit"));
        }

        if let Some(d) = find(&dirs, "samples") {
            let s = d.tokens.iter().map(|t| parse_pair(&k, d.line, t)).collect::<Result<Vec<_>>>()?;
            job.samples = Some(s);
        } else if command == Command::FitCurve {
            return Err(missing("samples"));
        }

        Ok(job)
    }

    /// Canonical text form; `JobSpec::parse` reads it back to an equal value.
    pub fn render(&self) -> String {
        let k = self.field.as_ref().and_then(|f| f.build().ok());
        let elems = |v: &[FieldElement]| -> String {
            let k = k.as_ref().expect("field present");
            v.iter().map(|&e| k.render(e)).collect::<Vec<_>>().join(",")
        };
        let pair = |a: FieldElement, b: FieldElement| -> String {
            let k = k.as_ref().expect("field present");
            format!("({},{})", k.render(a), k.render(b))
        };
        let mut out = String::new();
        if let Some(f) = &self.field {
            out.push_str(&format!("field p={} t={}", f.p, f.t));
            if let Some(m) = &f.modulus {
                let m: Vec<String> = m.iter().map(u64::to_string).collect();
                out.push_str(&format!(" mod={}", m.join(",")));
            }
            out.push('\n');
        }
        if let Some(c) = &self.curve {
            out.push_str(&format!("curve f={}", elems(&c.f)));
            if !c.h.is_empty() {
                out.push_str(&format!(" h={}", elems(&c.h)));
            }
            if c.singular_ok {
                out.push_str(" singular_ok");
            }
            out.push('\n');
        }
        if let Some(d) = &self.divisor {
            out.push_str("divisor");
            for (p, m) in &d.affine {
                if let Point::Affine { x, y } = p {
                    out.push_str(&format!(" {}*{m}", pair(*x, *y)));
                }
            }
            out.push_str(&format!(" inf*{}\n", d.omega));
        }
        if let Some(kp) = &self.kappa {
            out.push_str(&format!("kappa {}\n", elems(kp)));
        }
        if let Some(pts) = &self.points {
            out.push('g');
            for p in pts {
                if let Point::Affine { x, y } = p {
                    out.push_str(&format!(" {}", pair(*x, *y)));
                }
            }
            out.push('\n');
        }
        if let Some(f) = &self.fit {
            out.push_str(&format!("fit shift={} exp={}..{}\n", elems(&[f.shift]), f.lo, f.hi));
        }
        if let Some(s) = &self.samples {
            out.push_str("samples");
            for &(x, y) in s {
                out.push_str(&format!(" {}", pair(x, y)));
            }
            out.push('\n');
        }
        if let Some(d) = &self.dims {
            out.push_str(&format!("dims g={} j={} n={}..{}\n", d.g, d.j, d.n_lo, d.n_hi));
        }
        out.push_str(&format!("cmd {}{}\n", self.command.as_str(), if self.oracle { " --oracle" } else { "" }));
        out
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Exit status for an error: 2 for malformed input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse() {
        2
    } else {
        1
    }
}

/// `error[<code>]: <message>`.
pub fn render_error(e: &Error) -> String {
    format!("error[{}]: {e}\n", e.code())
}

/// Parses and runs a job file.
pub fn run_text(text: &str, budget: u128) -> Outcome {
    match JobSpec::parse(text) {
        Ok(job) => run(&job, budget),
        Err(e) => Outcome { stdout: String::new(), stderr: render_error(&e), exit_code: exit_code(&e) },
    }
}

/// Runs a validated job. Output depends only on the job and the budget.
pub fn run(job: &JobSpec, budget: u128) -> Outcome {
    let mut stderr = String::new();
    match execute(job, budget, &mut stderr) {
        Ok(stdout) => Outcome { stdout, stderr, exit_code: 0 },
        Err(e) => {
            stderr.push_str(&render_error(&e));
            Outcome { stdout: String::new(), stderr, exit_code: exit_code(&e) }
        }
    }
}

/// Runs with the default distance budget.
pub fn run_default(job: &JobSpec) -> Outcome {
    run(job, DEFAULT_BUDGET)
}

fn list(k: &Field, v: &[FieldElement]) -> String {
    v.iter().map(|&e| k.render(e)).collect::<Vec<_>>().join(",")
}

fn execute(job: &JobSpec, budget: u128, stderr: &mut String) -> Result<String> {
    if let (Command::Dim, Some(d)) = (job.command, &job.dims) {
        if job.oracle {
            return Err(Error::OutOfRange("--oracle needs a curve and divisor, not a dims table".into()));
        }
        let mut out = String::new();
        for n in d.n_lo..=d.n_hi {
            out.push_str(&format!("n={n} dim={}\n", rr_dim(d.g, d.j, n)?));
        }
        return Ok(out);
    }

    let k = job.field.as_ref().expect("validated job has a field").build()?;
    if job.command == Command::FitCurve {
        let fit = job.fit.as_ref().expect("validated");
        let samples = job.samples.as_ref().expect("validated");
        let cf = fit_curve(&k, fit.shift, (fit.lo, fit.hi), samples)?;
        let vinv = cf.vandermonde.inverse(&k)?;
        return Ok(format!(
            "shifted={}\nplain={}\n---\n{}---\n{}",
            list(&k, &cf.shifted),
            list(&k, cf.poly.coeffs()),
            cf.vandermonde.to_tsv(&k),
            vinv.to_tsv(&k)
        ));
    }

    let curve = job.curve.as_ref().expect("validated job has a curve").build(&k)?;
    if let Some(w) = curve.warning() {
        stderr.push_str(&format!("warning: singular curve accepted: {w}\n"));
    }
    let kappa = job.kappa.as_ref().map(|c| Poly::new(c.clone()));
    let divisor = job.divisor.as_ref().map(DivisorSpec::build);
    let mut out = String::new();
    match job.command {
        Command::Points => {
            let pts = curve.points();
            for p in &pts {
                out.push_str(&p.render(&k));
                out.push('\n');
            }
            out.push_str(&format!("count={}\n", pts.len()));
        }
        Command::Basis => {
            let b = rr_basis(&curve, divisor.as_ref().expect("validated"), kappa.as_ref())?;
            out.push_str(&b.render(&k));
        }
        Command::Dim => {
            let d = divisor.as_ref().expect("validated");
            let rd = ReducedDivisor::from_divisor(&curve, d)?;
            out.push_str(&format!("dim={}", rr_dim(curve.genus() as i64, rd.j, rd.n)?));
            if job.oracle {
                out.push_str(&format!(" oracle={}", dim_oracle(&curve, d)?));
            }
            out.push('\n');
        }
        Command::Encode | Command::Distance => {
            let points = job.points.as_ref().expect("validated");
            let gc = generator_matrix(&curve, divisor.as_ref().expect("validated"), points, kappa.as_ref())?;
            let dist: Option<Distance> = match min_distance(&gc.code, budget) {
                Ok(d) => Some(d),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            if job.command == Command::Encode {
                let pc = parity_check(&gc.code)?;
                out.push_str(&gc.code.generator().to_tsv(&k));
                out.push_str("---\n");
                out.push_str(&pc.h.to_tsv(&k));
                out.push_str("---\n");
                if let Some(perm) = &pc.permutation {
                    let p: Vec<String> = perm.iter().map(usize::to_string).collect();
                    out.push_str(&format!("permutation={}\n", p.join(",")));
                }
            }
            out.push_str(&gc.code.report(dist.as_ref()));
            out.push('\n');
        }
        Command::FitCurve => unreachable!("handled above"),
    }
    Ok(out)
}
