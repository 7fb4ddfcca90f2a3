//! The line-oriented job language.
//!
//! ```text
//! ring Q[U,V] weights [1,1]
//! ideal I = U^3, U*V^3, V^4
//! core --method both --seed 7
//! ```
//!
//! Statements are separated by newlines or `;`, and `#` starts a comment.

use std::fmt;

use crate::core_engine::{Method, Variant};
use crate::error::{Error, Result};
use crate::kernel::{FieldMode, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: FieldMode,
    pub vars: Vec<String>,
    pub weights: Option<Vec<i64>>,
    pub quotient: Vec<String>,
}

impl RingSpec {
    pub fn build(&self) -> Result<Ring> {
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; self.vars.len()]);
        let ring = Ring::new(&self.vars, &weights, self.field)?;
        if self.quotient.is_empty() {
            return Ok(ring);
        }
        let gens = self.quotient.iter().map(|q| ring.parse(q)).collect::<Result<Vec<_>>>()?;
        ring.with_quotient(&gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub gens: Vec<String>,
}

/// A positional argument: a bare word (name, polynomial, variable or
/// integer) or a parenthesized generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Word(String),
    Group(Vec<String>),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Word(w) => write!(f, "{w}"),
            Arg::Group(g) => write!(f, "({})", g.join(", ")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Core,
    Spread,
    Reduction,
    Multiplicity,
    Verify,
    Ops,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Core => "core",
            CommandKind::Spread => "spread",
            CommandKind::Reduction => "reduction",
            CommandKind::Multiplicity => "multiplicity",
            CommandKind::Verify => "verify",
            CommandKind::Ops => "ops",
        }
    }

    fn from_word(w: &str) -> Option<CommandKind> {
        Some(match w {
            "core" => CommandKind::Core,
            "spread" => CommandKind::Spread,
            "reduction" => CommandKind::Reduction,
            "multiplicity" => CommandKind::Multiplicity,
            "verify" => CommandKind::Verify,
            "ops" => CommandKind::Ops,
            _ => return None,
        })
    }
}

/// Calculator operations and their argument shapes.
pub const OPS: &[(&str, &str)] = &[
    ("gb", "I"),
    ("intersect", "II"),
    ("colon", "II"),
    ("saturate", "II"),
    ("eliminate", "Iv"),
    ("radical-member", "pI"),
    ("member", "pI"),
    ("local-member", "pI"),
    ("dim", "I"),
    ("vdim", "I"),
    ("fitting", "nI"),
    ("local-part", "I"),
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub method: Option<Method>,
    pub seed: Option<u64>,
    pub t_max: Option<usize>,
    pub r_max: Option<usize>,
    pub exponent: Option<usize>,
    pub variant: Option<Variant>,
    pub force: bool,
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    /// Operation name for `ops`.
    pub op: Option<String>,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub ring: RingSpec,
    pub ideals: Vec<IdealSpec>,
    pub command: Command,
    pub options: Options,
}

fn method_word(m: Method) -> &'static str {
    match m {
        Method::Probabilistic => "prob",
        Method::Deterministic => "det",
        Method::Both => "both",
    }
}

fn variant_word(v: Variant) -> &'static str {
    match v {
        Variant::FPower => "fpower",
        Variant::HSat => "hsat",
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        let field = match r.field {
            FieldMode::Rational => "Q".to_string(),
            FieldMode::Prime(p) => format!("Fp{p}"),
        };
        write!(f, "ring {field}[{}]", r.vars.join(","))?;
        if let Some(w) = &r.weights {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            write!(f, " weights [{}]", w.join(","))?;
        }
        if !r.quotient.is_empty() {
            write!(f, " quotient [{}]", r.quotient.join(", "))?;
        }
        writeln!(f)?;
        for i in &self.ideals {
            writeln!(f, "ideal {} = {}", i.name, i.gens.join(", "))?;
        }
        write!(f, "{}", self.command.kind.as_str())?;
        if let Some(op) = &self.command.op {
            write!(f, " {op}")?;
        }
        for a in &self.command.args {
            write!(f, " {a}")?;
        }
        let o = &self.options;
        if let Some(m) = o.method {
            write!(f, " --method {}", method_word(m))?;
        }
        if let Some(s) = o.seed {
            write!(f, " --seed {s}")?;
        }
        if let Some(t) = o.t_max {
            write!(f, " --t-max {t}")?;
        }
        if let Some(r) = o.r_max {
            write!(f, " --r-max {r}")?;
        }
        if let Some(e) = o.exponent {
            write!(f, " --exponent {e}")?;
        }
        if let Some(v) = o.variant {
            write!(f, " --variant {}", variant_word(v))?;
        }
        if o.force {
            write!(f, " --force")?;
        }
        if o.json {
            write!(f, " --json")?;
        }
        writeln!(f)
    }
}

/// A statement with its position: 1-based line and the column of its first character.
struct Stmt<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn statements(src: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            if !piece.trim().is_empty() {
                let col = line[..start + lead].chars().count() + 1;
                out.push(Stmt {
                    text: piece.trim(),
                    line: ln + 1,
                    col,
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

/// Character cursor over one statement, reporting errors at absolute positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(s: &Stmt) -> Cursor {
        Cursor {
            chars: s.text.chars().collect(),
            pos: 0,
            line: s.line,
            col: s.col,
        }
    }

    fn err_at<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.col + pos,
            message: msg.into(),
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        self.err_at(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    /// A run of non-space characters that are not brackets, commas or `=`.
    fn word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_whitespace() || "[](),=".contains(c) {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some((self.chars[start..self.pos].iter().collect(), start))
        }
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let start = self.pos;
        self.pos = self.chars.len();
        (self.chars[start..].iter().collect(), start)
    }

    /// Items between `open` and `close`, split at top-level commas, with their offsets.
    fn delimited(&mut self, open: char, close: char) -> Result<Vec<(String, usize)>> {
        self.expect(open)?;
        let mut items = Vec::new();
        let mut cur = String::new();
        let mut cur_start = self.pos;
        loop {
            let Some(&c) = self.chars.get(self.pos) else {
                return self.err(format!("missing `{close}`"));
            };
            self.pos += 1;
            if c == close || c == ',' {
                let lead = cur.len() - cur.trim_start().len();
                let item = cur.trim().to_string();
                if !item.is_empty() {
                    items.push((item, cur_start + cur[..lead].chars().count()));
                } else if c == ',' || !items.is_empty() {
                    return self.err_at(self.pos - 1, "empty list entry");
                }
                if c == close {
                    return Ok(items);
                }
                cur.clear();
                cur_start = self.pos;
            } else if c == open {
                return self.err_at(self.pos - 1, format!("unexpected `{c}`"));
            } else {
                cur.push(c);
            }
        }
    }
}

fn split_top_commas(text: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let lead = piece.chars().count() - piece.trim_start().chars().count();
        out.push((piece.trim().to_string(), offset + lead));
        offset += piece.chars().count() + 1;
    }
    out
}

fn parse_field(cur: &Cursor, word: &str, at: usize) -> Result<FieldMode> {
    if word == "Q" || word == "QQ" {
        return Ok(FieldMode::Rational);
    }
    let digits = word.strip_prefix("Fp").or_else(|| word.strip_prefix("F"));
    match digits.map(|d| d.parse::<u64>()) {
        Some(Ok(p)) if crate::kernel::coeff::is_prime(p) && p < (1 << 32) => Ok(FieldMode::Prime(p)),
        Some(Ok(p)) => cur.err_at(at, format!("modulus {p} is not a prime below 2^32")),
        _ => cur.err_at(at, format!("unknown field `{word}` (use Q or Fp<prime>)")),
    }
}

fn parse_ring(s: &Stmt) -> Result<RingSpec> {
    let mut cur = Cursor::new(s);
    cur.word();
    let Some((fw, fat)) = cur.word() else {
        return cur.err("expected a field");
    };
    let field = parse_field(&cur, &fw, fat)?;
    let vars: Vec<String> = cur.delimited('[', ']')?.into_iter().map(|(v, _)| v).collect();
    if vars.is_empty() {
        return cur.err("a ring needs at least one variable");
    }
    let mut weights = None;
    let mut quotient = Vec::new();
    while let Some((kw, at)) = cur.word() {
        match kw.as_str() {
            "weights" => {
                let list = cur.delimited('[', ']')?;
                let mut w = Vec::new();
                for (item, off) in list {
                    match item.parse::<i64>() {
                        Ok(x) if x > 0 => w.push(x),
                        _ => return cur.err_at(off, format!("weight `{item}` is not a positive integer")),
                    }
                }
                if w.len() != vars.len() {
                    return cur.err_at(at, format!("{} weights for {} variables", w.len(), vars.len()));
                }
                weights = Some(w);
            }
            "quotient" => quotient = cur.delimited('[', ']')?,
            other => return cur.err_at(at, format!("unexpected `{other}` in ring declaration")),
        }
    }
    if !cur.at_end() {
        return cur.err("unexpected input in ring declaration");
    }
    let mut spec = RingSpec {
        field,
        vars,
        weights,
        quotient: Vec::new(),
    };
    let ring = spec.build().or_else(|e| cur.err_at(0, e.to_string()))?;
    for (q, off) in &quotient {
        check_poly(&cur, &ring, q, *off)?;
    }
    spec.quotient = quotient.into_iter().map(|(q, _)| q).collect();
    spec.build().or_else(|e| cur.err_at(0, e.to_string()))?;
    Ok(spec)
}

fn check_poly(cur: &Cursor, ring: &Ring, text: &str, at: usize) -> Result<()> {
    match ring.parse(text) {
        Ok(_) => Ok(()),
        Err(Error::Parse { column, message }) => cur.err_at(at + column - 1, message),
        Err(e) => cur.err_at(at, e.to_string()),
    }
}

fn parse_ideal(s: &Stmt, ring: &Ring) -> Result<IdealSpec> {
    let mut cur = Cursor::new(s);
    cur.word();
    let Some((name, at)) = cur.word() else {
        return cur.err("expected an ideal name");
    };
    if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return cur.err_at(at, format!("invalid ideal name `{name}`"));
    }
    cur.expect('=')?;
    let (rest, start) = cur.rest();
    if rest.trim().is_empty() {
        return cur.err_at(start, "ideal requires at least one generator");
    }
    let mut gens = Vec::new();
    for (g, off) in split_top_commas(&rest) {
        if g.is_empty() {
            return cur.err_at(start + off, "empty generator");
        }
        check_poly(&cur, ring, &g, start + off)?;
        gens.push(g);
    }
    Ok(IdealSpec { name, gens })
}

fn parse_command(s: &Stmt, kind: CommandKind) -> Result<(Command, Options)> {
    let mut cur = Cursor::new(s);
    cur.word();
    let mut opts = Options::default();
    let mut op = None;
    if kind == CommandKind::Ops {
        match cur.word() {
            Some((w, at)) => {
                if !OPS.iter().any(|(n, _)| *n == w) {
                    let names: Vec<&str> = OPS.iter().map(|(n, _)| *n).collect();
                    return cur.err_at(at, format!("unknown operation `{w}` (one of {})", names.join(", ")));
                }
                op = Some(w);
            }
            None => return cur.err("expected an operation after `ops`"),
        }
    }
    let mut args = Vec::new();
    loop {
        match cur.peek() {
            None => break,
            Some('(') => {
                let items = cur.delimited('(', ')')?;
                args.push(Arg::Group(items.into_iter().map(|(g, _)| g).collect()));
            }
            Some(_) => {
                let Some((w, at)) = cur.word() else {
                    return cur.err("unexpected character");
                };
                if let Some(flag) = w.strip_prefix("--") {
                    parse_flag(&mut cur, &mut opts, flag, at)?;
                } else {
                    args.push(Arg::Word(w));
                }
            }
        }
    }
    Ok((Command { kind, op, args }, opts))
}

fn flag_value<T: std::str::FromStr>(cur: &mut Cursor, flag: &str, at: usize) -> Result<T> {
    match cur.word() {
        Some((v, vat)) => v
            .parse::<T>()
            .or_else(|_| cur.err_at(vat, format!("invalid value `{v}` for --{flag}"))),
        None => cur.err_at(at, format!("--{flag} needs a value")),
    }
}

fn parse_flag(cur: &mut Cursor, o: &mut Options, flag: &str, at: usize) -> Result<()> {
    match flag {
        "method" => {
            let (v, vat) = cur.word().ok_or(()).or_else(|_| cur.err_at(at, "--method needs a value"))?;
            o.method = Some(match v.as_str() {
                "prob" | "probabilistic" => Method::Probabilistic,
                "det" | "deterministic" => Method::Deterministic,
                "both" => Method::Both,
                _ => return cur.err_at(vat, format!("unknown method `{v}` (prob, det or both)")),
            });
        }
        "variant" => {
            let (v, vat) = cur.word().ok_or(()).or_else(|_| cur.err_at(at, "--variant needs a value"))?;
            o.variant = Some(match v.as_str() {
                "fpower" => Variant::FPower,
                "hsat" => Variant::HSat,
                _ => return cur.err_at(vat, format!("unknown variant `{v}` (fpower or hsat)")),
            });
        }
        "seed" => o.seed = Some(flag_value(cur, flag, at)?),
        "t-max" => o.t_max = Some(flag_value(cur, flag, at)?),
        "r-max" => o.r_max = Some(flag_value(cur, flag, at)?),
        "exponent" => o.exponent = Some(flag_value(cur, flag, at)?),
        "force" => o.force = true,
        "json" => o.json = true,
        _ => return cur.err_at(at, format!("unknown flag `--{flag}`")),
    }
    Ok(())
}

/// Parses and validates a job. Polynomials are checked against the declared ring.
pub fn parse_jobspec(src: &str) -> Result<JobSpec> {
    let mut ring: Option<(RingSpec, Ring)> = None;
    let mut ideals: Vec<IdealSpec> = Vec::new();
    let mut command = None;
    let mut last = (1, 1);
    for s in statements(src) {
        last = (s.line, s.col);
        let head = s.text.split_whitespace().next().unwrap_or("");
        let syntax = |msg: String| Error::Syntax {
            line: s.line,
            column: s.col,
            message: msg,
        };
        if command.is_some() {
            return Err(syntax("statements after the command".into()));
        }
        match head {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax("ring declared twice".into()));
                }
                let spec = parse_ring(&s)?;
                let built = spec.build()?;
                ring = Some((spec, built));
            }
            "ideal" => {
                let Some((_, r)) = &ring else {
                    return Err(syntax("`ideal` before `ring`".into()));
                };
                let i = parse_ideal(&s, r)?;
                if ideals.iter().any(|o| o.name == i.name) {
                    return Err(syntax(format!("ideal `{}` declared twice", i.name)));
                }
                ideals.push(i);
            }
            w => match CommandKind::from_word(w) {
                Some(kind) => {
                    if ring.is_none() {
                        return Err(syntax("command before `ring`".into()));
                    }
                    command = Some(parse_command(&s, kind)?);
                }
                None => return Err(syntax(format!("unknown statement `{w}`"))),
            },
        }
    }
    let Some((ring, built)) = ring else {
        return Err(Error::Syntax {
            line: last.0,
            column: last.1,
            message: "missing `ring` declaration".into(),
        });
    };
    let Some((command, options)) = command else {
        return Err(Error::Syntax {
            line: last.0,
            column: last.1,
            message: "missing command".into(),
        });
    };
    let job = JobSpec {
        ring,
        ideals,
        command,
        options,
    };
    validate_args(&job, &built).map_err(|m| Error::Syntax {
        line: last.0,
        column: last.1,
        message: m,
    })?;
    Ok(job)
}

fn validate_args(job: &JobSpec, ring: &Ring) -> std::result::Result<(), String> {
    let c = &job.command;
    let ideal_arg = |a: &Arg| -> std::result::Result<(), String> {
        match a {
            Arg::Word(w) if job.ideals.iter().any(|i| &i.name == w) => Ok(()),
            Arg::Word(w) => Err(format!("unknown ideal `{w}`")),
            Arg::Group(g) if g.is_empty() => Err("ideal requires at least one generator".into()),
            Arg::Group(g) => g.iter().try_for_each(|p| ring.parse(p).map(|_| ()).map_err(|e| e.to_string())),
        }
    };
    let shape = match c.kind {
        CommandKind::Ops => OPS.iter().find(|(n, _)| Some(*n) == c.op.as_deref()).map(|(_, s)| *s).unwrap_or(""),
        CommandKind::Verify if c.args.len() == 2 => "II",
        CommandKind::Verify => "I",
        _ if c.args.is_empty() => {
            if job.ideals.is_empty() {
                return Err(format!("`{}` needs an ideal", c.kind.as_str()));
            }
            ""
        }
        _ => "I",
    };
    let variadic = shape.ends_with('v');
    let fixed = if variadic { shape.len() - 1 } else { shape.len() };
    if c.args.len() < fixed || (!variadic && c.args.len() > fixed) {
        return Err(format!(
            "`{}` expects {} argument(s), got {}",
            c.op.as_deref().unwrap_or(c.kind.as_str()),
            fixed,
            c.args.len()
        ));
    }
    for (k, a) in c.args.iter().enumerate() {
        let kind = shape.as_bytes().get(k).copied().unwrap_or(b'v');
        match kind {
            b'I' => ideal_arg(a)?,
            b'p' => match a {
                Arg::Word(w) => ring.parse(w).map(|_| ()).map_err(|e| e.to_string())?,
                Arg::Group(g) if g.len() == 1 => ring.parse(&g[0]).map(|_| ()).map_err(|e| e.to_string())?,
                Arg::Group(_) => return Err("expected a single polynomial".into()),
            },
            b'n' => match a {
                Arg::Word(w) if w.parse::<usize>().is_ok() => {}
                _ => return Err(format!("expected a non-negative integer, got `{a}`")),
            },
            _ => match a {
                Arg::Word(w) if ring.var_index(w).is_some() => {}
                _ => return Err(format!("expected a variable, got `{a}`")),
            },
        }
    }
    Ok(())
}
