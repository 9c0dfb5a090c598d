//! The batch analysis script language: `importFile`, `cluster`, `merge`,
//! `removeCR`, `exportFile`. Published analysis scripts run verbatim.
//!
//! Grammar: a script is a sequence of `name(arg: value, ...)` calls. Values
//! are double-quoted strings, integers, decimal reals, booleans, or
//! bracketed lists `[a, b, c]`. Whitespace and newlines are insignificant
//! between tokens, so a command may span lines. Argument names and types
//! are validated against each command's schema before anything executes.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::cluster::{cluster, merge, remove_cr, ClusterConfig, Clustering};
use crate::export::{export_cr_csv, export_graph_csv, export_svg, ExportError, SvgOptions, SvgSeries};
use crate::import::{parse_csv, parse_wos, ImportConfig, ImportError};
use crate::record::{AggregatedCR, Corpus, YearRange};
use crate::spectroscopy::{SpectroError, Spectrogram};

/// Median window used by script-driven graph exports.
pub const SCRIPT_WINDOW: usize = 5;

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown command `{name}` at line {line}")]
    UnknownCommand {
        name: String,
        line: usize,
    },

    #[error("unknown argument `{argument}` for {command} at line {line}")]
    UnknownArgument {
        command: &'static str,
        argument: String,
        line: usize,
    },

    #[error("argument `{argument}` of {command} at line {line}: expected {expected}")]
    TypeMismatch {
        command: &'static str,
        argument: String,
        expected: String,
        line: usize,
    },

    #[error("missing required argument `{argument}` for {command} at line {line}")]
    MissingArgument {
        command: &'static str,
        argument: &'static str,
        line: usize,
    },

    #[error("duplicate argument `{argument}` for {command} at line {line}")]
    DuplicateArgument {
        command: &'static str,
        argument: String,
        line: usize,
    },

    #[error("command {index} ({command}): {message}")]
    State {
        index: usize,
        command: &'static str,
        message: String,
    },

    #[error("command {index} ({command}) failed: {source}")]
    Exec {
        index: usize,
        command: &'static str,
        source: ExecError,
    },
}

#[derive(Debug, Error)]
pub enum ExecError {
    #[error(transparent)]
    Import(#[from] ImportError),
    #[error(transparent)]
    Spectro(#[from] SpectroError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl ScriptError {
    /// Whether the root cause is an I/O failure (exit code 2 territory)
    /// rather than a script or analysis problem.
    pub fn is_io(&self) -> bool {
        match self {
            ScriptError::Exec { source, .. } => match source {
                ExecError::Io(_) => true,
                ExecError::Import(e) => e.is_io(),
                ExecError::Export(e) => matches!(e, ExportError::Io(_)),
                ExecError::Spectro(_) => false,
            },
            _ => false,
        }
    }
}

/// A script value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Str(String),
    Int(i64),
    Real(f64),
    Bool(bool),
    List(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Str(s) => write!(f, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
            Value::Int(i) => write!(f, "{i}"),
            Value::Real(r) => {
                if r.fract() == 0.0 && r.is_finite() && r.abs() < 1e15 {
                    write!(f, "{r:.1}")
                } else {
                    write!(f, "{r}")
                }
            }
            Value::Bool(b) => write!(f, "{b}"),
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandName {
    ImportFile,
    Cluster,
    Merge,
    RemoveCr,
    ExportFile,
}

impl CommandName {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandName::ImportFile => "importFile",
            CommandName::Cluster => "cluster",
            CommandName::Merge => "merge",
            CommandName::RemoveCr => "removeCR",
            CommandName::ExportFile => "exportFile",
        }
    }

    fn from_str(name: &str) -> Option<Self> {
        match name {
            "importFile" => Some(CommandName::ImportFile),
            "cluster" => Some(CommandName::Cluster),
            "merge" => Some(CommandName::Merge),
            "removeCR" => Some(CommandName::RemoveCr),
            "exportFile" => Some(CommandName::ExportFile),
            _ => None,
        }
    }
}

/// One validated command: name plus named arguments in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub name: CommandName,
    pub args: Vec<(String, Value)>,
    /// Source line of the command name, for diagnostics.
    pub line: usize,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name.as_str())?;
        for (i, (k, v)) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, ")")
    }
}

impl Command {
    fn arg(&self, name: &str) -> Option<&Value> {
        self.args.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    fn str_arg(&self, name: &str) -> Option<&str> {
        match self.arg(name) {
            Some(Value::Str(s)) => Some(s),
            _ => None,
        }
    }

    fn int_arg(&self, name: &str) -> Option<i64> {
        match self.arg(name) {
            Some(Value::Int(i)) => Some(*i),
            _ => None,
        }
    }

    fn real_arg(&self, name: &str) -> Option<f64> {
        match self.arg(name) {
            Some(Value::Real(r)) => Some(*r),
            Some(Value::Int(i)) => Some(*i as f64),
            _ => None,
        }
    }

    fn bool_arg(&self, name: &str) -> Option<bool> {
        match self.arg(name) {
            Some(Value::Bool(b)) => Some(*b),
            _ => None,
        }
    }

    fn year_range_arg(&self, name: &str) -> Option<YearRange> {
        match self.arg(name) {
            Some(Value::List(items)) => match items.as_slice() {
                [Value::Int(lo), Value::Int(hi), Value::Bool(missing)] => {
                    YearRange::new(*lo as i32, *hi as i32, *missing).ok()
                }
                _ => None,
            },
            _ => None,
        }
    }

    fn count_range_arg(&self, name: &str) -> Option<(u64, u64)> {
        match self.arg(name) {
            Some(Value::List(items)) => match items.as_slice() {
                [Value::Int(lo), Value::Int(hi)] if 0 <= *lo && lo <= hi => {
                    Some((*lo as u64, *hi as u64))
                }
                _ => None,
            },
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Lexing and parsing

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Str(String),
    Int(i64),
    Real(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
}

struct Lexed {
    token: Token,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ScriptError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '(' | ')' | '[' | ']' | ':' | ',' => {
                bump!();
                let token = match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '[' => Token::LBracket,
                    ']' => Token::RBracket,
                    ':' => Token::Colon,
                    _ => Token::Comma,
                };
                tokens.push(Lexed { token, line: tline, col: tcol });
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None => {
                            return Err(ScriptError::Syntax {
                                line: tline,
                                col: tcol,
                                message: "unterminated string".to_string(),
                            })
                        }
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            other => {
                                return Err(ScriptError::Syntax {
                                    line,
                                    col,
                                    message: format!(
                                        "invalid escape `\\{}`",
                                        other.map(String::from).unwrap_or_default()
                                    ),
                                })
                            }
                        },
                        Some(c) => s.push(c),
                    }
                }
                tokens.push(Lexed { token: Token::Str(s), line: tline, col: tcol });
            }
            c if c.is_ascii_digit() || c == '-' => {
                let mut num = String::new();
                num.push(bump!().unwrap());
                let mut is_real = false;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(bump!().unwrap());
                    } else if d == '.' && !is_real {
                        is_real = true;
                        num.push(bump!().unwrap());
                    } else {
                        break;
                    }
                }
                let token = if is_real {
                    num.parse().map(Token::Real).map_err(|_| ())
                } else {
                    num.parse().map(Token::Int).map_err(|_| ())
                };
                let token = token.map_err(|()| ScriptError::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("invalid number `{num}`"),
                })?;
                tokens.push(Lexed { token, line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(bump!().unwrap());
                    } else {
                        break;
                    }
                }
                tokens.push(Lexed { token: Token::Ident(ident), line: tline, col: tcol });
            }
            other => {
                return Err(ScriptError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Lexed> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Lexed> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .or_else(|| self.tokens.last().map(|t| (t.line, t.col + 1)))
            .unwrap_or((1, 1))
    }

    fn syntax(&self, message: impl Into<String>) -> ScriptError {
        let (line, col) = self.here();
        ScriptError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), ScriptError> {
        match self.next() {
            Some(t) if t.token == token => Ok(()),
            Some(t) => Err(ScriptError::Syntax {
                line: t.line,
                col: t.col,
                message: format!("expected {what}"),
            }),
            None => Err(self.syntax(format!("expected {what}, found end of script"))),
        }
    }

    fn value(&mut self) -> Result<Value, ScriptError> {
        let Some(t) = self.next() else {
            return Err(self.syntax("expected a value, found end of script"));
        };
        let (line, col) = (t.line, t.col);
        match &t.token {
            Token::Str(s) => Ok(Value::Str(s.clone())),
            Token::Int(i) => Ok(Value::Int(*i)),
            Token::Real(r) => Ok(Value::Real(*r)),
            Token::Ident(id) if id == "true" => Ok(Value::Bool(true)),
            Token::Ident(id) if id == "false" => Ok(Value::Bool(false)),
            Token::LBracket => {
                let mut items = Vec::new();
                if matches!(self.peek().map(|t| &t.token), Some(Token::RBracket)) {
                    self.next();
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    match self.next() {
                        Some(t) if t.token == Token::Comma => continue,
                        Some(t) if t.token == Token::RBracket => break,
                        Some(t) => {
                            return Err(ScriptError::Syntax {
                                line: t.line,
                                col: t.col,
                                message: "expected `,` or `]` in list".to_string(),
                            })
                        }
                        None => return Err(self.syntax("unterminated list")),
                    }
                }
                Ok(Value::List(items))
            }
            other => Err(ScriptError::Syntax {
                line,
                col,
                message: format!("expected a value, found {other:?}"),
            }),
        }
    }

    fn command(&mut self) -> Result<Command, ScriptError> {
        let Some(t) = self.next() else {
            return Err(self.syntax("expected a command name"));
        };
        let (line, col) = (t.line, t.col);
        let Token::Ident(name) = &t.token else {
            return Err(ScriptError::Syntax {
                line,
                col,
                message: "expected a command name".to_string(),
            });
        };
        let name = name.clone();
        let Some(cmd_name) = CommandName::from_str(&name) else {
            return Err(ScriptError::UnknownCommand { name, line });
        };
        self.expect(Token::LParen, "`(` after command name")?;
        let mut args = Vec::new();
        if matches!(self.peek().map(|t| &t.token), Some(Token::RParen)) {
            self.next();
        } else {
            loop {
                let Some(t) = self.next() else {
                    return Err(self.syntax("expected an argument name"));
                };
                let (aline, acol) = (t.line, t.col);
                let Token::Ident(arg_name) = &t.token else {
                    return Err(ScriptError::Syntax {
                        line: aline,
                        col: acol,
                        message: "expected an argument name".to_string(),
                    });
                };
                let arg_name = arg_name.clone();
                self.expect(Token::Colon, "`:` after argument name")?;
                let value = self.value()?;
                args.push((arg_name, value));
                match self.next() {
                    Some(t) if t.token == Token::Comma => continue,
                    Some(t) if t.token == Token::RParen => break,
                    Some(t) => {
                        return Err(ScriptError::Syntax {
                            line: t.line,
                            col: t.col,
                            message: "expected `,` or `)` in argument list".to_string(),
                        })
                    }
                    None => return Err(self.syntax("unterminated argument list")),
                }
            }
        }
        Ok(Command {
            name: cmd_name,
            args,
            line,
        })
    }
}

// ---------------------------------------------------------------------------
// Schema validation

struct ArgSpec {
    name: &'static str,
    required: bool,
    expected: &'static str,
    check: fn(&Value) -> bool,
}

fn schema(name: CommandName) -> &'static [ArgSpec] {
    const STR: fn(&Value) -> bool = |v| matches!(v, Value::Str(_));
    match name {
        CommandName::ImportFile => &[
            ArgSpec { name: "file", required: true, expected: "a string", check: STR },
            ArgSpec {
                name: "type",
                required: false,
                expected: "one of \"WOS\", \"CSV\"",
                check: |v| matches!(v, Value::Str(s) if s == "WOS" || s == "CSV"),
            },
            ArgSpec {
                name: "RPY",
                required: false,
                expected: "a year range [lo, hi, includeMissing] with lo <= hi",
                check: is_year_triple,
            },
            ArgSpec {
                name: "PY",
                required: false,
                expected: "a year range [lo, hi, includeMissing] with lo <= hi",
                check: is_year_triple,
            },
            ArgSpec {
                name: "maxCR",
                required: false,
                expected: "a non-negative integer",
                check: |v| matches!(v, Value::Int(i) if *i >= 0),
            },
        ],
        CommandName::Cluster => &[
            ArgSpec {
                name: "threshold",
                required: false,
                expected: "a number in [0, 1]",
                check: |v| match v {
                    Value::Real(r) => (0.0..=1.0).contains(r),
                    Value::Int(i) => (0..=1).contains(i),
                    _ => false,
                },
            },
            ArgSpec { name: "volume", required: false, expected: "a boolean", check: is_bool },
            ArgSpec { name: "page", required: false, expected: "a boolean", check: is_bool },
            ArgSpec { name: "DOI", required: false, expected: "a boolean", check: is_bool },
        ],
        CommandName::Merge => &[],
        CommandName::RemoveCr => &[ArgSpec {
            name: "N_CR",
            required: true,
            expected: "a count range [lo, hi] with 0 <= lo <= hi",
            check: |v| match v {
                Value::List(items) => {
                    matches!(items.as_slice(), [Value::Int(lo), Value::Int(hi)] if 0 <= *lo && lo <= hi)
                }
                _ => false,
            },
        }],
        CommandName::ExportFile => &[
            ArgSpec { name: "file", required: true, expected: "a string", check: STR },
            ArgSpec {
                name: "type",
                required: true,
                expected: "one of \"CSV_CR\", \"CSV_GRAPH\", \"SVG_GRAPH\"",
                check: |v| {
                    matches!(v, Value::Str(s) if s == "CSV_CR" || s == "CSV_GRAPH" || s == "SVG_GRAPH")
                },
            },
        ],
    }
}

fn is_bool(v: &Value) -> bool {
    matches!(v, Value::Bool(_))
}

fn is_year_triple(v: &Value) -> bool {
    match v {
        Value::List(items) => matches!(
            items.as_slice(),
            [Value::Int(lo), Value::Int(hi), Value::Bool(_)] if lo <= hi
        ),
        _ => false,
    }
}

fn validate(cmd: &Command) -> Result<(), ScriptError> {
    let specs = schema(cmd.name);
    let mut seen: Vec<&str> = Vec::new();
    for (arg, value) in &cmd.args {
        let Some(spec) = specs.iter().find(|s| s.name == arg) else {
            return Err(ScriptError::UnknownArgument {
                command: cmd.name.as_str(),
                argument: arg.clone(),
                line: cmd.line,
            });
        };
        if seen.contains(&spec.name) {
            return Err(ScriptError::DuplicateArgument {
                command: cmd.name.as_str(),
                argument: arg.clone(),
                line: cmd.line,
            });
        }
        seen.push(spec.name);
        if !(spec.check)(value) {
            return Err(ScriptError::TypeMismatch {
                command: cmd.name.as_str(),
                argument: arg.clone(),
                expected: spec.expected.to_string(),
                line: cmd.line,
            });
        }
    }
    for spec in specs.iter().filter(|s| s.required) {
        if !seen.contains(&spec.name) {
            return Err(ScriptError::MissingArgument {
                command: cmd.name.as_str(),
                argument: spec.name,
                line: cmd.line,
            });
        }
    }
    Ok(())
}

/// Parses a script into validated commands, in source order.
pub fn parse_script(text: &str) -> Result<Vec<Command>, ScriptError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut commands = Vec::new();
    while parser.peek().is_some() {
        let cmd = parser.command()?;
        validate(&cmd)?;
        commands.push(cmd);
    }
    Ok(commands)
}

// ---------------------------------------------------------------------------
// Execution

/// Where a script reads inputs and writes exports.
#[derive(Debug, Clone)]
pub struct ExecContext {
    pub data_dir: PathBuf,
    pub out_dir: PathBuf,
}

impl ExecContext {
    pub fn new(data_dir: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        ExecContext {
            data_dir: data_dir.into(),
            out_dir: out_dir.into(),
        }
    }

    fn resolve_in(&self, file: &str) -> PathBuf {
        let p = Path::new(file);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.data_dir.join(p)
        }
    }

    fn resolve_out(&self, file: &str) -> PathBuf {
        let p = Path::new(file);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.out_dir.join(p)
        }
    }
}

/// Pipeline state threaded through the commands of one script run.
/// Downstream state is discarded whenever an upstream stage reruns.
#[derive(Debug, Default)]
pub struct AnalysisSession {
    pub corpus: Option<Corpus>,
    pub rpy_range: Option<YearRange>,
    pub clustering: Option<Clustering>,
    pub aggregates: Option<Vec<AggregatedCR>>,
    /// Pretty-printed log of successfully executed commands.
    pub history: Vec<String>,
}

impl AnalysisSession {
    pub fn new() -> Self {
        AnalysisSession::default()
    }
}

/// Executes validated commands against a session, stopping at the first
/// error. Errors carry the 1-based index of the offending command.
pub fn execute(
    commands: &[Command],
    mut session: AnalysisSession,
    ctx: &ExecContext,
) -> Result<AnalysisSession, ScriptError> {
    for (i, cmd) in commands.iter().enumerate() {
        let index = i + 1;
        run_command(cmd, &mut session, ctx, index)?;
        session.history.push(cmd.to_string());
    }
    Ok(session)
}

fn run_command(
    cmd: &Command,
    session: &mut AnalysisSession,
    ctx: &ExecContext,
    index: usize,
) -> Result<(), ScriptError> {
    let state_err = |message: &str| ScriptError::State {
        index,
        command: cmd.name.as_str(),
        message: message.to_string(),
    };
    let exec_err = |source: ExecError| ScriptError::Exec {
        index,
        command: cmd.name.as_str(),
        source,
    };

    match cmd.name {
        CommandName::ImportFile => {
            let file = cmd.str_arg("file").expect("validated");
            let config = ImportConfig {
                rpy_range: cmd.year_range_arg("RPY").unwrap_or_else(YearRange::all),
                py_range: cmd.year_range_arg("PY").unwrap_or_else(YearRange::all),
                max_cr_per_record: cmd.int_arg("maxCR").unwrap_or(0) as usize,
            };
            let path = ctx.resolve_in(file);
            let handle = File::open(&path)
                .map_err(|e| exec_err(ExecError::Io(e)))?;
            let mut corpus = match cmd.str_arg("type").unwrap_or("WOS") {
                "CSV" => parse_csv(handle, &config).map_err(|e| exec_err(e.into()))?,
                _ => parse_wos(BufReader::new(handle), &config)
                    .map_err(|e| exec_err(e.into()))?,
            };
            corpus.provenance = file.to_string();
            session.corpus = Some(corpus);
            session.rpy_range = Some(config.rpy_range);
            session.clustering = None;
            session.aggregates = None;
        }
        CommandName::Cluster => {
            let Some(corpus) = &session.corpus else {
                return Err(state_err("no corpus imported yet"));
            };
            let config = ClusterConfig {
                threshold: cmd.real_arg("threshold").unwrap_or(0.75),
                require_volume_match: cmd.bool_arg("volume").unwrap_or(true),
                require_page_match: cmd.bool_arg("page").unwrap_or(true),
                require_doi_match: cmd.bool_arg("DOI").unwrap_or(false),
                cross_rpy: false,
            };
            session.clustering = Some(cluster(&corpus.all_cited_refs(), &config));
            session.aggregates = None;
        }
        CommandName::Merge => {
            let Some(clustering) = &session.clustering else {
                return Err(state_err("merge requires a prior cluster command"));
            };
            session.aggregates = Some(merge(clustering));
        }
        CommandName::RemoveCr => {
            let Some(aggregates) = session.aggregates.take() else {
                return Err(state_err("removeCR requires merged aggregates"));
            };
            let (lo, hi) = cmd.count_range_arg("N_CR").expect("validated");
            session.aggregates = Some(remove_cr(aggregates, lo, hi));
        }
        CommandName::ExportFile => {
            let Some(aggregates) = &session.aggregates else {
                return Err(state_err("exportFile requires merged aggregates"));
            };
            let file = cmd.str_arg("file").expect("validated");
            let path = ctx.resolve_out(file);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent).map_err(|e| exec_err(ExecError::Io(e)))?;
            }
            match cmd.str_arg("type").expect("validated") {
                "CSV_CR" => {
                    export_cr_csv(aggregates, &path).map_err(|e| exec_err(e.into()))?;
                }
                kind => {
                    let range = session
                        .rpy_range
                        .expect("rpy_range set by importFile");
                    let spectro = Spectrogram::analyze(aggregates, &range, SCRIPT_WINDOW)
                        .map_err(|e| exec_err(e.into()))?;
                    match kind {
                        "CSV_GRAPH" => {
                            export_graph_csv(&spectro, &path).map_err(|e| exec_err(e.into()))?;
                        }
                        _ => {
                            let series = [SvgSeries {
                                name: file,
                                spectrogram: &spectro,
                            }];
                            export_svg(&series, &SvgOptions::default(), &path)
                                .map_err(|e| exec_err(e.into()))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
