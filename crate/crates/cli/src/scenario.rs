//! The scenario language. One statement per line, `#` starts a comment.
//!
//! ```text
//! page Sigma_1_1 dim=2 handles=[0:1,1:2] stein=true spheres=[a,b]
//! word w = a^1 b^-1
//! openbook B = (Sigma_1_1, w)
//! manifold L21 = catalog "L(2,1) std" dim=3 fill=stein ribbons=[Sigma_1_1]
//! manifold S3 = mnk 1 1
//! sum C = B B
//! surgery R = S3 L 2 param=I
//! cover C2 = L21 2 along=Sigma_1_1
//! fibered F = Sigma_1_1 w w
//! kirby K2 = cover Sigma_1_1 2 base=l21 out=cover_q2.kirby
//! kirby K = surgery 1
//! verify equal C C2
//! verify fillable C2 stein
//! verify handles K2 1 2
//! verify twist n=2
//! verify forms
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Syntax,
    UndeclaredName,
    ArityMismatch,
    /// A name used as the wrong kind of object, or declared twice.
    NameConflict,
    /// A downstream operation rejected its input.
    Runtime,
}

impl ErrorCode {
    pub fn code(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E001",
            ErrorCode::UndeclaredName => "E002",
            ErrorCode::ArityMismatch => "E003",
            ErrorCode::NameConflict => "E004",
            ErrorCode::Runtime => "E005",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: error[{}]: {msg}", code.code())]
pub struct ScenarioError {
    pub code: ErrorCode,
    pub pos: Pos,
    pub msg: String,
}

fn err<T>(code: ErrorCode, pos: Pos, msg: impl Into<String>) -> Result<T, ScenarioError> {
    Err(ScenarioError {
        code,
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fill {
    Stein,
    Exact,
    Strong,
    Weak,
    Unknown,
    None,
}

impl Fill {
    fn parse(s: &str) -> Option<Fill> {
        Some(match s {
            "stein" => Fill::Stein,
            "exact" => Fill::Exact,
            "strong" => Fill::Strong,
            "weak" => Fill::Weak,
            "unknown" => Fill::Unknown,
            "none" => Fill::None,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KirbySpec {
    Cover { page: String, q: u32, l21_base: bool },
    Surgery { k: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Equal(String, String),
    Fillable(String, Fill),
    Handles { diagram: String, dotted: usize, two: usize },
    Twist { n: usize },
    Forms,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Page {
        name: String,
        half_dim: u32,
        handles: Option<Vec<(u32, u32)>>,
        stein: bool,
        spheres: Vec<String>,
    },
    Word {
        name: String,
        letters: Vec<(String, i64)>,
    },
    OpenBook {
        name: String,
        page: String,
        word: String,
    },
    Catalog {
        name: String,
        title: String,
        dim: u32,
        fill: Fill,
        ribbons: Vec<String>,
        spheres: Vec<String>,
    },
    Mnk {
        name: String,
        n: u32,
        k: i64,
    },
    Sum {
        name: String,
        left: String,
        right: String,
    },
    Surgery {
        name: String,
        target: String,
        sphere: String,
        k: i64,
        param: String,
    },
    Cover {
        name: String,
        target: String,
        q: u32,
        along: Option<String>,
    },
    Fibered {
        name: String,
        page: String,
        phi: String,
        psi: String,
    },
    Kirby {
        name: String,
        spec: KirbySpec,
        out: Option<String>,
    },
    Verify(Check),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub pos: Pos,
    pub stmt: Stmt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scenario {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-')
}

fn lex(line: &str, ln: usize) -> Result<Vec<Token>, ScenarioError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: ln, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if ident_start(c) {
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col: start + 1,
            });
            continue;
        }
        if c.is_ascii_digit() || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && ident_char(chars[i]) {
                return err(
                    ErrorCode::Syntax,
                    Pos { line: ln, col: i + 1 },
                    "unexpected character after number",
                );
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .or_else(|_| err(ErrorCode::Syntax, pos, format!("integer {text} out of range")))?;
            out.push(Token {
                tok: Tok::Int(v),
                col: start + 1,
            });
            continue;
        }
        if c == '"' {
            let start = i;
            i += 1;
            let mut s = String::new();
            while i < chars.len() && chars[i] != '"' {
                s.push(chars[i]);
                i += 1;
            }
            if i == chars.len() {
                return err(ErrorCode::Syntax, pos, "unterminated string");
            }
            i += 1;
            out.push(Token {
                tok: Tok::Str(s),
                col: start + 1,
            });
            continue;
        }
        if "=()[],:^".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                col: i + 1,
            });
            i += 1;
            continue;
        }
        return err(ErrorCode::Syntax, pos, format!("unexpected character {c:?}"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Page,
    Word,
    Manifold,
    Diagram,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Page => "page",
            Kind::Word => "word",
            Kind::Manifold => "manifold",
            Kind::Diagram => "diagram",
        })
    }
}

/// A value after `key=`, or a positional argument.
#[derive(Debug, Clone)]
enum Value {
    Atom(Token),
    List(Vec<Vec<Token>>, usize),
}

impl Value {
    fn col(&self) -> usize {
        match self {
            Value::Atom(t) => t.col,
            Value::List(_, c) => *c,
        }
    }
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.toks.get(self.i).map_or(self.end_col, |t| t.col),
        }
    }
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.i)
    }
    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.i);
        self.i += 1;
        t
    }
    fn done(&self) -> bool {
        self.i >= self.toks.len()
    }
    fn expect_punct(&mut self, c: char) -> Result<(), ScenarioError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Punct(p), .. }) if *p == c => Ok(()),
            Some(t) => err(ErrorCode::Syntax, pos, format!("expected `{c}`, found {}", t.tok)),
            None => err(ErrorCode::Syntax, pos, format!("expected `{c}` before end of line")),
        }
    }
    fn ident(&mut self, what: &str) -> Result<(String, Pos), ScenarioError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Ident(s), .. }) => Ok((s.clone(), pos)),
            Some(t) => err(ErrorCode::Syntax, pos, format!("expected {what}, found {}", t.tok)),
            None => err(ErrorCode::Syntax, pos, format!("expected {what} before end of line")),
        }
    }
    fn key_follows(&self) -> bool {
        matches!(
            (self.toks.get(self.i), self.toks.get(self.i + 1)),
            (
                Some(Token { tok: Tok::Ident(_), .. }),
                Some(Token {
                    tok: Tok::Punct('='),
                    ..
                })
            )
        )
    }
    /// One atom or a bracketed, comma-separated list of token groups.
    fn value(&mut self) -> Result<Value, ScenarioError> {
        let pos = self.pos();
        match self.next() {
            Some(Token {
                tok: Tok::Punct('['),
                col,
            }) => {
                let mut items = Vec::new();
                let mut cur = Vec::new();
                loop {
                    let p = self.pos();
                    match self.next() {
                        Some(Token {
                            tok: Tok::Punct(']'), ..
                        }) => {
                            if !cur.is_empty() {
                                items.push(core::mem::take(&mut cur));
                            } else if !items.is_empty() {
                                return err(ErrorCode::Syntax, p, "empty list item");
                            }
                            return Ok(Value::List(items, *col));
                        }
                        Some(Token {
                            tok: Tok::Punct(','), ..
                        }) => {
                            if cur.is_empty() {
                                return err(ErrorCode::Syntax, p, "empty list item");
                            }
                            items.push(core::mem::take(&mut cur));
                        }
                        Some(Token {
                            tok: Tok::Punct('['), ..
                        }) => {
                            return err(ErrorCode::Syntax, p, "nested lists are not allowed");
                        }
                        Some(t) => cur.push(t.clone()),
                        None => return err(ErrorCode::Syntax, p, "unterminated list"),
                    }
                }
            }
            Some(t @ Token { tok: Tok::Punct(_), .. }) => err(ErrorCode::Syntax, pos, format!("unexpected {}", t.tok)),
            Some(t) => Ok(Value::Atom(t.clone())),
            None => err(ErrorCode::Syntax, pos, "expected a value before end of line"),
        }
    }
}

/// Positional arguments followed by `key=value` options.
struct Args {
    positional: Vec<Value>,
    options: HashMap<String, (Value, usize)>,
}

fn args(c: &mut Cursor) -> Result<Args, ScenarioError> {
    let mut positional = Vec::new();
    let mut options = HashMap::new();
    while !c.done() {
        if c.key_follows() {
            let (key, kp) = c.ident("option name")?;
            c.expect_punct('=')?;
            let v = c.value()?;
            if options.insert(key.clone(), (v, kp.col)).is_some() {
                return err(ErrorCode::Syntax, kp, format!("option {key} given twice"));
            }
        } else if !options.is_empty() {
            return err(ErrorCode::Syntax, c.pos(), "positional argument after options");
        } else {
            positional.push(c.value()?);
        }
    }
    Ok(Args { positional, options })
}

struct Parser {
    kinds: HashMap<String, Kind>,
    labels: HashSet<String>,
    line: usize,
}

impl Parser {
    fn pos(&self, col: usize) -> Pos {
        Pos { line: self.line, col }
    }

    fn declare(&mut self, name: &str, pos: Pos, kind: Kind) -> Result<(), ScenarioError> {
        if let Some(k) = self.kinds.get(name) {
            return err(
                ErrorCode::NameConflict,
                pos,
                format!("{name} is already declared as a {k}"),
            );
        }
        self.kinds.insert(name.to_string(), kind);
        Ok(())
    }

    fn use_name(&self, name: &str, pos: Pos, kind: Kind) -> Result<String, ScenarioError> {
        match self.kinds.get(name) {
            None => err(ErrorCode::UndeclaredName, pos, format!("undeclared {kind} {name}")),
            Some(k) if *k != kind => err(
                ErrorCode::NameConflict,
                pos,
                format!("{name} is a {k}, expected a {kind}"),
            ),
            Some(_) => Ok(name.to_string()),
        }
    }

    fn label(&self, name: &str, pos: Pos) -> Result<String, ScenarioError> {
        if !self.labels.contains(name.trim_end_matches('\'')) {
            return err(
                ErrorCode::UndeclaredName,
                pos,
                format!("undeclared sphere label {name}"),
            );
        }
        Ok(name.to_string())
    }

    fn name_arg(&self, v: &Value, kind: Kind) -> Result<String, ScenarioError> {
        match v {
            Value::Atom(Token {
                tok: Tok::Ident(s),
                col,
            }) => self.use_name(s, self.pos(*col), kind),
            _ => err(ErrorCode::Syntax, self.pos(v.col()), format!("expected a {kind} name")),
        }
    }

    fn word_arg(&self, v: &Value) -> Result<String, ScenarioError> {
        match v {
            Value::Atom(Token { tok: Tok::Ident(s), .. }) => Ok(s.clone()),
            Value::Atom(Token { tok: Tok::Str(s), .. }) => Ok(s.clone()),
            _ => err(ErrorCode::Syntax, self.pos(v.col()), "expected a word"),
        }
    }

    fn int_arg(&self, v: &Value) -> Result<i64, ScenarioError> {
        match v {
            Value::Atom(Token { tok: Tok::Int(i), .. }) => Ok(*i),
            _ => err(ErrorCode::Syntax, self.pos(v.col()), "expected an integer"),
        }
    }

    fn uint_arg<T: TryFrom<i64>>(&self, v: &Value, what: &str) -> Result<T, ScenarioError> {
        let i = self.int_arg(v)?;
        T::try_from(i).or_else(|_| {
            err(
                ErrorCode::Syntax,
                self.pos(v.col()),
                format!("{what} must be a small nonnegative integer"),
            )
        })
    }

    fn bool_arg(&self, v: &Value) -> Result<bool, ScenarioError> {
        match self.word_arg(v)?.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => err(ErrorCode::Syntax, self.pos(v.col()), "expected true or false"),
        }
    }

    fn fill_arg(&self, v: &Value) -> Result<Fill, ScenarioError> {
        Fill::parse(&self.word_arg(v)?).map_or_else(
            || {
                err(
                    ErrorCode::Syntax,
                    self.pos(v.col()),
                    "expected stein, exact, strong, weak, unknown or none",
                )
            },
            Ok,
        )
    }

    fn ident_list(&self, v: &Value) -> Result<Vec<(String, Pos)>, ScenarioError> {
        let Value::List(items, _) = v else {
            return err(ErrorCode::Syntax, self.pos(v.col()), "expected a [..] list");
        };
        items
            .iter()
            .map(|item| match item.as_slice() {
                [Token {
                    tok: Tok::Ident(s),
                    col,
                }] => Ok((s.clone(), self.pos(*col))),
                [t, ..] => err(ErrorCode::Syntax, self.pos(t.col), "expected a name"),
                [] => unreachable!("lists never hold empty items"),
            })
            .collect()
    }

    fn handle_list(&self, v: &Value) -> Result<Vec<(u32, u32)>, ScenarioError> {
        let Value::List(items, _) = v else {
            return err(ErrorCode::Syntax, self.pos(v.col()), "expected a [index:count,..] list");
        };
        items
            .iter()
            .map(|item| match item.as_slice() {
                [Token { tok: Tok::Int(k), .. }, Token {
                    tok: Tok::Punct(':'), ..
                }, Token { tok: Tok::Int(c), .. }]
                    if *k >= 0 && *c >= 0 && *k <= u32::MAX as i64 && *c <= u32::MAX as i64 =>
                {
                    Ok((*k as u32, *c as u32))
                }
                [t, ..] => err(ErrorCode::Syntax, self.pos(t.col), "expected index:count"),
                [] => unreachable!("lists never hold empty items"),
            })
            .collect()
    }

    fn arity(&self, a: &Args, n: usize, what: &str, kw_col: usize) -> Result<(), ScenarioError> {
        let got = a.positional.len();
        if got != n {
            let col = a.positional.get(n).map_or(kw_col, Value::col);
            return err(
                ErrorCode::ArityMismatch,
                self.pos(col),
                format!("{what} takes {n} argument{}, got {got}", if n == 1 { "" } else { "s" }),
            );
        }
        Ok(())
    }

    fn options(&self, a: &Args, allowed: &[&str]) -> Result<(), ScenarioError> {
        let mut keys: Vec<_> = a.options.iter().map(|(k, (_, c))| (*c, k.clone())).collect();
        keys.sort();
        for (col, k) in keys {
            if !allowed.contains(&k.as_str()) {
                return err(ErrorCode::Syntax, self.pos(col), format!("unknown option {k}"));
            }
        }
        Ok(())
    }

    fn statement(&mut self, toks: &[Token], end_col: usize) -> Result<Stmt, ScenarioError> {
        let mut c = Cursor {
            toks,
            i: 0,
            line: self.line,
            end_col,
        };
        let (kw, kw_pos) = c.ident("a statement keyword")?;
        if kw == "verify" {
            return self.verify(&mut c);
        }
        let known = [
            "page", "word", "openbook", "manifold", "sum", "surgery", "cover", "fibered", "kirby",
        ];
        if !known.contains(&kw.as_str()) {
            return err(ErrorCode::Syntax, kw_pos, format!("unknown statement {kw}"));
        }
        let (name, name_pos) = c.ident("a name")?;
        if kw == "page" {
            let a = args(&mut c)?;
            self.arity(&a, 0, "page", kw_pos.col)?;
            self.options(&a, &["dim", "handles", "stein", "spheres"])?;
            let Some((dim, _)) = a.options.get("dim") else {
                return err(ErrorCode::Syntax, c.pos(), "page needs dim=<2n>");
            };
            let d: u32 = self.uint_arg(dim, "dim")?;
            if d == 0 || d % 2 == 1 {
                return err(
                    ErrorCode::Syntax,
                    self.pos(dim.col()),
                    "page dimension must be even and positive",
                );
            }
            let handles = a.options.get("handles").map(|(v, _)| self.handle_list(v)).transpose()?;
            let stein = a
                .options
                .get("stein")
                .map(|(v, _)| self.bool_arg(v))
                .transpose()?
                .unwrap_or(false);
            let spheres = match a.options.get("spheres") {
                Some((v, _)) => self.ident_list(v)?,
                None => Vec::new(),
            };
            self.declare(&name, name_pos, Kind::Page)?;
            let spheres: Vec<String> = spheres.into_iter().map(|(s, _)| s).collect();
            self.labels.extend(spheres.iter().cloned());
            return Ok(Stmt::Page {
                name,
                half_dim: d / 2,
                handles,
                stein,
                spheres,
            });
        }
        c.expect_punct('=')?;
        let stmt = match kw.as_str() {
            "word" => self.word(&mut c, name.clone())?,
            "openbook" => {
                let open = c.pos();
                c.expect_punct('(')?;
                let mut items = Vec::new();
                loop {
                    let (n, p) = c.ident("a name")?;
                    items.push((n, p));
                    let p = c.pos();
                    match c.next() {
                        Some(Token {
                            tok: Tok::Punct(','), ..
                        }) => continue,
                        Some(Token {
                            tok: Tok::Punct(')'), ..
                        }) => break,
                        Some(t) => return err(ErrorCode::Syntax, p, format!("expected `,` or `)`, found {}", t.tok)),
                        None => return err(ErrorCode::Syntax, p, "unclosed `(`"),
                    }
                }
                if !c.done() {
                    return err(ErrorCode::Syntax, c.pos(), "unexpected input after `)`");
                }
                if items.len() != 2 {
                    return err(
                        ErrorCode::ArityMismatch,
                        open,
                        format!("openbook takes (page, word), got {} item(s)", items.len()),
                    );
                }
                Stmt::OpenBook {
                    name: name.clone(),
                    page: self.use_name(&items[0].0, items[0].1, Kind::Page)?,
                    word: self.use_name(&items[1].0, items[1].1, Kind::Word)?,
                }
            }
            "manifold" => self.manifold(&mut c, name.clone())?,
            "sum" => {
                let a = args(&mut c)?;
                self.arity(&a, 2, "sum", kw_pos.col)?;
                self.options(&a, &[])?;
                Stmt::Sum {
                    name: name.clone(),
                    left: self.name_arg(&a.positional[0], Kind::Manifold)?,
                    right: self.name_arg(&a.positional[1], Kind::Manifold)?,
                }
            }
            "surgery" => {
                let a = args(&mut c)?;
                self.arity(&a, 3, "surgery", kw_pos.col)?;
                self.options(&a, &["param"])?;
                let target = self.name_arg(&a.positional[0], Kind::Manifold)?;
                let sphere = match &a.positional[1] {
                    Value::Atom(Token {
                        tok: Tok::Ident(s),
                        col,
                    }) => self.label(s, self.pos(*col))?,
                    v => return err(ErrorCode::Syntax, self.pos(v.col()), "expected a sphere label"),
                };
                let k = self.int_arg(&a.positional[2])?;
                let param = a
                    .options
                    .get("param")
                    .map(|(v, _)| self.word_arg(v))
                    .transpose()?
                    .unwrap_or_else(|| "I".into());
                Stmt::Surgery {
                    name: name.clone(),
                    target,
                    sphere,
                    k,
                    param,
                }
            }
            "cover" => {
                let a = args(&mut c)?;
                self.arity(&a, 2, "cover", kw_pos.col)?;
                self.options(&a, &["along"])?;
                let along = a
                    .options
                    .get("along")
                    .map(|(v, _)| self.name_arg(v, Kind::Page))
                    .transpose()?;
                Stmt::Cover {
                    name: name.clone(),
                    target: self.name_arg(&a.positional[0], Kind::Manifold)?,
                    q: self.uint_arg(&a.positional[1], "q")?,
                    along,
                }
            }
            "fibered" => {
                let a = args(&mut c)?;
                self.arity(&a, 3, "fibered", kw_pos.col)?;
                self.options(&a, &[])?;
                Stmt::Fibered {
                    name: name.clone(),
                    page: self.name_arg(&a.positional[0], Kind::Page)?,
                    phi: self.name_arg(&a.positional[1], Kind::Word)?,
                    psi: self.name_arg(&a.positional[2], Kind::Word)?,
                }
            }
            "kirby" => self.kirby(&mut c, name.clone(), kw_pos.col)?,
            _ => unreachable!("keyword checked above"),
        };
        let kind = match kw.as_str() {
            "word" => Kind::Word,
            "kirby" => Kind::Diagram,
            _ => Kind::Manifold,
        };
        self.declare(&name, name_pos, kind)?;
        Ok(stmt)
    }

    fn word(&self, c: &mut Cursor, name: String) -> Result<Stmt, ScenarioError> {
        let mut letters = Vec::new();
        if let Some(Token { tok: Tok::Ident(s), .. }) = c.peek() {
            if s == "id" && c.toks.len() == c.i + 1 {
                c.next();
                return Ok(Stmt::Word { name, letters });
            }
        }
        if c.done() {
            return err(ErrorCode::Syntax, c.pos(), "empty word; write `id` for the identity");
        }
        while !c.done() {
            let (label, pos) = c.ident("a sphere label")?;
            let label = self.label(&label, pos)?;
            let exp = if let Some(Token {
                tok: Tok::Punct('^'), ..
            }) = c.peek()
            {
                c.next();
                let p = c.pos();
                match c.next() {
                    Some(Token { tok: Tok::Int(e), .. }) => *e,
                    _ => return err(ErrorCode::Syntax, p, "expected an exponent after `^`"),
                }
            } else {
                1
            };
            letters.push((label, exp));
        }
        Ok(Stmt::Word { name, letters })
    }

    fn manifold(&self, c: &mut Cursor, name: String) -> Result<Stmt, ScenarioError> {
        let (how, how_pos) = c.ident("catalog or mnk")?;
        let a = args(c)?;
        match how.as_str() {
            "mnk" => {
                self.arity(&a, 2, "mnk", how_pos.col)?;
                self.options(&a, &[])?;
                Ok(Stmt::Mnk {
                    name,
                    n: self.uint_arg(&a.positional[0], "n")?,
                    k: self.int_arg(&a.positional[1])?,
                })
            }
            "catalog" => {
                self.arity(&a, 1, "catalog", how_pos.col)?;
                self.options(&a, &["dim", "fill", "ribbons", "spheres"])?;
                let title = match &a.positional[0] {
                    Value::Atom(Token { tok: Tok::Str(s), .. }) if !s.is_empty() => s.clone(),
                    v => return err(ErrorCode::Syntax, self.pos(v.col()), "expected a quoted name"),
                };
                let Some((dim, _)) = a.options.get("dim") else {
                    return err(ErrorCode::Syntax, c.pos(), "catalog manifold needs dim=<2n+1>");
                };
                let dim = self.uint_arg(dim, "dim")?;
                let fill = a
                    .options
                    .get("fill")
                    .map(|(v, _)| self.fill_arg(v))
                    .transpose()?
                    .unwrap_or(Fill::Unknown);
                let ribbons = match a.options.get("ribbons") {
                    Some((v, _)) => self
                        .ident_list(v)?
                        .into_iter()
                        .map(|(s, p)| self.use_name(&s, p, Kind::Page))
                        .collect::<Result<_, _>>()?,
                    None => Vec::new(),
                };
                let spheres = match a.options.get("spheres") {
                    Some((v, _)) => self.ident_list(v)?.into_iter().map(|(s, _)| s).collect(),
                    None => Vec::new(),
                };
                Ok(Stmt::Catalog {
                    name,
                    title,
                    dim,
                    fill,
                    ribbons,
                    spheres,
                })
            }
            _ => err(ErrorCode::Syntax, how_pos, "expected catalog or mnk"),
        }
    }

    fn kirby(&self, c: &mut Cursor, name: String, kw_col: usize) -> Result<Stmt, ScenarioError> {
        let (how, how_pos) = c.ident("cover or surgery")?;
        let a = args(c)?;
        let out = a.options.get("out").map(|(v, _)| self.out_arg(v)).transpose()?;
        let spec = match how.as_str() {
            "cover" => {
                self.arity(&a, 2, "kirby cover", how_pos.col)?;
                self.options(&a, &["base", "out"])?;
                let l21_base = match a.options.get("base") {
                    None => false,
                    Some((v, _)) => match self.word_arg(v)?.as_str() {
                        "l21" => true,
                        "none" => false,
                        _ => return err(ErrorCode::Syntax, self.pos(v.col()), "base is l21 or none"),
                    },
                };
                KirbySpec::Cover {
                    page: self.name_arg(&a.positional[0], Kind::Page)?,
                    q: self.uint_arg(&a.positional[1], "q")?,
                    l21_base,
                }
            }
            "surgery" => {
                self.arity(&a, 1, "kirby surgery", how_pos.col)?;
                self.options(&a, &["out"])?;
                KirbySpec::Surgery {
                    k: self.int_arg(&a.positional[0])?,
                }
            }
            _ => {
                return err(
                    ErrorCode::Syntax,
                    self.pos(how_pos.col.max(kw_col)),
                    "expected cover or surgery",
                )
            }
        };
        Ok(Stmt::Kirby { name, spec, out })
    }

    fn out_arg(&self, v: &Value) -> Result<String, ScenarioError> {
        let s = self.word_arg(v)?;
        let ok = !s.is_empty()
            && !s.starts_with('.')
            && s.chars()
                .all(|ch| ch.is_ascii_alphanumeric() || matches!(ch, '_' | '-' | '.'));
        if !ok {
            return err(ErrorCode::Syntax, self.pos(v.col()), "output must be a plain file name");
        }
        Ok(s)
    }

    fn verify(&self, c: &mut Cursor) -> Result<Stmt, ScenarioError> {
        let (what, what_pos) = c.ident("a check name")?;
        let a = args(c)?;
        let check = match what.as_str() {
            "equal" => {
                self.arity(&a, 2, "verify equal", what_pos.col)?;
                self.options(&a, &[])?;
                Check::Equal(
                    self.name_arg(&a.positional[0], Kind::Manifold)?,
                    self.name_arg(&a.positional[1], Kind::Manifold)?,
                )
            }
            "fillable" => {
                self.arity(&a, 2, "verify fillable", what_pos.col)?;
                self.options(&a, &[])?;
                let level = self.fill_arg(&a.positional[1])?;
                if matches!(level, Fill::Unknown | Fill::None) {
                    return err(
                        ErrorCode::Syntax,
                        self.pos(a.positional[1].col()),
                        "expected stein, exact, strong or weak",
                    );
                }
                Check::Fillable(self.name_arg(&a.positional[0], Kind::Manifold)?, level)
            }
            "handles" => {
                self.arity(&a, 3, "verify handles", what_pos.col)?;
                self.options(&a, &[])?;
                Check::Handles {
                    diagram: self.name_arg(&a.positional[0], Kind::Diagram)?,
                    dotted: self.uint_arg(&a.positional[1], "count")?,
                    two: self.uint_arg(&a.positional[2], "count")?,
                }
            }
            "twist" => {
                self.arity(&a, 0, "verify twist", what_pos.col)?;
                self.options(&a, &["n"])?;
                let Some((n, _)) = a.options.get("n") else {
                    return err(ErrorCode::Syntax, c.pos(), "verify twist needs n=<dim>");
                };
                let n: usize = self.uint_arg(n, "n")?;
                if n == 0 {
                    return err(
                        ErrorCode::Syntax,
                        self.pos(a.options["n"].0.col()),
                        "n must be positive",
                    );
                }
                Check::Twist { n }
            }
            "forms" => {
                self.arity(&a, 0, "verify forms", what_pos.col)?;
                self.options(&a, &[])?;
                Check::Forms
            }
            _ => return err(ErrorCode::Syntax, what_pos, format!("unknown check {what}")),
        };
        Ok(Stmt::Verify(check))
    }
}

/// Parses a whole scenario. Either every line parses or the first error is
/// returned; nothing partial escapes.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut p = Parser {
        kinds: HashMap::new(),
        labels: HashSet::new(),
        line: 0,
    };
    let mut statements = Vec::new();
    for (i, line) in text.lines().enumerate() {
        p.line = i + 1;
        let toks = lex(line, p.line)?;
        if toks.is_empty() {
            continue;
        }
        let pos = Pos {
            line: p.line,
            col: toks[0].col,
        };
        let stmt = p.statement(&toks, line.chars().count() + 1)?;
        statements.push(Statement { pos, stmt });
    }
    Ok(Scenario { statements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> (ErrorCode, Pos) {
        let e = parse_scenario(text).unwrap_err();
        (e.code, e.pos)
    }

    #[test]
    fn minimal_page_and_openbook() {
        let s = parse_scenario(
            "page P dim=2 handles=[0:1,1:1] stein=true spheres=[L]\nword w = L^2\nopenbook M = (P, w)\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 3);
        assert_eq!(
            s.statements[0].stmt,
            Stmt::Page {
                name: "P".into(),
                half_dim: 1,
                handles: Some(vec![(0, 1), (1, 1)]),
                stein: true,
                spheres: vec!["L".into()]
            }
        );
        assert_eq!(
            s.statements[1].stmt,
            Stmt::Word {
                name: "w".into(),
                letters: vec![("L".into(), 2)]
            }
        );
        assert_eq!(s.statements[2].pos, Pos { line: 3, col: 1 });
    }

    #[test]
    fn page_then_openbook_is_two_declarations() {
        let s = parse_scenario("page P dim=2\nword w = id\n").unwrap();
        assert_eq!(s.statements.len(), 2);
        assert_eq!(
            s.statements[1].stmt,
            Stmt::Word {
                name: "w".into(),
                letters: vec![]
            }
        );
    }

    #[test]
    fn undeclared_label_in_word() {
        assert_eq!(
            code("page P dim=2 spheres=[a]\nword w = a^1 c^2\n"),
            (ErrorCode::UndeclaredName, Pos { line: 2, col: 14 })
        );
    }

    #[test]
    fn undeclared_names() {
        assert_eq!(code("word w = a\n").0, ErrorCode::UndeclaredName);
        assert_eq!(
            code("page P dim=2\nopenbook M = (P, w)\n"),
            (ErrorCode::UndeclaredName, Pos { line: 2, col: 18 })
        );
        assert_eq!(
            code("verify equal A B\n"),
            (ErrorCode::UndeclaredName, Pos { line: 1, col: 14 })
        );
    }

    #[test]
    fn arity() {
        let pre = "page P dim=2 spheres=[a]\nword w = a\nopenbook M = (P, w)\n";
        assert_eq!(
            code(&format!("{pre}sum S = M\n")),
            (ErrorCode::ArityMismatch, Pos { line: 4, col: 1 })
        );
        assert_eq!(
            code(&format!("{pre}sum S = M M M\n")),
            (ErrorCode::ArityMismatch, Pos { line: 4, col: 13 })
        );
        assert_eq!(
            code(&format!("{pre}openbook N = (P)\n")),
            (ErrorCode::ArityMismatch, Pos { line: 4, col: 14 })
        );
        assert_eq!(code(&format!("{pre}verify handles K 1\n")).0, ErrorCode::ArityMismatch);
    }

    #[test]
    fn syntax() {
        assert_eq!(code("page P dim=3\n"), (ErrorCode::Syntax, Pos { line: 1, col: 12 }));
        assert_eq!(
            code("page P dim=2 handles=[0:1,,1:2]\n"),
            (ErrorCode::Syntax, Pos { line: 1, col: 27 })
        );
        assert_eq!(code("frobnicate X\n"), (ErrorCode::Syntax, Pos { line: 1, col: 1 }));
        assert_eq!(
            code("page P dim=2 spheres=[a]\nword w = a^\n"),
            (ErrorCode::Syntax, Pos { line: 2, col: 12 })
        );
        assert_eq!(
            code("page P dim=2 color=red\n"),
            (ErrorCode::Syntax, Pos { line: 1, col: 14 })
        );
        assert_eq!(code("page P dim=2 $\n"), (ErrorCode::Syntax, Pos { line: 1, col: 14 }));
        assert_eq!(code("page P dim=2\nword w = \n").0, ErrorCode::Syntax);
    }

    #[test]
    fn name_conflicts() {
        assert_eq!(
            code("page P dim=2\npage P dim=4\n"),
            (ErrorCode::NameConflict, Pos { line: 2, col: 6 })
        );
        assert_eq!(
            code("page P dim=2 spheres=[a]\nword w = a\nsum S = w w\n").0,
            ErrorCode::NameConflict
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_scenario("# header\n\n   # indented\nverify forms # trailing\n").unwrap();
        assert_eq!(
            s.statements,
            vec![Statement {
                pos: Pos { line: 4, col: 1 },
                stmt: Stmt::Verify(Check::Forms)
            }]
        );
        assert_eq!(parse_scenario("").unwrap(), Scenario::default());
    }

    #[test]
    fn pushoff_labels_and_options() {
        let s = parse_scenario(
            "manifold S = mnk 1 1\npage Q dim=2 spheres=[L]\nsurgery A = S L 2 param=I\nsurgery B = A L' 3 param=I\n",
        )
        .unwrap();
        assert_eq!(
            s.statements[3].stmt,
            Stmt::Surgery {
                name: "B".into(),
                target: "A".into(),
                sphere: "L'".into(),
                k: 3,
                param: "I".into()
            }
        );
    }

    #[test]
    fn kirby_out_names() {
        let pre = "page S dim=2 handles=[0:1,1:2] stein=true spheres=[a,b]\n";
        assert!(parse_scenario(&format!("{pre}kirby K = cover S 2 base=l21 out=k2.kirby\n")).is_ok());
        assert_eq!(
            code(&format!("{pre}kirby K = cover S 2 out=\"../x\"\n")).0,
            ErrorCode::Syntax
        );
    }
}
