//! The line-based definition format.
//!
//! ```text
//! conductor = 1
//!
//! [group]
//! product = Z2 x Z2
//!
//! [cochain F]
//! table = { (10,10): -1, (01,01): -1 }
//!
//! [algebra A]
//! deformed = F
//! ```
//!
//! Every non-blank line inside a section is `key = value`. A value whose
//! brackets are unbalanced continues on the following lines. `#` starts a
//! comment.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("duplicate section `{0}`")]
    DuplicateSection(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub col: usize,
}

impl DslError {
    pub fn at(loc: Loc, kind: DslErrorKind) -> DslError {
        DslError { kind, line: loc.line, col: loc.col }
    }
}

/// A source position (1-based). Positions are not part of a document's
/// identity: any two locations compare equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Loc {
    fn eq(&self, _: &Loc) -> bool {
        true
    }
}

impl Eq for Loc {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionKind {
    Group,
    Cochain,
    Cocycle,
    Algebra,
    System,
    Module,
}

impl SectionKind {
    pub fn keyword(self) -> &'static str {
        match self {
            SectionKind::Group => "group",
            SectionKind::Cochain => "cochain",
            SectionKind::Cocycle => "cocycle",
            SectionKind::Algebra => "algebra",
            SectionKind::System => "system",
            SectionKind::Module => "module",
        }
    }

    fn from_keyword(s: &str) -> Option<SectionKind> {
        Some(match s {
            "group" => SectionKind::Group,
            "cochain" => SectionKind::Cochain,
            "cocycle" => SectionKind::Cocycle,
            "algebra" => SectionKind::Algebra,
            "system" => SectionKind::System,
            "module" => SectionKind::Module,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    /// Whitespace-normalized.
    pub key: String,
    /// Whitespace-normalized; continuation lines are joined with a space.
    pub value: String,
    pub key_loc: Loc,
    pub value_loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    /// None only for `[group]`.
    pub name: Option<String>,
    pub entries: Vec<Entry>,
    pub loc: Loc,
}

impl Section {
    pub fn title(&self) -> String {
        match &self.name {
            Some(n) => format!("{} {n}", self.kind.keyword()),
            None => self.kind.keyword().to_string(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub conductor: u32,
    pub conductor_loc: Loc,
    pub sections: Vec<Section>,
}

impl Document {
    pub fn sections_of(&self, kind: SectionKind) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(move |s| s.kind == kind)
    }

    pub fn find(&self, kind: SectionKind, name: &str) -> Option<&Section> {
        self.sections_of(kind).find(|s| s.name.as_deref() == Some(name))
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn depth(s: &str) -> i64 {
    s.chars()
        .map(|c| match c {
            '(' | '[' | '{' => 1,
            ')' | ']' | '}' => -1,
            _ => 0,
        })
        .sum()
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_-.'".contains(c))
}

pub fn parse(text: &str) -> Result<Document, DslError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .collect();
    let mut conductor: Option<(u32, Loc)> = None;
    let mut sections: Vec<Section> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (ln, raw) = lines[i];
        i += 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        let loc = Loc { line: ln, col: indent + 1 };
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| DslError::at(loc, DslErrorKind::Syntax("section header must end with `]`".into())))?;
            let mut words = inner.split_whitespace();
            let kw = words.next().unwrap_or("");
            let kind = SectionKind::from_keyword(kw)
                .ok_or_else(|| DslError::at(loc, DslErrorKind::Syntax(format!("unknown section kind `{kw}`"))))?;
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(DslError::at(loc, DslErrorKind::Syntax("section name must be a single word".into())));
            }
            match (&name, kind) {
                (Some(_), SectionKind::Group) => {
                    return Err(DslError::at(loc, DslErrorKind::Syntax("[group] takes no name".into())))
                }
                (None, k) if k != SectionKind::Group => {
                    return Err(DslError::at(loc, DslErrorKind::Syntax(format!("[{}] needs a name", k.keyword()))))
                }
                (Some(n), _) if !is_identifier(n) => {
                    return Err(DslError::at(loc, DslErrorKind::Syntax(format!("`{n}` is not a valid name"))))
                }
                _ => {}
            }
            let section = Section { kind, name, entries: Vec::new(), loc };
            if sections.iter().any(|s| s.kind == kind && s.name == section.name) {
                return Err(DslError::at(loc, DslErrorKind::DuplicateSection(section.title())));
            }
            sections.push(section);
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(DslError::at(loc, DslErrorKind::Syntax("expected `key = value`".into())));
        };
        let key = normalize(&raw[..eq]);
        if key.is_empty() {
            return Err(DslError::at(loc, DslErrorKind::Syntax("missing key before `=`".into())));
        }
        let after = &raw[eq + 1..];
        let value_col = eq + 2 + (after.len() - after.trim_start().len());
        let value_loc = Loc { line: ln, col: value_col };
        let mut value = after.trim().to_string();
        while depth(&value) > 0 {
            let Some(&(_, next)) = lines.get(i) else {
                return Err(DslError::at(value_loc, DslErrorKind::Syntax("unbalanced brackets".into())));
            };
            i += 1;
            value.push(' ');
            value.push_str(next.trim());
        }
        if depth(&value) < 0 {
            return Err(DslError::at(value_loc, DslErrorKind::Syntax("unbalanced brackets".into())));
        }
        let value = normalize(&value);
        if value.is_empty() {
            return Err(DslError::at(value_loc, DslErrorKind::Syntax("missing value after `=`".into())));
        }
        match sections.last_mut() {
            None => {
                if key != "conductor" {
                    return Err(DslError::at(loc, DslErrorKind::Syntax(format!("`{key}` outside a section"))));
                }
                if conductor.is_some() {
                    return Err(DslError::at(loc, DslErrorKind::DuplicateSection("conductor".into())));
                }
                let m = value
                    .parse::<u32>()
                    .ok()
                    .filter(|&m| m > 0)
                    .ok_or_else(|| DslError::at(value_loc, DslErrorKind::Syntax("conductor must be a positive integer".into())))?;
                conductor = Some((m, loc));
            }
            Some(section) => {
                if section.get(&key).is_some() {
                    return Err(DslError::at(loc, DslErrorKind::Syntax(format!("`{key}` given twice"))));
                }
                section.entries.push(Entry { key, value, key_loc: loc, value_loc });
            }
        }
    }
    let (conductor, conductor_loc) = conductor.unwrap_or((1, Loc { line: 1, col: 1 }));
    Ok(Document { conductor, conductor_loc, sections })
}

/// The canonical form: conductor header, then sections separated by blank lines.
impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conductor = {}", self.conductor)?;
        for s in &self.sections {
            writeln!(f)?;
            writeln!(f, "[{}]", s.title())?;
            for e in &s.entries {
                writeln!(f, "{} = {}", e.key, e.value)?;
            }
        }
        Ok(())
    }
}

/// Splits on `sep` outside any brackets.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut d = 0i64;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => d += 1,
            ')' | ']' | '}' => d -= 1,
            _ if c == sep && d == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
