//! PropBank `.prop` lines and the pointer grammar inside them.
//!
//! A proposition line looks like
//!
//! ```text
//! wsj/00/wsj_0001 0 8 gold say.01 v--a 0:2-ARG1 8:0-rel 9:1-ARG0
//! ```
//!
//! Field 2 is the tree index within the file, field 3 the predicate's
//! terminal. Argument fields are `POINTERS-LABEL`, where `POINTERS` is one or
//! more `terminal:height` pointers joined by `*` (trace chains) or `,`/`;`
//! (discontinuous splits).

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error("malformed pointer {text:?}")]
    MalformedPointer { text: String },
    #[error("empty pointer fragment in {text:?}")]
    EmptyFragment { text: String },
    #[error("malformed proposition line: {reason}")]
    MalformedLine { reason: String },
    #[error("field {field} ({text:?}): {source}")]
    Field {
        field: usize,
        text: String,
        #[source]
        source: Box<PropError>,
    },
}

/// `terminal:height`: the `terminal`-th preterminal (empty elements
/// included), then `height` parent links up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePointer {
    pub terminal: usize,
    pub height: usize,
}

impl TreePointer {
    pub fn new(terminal: usize, height: usize) -> Self {
        TreePointer { terminal, height }
    }
}

impl fmt::Display for TreePointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.width().is_some() || f.precision().is_some() {
            return f.pad(&format!("{}:{}", self.terminal, self.height));
        }
        write!(f, "{}:{}", self.terminal, self.height)
    }
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() {
        return None;
    }
    s.bytes().try_fold(0usize, |acc, b| {
        let digit = b.checked_sub(b'0').filter(|d| *d < 10)?;
        acc.checked_mul(10)?.checked_add(digit as usize)
    })
}

pub fn parse_pointer(text: &str) -> Result<TreePointer, PropError> {
    let malformed = || PropError::MalformedPointer {
        text: text.to_string(),
    };
    let (terminal, height) = text.split_once(':').ok_or_else(malformed)?;
    Ok(TreePointer {
        terminal: parse_index(terminal).ok_or_else(malformed)?,
        height: parse_index(height).ok_or_else(malformed)?,
    })
}

impl FromStr for TreePointer {
    type Err = PropError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pointer(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connector {
    /// `*`: trace chain.
    Chain,
    /// `,`: discontinuous split.
    Comma,
    /// `;`: treated the same as `,`.
    Semicolon,
}

impl Connector {
    fn from_char(c: char) -> Option<Connector> {
        match c {
            '*' => Some(Connector::Chain),
            ',' => Some(Connector::Comma),
            ';' => Some(Connector::Semicolon),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Connector::Chain => '*',
            Connector::Comma => ',',
            Connector::Semicolon => ';',
        }
    }

    pub fn is_split(self) -> bool {
        !matches!(self, Connector::Chain)
    }
}

/// One argument annotation: pointers in source order and the connectors
/// between them (`connectors.len() == parts.len() - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointerExpr {
    parts: SmallVec<[TreePointer; INLINE_PARTS]>,
    connectors: SmallVec<[Connector; INLINE_PARTS]>,
}

const INLINE_PARTS: usize = 4;

impl PointerExpr {
    pub fn single(pointer: TreePointer) -> Self {
        PointerExpr {
            parts: smallvec::smallvec![pointer],
            connectors: SmallVec::new(),
        }
    }

    pub fn parts(&self) -> &[TreePointer] {
        &self.parts
    }

    pub fn connectors(&self) -> &[Connector] {
        &self.connectors
    }
}

impl fmt::Display for PointerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.width().is_some() || f.precision().is_some() {
            let mut s = String::new();
            self.write_plain(&mut s)?;
            return f.pad(&s);
        }
        self.write_plain(f)
    }
}

impl PointerExpr {
    fn write_plain(&self, w: &mut impl fmt::Write) -> fmt::Result {
        write!(w, "{}", self.parts[0])?;
        for (conn, part) in self.connectors.iter().zip(&self.parts[1..]) {
            w.write_char(conn.as_char())?;
            write!(w, "{part}")?;
        }
        Ok(())
    }
}

pub fn parse_pointer_expr(text: &str) -> Result<PointerExpr, PropError> {
    let mut parts = SmallVec::new();
    let mut connectors = SmallVec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if let Some(conn) = Connector::from_char(c) {
            parts.push(parse_fragment(&text[start..i], text)?);
            connectors.push(conn);
            start = i + 1;
        }
    }
    parts.push(parse_fragment(&text[start..], text)?);
    Ok(PointerExpr { parts, connectors })
}

fn parse_fragment(fragment: &str, whole: &str) -> Result<TreePointer, PropError> {
    if fragment.is_empty() {
        return Err(PropError::EmptyFragment {
            text: whole.to_string(),
        });
    }
    parse_pointer(fragment)
}

impl FromStr for PointerExpr {
    type Err = PropError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pointer_expr(s)
    }
}

/// The three roles this pipeline extracts. Everything else (ARG2+, ARGM-*,
/// LINK-*) is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleLabel {
    Arg0,
    Arg1,
    Rel,
}

impl RoleLabel {
    pub fn from_suffix(suffix: &str) -> Option<RoleLabel> {
        if suffix.eq_ignore_ascii_case("ARG0") {
            Some(RoleLabel::Arg0)
        } else if suffix.eq_ignore_ascii_case("ARG1") {
            Some(RoleLabel::Arg1)
        } else if suffix.eq_ignore_ascii_case("rel") {
            Some(RoleLabel::Rel)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RoleLabel::Arg0 => "ARG0",
            RoleLabel::Arg1 => "ARG1",
            RoleLabel::Rel => "rel",
        }
    }
}

impl fmt::Display for RoleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proposition {
    pub file_id: String,
    pub tree_index: usize,
    pub predicate_terminal: usize,
    /// Recognised role annotations in line order.
    pub roles: Vec<(RoleLabel, PointerExpr)>,
    pub raw_line: String,
    /// 1-based line number in the source file, 0 when unknown.
    pub line_no: usize,
}

impl Proposition {
    pub fn exprs(&self, label: RoleLabel) -> impl Iterator<Item = &PointerExpr> + '_ {
        self.roles
            .iter()
            .filter(move |(l, _)| *l == label)
            .map(|(_, e)| e)
    }

    /// Sort key used within a file.
    pub fn key(&self) -> (usize, usize) {
        (self.tree_index, self.predicate_terminal)
    }
}

pub fn parse_prop_line(line: &str) -> Result<Proposition, PropError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() < 3 {
        return Err(PropError::MalformedLine {
            reason: format!("expected at least 3 fields, found {}", fields.len()),
        });
    }
    let index_field = |n: usize| {
        parse_index(fields[n]).ok_or_else(|| PropError::MalformedLine {
            reason: format!("field {} ({:?}) is not a non-negative integer", n + 1, fields[n]),
        })
    };
    let tree_index = index_field(1)?;
    let predicate_terminal = index_field(2)?;

    let mut roles = Vec::new();
    for (n, field) in fields.iter().enumerate().skip(3) {
        let Some((prefix, suffix)) = field.rsplit_once('-') else {
            continue;
        };
        let Some(label) = RoleLabel::from_suffix(suffix) else {
            continue;
        };
        let expr = parse_pointer_expr(prefix).map_err(|e| PropError::Field {
            field: n + 1,
            text: field.to_string(),
            source: Box::new(e),
        })?;
        roles.push((label, expr));
    }

    Ok(Proposition {
        file_id: fields[0].to_string(),
        tree_index,
        predicate_terminal,
        roles,
        raw_line: line.to_string(),
        line_no: 0,
    })
}

/// Parses every non-blank line of a `.prop` file. Errors carry the 1-based
/// line number.
pub fn parse_prop_file(text: &str) -> Result<Vec<Proposition>, (usize, PropError)> {
    let mut props = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut prop = parse_prop_line(line).map_err(|e| (i + 1, e))?;
        prop.line_no = i + 1;
        props.push(prop);
    }
    Ok(props)
}

/// Stable sort by `(tree_index, predicate_terminal)`.
pub fn sort_propositions(mut props: Vec<Proposition>) -> Vec<Proposition> {
    props.sort_by_key(Proposition::key);
    props
}
