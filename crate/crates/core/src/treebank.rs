//! Constituency trees in bracketed Penn Treebank notation.
//!
//! A [`ParseTree`] is either an internal node with a label and at least one
//! child, or a preterminal carrying a part-of-speech tag and exactly one
//! token. Empty elements (`(-NONE- *T*-1)`) are ordinary preterminals and
//! count toward terminal indices, which is what PropBank pointers expect.

use std::fmt;

use thiserror::Error;

/// POS tag carried by empty-element terminals (traces, null complementizers).
pub const EMPTY_ELEMENT_POS: &str = "-NONE-";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParseTree {
    Internal {
        label: String,
        children: Vec<ParseTree>,
    },
    Preterminal {
        pos: String,
        token: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty tree input")]
    EmptyInput,
    #[error("unbalanced parentheses at byte {offset}")]
    UnbalancedParens { offset: usize },
    #[error("trailing input after root tree at byte {offset}")]
    TrailingGarbage { offset: usize },
    #[error("malformed tree at byte {offset}: {reason}")]
    Malformed { offset: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("terminal {index} out of range (tree has {count} terminals)")]
    TerminalOutOfRange { index: usize, count: usize },
    #[error("height {height} above terminal {terminal} passes the root (max {max})")]
    HeightOverflow {
        terminal: usize,
        height: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and the byte offset it starts at.
    fn peek(&mut self) -> Option<(Tok<'a>, usize)> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let c = rest.chars().next()?;
        let tok = match c {
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => {
                let end = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                Tok::Atom(&rest[..end])
            }
        };
        Some((tok, self.pos))
    }

    fn bump(&mut self) -> Option<(Tok<'a>, usize)> {
        let next = self.peek()?;
        self.pos += match next.0 {
            Tok::Open | Tok::Close => 1,
            Tok::Atom(a) => a.len(),
        };
        Some(next)
    }

    fn eof_offset(&self) -> usize {
        self.src.len()
    }
}

/// Parses one bracketed tree.
///
/// A single outer wrapper with an empty label, as in `( (S ...) )`, is
/// removed so that pointer heights are measured from the linguistic root.
pub fn parse_tree(text: &str) -> Result<ParseTree, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut lexer = Lexer::new(text);
    match lexer.peek() {
        Some((Tok::Open, _)) => {}
        Some((Tok::Close, offset)) => return Err(ParseError::UnbalancedParens { offset }),
        Some((Tok::Atom(_), offset)) => {
            return Err(ParseError::Malformed {
                offset,
                reason: "expected '(' to start a tree",
            })
        }
        None => return Err(ParseError::EmptyInput),
    }
    let (root, root_offset) = parse_node(&mut lexer)?;
    match lexer.peek() {
        None => {}
        Some((Tok::Close, offset)) => return Err(ParseError::UnbalancedParens { offset }),
        Some((_, offset)) => return Err(ParseError::TrailingGarbage { offset }),
    }
    match root {
        Node::Labeled(tree) => Ok(tree),
        Node::Wrapper(mut children) => {
            if children.len() == 1 {
                Ok(children.pop().expect("one child"))
            } else {
                Err(ParseError::Malformed {
                    offset: root_offset,
                    reason: "unlabeled wrapper must hold exactly one tree",
                })
            }
        }
    }
}

enum Node {
    Labeled(ParseTree),
    /// Unlabeled bracket; only legal as the outermost node.
    Wrapper(Vec<ParseTree>),
}

fn parse_node(lexer: &mut Lexer<'_>) -> Result<(Node, usize), ParseError> {
    let start = match lexer.bump() {
        Some((Tok::Open, offset)) => offset,
        Some((_, offset)) => {
            return Err(ParseError::Malformed {
                offset,
                reason: "expected '('",
            })
        }
        None => {
            return Err(ParseError::UnbalancedParens {
                offset: lexer.eof_offset(),
            })
        }
    };
    let label = match lexer.peek() {
        Some((Tok::Atom(a), _)) => {
            lexer.bump();
            Some(a)
        }
        Some((Tok::Open, _)) => None,
        Some((Tok::Close, offset)) => {
            return Err(ParseError::Malformed {
                offset,
                reason: "empty node",
            })
        }
        None => {
            return Err(ParseError::UnbalancedParens {
                offset: lexer.eof_offset(),
            })
        }
    };

    // Preterminal: label followed by a single token.
    if let (Some(pos), Some((Tok::Atom(token), _))) = (label, lexer.peek()) {
        lexer.bump();
        return match lexer.bump() {
            Some((Tok::Close, _)) => Ok((
                Node::Labeled(ParseTree::Preterminal {
                    pos: pos.to_string(),
                    token: token.to_string(),
                }),
                start,
            )),
            Some((Tok::Atom(_), offset)) => Err(ParseError::Malformed {
                offset,
                reason: "preterminal holds more than one token",
            }),
            Some((Tok::Open, offset)) => Err(ParseError::Malformed {
                offset,
                reason: "token mixed with subtrees",
            }),
            None => Err(ParseError::UnbalancedParens {
                offset: lexer.eof_offset(),
            }),
        };
    }

    let mut children = Vec::new();
    loop {
        match lexer.peek() {
            Some((Tok::Open, _)) => {
                let (child, child_start) = parse_node(lexer)?;
                match child {
                    Node::Labeled(tree) => children.push(tree),
                    Node::Wrapper(_) => {
                        return Err(ParseError::Malformed {
                            offset: child_start,
                            reason: "missing node label",
                        })
                    }
                }
            }
            Some((Tok::Close, _)) => {
                lexer.bump();
                break;
            }
            Some((Tok::Atom(_), offset)) => {
                return Err(ParseError::Malformed {
                    offset,
                    reason: "token mixed with subtrees",
                })
            }
            None => {
                return Err(ParseError::UnbalancedParens {
                    offset: lexer.eof_offset(),
                })
            }
        }
    }
    if children.is_empty() {
        return Err(ParseError::Malformed {
            offset: start,
            reason: "node without children",
        });
    }
    let node = match label {
        Some(label) => Node::Labeled(ParseTree::Internal {
            label: label.to_string(),
            children,
        }),
        None => Node::Wrapper(children),
    };
    Ok((node, start))
}

impl ParseTree {
    /// Node label, or the POS tag for a preterminal.
    pub fn label(&self) -> &str {
        match self {
            ParseTree::Internal { label, .. } => label,
            ParseTree::Preterminal { pos, .. } => pos,
        }
    }

    pub fn is_preterminal(&self) -> bool {
        matches!(self, ParseTree::Preterminal { .. })
    }

    pub fn children(&self) -> &[ParseTree] {
        match self {
            ParseTree::Internal { children, .. } => children,
            ParseTree::Preterminal { .. } => &[],
        }
    }

    /// Left-to-right preterminals as `(pos, token)` pairs.
    pub fn terminals(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        self.collect_terminals(&mut out);
        out
    }

    fn collect_terminals<'a>(&'a self, out: &mut Vec<(&'a str, &'a str)>) {
        match self {
            ParseTree::Preterminal { pos, token } => out.push((pos, token)),
            ParseTree::Internal { children, .. } => {
                for child in children {
                    child.collect_terminals(out);
                }
            }
        }
    }

    /// Leaf tokens, traces included.
    pub fn leaves(&self) -> Vec<&str> {
        self.terminals().into_iter().map(|(_, tok)| tok).collect()
    }

    pub fn terminal_count(&self) -> usize {
        match self {
            ParseTree::Preterminal { .. } => 1,
            ParseTree::Internal { children, .. } => {
                children.iter().map(ParseTree::terminal_count).sum()
            }
        }
    }

    /// Leaves joined by single spaces. Traces are kept.
    pub fn text(&self) -> String {
        self.leaves().join(" ")
    }

    /// Root-to-terminal path for the `index`-th preterminal.
    fn path_to_terminal(&self, index: usize) -> Result<Vec<&ParseTree>, SelectError> {
        let count = self.terminal_count();
        if index >= count {
            return Err(SelectError::TerminalOutOfRange { index, count });
        }
        let mut path = vec![self];
        let mut node = self;
        let mut remaining = index;
        while let ParseTree::Internal { children, .. } = node {
            let mut next = None;
            for child in children {
                let n = child.terminal_count();
                if remaining < n {
                    next = Some(child);
                    break;
                }
                remaining -= n;
            }
            node = next.expect("index was bounds-checked against terminal_count");
            path.push(node);
        }
        Ok(path)
    }

    /// Largest valid height above the `terminal`-th preterminal.
    pub fn max_height(&self, terminal: usize) -> Result<usize, SelectError> {
        Ok(self.path_to_terminal(terminal)?.len() - 1)
    }

    /// Locates the `terminal`-th preterminal and climbs `height` parent links.
    pub fn select(&self, terminal: usize, height: usize) -> Result<&ParseTree, SelectError> {
        let path = self.path_to_terminal(terminal)?;
        let depth = path.len() - 1;
        if height > depth {
            return Err(SelectError::HeightOverflow {
                terminal,
                height,
                max: depth,
            });
        }
        Ok(path[depth - height])
    }

    /// Indented multi-line rendering for display. Nodes whose children are
    /// all preterminals stay on one line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize) {
        match self {
            ParseTree::Preterminal { .. } => out.push_str(&self.to_string()),
            ParseTree::Internal { label, children } => {
                if children.iter().all(ParseTree::is_preterminal) {
                    out.push_str(&self.to_string());
                    return;
                }
                out.push('(');
                out.push_str(label);
                for child in children {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    child.pretty_into(out, indent + 2);
                }
                out.push(')');
            }
        }
    }
}

/// Canonical form: single spaces between siblings, no indentation.
impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseTree::Preterminal { pos, token } => write!(f, "({pos} {token})"),
            ParseTree::Internal { label, children } => {
                write!(f, "({label}")?;
                for child in children {
                    write!(f, " {child}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for ParseTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}
