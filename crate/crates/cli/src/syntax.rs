//! Tokens and s-expressions for the fixture format.
//!
//! A statement is one physical line, continued while a `(` or `[` is open.
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    Paren,
    Square,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Bracket, Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, _, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            _ => None,
        }
    }

    /// Items of a `[...]` list.
    pub fn items(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(Bracket::Square, v, _) => Some(v),
            _ => None,
        }
    }

    /// Every atom inside, depth first.
    pub fn atoms(&self) -> Vec<(&str, Pos)> {
        match self {
            Sexp::Atom(s, p) => vec![(s.as_str(), *p)],
            Sexp::List(_, v, _) => v.iter().flat_map(|x| x.atoms()).collect(),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => write!(f, "{s}"),
            Sexp::List(b, v, _) => {
                let (open, close) = match b {
                    Bracket::Paren => ('(', ')'),
                    Bracket::Square => ('[', ']'),
                };
                write!(f, "{open}")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "{close}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

/// Splits `text` into statements, each a nonempty sequence of s-expressions.
pub fn statements(text: &str) -> Result<Vec<Vec<Sexp>>, SyntaxError> {
    let mut out = Vec::new();
    // stack of open lists; the bottom frame is the current statement
    let mut stack: Vec<(Bracket, Vec<Sexp>, Pos)> = Vec::new();
    let mut current: Vec<Sexp> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut chars = line.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            let pos = Pos {
                line: ln + 1,
                col: line[..i].chars().count() + 1,
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' | '[' => {
                    chars.next();
                    let b = if c == '(' { Bracket::Paren } else { Bracket::Square };
                    stack.push((b, Vec::new(), pos));
                }
                ')' | ']' => {
                    chars.next();
                    let want = if c == ')' { Bracket::Paren } else { Bracket::Square };
                    match stack.pop() {
                        Some((b, items, start)) if b == want => {
                            let e = Sexp::List(b, items, start);
                            match stack.last_mut() {
                                Some(top) => top.1.push(e),
                                None => current.push(e),
                            }
                        }
                        Some((_, _, start)) => {
                            return Err(SyntaxError {
                                pos,
                                message: format!("`{c}` does not match the bracket opened at {start}"),
                            })
                        }
                        None => {
                            return Err(SyntaxError {
                                pos,
                                message: format!("unbalanced `{c}`"),
                            })
                        }
                    }
                }
                _ => {
                    let start = i;
                    let mut end = line.len();
                    while let Some(&(j, d)) = chars.peek() {
                        if d.is_whitespace() || "()[]#".contains(d) {
                            end = j;
                            break;
                        }
                        chars.next();
                    }
                    let e = Sexp::Atom(line[start..end].to_string(), pos);
                    match stack.last_mut() {
                        Some(top) => top.1.push(e),
                        None => current.push(e),
                    }
                }
            }
        }
        if stack.is_empty() && !current.is_empty() {
            out.push(std::mem::take(&mut current));
        }
    }
    if let Some((_, _, start)) = stack.first() {
        return Err(SyntaxError {
            pos: *start,
            message: "bracket is never closed".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_continue_across_open_brackets() {
        let s = statements("a b # note\nc [1\n 2] (x\n)\n\n# only a comment\nd").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].len(), 3);
        assert_eq!(s[1][1].to_string(), "[1 2]");
        assert_eq!(s[2][0].pos(), Pos { line: 7, col: 1 });
    }

    #[test]
    fn mismatched_brackets_are_located() {
        let e = statements("x [1 2)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 7 });
        let e = statements("x\n  [1 2").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        assert!(statements("]").is_err());
    }
}
