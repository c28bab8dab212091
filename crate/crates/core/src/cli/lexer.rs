use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Newline,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits the input into tokens. Newlines inside brackets are dropped so
/// matrices may span several lines; `#` starts a comment. Outside brackets
/// a word may contain `-`, as in `minimal-flag`.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    for (ln, line) in src.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                let word = |c: char| c.is_ascii_alphanumeric() || c == '_' || (depth == 0 && c == '-');
                while i < chars.len() && word(chars[i]) {
                    i += 1;
                }
                while chars[i - 1] == '-' {
                    i -= 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(s), line: line_no, col });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(s), line: line_no, col });
                continue;
            }
            if "[](),+-*^/.".contains(c) {
                match c {
                    '[' | '(' => depth += 1,
                    ']' | ')' => depth -= 1,
                    _ => {}
                }
                if depth < 0 {
                    return Err(err(line_no, col, format!("unbalanced '{c}'")));
                }
                out.push(Token { tok: Tok::Sym(c), line: line_no, col });
                i += 1;
                continue;
            }
            return Err(err(line_no, col, format!("unexpected character '{c}'")));
        }
        if depth == 0 {
            out.push(Token {
                tok: Tok::Newline,
                line: line_no,
                col: chars.len() + 1,
            });
        }
    }
    if depth != 0 {
        let (line, col) = out.last().map_or((1, 1), |t| (t.line, t.col));
        return Err(err(line, col, "unclosed bracket at end of input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_join_lines() {
        let t = tokenize("matrix [[x,\n  y]] # tail\nend\n").unwrap();
        let newlines = t.iter().filter(|t| t.tok == Tok::Newline).count();
        assert_eq!(newlines, 2);
        assert!(matches!(tokenize("[[x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn hyphenated_words() {
        let t = tokenize("minimal-flag [x-y]").unwrap();
        assert_eq!(t[0].tok, Tok::Ident("minimal-flag".into()));
        assert_eq!(t[2].tok, Tok::Ident("x".into()));
        assert_eq!(t[3].tok, Tok::Sym('-'));
    }
}
