use super::{DslError, ErrorKind, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
    Arrow,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

pub fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            '→' => Some(Tok::Arrow),
            _ => None,
        };
        if let Some(t) = single {
            bump(&mut chars);
            out.push((t, pos));
            continue;
        }
        if c == '-' {
            bump(&mut chars);
            match chars.peek() {
                Some('>') => {
                    bump(&mut chars);
                    out.push((Tok::Arrow, pos));
                }
                Some(d) if d.is_ascii_digit() => {
                    let mut w = String::from("-");
                    while let Some(&d) = chars.peek() {
                        if !is_word_char(d) {
                            break;
                        }
                        w.push(d);
                        bump(&mut chars);
                    }
                    out.push((Tok::Word(w), pos));
                }
                _ => {
                    return Err(DslError::new(ErrorKind::Lexical, pos, "stray `-`"));
                }
            }
            continue;
        }
        if is_word_char(c) {
            let mut w = String::new();
            while let Some(&d) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                w.push(d);
                bump(&mut chars);
            }
            out.push((Tok::Word(w), pos));
            continue;
        }
        return Err(DslError::new(ErrorKind::Lexical, pos, format!("unexpected character `{c}`")));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
