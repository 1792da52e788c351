//! Per-line tokenizer. Never fails as a whole: unreadable input becomes an
//! error token carrying its position.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Identifier or keyword.
    Word(String),
    /// Decimal literal, unparsed.
    Number(String),
    /// Quoted string, escapes resolved.
    Str(String),
    Comma,
    Colon,
    Eq,
    Bad(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    /// 1-based character column.
    pub col: usize,
}

pub(crate) const KEYWORDS: &[&str] = &[
    "DOMAIN", "ATTRIBUTE", "OF", "OPEN", "CLOSED", "TERM", "RULE", "IF", "THEN", "AND", "OR", "NOT", "IS", "WEIGHT",
    "EXCEPTION", "OTHERWISE", "SAY", "END", "FACT", "UNKNOWN", "BELIEF",
];

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '-'
}

pub(crate) fn tokenize(line: &str) -> Vec<Token> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let tok = match c {
            ',' => {
                i += 1;
                Tok::Comma
            }
            ':' => {
                i += 1;
                Tok::Colon
            }
            '=' => {
                i += 1;
                Tok::Eq
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                let mut closed = false;
                while i < chars.len() {
                    match chars[i] {
                        '"' => {
                            closed = true;
                            i += 1;
                            break;
                        }
                        '\\' if i + 1 < chars.len() => {
                            s.push(chars[i + 1]);
                            i += 2;
                        }
                        ch => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                if closed {
                    Tok::Str(s)
                } else {
                    Tok::Bad("unterminated string".into())
                }
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.' || chars[i] == '-') {
                    i += 1;
                }
                Tok::Number(chars[start..i].iter().collect())
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                Tok::Word(chars[start..i].iter().collect())
            }
            other => {
                i += 1;
                Tok::Bad(format!("unexpected character `{other}`"))
            }
        };
        out.push(Token { tok, col });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn mixed_line() {
        assert_eq!(
            toks("TERM x t = a:0.5, b'  # note"),
            vec![
                Tok::Word("TERM".into()),
                Tok::Word("x".into()),
                Tok::Word("t".into()),
                Tok::Eq,
                Tok::Word("a".into()),
                Tok::Colon,
                Tok::Number("0.5".into()),
                Tok::Comma,
                Tok::Word("b'".into()),
            ]
        );
    }

    #[test]
    fn strings_and_columns() {
        let t = tokenize(r#"SAY "say \"hi\"""#);
        assert_eq!(t[1].tok, Tok::Str("say \"hi\"".into()));
        assert_eq!(t[1].col, 5);
        assert!(matches!(tokenize("SAY \"open")[1].tok, Tok::Bad(_)));
        assert!(matches!(tokenize("a ; b")[1].tok, Tok::Bad(_)));
    }
}
