use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Pipe,
    Amp,
    Backslash,
    Bang,
    Number(f64),
    Inf,
    NegInf,
    Ident(String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::LBracket => "\"[\"".into(),
            Tok::RBracket => "\"]\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::LBrace => "\"{\"".into(),
            Tok::RBrace => "\"}\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Pipe => "\"|\"".into(),
            Tok::Amp => "\"&\"".into(),
            Tok::Backslash => "\"\\\"".into(),
            Tok::Bang => "\"!\"".into(),
            Tok::Number(v) => format!("number {}", v),
            Tok::Inf => "\"inf\"".into(),
            Tok::NegInf => "\"-inf\"".into(),
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b',' => Some(Tok::Comma),
            b'|' => Some(Tok::Pipe),
            b'&' => Some(Tok::Amp),
            b'\\' => Some(Tok::Backslash),
            b'!' => Some(Tok::Bang),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, offset: start });
            i += 1;
            continue;
        }
        if c == b'-' && src[i + 1..].starts_with("inf") && !ident_continues(bytes, i + 4) {
            out.push(Token {
                tok: Tok::NegInf,
                offset: start,
            });
            i += 4;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' || c == b'-' || c == b'+' {
            let end = scan_number(bytes, i);
            let text = &src[start..end];
            let value: f64 = text
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| ParseError::new(src, start, vec!["NUMBER".into()], text))?;
            out.push(Token {
                tok: Tok::Number(value),
                offset: start,
            });
            i = end;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut end = i + 1;
            while ident_continues(bytes, end) {
                end += 1;
            }
            let word = &src[start..end];
            let tok = if word == "inf" {
                Tok::Inf
            } else {
                Tok::Ident(word.to_string())
            };
            out.push(Token { tok, offset: start });
            i = end;
            continue;
        }
        let ch = src[start..].chars().next().expect("in bounds");
        return Err(ParseError::new(
            src,
            start,
            vec!["a token".into()],
            &ch.to_string(),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        offset: src.len(),
    });
    Ok(out)
}

fn ident_continues(bytes: &[u8], i: usize) -> bool {
    bytes
        .get(i)
        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
}

/// End of `[+-]? digits [. digits] [(e|E) [+-] digits]` starting at `i`.
fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    let digits = |mut j: usize| {
        while bytes.get(j).is_some_and(u8::is_ascii_digit) {
            j += 1;
        }
        j
    };
    if matches!(bytes.get(i), Some(b'-' | b'+')) {
        i += 1;
    }
    i = digits(i);
    if bytes.get(i) == Some(&b'.') {
        i = digits(i + 1);
    }
    if matches!(bytes.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(bytes.get(j), Some(b'-' | b'+')) {
            j += 1;
        }
        let k = digits(j);
        if k > j {
            i = k;
        }
    }
    i
}
