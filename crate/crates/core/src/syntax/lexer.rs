use crate::error::{Error, Pos, Result};
use crate::kernel::{is_operator_char, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kw {
    Empty,
    Theory,
    Extend,
    By,
    ExtendedBy,
    Combine,
    Mixin,
    View,
    As,
    Via,
    Type,
    Forall,
    Fun,
}

const KEYWORDS: &[(&str, Kw)] = &[
    ("Empty", Kw::Empty),
    ("Theory", Kw::Theory),
    ("extend", Kw::Extend),
    ("by", Kw::By),
    ("extended_by", Kw::ExtendedBy),
    ("combine", Kw::Combine),
    ("mixin", Kw::Mixin),
    ("view", Kw::View),
    ("as", Kw::As),
    ("via", Kw::Via),
    ("type", Kw::Type),
    ("forall", Kw::Forall),
    ("fun", Kw::Fun),
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.iter().any(|(k, _)| *k == s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Plain identifier.
    Ident(Name),
    /// Backtick-quoted name; never infix.
    Quoted(Name),
    /// Operator run, used infix.
    Op(Name),
    Kw(Kw),
    Define,
    Colon,
    Semi,
    Comma,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Equals,
    Arrow,
    MapsTo,
    Bars,
    Lambda,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Quoted(n) => format!("name `{n}`"),
            Tok::Op(n) => format!("operator `{n}`"),
            Tok::Kw(k) => {
                let s = KEYWORDS.iter().find(|(_, v)| v == k).map(|(s, _)| *s).unwrap_or("?");
                format!("keyword `{s}`")
            }
            Tok::Define => "`:=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::Bars => "`||`".into(),
            Tok::Lambda => "`\\`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let single = match c {
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '\\' | 'λ' => Some(Tok::Lambda),
            '↦' => Some(Tok::MapsTo),
            '→' => Some(Tok::Arrow),
            '≔' => Some(Tok::Define),
            '∀' => Some(Tok::Kw(Kw::Forall)),
            _ => None,
        };
        if let Some(tok) = single {
            bump!();
            out.push(Token { tok, pos });
            continue;
        }
        if c == ':' {
            bump!();
            if i < chars.len() && chars[i] == '=' {
                bump!();
                out.push(Token { tok: Tok::Define, pos });
            } else {
                out.push(Token { tok: Tok::Colon, pos });
            }
            continue;
        }
        if c == '`' {
            bump!();
            let start = i;
            while i < chars.len() && chars[i] != '`' && chars[i] != '\n' {
                bump!();
            }
            if i >= chars.len() || chars[i] != '`' || i == start {
                return Err(Error::Lex { pos, msg: "unterminated or empty quoted name".into() });
            }
            let s: String = chars[start..i].iter().collect();
            bump!();
            out.push(Token { tok: Tok::Quoted(Name::new(s)), pos });
            continue;
        }
        if is_operator_char(c) {
            let start = i;
            while i < chars.len() && is_operator_char(chars[i]) {
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            let tok = match s.as_str() {
                "=" => Tok::Equals,
                "->" => Tok::Arrow,
                "|->" => Tok::MapsTo,
                "||" => Tok::Bars,
                _ => Tok::Op(Name::new(s)),
            };
            out.push(Token { tok, pos });
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let start = i;
            let mut prev = c;
            bump!();
            while i < chars.len() {
                let d = chars[i];
                let ok = d.is_alphanumeric()
                    || d == '_'
                    || d == '\''
                    || (is_operator_char(d) && (prev == '_' || is_operator_char(prev)));
                if !ok {
                    break;
                }
                prev = d;
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            let tok = match KEYWORDS.iter().find(|(k, _)| *k == s) {
                Some((_, kw)) => Tok::Kw(*kw),
                None => Tok::Ident(Name::new(s)),
            };
            out.push(Token { tok, pos });
            continue;
        }
        return Err(Error::Lex { pos, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    fn id(s: &str) -> Tok {
        Tok::Ident(Name::new(s))
    }

    #[test]
    fn identifiers_and_operators() {
        assert_eq!(
            toks("x*y associative_+ e' 0"),
            vec![id("x"), Tok::Op(Name::new("*")), id("y"), id("associative_+"), id("e'"), id("0"), Tok::Eof]
        );
    }

    #[test]
    fn reserved_operator_runs() {
        assert_eq!(
            toks("= -> |-> || := <="),
            vec![Tok::Equals, Tok::Arrow, Tok::MapsTo, Tok::Bars, Tok::Define, Tok::Op(Name::new("<=")), Tok::Eof]
        );
    }

    #[test]
    fn comments_and_positions() {
        let ts = lex("-- comment\n  Magma := Empty").unwrap();
        assert_eq!(ts[0].tok, id("Magma"));
        assert_eq!(ts[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(ts[2].tok, Tok::Kw(Kw::Empty));
    }

    #[test]
    fn quoted_names() {
        assert_eq!(toks("`*` x"), vec![Tok::Quoted(Name::new("*")), id("x"), Tok::Eof]);
        assert!(matches!(lex("`abc"), Err(Error::Lex { .. })));
    }

    #[test]
    fn bad_character() {
        let e = lex("A := ?").unwrap_err();
        assert!(matches!(e, Error::Lex { pos: Pos { line: 1, col: 6 }, .. }));
    }
}
