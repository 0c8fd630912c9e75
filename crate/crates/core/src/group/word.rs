use std::fmt;

use crate::error::{Error, Result};

/// A generator raised to a nonzero power; `generator` indexes the owning
/// group's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.exponent)
    }
}

/// Merge adjacent letters on the same generator and drop zero exponents.
pub fn collect_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exponent == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.generator == l.generator => {
                last.exponent += l.exponent;
                if last.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn shift_letters(letters: Vec<Letter>, offset: usize) -> Vec<Letter> {
    letters
        .into_iter()
        .map(|l| Letter::new(l.generator + offset, l.exponent))
        .collect()
}

/// Token of the word syntax: a generator name with a signed exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub name: String,
    pub exponent: i64,
}

/// Parse whitespace-separated tokens `name`, `name'`, `name^k`, `name^-k`,
/// `name'^k`. The tokens `1` and the empty string denote the identity.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    for raw in text.split_whitespace() {
        if raw == "1" {
            continue;
        }
        let (base, power) = match raw.split_once('^') {
            Some((b, p)) => {
                let k: i64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in token `{raw}`")))?;
                (b, k)
            }
            None => (raw, 1),
        };
        let (name, sign) = match base.strip_suffix('\'') {
            Some(n) => (n, -1),
            None => (base, 1),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Parse(format!("bad generator token `{raw}`")));
        }
        tokens.push(Token {
            name: name.to_string(),
            exponent: sign * power,
        });
    }
    Ok(tokens)
}

/// Render letters using generator names; the empty word renders as `1`.
pub fn render_letters(letters: &[Letter], names: &[String]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    letters
        .iter()
        .map(|l| {
            let name = &names[l.generator];
            match l.exponent {
                1 => name.clone(),
                -1 => format!("{name}'"),
                k => format!("{name}^{k}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub struct DisplayWord<'a> {
    pub letters: &'a [Letter],
    pub names: &'a [String],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(self.letters, self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_cover_all_exponent_spellings() {
        let t = tokenize("a b' c^2 d^-3 e'^2 1").unwrap();
        let exps: Vec<i64> = t.iter().map(|t| t.exponent).collect();
        assert_eq!(exps, vec![1, -1, 2, -3, -2]);
        assert!(tokenize("").unwrap().is_empty());
        assert!(tokenize("a^x").is_err());
        assert!(tokenize("^2").is_err());
    }

    #[test]
    fn collect_merges_and_cancels() {
        let w = collect_letters([
            Letter::new(0, 1),
            Letter::new(0, 2),
            Letter::new(1, 1),
            Letter::new(1, -1),
            Letter::new(0, -3),
        ]);
        assert!(w.is_empty());
    }

    #[test]
    fn render_then_tokenize_roundtrips() {
        let names = vec!["x".to_string(), "y".to_string()];
        let w = vec![Letter::new(0, 1), Letter::new(1, -1), Letter::new(0, -4)];
        let text = render_letters(&w, &names);
        assert_eq!(text, "x y' x^-4");
        let toks = tokenize(&text).unwrap();
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[2].exponent, -4);
    }
}
